#ifndef SOLIDSUM_SAMPLING_HPP
#define SOLIDSUM_SAMPLING_HPP

#include <cstdint>
#include <random>

#include "solidsum/types.hpp"

namespace solidsum {

using Rng = std::mt19937_64;

/// Monte Carlo work is cut into fixed blocks of this many samples; block b
/// draws from make_rng(seed, b).
inline constexpr std::size_t kSampleBlock = 4096;

Rng make_rng(std::uint64_t seed, std::uint64_t stream);

/// Draw from the density proportional to exp(-|u|^p).
double sample_exp_power(Rng& rng, double p);

/// Uniform point in the l^p ball of the given radius centred at the origin.
Point sample_lp_ball(Rng& rng, int dim, double p, double radius);

double lp_norm(const Point& x, double p);

}  // namespace solidsum

#endif
