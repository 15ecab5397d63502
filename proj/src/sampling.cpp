#include "solidsum/sampling.hpp"

#include <cmath>

namespace solidsum {

Rng make_rng(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

double sample_exp_power(Rng& rng, double p)
{
    // |u|^p ~ Gamma(1/p, 1) with a uniform random sign.
    std::gamma_distribution<double> gamma(1.0 / p, 1.0);
    std::bernoulli_distribution sign(0.5);
    const double magnitude = std::pow(gamma(rng), 1.0 / p);
    return sign(rng) ? magnitude : -magnitude;
}

Point sample_lp_ball(Rng& rng, int dim, double p, double radius)
{
    // Barthe-Guedon-Mendelson-Naor: g / (||g||_p^p + W)^(1/p) with W ~ Exp(1).
    Point g(dim);
    double sum = 0.0;
    for (int k = 0; k < dim; ++k) {
        g(k) = sample_exp_power(rng, p);
        sum += std::pow(std::abs(g(k)), p);
    }
    std::exponential_distribution<double> expo(1.0);
    sum += expo(rng);
    return g * (radius / std::pow(sum, 1.0 / p));
}

double lp_norm(const Point& x, double p)
{
    return std::pow(x.cwiseAbs().array().pow(p).sum(), 1.0 / p);
}

}  // namespace solidsum
