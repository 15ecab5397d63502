/**
 * l^p solid angles of polytopes and cones at a point, computed three ways:
 * closed forms in the plane, the fraction of a small l^p ball (Monte Carlo),
 * and the eps -> 0 limit of the mass of a normalized l^p Gaussian.
 */

#ifndef SOLIDSUM_SOLID_ANGLE_HPP
#define SOLIDSUM_SOLID_ANGLE_HPP

#include <cstdint>
#include <optional>
#include <span>

#include "solidsum/cone.hpp"
#include "solidsum/polytope.hpp"

namespace solidsum {

enum class SolidAngleMethod { Exact, MonteCarloBall, GaussianLimit };

const char* to_string(SolidAngleMethod method);

struct SolidAngleEstimate {
    double value = 0.0;      // in [0, 1]
    double std_error = 0.0;  // 0 for exact paths
    SolidAngleMethod method = SolidAngleMethod::Exact;
};

inline constexpr std::size_t kDefaultSamples = 100000;

/// Planar angle / 2 pi of a 2-D cone (p = 2).
SolidAngleEstimate solid_angle_exact_2d(const Cone& cone);

/// Area of the unit l^1 diamond inside a 2-D cone, over 2 (p = 1).
SolidAngleEstimate solid_angle_exact_2d_l1(const Cone& cone);

/// Fraction of uniform samples from B_{p,eps}(x) that land in the body.
SolidAngleEstimate solid_angle_mc(const HalfSpaces& body, const Point& x, double p,
                                  double epsilon, std::size_t n_samples, std::uint64_t seed);

/// Cone version; cones are scale invariant at the apex so any eps works there.
SolidAngleEstimate solid_angle_mc(const Cone& cone, const Point& x, double p, double epsilon,
                                  std::size_t n_samples, std::uint64_t seed);

/**
 * Polytope version.  Without an explicit eps the ball radius is half the
 * distance from x to the nearest facet not containing x, shrunk so that the
 * l^p ball sits inside the Euclidean ball of that radius.
 */
SolidAngleEstimate solid_angle_mc(const Polytope& polytope, const Point& x, double p,
                                  std::optional<double> epsilon, std::size_t n_samples,
                                  std::uint64_t seed);

/// Radius used by the polytope overload when none is given.
double default_ball_radius(const Polytope& polytope, const Point& x, double p);

/**
 * eps^{-d/p} int_body exp(-(c/eps)||t - x||_p^p) dt on each level of the
 * schedule, sampled from the normalized Gaussian itself so the weight is the
 * indicator of the body.  The same draws are reused on every level and the
 * last two levels are combined by first-order Richardson extrapolation.
 * std_error folds the sampling error together with the gap between the last
 * two extrapolants.
 */
SolidAngleEstimate solid_angle_gaussian(const HalfSpaces& body, const Point& x, double p,
                                        std::span<const double> eps_schedule,
                                        std::size_t n_samples, std::uint64_t seed);

SolidAngleEstimate solid_angle_gaussian(const SimpleCone& cone, const Point& x, double p,
                                        std::span<const double> eps_schedule,
                                        std::size_t n_samples, std::uint64_t seed);

/// The default schedule eps_k = 0.5 * 2^-k, k = 0..5.
std::vector<double> default_eps_schedule();

/**
 * (1_body * phi_eps)(x) at fixed eps by deterministic quadrature: nested
 * adaptive Gauss-Kronrod over slices, split at every kink, with the
 * innermost coordinate done in closed form through the l^p Gaussian CDF.
 * Accurate to about 1e-12 for d <= 3.
 */
double gaussian_convolution(const HalfSpaces& body, const Point& x, double p, double eps);

/**
 * Solid angle of a polytope at x by incidence classification: outside 0,
 * interior 1, relative interior of a facet 1/2.  Lower-dimensional faces use
 * a closed form when one exists (planar vertices for p in {1, 2} when
 * prefer_exact, 3-D edges for p = 2) and Monte Carlo on the tangent cone at x
 * otherwise.
 */
SolidAngleEstimate polytope_solid_angle(const Polytope& polytope, const Point& x, double p,
                                        bool prefer_exact, std::size_t n_samples,
                                        std::uint64_t seed);

/// Normalization constant (2 Gamma(1/p + 1))^p of the l^p Gaussian.
double lp_gaussian_constant(double p);

}  // namespace solidsum

#endif
