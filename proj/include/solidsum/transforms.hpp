/**
 * The mass-one damping function phi_eps(t) = eps^{-d/p} exp(-(c/eps)||t||_p^p),
 * its Fourier transform at complex arguments, and Fourier-Laplace transforms
 * of shifted simple cones.  The Fourier kernel is e^{2 pi i <x, z>} with the
 * bilinear pairing throughout.
 */

#ifndef SOLIDSUM_TRANSFORMS_HPP
#define SOLIDSUM_TRANSFORMS_HPP

#include <span>
#include <vector>

#include "solidsum/cone.hpp"
#include "solidsum/types.hpp"

namespace solidsum {

/// Imaginary parts of s are confined to |Im s_k| <= this bound in the public API.
inline constexpr double kMaxImaginary = 1.0;

struct DampedSumConfig {
    double p = 2.0;
    std::vector<double> eps_schedule = {0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625};
    int truncation_radius = 0;  // sup-norm cutoff; 0 picks radius_for(eps)
    int quad_points = 64;       // minimum number of 20-node panels for p != 2
    double pole_threshold = 1e-10;
    bool force_quadrature = false;  // use the 1-D quadrature even at p = 2

    /// (2 Gamma(1/p + 1))^p; equals pi at p = 2.
    double c() const;

    /// max(30, ceil(6 / sqrt(pi eps))) unless a radius was fixed.
    int radius_for(double eps) const;

    /// Throws InvalidArgument / BadEpsilon on an inconsistent configuration.
    void validate() const;
};

double phi(const DampedSumConfig& cfg, double eps, const Point& t);

/// One-dimensional factor of phi_hat.
Complex phi_hat_1d(const DampedSumConfig& cfg, double eps, Complex z);

/**
 * Product of 1-D transforms.  p = 2 uses exp(-pi eps sum z_k^2); other p
 * integrate 2 int_0^L cos(2 pi z x) eps^{-1/p} e^{-(c/eps) x^p} dx with L set
 * so the neglected tail is below 1e-14.  Throws QuadratureUnderResolved when
 * the integrand does not decay fast enough for that (p = 1 with large Im z).
 */
Complex phi_hat(const DampedSumConfig& cfg, double eps, const ComplexPoint& z);

/// (-2 pi i)^{-d} |det K| e^{2 pi i <apex, z>} / prod_j <w_j, z>.  PoleHit below 1e-14.
Complex cone_transform(const SimpleCone& cone, const ComplexPoint& z);

/// Same without the apex phase.
Complex cone_transform_at_origin(const SimpleCone& cone, const ComplexPoint& z);

/// min over cones and generators of |<w_j, z>|.
double pole_distance(std::span<const SimpleCone> cones, const ComplexPoint& z);

}  // namespace solidsum

#endif
