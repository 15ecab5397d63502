#ifndef SOLIDSUM_EXTRAPOLATION_HPP
#define SOLIDSUM_EXTRAPOLATION_HPP

#include <span>
#include <vector>

#include "solidsum/types.hpp"

namespace solidsum {

/**
 * Result of first-order Richardson extrapolation to eps = 0.  Each pair of
 * consecutive levels gives an extrapolant assuming f(eps) = a + b eps; the
 * last one is the value and the gap to its predecessor is the error.
 */
struct Extrapolation {
    Complex value;
    double error = 0.0;
    std::vector<double> eps;
    std::vector<Complex> levels;
    std::vector<Complex> extrapolants;
};

/**
 * Throws ScheduleTooShort for fewer than two levels and NonConvergent when
 * the last three extrapolants spread apart by more than
 * max(1e-8 max(1, |value|), noise_floor).  Pass check_convergence = false
 * for diagnostics only.
 */
Extrapolation richardson(std::span<const double> eps, std::span<const Complex> values,
                         bool check_convergence = true, double noise_floor = 0.0);

/// Linear weights w with value = sum_k w_k f(eps_k) for the final extrapolant.
std::vector<double> richardson_weights(std::span<const double> eps);

}  // namespace solidsum

#endif
