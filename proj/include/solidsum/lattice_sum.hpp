/**
 * Damped lattice sums at fixed eps, in transform space
 *   sum_m sum_terms coef * 1^_K(m + s) * phi^_eps(m + s)
 * and in direct space
 *   sum_m (1_body * phi_eps)(m) e^{2 pi i <s, m>},
 * plus the eps -> 0 extrapolation that turns either into an alpha value.
 */

#ifndef SOLIDSUM_LATTICE_SUM_HPP
#define SOLIDSUM_LATTICE_SUM_HPP

#include <functional>
#include <vector>

#include "solidsum/extrapolation.hpp"
#include "solidsum/oracle.hpp"
#include "solidsum/transforms.hpp"

namespace solidsum {

struct ConeSumTerm {
    Complex coefficient{1.0, 0.0};
    SimpleCone cone;
};

struct DampedSum {
    Complex value;
    double tail = 0.0;     // sum of |terms| on the outermost shell
    double abs_sum = 0.0;  // sum of |terms|, a roundoff scale
    int radius = 0;
    std::vector<Complex> per_term;  // unweighted by coefficient
};

/**
 * Box ||m||_inf <= R with R from cfg.radius_for(eps).  Throws PoleHit naming
 * m when some <w_j, m + s> is below cfg.pole_threshold, and InvalidArgument
 * when |Im s_k| > 1.
 */
DampedSum damped_transform_sum(std::span<const ConeSumTerm> terms, const ComplexPoint& s,
                               const DampedSumConfig& cfg, double eps);

/// Polytope version: any s.  Box = bounding box widened by the kernel support.
Complex damped_direct_sum(const Polytope& polytope, const ComplexPoint& s,
                          const DampedSumConfig& cfg, double eps);

/// Cone version: needs <Im s, w_j> > 0 for every generator, else ConvergenceDomain.
Complex damped_direct_sum(const SimpleCone& cone, const ComplexPoint& s,
                          const DampedSumConfig& cfg, double eps);

/// Evaluates on cfg.eps_schedule and extrapolates to eps = 0.
Extrapolation extrapolate_eps(const std::function<Complex(double)>& evaluate,
                              const DampedSumConfig& cfg);

/// Finite solid-angle sum over P; closed-form weights where available.
Estimate<Complex> alpha_polytope_direct(const Polytope& polytope, const ComplexPoint& s,
                                        double p, std::size_t n_samples = kDefaultSamples,
                                        std::uint64_t seed = 1);

/// Throws InvalidArgument unless every |Im s_k| <= kMaxImaginary.
void check_strip(const ComplexPoint& s);

}  // namespace solidsum

#endif
