/**
 * Ground truth by direct enumeration: A_P(t) = sum of solid angles of tP at
 * the lattice points of tP, and the phased sum alpha_P(s).  Uses no transform
 * machinery.
 */

#ifndef SOLIDSUM_ORACLE_HPP
#define SOLIDSUM_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "solidsum/polytope.hpp"
#include "solidsum/solid_angle.hpp"

namespace solidsum {

/// Exact2D needs d = 2 and p in {1, 2}.  Auto takes closed forms wherever they
/// exist and Monte Carlo elsewhere.
enum class OracleMethod { Exact2D, MonteCarlo, Auto };

const char* to_string(OracleMethod method);

struct OracleOptions {
    double p = 2.0;
    OracleMethod method = OracleMethod::Auto;
    std::size_t n_samples = kDefaultSamples;
    std::uint64_t seed = 1;
    bool keep_weights = true;
};

struct PointWeight {
    LatticePoint point;
    double weight = 0.0;
    double std_error = 0.0;
    SolidAngleMethod method = SolidAngleMethod::Exact;
};

struct OracleResult {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t n_lattice_points = 0;
    std::vector<PointWeight> per_point_weights;
};

/// Solid-angle weights of every lattice point in tP, t >= 0.  At t = 0 the
/// dilate is the single point 0, whose solid angle is 0.
OracleResult A_t_oracle(const Polytope& polytope, double t, const OracleOptions& options = {});

/// sum_m omega_P(m) e^{2 pi i <s, m>} over the lattice points of P.
Estimate<Complex> alpha_oracle(const Polytope& polytope, const ComplexPoint& s,
                               const OracleOptions& options = {});

}  // namespace solidsum

#endif
