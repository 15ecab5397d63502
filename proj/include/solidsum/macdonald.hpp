/**
 * A_P(t, s) = sum_m omega_{tP}(m) e^{2 pi i <m, s>} evaluated through the
 * vertex cones of tP in transform space, its s -> 0 limit A_P(t), and
 * numerical checks of the reciprocity and decomposition identities.
 */

#ifndef SOLIDSUM_MACDONALD_HPP
#define SOLIDSUM_MACDONALD_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "solidsum/lattice_sum.hpp"

namespace solidsum {

struct VertexPartial {
    Point vertex;
    Complex value;
};

struct MacdonaldEvaluation {
    double t = 0.0;
    ComplexPoint s;
    Complex value;  // sum of per_vertex values
    double error = 0.0;
    std::vector<VertexPartial> per_vertex;
    Extrapolation extrapolation;
};

MacdonaldEvaluation A_of_t_s(const Polytope& polytope, double t, const ComplexPoint& s,
                             const DampedSumConfig& cfg);

/// Same with precomputed vertex cones (as returned by vertex_simple_cones).
MacdonaldEvaluation A_of_t_s(const Polytope& polytope,
                             const std::vector<std::vector<SimpleCone>>& vertex_cones, double t,
                             const ComplexPoint& s, const DampedSumConfig& cfg);

struct LimitConfig {
    Point direction;                   // empty: (1, ..., 1), certified or replaced
    std::vector<double> sigma_schedule;  // empty: scaled to the size of tP
    int fit_degree = -1;               // negative: d + 1
    std::uint64_t seed = 7;            // for fallback directions
    double certify_threshold = 1e-8;
};

struct LimitResult {
    double t = 0.0;
    double value = 0.0;
    double error = 0.0;
    double imaginary = 0.0;          // Im part of the intercept
    double fit_residual = 0.0;       // rms of the real fit residuals
    double swapped_order_value = 0.0;  // sigma -> 0 per eps level, then eps -> 0
    Point direction;
    std::vector<double> sigmas;
    std::vector<Complex> values;
    std::vector<double> errors;
};

/**
 * Fits polynomials in sigma to A(t, sigma x) over the sigma schedule and
 * returns the intercept.  Throws ImaginaryResidue when the imaginary
 * intercept exceeds 1e-6 (1 + |Re|) and PoorFit when the fit residual is
 * both 10x above the point errors and above 1e-6 (1 + |Re|).
 */
LimitResult A_of_t(const Polytope& polytope, double t, const LimitConfig& limit_cfg,
                   const DampedSumConfig& cfg);

/// The direction and sigma schedule A_of_t would use.
LimitConfig resolve_limit_config(const Polytope& polytope, double t, const LimitConfig& limit_cfg,
                                 const DampedSumConfig& cfg);

struct VerificationReport {
    std::string identity;
    std::map<std::string, std::string> inputs;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    Complex lhs;
    Complex rhs;
    std::map<std::string, double> diagnostics;
    std::vector<Complex> partials;
};

/**
 * alpha_{v+K}(-s) against (-1)^d alpha_{-v+K}(s), both as damped transform
 * sums.  residual is after eps-extrapolation; diagnostics carry the largest
 * fixed-eps residual over the schedule and the residual at eps = 0.05.
 */
VerificationReport verify_cone_reciprocity(const SimpleCone& cone, const Point& shift,
                                           const ComplexPoint& s, const DampedSumConfig& cfg,
                                           double tolerance = 1e-5);

/// Direct finite sum over P against the extrapolated sum of vertex-cone series.
VerificationReport verify_brion(const Polytope& polytope, const ComplexPoint& s,
                                const DampedSumConfig& cfg, double tolerance = 1e-4);

/// A(-t, s) against (-1)^d A(t, -s).
VerificationReport verify_macdonald(const Polytope& polytope, double t, const ComplexPoint& s,
                                    const DampedSumConfig& cfg, double tolerance = 1e-5);

struct ConjectureResult {
    LimitResult limit;
    bool odd_dimension = false;  // the vanishing is a theorem there
    double tolerance = 1e-3;
    bool pass = false;
};

ConjectureResult conjecture_check(const Polytope& polytope, const DampedSumConfig& cfg,
                                  const LimitConfig& limit_cfg, double tolerance = 1e-3);

struct BrianchonGramReport {
    std::size_t n_points = 0;
    std::size_t n_failures = 0;
    std::size_t n_inside = 0;
    std::vector<Point> counterexamples;
    bool pass = false;
};

/// 1_P(x) against sum_F (-1)^{dim F} 1_{K_F}(x) at random points.  d <= 3.
BrianchonGramReport brianchon_gram_check(const Polytope& polytope, std::size_t n_points,
                                         std::uint64_t seed);

/// Signed tangent-cone count at x (the right-hand side above).
int brianchon_gram_sum(const Polytope& polytope, const std::vector<Face>& faces, const Point& x);

}  // namespace solidsum

#endif
