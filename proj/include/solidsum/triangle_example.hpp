/**
 * The triangle with vertices (0,0), (0,1), (sqrt 3, 0): vertex determinants,
 * A(t) against the enumeration oracle, and diagnostics for the combined
 * rational function f/g of its three vertex terms along s = sigma (x1, x2).
 */

#ifndef SOLIDSUM_TRIANGLE_EXAMPLE_HPP
#define SOLIDSUM_TRIANGLE_EXAMPLE_HPP

#include <array>
#include <span>
#include <vector>

#include "solidsum/macdonald.hpp"

namespace solidsum {

Polytope sqrt3_triangle();

/// Numerator and denominator of the combined vertex terms at m + sigma x.
Complex triangle_f(const LatticePoint& m, double t, const Point& x, double sigma);
Complex triangle_g(const LatticePoint& m, double t, const Point& x, double sigma);

/// Closed form claimed for f''(t, 0) / g''(t, 0).  NaN where its denominator vanishes.
Complex triangle_closed_form(const LatticePoint& m, double t, const Point& x);

struct LimitDiagnostic {
    LatticePoint m;
    double t = 0.0;
    Complex closed_form;
    Complex second_derivative_ratio;  // numeric f''(0) / g''(0)
    Complex small_sigma_limit;        // f/g at sigma = 1e-3, 5e-4, 2.5e-4, extrapolated to 0
    Complex f0, g0;
    bool vanishing_to_second_order = false;  // f, f', g, g' all zero at sigma = 0
    double algebra_gap = 0.0;                // |closed_form - second_derivative_ratio|
    double limit_gap = 0.0;                  // |small_sigma_limit - second_derivative_ratio|
    bool limit_matches = false;              // limit_gap < 1e-6 (1 + |ratio|)
};

LimitDiagnostic triangle_limit_diagnostic(const LatticePoint& m, double t, const Point& x);

struct TriangleRow {
    double t = 0.0;
    double value = 0.0;
    double error = 0.0;
    double oracle = 0.0;
    double oracle_error = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct SeriesDiagnostic {
    double t = 0.0;
    std::vector<double> eps;
    std::vector<Complex> values;  // closed-form terms summed over m != 0, mass-one damping
    Complex extrapolated;
};

struct TriangleReport {
    std::array<double, 3> determinants{};
    double determinant_error = 0.0;  // max deviation from (1, sqrt 3, 1)
    bool determinants_ok = false;
    std::vector<TriangleRow> rows;
    std::vector<LimitDiagnostic> limits;
    std::vector<SeriesDiagnostic> series;
};

SeriesDiagnostic triangle_series(double t, const DampedSumConfig& cfg);

TriangleReport triangle_example(std::span<const double> t_values, const DampedSumConfig& cfg,
                                const LimitConfig& limit_cfg);

}  // namespace solidsum

#endif
