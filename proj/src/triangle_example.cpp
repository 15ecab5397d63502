#include "solidsum/triangle_example.hpp"

#include <cmath>
#include <limits>

#include "solidsum/oracle.hpp"

namespace solidsum {

namespace {

const double kSqrt3 = std::sqrt(3.0);

}  // namespace

Polytope sqrt3_triangle()
{
    Eigen::MatrixXd v(2, 3);
    v << 0.0, 0.0, kSqrt3,
         0.0, 1.0, 0.0;
    return Polytope(v);
}

Complex triangle_f(const LatticePoint& m, double t, const Point& x, double sigma)
{
    const double z1 = static_cast<double>(m(0)) + sigma * x(0);
    const double z2 = static_cast<double>(m(1)) + sigma * x(1);
    return kSqrt3 * z1 - z2 - kSqrt3 * z1 * std::exp(2.0 * kPi * kI * t * z2) +
           z2 * std::exp(2.0 * kPi * kI * t * kSqrt3 * z1);
}

Complex triangle_g(const LatticePoint& m, double, const Point& x, double sigma)
{
    const double z1 = static_cast<double>(m(0)) + sigma * x(0);
    const double z2 = static_cast<double>(m(1)) + sigma * x(1);
    return z1 * z2 * (kSqrt3 * z1 - z2);
}

Complex triangle_closed_form(const LatticePoint& m, double t, const Point& x)
{
    const double m1 = static_cast<double>(m(0));
    const double m2 = static_cast<double>(m(1));
    const double x1 = x(0);
    const double x2 = x(1);
    const Complex e3 = std::exp(2.0 * kPi * kI * t * kSqrt3 * m1);
    const Complex e2 = std::exp(2.0 * kPi * kI * t * m2);
    const Complex num = -6.0 * kPi * kPi * m2 * x1 * x1 * t * t * e3 +
                        2.0 * kPi * kI * kSqrt3 * x1 * x2 * t * (e3 - e2) +
                        2.0 * kPi * kPi * kSqrt3 * m1 * x2 * x2 * t * t * e2;
    const double den = -x2 * (2.0 * m2 * x1 + m1 * x2) + kSqrt3 * x1 * (m2 * x1 + 2.0 * m1 * x2);
    if (den == 0.0)
        return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
    return num / den;
}

namespace {

template <typename F>
Complex second_derivative(F&& f)
{
    auto central = [&](double h) { return (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h); };
    const double h = 1e-3;
    return (4.0 * central(h / 2.0) - central(h)) / 3.0;
}

template <typename F>
Complex first_derivative(F&& f)
{
    auto central = [&](double h) { return (f(h) - f(-h)) / (2.0 * h); };
    const double h = 1e-3;
    return (4.0 * central(h / 2.0) - central(h)) / 3.0;
}

}  // namespace

LimitDiagnostic triangle_limit_diagnostic(const LatticePoint& m, double t, const Point& x)
{
    auto f = [&](double sigma) { return triangle_f(m, t, x, sigma); };
    auto g = [&](double sigma) { return triangle_g(m, t, x, sigma); };

    LimitDiagnostic out;
    out.m = m;
    out.t = t;
    out.closed_form = triangle_closed_form(m, t, x);
    out.second_derivative_ratio = second_derivative(f) / second_derivative(g);
    const double h = 1e-3;
    auto ratio = [&](double sigma) { return f(sigma) / g(sigma); };
    const Complex r1 = 2.0 * ratio(h / 2.0) - ratio(h);
    const Complex r2 = 2.0 * ratio(h / 4.0) - ratio(h / 2.0);
    out.small_sigma_limit = (4.0 * r2 - r1) / 3.0;
    out.f0 = f(0.0);
    out.g0 = g(0.0);
    out.vanishing_to_second_order = std::abs(out.f0) < 1e-12 && std::abs(out.g0) < 1e-12 &&
                                    std::abs(first_derivative(f)) < 1e-8 &&
                                    std::abs(first_derivative(g)) < 1e-8;
    out.algebra_gap = std::abs(out.closed_form - out.second_derivative_ratio);
    out.limit_gap = std::abs(out.small_sigma_limit - out.second_derivative_ratio);
    out.limit_matches = out.limit_gap < 1e-6 * (1.0 + std::abs(out.second_derivative_ratio));
    return out;
}

SeriesDiagnostic triangle_series(double t, const DampedSumConfig& cfg)
{
    const Point x = Point::Ones(2);
    SeriesDiagnostic out;
    out.t = t;
    out.eps = cfg.eps_schedule;
    for (double eps : cfg.eps_schedule) {
        const int R = cfg.radius_for(eps);
        Complex sum = 0.0;
        LatticePoint m(2);
        for (m(0) = -R; m(0) <= R; ++m(0))
            for (m(1) = -R; m(1) <= R; ++m(1)) {
                const Complex term = triangle_closed_form(m, t, x);
                if (std::isnan(term.real()))
                    continue;
                const double norm2 = static_cast<double>(m.squaredNorm());
                sum += std::exp(-kPi * eps * norm2) * term;
            }
        out.values.push_back(sum / (-4.0 * kPi * kPi));
    }
    out.extrapolated = richardson(cfg.eps_schedule, out.values, false).value;
    return out;
}

TriangleReport triangle_example(std::span<const double> t_values, const DampedSumConfig& cfg,
                                const LimitConfig& limit_cfg)
{
    const Polytope triangle = sqrt3_triangle();
    TriangleReport report;

    const auto cones = vertex_simple_cones(triangle);
    const std::array<double, 3> expected{1.0, kSqrt3, 1.0};
    for (std::size_t v = 0; v < 3; ++v) {
        double total = 0.0;
        for (const auto& cone : cones[v])
            total += cone.abs_det();
        report.determinants[v] = total;
        report.determinant_error =
            std::max(report.determinant_error, std::abs(total - expected[v]));
    }
    report.determinants_ok = report.determinant_error < 1e-12;

    OracleOptions oracle_options;
    oracle_options.method = OracleMethod::Exact2D;
    for (double t : t_values) {
        TriangleRow row;
        row.t = t;
        const LimitResult limit = A_of_t(triangle, t, limit_cfg, cfg);
        row.value = limit.value;
        row.error = limit.error;
        const OracleResult oracle = A_t_oracle(triangle, t, oracle_options);
        row.oracle = oracle.value;
        row.oracle_error = oracle.std_error;
        row.tolerance = std::max(1e-2, 3.0 * oracle.std_error);
        row.pass = std::abs(row.value - row.oracle) <= row.tolerance;
        report.rows.push_back(row);
        report.series.push_back(triangle_series(t, cfg));
    }

    const Point x = Point::Ones(2);
    const double sample_t = 0.5;
    for (const auto& [m1, m2] : std::vector<std::pair<int, int>>{{1, 1}, {1, 0}, {0, 1}, {2, 3}}) {
        LatticePoint m(2);
        m << m1, m2;
        report.limits.push_back(triangle_limit_diagnostic(m, sample_t, x));
    }
    return report;
}

}  // namespace solidsum
