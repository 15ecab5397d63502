#include "solidsum/transforms.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "solidsum/error.hpp"
#include "solidsum/solid_angle.hpp"

namespace solidsum {

double DampedSumConfig::c() const
{
    return lp_gaussian_constant(p);
}

int DampedSumConfig::radius_for(double eps) const
{
    if (truncation_radius > 0)
        return truncation_radius;
    return std::max(30, static_cast<int>(std::ceil(6.0 / std::sqrt(kPi * eps))));
}

void DampedSumConfig::validate() const
{
    if (!(p >= 1.0) || !std::isfinite(p))
        throw Error(ErrorCode::InvalidArgument, "p must be a finite real >= 1");
    if (truncation_radius < 0)
        throw Error(ErrorCode::InvalidArgument, "truncation radius must be >= 0");
    if (quad_points < 1)
        throw Error(ErrorCode::InvalidArgument, "quad_points must be positive");
    if (eps_schedule.size() < 2)
        throw Error(ErrorCode::ScheduleTooShort, "eps schedule needs at least two levels");
    for (std::size_t k = 0; k < eps_schedule.size(); ++k) {
        if (!(eps_schedule[k] > 0.0))
            throw Error(ErrorCode::BadEpsilon, "eps levels must be positive");
        if (k > 0 && !(eps_schedule[k] < eps_schedule[k - 1]))
            throw Error(ErrorCode::InvalidArgument, "eps schedule must be strictly decreasing");
    }
}

namespace {

void check_eps(double eps)
{
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw Error(ErrorCode::BadEpsilon, "eps must be positive, got " + std::to_string(eps));
}

constexpr double kTailTarget = 1e-14;
constexpr double kTailLimit = 1e-12;

}  // namespace

double phi(const DampedSumConfig& cfg, double eps, const Point& t)
{
    check_eps(eps);
    const double d = static_cast<double>(t.size());
    const double norm_p = t.cwiseAbs().array().pow(cfg.p).sum();
    return std::pow(eps, -d / cfg.p) * std::exp(-(cfg.c() / eps) * norm_p);
}

Complex phi_hat_1d(const DampedSumConfig& cfg, double eps, Complex z)
{
    check_eps(eps);
    const double p = cfg.p;
    if (p == 2.0 && !cfg.force_quadrature)
        return std::exp(-kPi * eps * z * z);

    // x = w u turns the transform into (1/Gamma(1/p+1)) int_0^U cos(2 pi z w u) e^{-u^p} du.
    const double w = std::pow(eps / cfg.c(), 1.0 / p);
    const double growth = 2.0 * kPi * std::abs(z.imag()) * w;
    const double freq = 2.0 * kPi * std::abs(z.real()) * w;

    // Window: u^p - growth u >= log(1/target), by fixed-point iteration.
    const double target = -std::log(kTailTarget);
    double U = std::pow(target, 1.0 / p);
    for (int it = 0; it < 200; ++it) {
        const double next = std::pow(target + growth * U, 1.0 / p);
        if (std::abs(next - U) < 1e-12 * U) {
            U = next;
            break;
        }
        U = next;
        if (U > 1e8)
            break;
    }
    const double slope = p * std::pow(U, p - 1.0) - growth;
    const double tail = slope > 0.0 ? std::exp(-(std::pow(U, p) - growth * U)) / slope
                                    : std::numeric_limits<double>::infinity();
    if (!(U < 1e8) || !(tail <= kTailLimit))
        throw Error(ErrorCode::QuadratureUnderResolved,
                    "phi_hat tail beyond the quadrature window is " + std::to_string(tail));

    auto integrand = [&](double u) { return std::cos(2.0 * kPi * z * w * u) * std::exp(-std::pow(u, p)); };
    using Rule = boost::math::quadrature::gauss<double, 20>;
    auto panel = [&](double a, double b) {
        Complex acc = 0.0;
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        for (std::size_t i = 0; i < Rule::abscissa().size(); ++i) {
            const double x = Rule::abscissa()[i];
            const double wt = Rule::weights()[i];
            if (x == 0.0) {
                acc += wt * integrand(mid);
            } else {
                acc += wt * (integrand(mid - half * x) + integrand(mid + half * x));
            }
        }
        return half * acc;
    };

    Complex total = 0.0;
    // Geometric grading towards 0, where u^p is not smooth for non-integer p.
    const double h0 = U / static_cast<double>(cfg.quad_points);
    double lo = h0;
    const bool smooth = std::floor(p) == p;
    if (!smooth) {
        double b = h0;
        while (b > 1e-12) {
            const double a = b / 4.0;
            total += panel(a, b);
            b = a;
        }
        total += panel(0.0, b);
    } else {
        total += panel(0.0, h0);
    }
    // Panels short enough for a few radians of phase each.
    const double span = U - lo;
    const int panels = std::max(cfg.quad_points - 1,
                                static_cast<int>(std::ceil(span * freq / 3.0)));
    const double h = span / panels;
    for (int j = 0; j < panels; ++j)
        total += panel(lo + j * h, lo + (j + 1) * h);
    return total / std::tgamma(1.0 / p + 1.0);
}

Complex phi_hat(const DampedSumConfig& cfg, double eps, const ComplexPoint& z)
{
    check_eps(eps);
    if (cfg.p == 2.0 && !cfg.force_quadrature)
        return std::exp(-kPi * eps * bilinear(z, z));
    Complex prod = 1.0;
    for (Eigen::Index k = 0; k < z.size(); ++k)
        prod *= phi_hat_1d(cfg, eps, z(k));
    return prod;
}

Complex cone_transform_at_origin(const SimpleCone& cone, const ComplexPoint& z)
{
    const int d = cone.dim();
    if (z.size() != d)
        throw Error(ErrorCode::DimensionMismatch, "argument and cone dimensions differ");
    Complex denom = 1.0;
    for (int j = 0; j < d; ++j) {
        const Complex pairing = bilinear(cone.generators().col(j), z);
        if (std::abs(pairing) < 1e-14)
            throw Error(ErrorCode::PoleHit, "<w_" + std::to_string(j) + ", z> vanishes");
        denom *= pairing;
    }
    const Complex scale = std::pow(Complex(0.0, -2.0 * kPi), -d);
    return scale * cone.abs_det() / denom;
}

Complex cone_transform(const SimpleCone& cone, const ComplexPoint& z)
{
    return cone_transform_at_origin(cone, z) * std::exp(2.0 * kPi * kI * bilinear(cone.apex(), z));
}

double pole_distance(std::span<const SimpleCone> cones, const ComplexPoint& z)
{
    double best = std::numeric_limits<double>::infinity();
    for (const auto& cone : cones)
        for (int j = 0; j < cone.dim(); ++j)
            best = std::min(best, std::abs(bilinear(cone.generators().col(j), z)));
    return best;
}

}  // namespace solidsum
