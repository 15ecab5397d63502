#include "solidsum/lattice_sum.hpp"

#include <cmath>
#include <complex>
#include <string>

#include "solidsum/error.hpp"
#include "solidsum/parallel.hpp"
#include "solidsum/solid_angle.hpp"

namespace solidsum {

void check_strip(const ComplexPoint& s)
{
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        if (!std::isfinite(s(k).real()) || !std::isfinite(s(k).imag()))
            throw Error(ErrorCode::InvalidArgument, "s has non-finite entries");
        if (std::abs(s(k).imag()) > kMaxImaginary)
            throw Error(ErrorCode::InvalidArgument,
                        "|Im s_" + std::to_string(k) + "| exceeds " + std::to_string(kMaxImaginary));
    }
}

namespace {

std::string format_point(const LatticePoint& m)
{
    std::string out = "(";
    for (Eigen::Index k = 0; k < m.size(); ++k)
        out += (k ? "," : "") + std::to_string(m(k));
    return out + ")";
}

// Calls visit(m) for every m in the box lo <= m <= hi, first coordinate fixed to `first`.
template <typename Visit>
void for_each_in_slice(std::int64_t first, const LatticePoint& lo, const LatticePoint& hi,
                       Visit&& visit)
{
    const Eigen::Index d = lo.size();
    LatticePoint m = lo;
    m(0) = first;
    if (d == 1) {
        visit(m);
        return;
    }
    for (;;) {
        visit(m);
        Eigen::Index k = 1;
        while (k < d && m(k) == hi(k)) {
            m(k) = lo(k);
            ++k;
        }
        if (k == d)
            return;
        ++m(k);
    }
}

using LComplex = std::complex<long double>;

// Neumaier compensated sum; vertex-cone series cancel heavily near s = 0.
class CompensatedSum {
public:
    void add(LComplex x)
    {
        add_part(re_, re_c_, x.real());
        add_part(im_, im_c_, x.imag());
    }
    void add(const CompensatedSum& other)
    {
        add(LComplex(other.re_, other.im_));
        add(LComplex(other.re_c_, other.im_c_));
    }
    LComplex value() const { return {re_ + re_c_, im_ + im_c_}; }

private:
    static void add_part(long double& sum, long double& comp, long double x)
    {
        const long double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    long double re_ = 0.0L, re_c_ = 0.0L, im_ = 0.0L, im_c_ = 0.0L;
};

LComplex widen(Complex z) { return {z.real(), z.imag()}; }

// Plain arithmetic; the std::complex<long double> operators go through slow checked libcalls.
struct Ext {
    long double re = 0.0L, im = 0.0L;
};

inline Ext mul(Ext a, Ext b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

inline Ext div(Ext a, Ext b)
{
    const long double n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

// e^{2 pi i z}
inline Ext exp_2pi_i(Ext z, long double two_pi)
{
    const long double mag = std::exp(-two_pi * z.im);
    const long double arg = two_pi * z.re;
    return {mag * std::cos(arg), mag * std::sin(arg)};
}

}  // namespace

DampedSum damped_transform_sum(std::span<const ConeSumTerm> terms, const ComplexPoint& s,
                               const DampedSumConfig& cfg, double eps)
{
    cfg.validate();
    check_strip(s);
    if (terms.empty())
        return {};
    const int d = terms.front().cone.dim();
    if (s.size() != d)
        throw Error(ErrorCode::DimensionMismatch, "s and cone dimensions differ");
    for (const auto& term : terms)
        if (term.cone.dim() != d)
            throw Error(ErrorCode::DimensionMismatch, "terms of mixed dimension");
    if (!(eps > 0.0))
        throw Error(ErrorCode::BadEpsilon, "eps must be positive");

    const int R = cfg.radius_for(eps);
    const std::size_t width = static_cast<std::size_t>(2 * R + 1);

    // Terms are evaluated in extended precision: near-pole terms are large and cancel across cones.
    const long double pi_l = 3.141592653589793238462643383279502884L;
    const bool closed_form = cfg.p == 2.0 && !cfg.force_quadrature;

    // phi^ factorizes over coordinates: tabulate once per axis.
    std::vector<std::vector<LComplex>> damping(d, std::vector<LComplex>(width));
    for (int k = 0; k < d; ++k)
        for (int j = -R; j <= R; ++j) {
            const Complex zk = Complex(j) + s(k);
            if (closed_form) {
                const LComplex zl = LComplex(static_cast<long double>(j)) + widen(s(k));
                damping[k][j + R] = std::exp(-pi_l * static_cast<long double>(eps) * zl * zl);
            } else {
                damping[k][j + R] = widen(phi_hat_1d(cfg, eps, zk));
            }
        }

    const LatticePoint lo = LatticePoint::Constant(d, -R);
    const LatticePoint hi = LatticePoint::Constant(d, R);
    const std::size_t n_terms = terms.size();

    struct Slice {
        std::vector<CompensatedSum> per_term;
        double tail = 0.0;
        double abs_sum = 0.0;
    };
    std::vector<Slice> slices(width);
    struct ExtCone {
        std::vector<long double> generators;  // column-major d x d
        std::vector<Ext> phase;  // e^{2 pi i apex_k (j + s_k)}, indexed k * width + j + R
        long double abs_det;
        double coefficient_abs;
    };
    std::vector<ExtCone> cones(n_terms);
    for (std::size_t q = 0; q < n_terms; ++q) {
        const SimpleCone& cone = terms[q].cone;
        cones[q].generators.resize(static_cast<std::size_t>(d * d));
        cones[q].phase.resize(static_cast<std::size_t>(d) * width);
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                cones[q].generators[static_cast<std::size_t>(j * d + k)] = cone.generators()(k, j);
        for (int k = 0; k < d; ++k) {
            const long double a = cone.apex()(k);
            for (int j = -R; j <= R; ++j)
                cones[q].phase[static_cast<std::size_t>(k) * width + j + R] = exp_2pi_i(
                    {a * (static_cast<long double>(j) + s(k).real()), a * s(k).imag()},
                    2.0L * pi_l);
        }
        cones[q].abs_det = cone.abs_det();
        cones[q].coefficient_abs = std::abs(terms[q].coefficient);
    }
    const long double pole_sq = static_cast<long double>(cfg.pole_threshold) * cfg.pole_threshold;

    parallel_for(width, [&](std::size_t i) {
        Slice slice;
        slice.per_term.assign(n_terms, CompensatedSum{});
        std::vector<Ext> z(static_cast<std::size_t>(d));
        for_each_in_slice(static_cast<std::int64_t>(i) - R, lo, hi, [&](const LatticePoint& m) {
            Ext damp{1.0L, 0.0L};
            for (int k = 0; k < d; ++k) {
                z[k] = {static_cast<long double>(m(k)) + s(k).real(), s(k).imag()};
                const LComplex& f = damping[k][m(k) + R];
                damp = mul(damp, {f.real(), f.imag()});
            }
            const bool outer = m.cwiseAbs().maxCoeff() == R;
            for (std::size_t q = 0; q < n_terms; ++q) {
                const ExtCone& cone = cones[q];
                Ext denom{1.0L, 0.0L};
                for (int j = 0; j < d; ++j) {
                    Ext pairing;
                    for (int k = 0; k < d; ++k) {
                        const long double g = cone.generators[static_cast<std::size_t>(j * d + k)];
                        pairing.re += g * z[k].re;
                        pairing.im += g * z[k].im;
                    }
                    if (pairing.re * pairing.re + pairing.im * pairing.im <= pole_sq)
                        throw Error(ErrorCode::PoleHit,
                                    "<w_" + std::to_string(j) + ", m + s> vanishes at m = " +
                                        format_point(m));
                    denom = mul(denom, pairing);
                }
                Ext value = damp;
                for (int k = 0; k < d; ++k)
                    value = mul(value, cone.phase[static_cast<std::size_t>(k) * width + m(k) + R]);
                value = div(value, denom);
                value.re *= cone.abs_det;
                value.im *= cone.abs_det;
                slice.per_term[q].add(LComplex(value.re, value.im));
                const double re = static_cast<double>(value.re);
                const double im = static_cast<double>(value.im);
                const double mag = cone.coefficient_abs * std::sqrt(re * re + im * im);
                slice.abs_sum += mag;
                if (outer)
                    slice.tail += mag;
            }
        });
        slices[i] = std::move(slice);
    });

    DampedSum out;
    out.radius = R;
    std::vector<CompensatedSum> totals(n_terms);
    for (const auto& slice : slices) {
        for (std::size_t q = 0; q < n_terms; ++q)
            totals[q].add(slice.per_term[q]);
        out.tail += slice.tail;
        out.abs_sum += slice.abs_sum;
    }
    const Complex scale = std::pow(Complex(0.0, -2.0 * kPi), -d);
    CompensatedSum value;
    for (std::size_t q = 0; q < n_terms; ++q) {
        const LComplex total = totals[q].value();
        out.per_term.push_back(Complex(static_cast<double>(total.real()),
                                       static_cast<double>(total.imag())) *
                               scale);
        value.add(widen(terms[q].coefficient) * total);
    }
    const LComplex v = value.value();
    out.value = Complex(static_cast<double>(v.real()), static_cast<double>(v.imag())) * scale;
    const double factor = std::pow(2.0 * kPi, -d);
    out.tail *= factor;
    out.abs_sum *= factor;
    return out;
}

namespace {

Complex direct_sum_over_box(const HalfSpaces& body, const LatticePoint& lo,
                            const LatticePoint& hi, const ComplexPoint& s,
                            const DampedSumConfig& cfg, double eps)
{
    const std::size_t width = static_cast<std::size_t>(hi(0) - lo(0) + 1);
    std::vector<Complex> slices(width, 0.0);
    parallel_for(width, [&](std::size_t i) {
        Complex acc = 0.0;
        for_each_in_slice(lo(0) + static_cast<std::int64_t>(i), lo, hi,
                          [&](const LatticePoint& m) {
                              const Point x = m.cast<double>();
                              const double weight = gaussian_convolution(body, x, cfg.p, eps);
                              if (weight != 0.0)
                                  acc += weight * std::exp(2.0 * kPi * kI * bilinear(s, x));
                          });
        slices[i] = acc;
    });
    Complex total = 0.0;
    for (const auto& v : slices)
        total += v;
    return total;
}

// Half-width of the kernel support beyond which its mass is negligible.
double kernel_reach(double p, double eps)
{
    return std::pow(eps / lp_gaussian_constant(p), 1.0 / p) * std::pow(40.0, 1.0 / p) *
           std::sqrt(3.0);
}

}  // namespace

Complex damped_direct_sum(const Polytope& polytope, const ComplexPoint& s,
                          const DampedSumConfig& cfg, double eps)
{
    cfg.validate();
    check_strip(s);
    if (s.size() != polytope.dim())
        throw Error(ErrorCode::DimensionMismatch, "s and polytope dimensions differ");
    const double reach = kernel_reach(cfg.p, eps);
    const Point lo = polytope.vertices().rowwise().minCoeff().array() - reach;
    const Point hi = polytope.vertices().rowwise().maxCoeff().array() + reach;
    return direct_sum_over_box(polytope.halfspaces(), lo.array().ceil().cast<std::int64_t>(),
                               hi.array().floor().cast<std::int64_t>(), s, cfg, eps);
}

Complex damped_direct_sum(const SimpleCone& cone, const ComplexPoint& s,
                          const DampedSumConfig& cfg, double eps)
{
    cfg.validate();
    check_strip(s);
    const int d = cone.dim();
    if (s.size() != d)
        throw Error(ErrorCode::DimensionMismatch, "s and cone dimensions differ");
    const Point im = s.imag();
    // Slowest decay rate of e^{-2 pi <Im s, x>} along the cone.
    double rate = std::numeric_limits<double>::infinity();
    for (int j = 0; j < d; ++j) {
        const Point w = cone.generators().col(j);
        rate = std::min(rate, im.dot(w) / w.norm());
    }
    if (!(rate > 0.0))
        throw Error(ErrorCode::ConvergenceDomain,
                    "-Im s is not in the interior of the polar cone");
    // Terms at distance r along the cone are below e^{-2 pi rate r}; stop at 1e-15.
    const double reach = 35.0 / (2.0 * kPi * rate) + kernel_reach(cfg.p, eps);
    const double radius = cfg.truncation_radius > 0 ? cfg.truncation_radius : reach;
    const Point lo = cone.apex().array() - radius;
    const Point hi = cone.apex().array() + radius;
    return direct_sum_over_box(cone.halfspaces(), lo.array().ceil().cast<std::int64_t>(),
                               hi.array().floor().cast<std::int64_t>(), s, cfg, eps);
}

Extrapolation extrapolate_eps(const std::function<Complex(double)>& evaluate,
                              const DampedSumConfig& cfg)
{
    std::vector<Complex> values;
    values.reserve(cfg.eps_schedule.size());
    for (double eps : cfg.eps_schedule)
        values.push_back(evaluate(eps));
    return richardson(cfg.eps_schedule, values);
}

Estimate<Complex> alpha_polytope_direct(const Polytope& polytope, const ComplexPoint& s,
                                        double p, std::size_t n_samples, std::uint64_t seed)
{
    OracleOptions options;
    options.p = p;
    options.method = OracleMethod::Auto;
    options.n_samples = n_samples;
    options.seed = seed;
    return alpha_oracle(polytope, s, options);
}

}  // namespace solidsum
