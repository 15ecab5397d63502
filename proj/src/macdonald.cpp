#include "solidsum/macdonald.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "solidsum/error.hpp"
#include "solidsum/sampling.hpp"

namespace solidsum {

namespace {

std::string describe(const ComplexPoint& s)
{
    std::ostringstream out;
    out.precision(17);
    for (Eigen::Index k = 0; k < s.size(); ++k) {
        if (k)
            out << ",";
        out << s(k).real() << (s(k).imag() < 0 ? "-" : "+") << std::abs(s(k).imag()) << "i";
    }
    return out.str();
}

std::string describe(const Point& x)
{
    std::ostringstream out;
    out.precision(17);
    for (Eigen::Index k = 0; k < x.size(); ++k)
        out << (k ? "," : "") << x(k);
    return out.str();
}

std::string describe(double v)
{
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

double parity(int d)
{
    return d % 2 == 0 ? 1.0 : -1.0;
}

}  // namespace

MacdonaldEvaluation A_of_t_s(const Polytope& polytope,
                             const std::vector<std::vector<SimpleCone>>& vertex_cones, double t,
                             const ComplexPoint& s, const DampedSumConfig& cfg)
{
    cfg.validate();
    if (s.size() != polytope.dim())
        throw Error(ErrorCode::DimensionMismatch, "s and polytope dimensions differ");
    if (!std::isfinite(t))
        throw Error(ErrorCode::InvalidArgument, "t must be finite");

    std::vector<ConeSumTerm> terms;
    std::vector<std::size_t> owner;
    for (std::size_t v = 0; v < vertex_cones.size(); ++v)
        for (const auto& cone : vertex_cones[v]) {
            terms.push_back({1.0, cone.with_apex(t * cone.apex())});
            owner.push_back(v);
        }

    const std::size_t levels = cfg.eps_schedule.size();
    const std::size_t n_vertices = vertex_cones.size();
    std::vector<std::vector<Complex>> vertex_levels(levels, std::vector<Complex>(n_vertices));
    std::vector<Complex> totals(levels);
    double roundoff = 0.0;
    double abs_scale = 0.0;
    for (std::size_t k = 0; k < levels; ++k) {
        const DampedSum sum = damped_transform_sum(terms, s, cfg, cfg.eps_schedule[k]);
        for (std::size_t q = 0; q < terms.size(); ++q)
            vertex_levels[k][owner[q]] += sum.per_term[q];
        totals[k] = sum.value;
        roundoff = std::max(roundoff, 1e-15 * sum.abs_sum);
        abs_scale = std::max(abs_scale, sum.abs_sum);
    }

    MacdonaldEvaluation out;
    out.t = t;
    out.s = s;
    out.extrapolation = richardson(cfg.eps_schedule, totals, true, 1e-13 * abs_scale);
    const std::vector<double> weights = richardson_weights(cfg.eps_schedule);
    out.value = 0.0;
    for (std::size_t v = 0; v < n_vertices; ++v) {
        Complex partial = 0.0;
        for (std::size_t k = 0; k < levels; ++k)
            partial += weights[k] * vertex_levels[k][v];
        out.per_vertex.push_back({polytope.vertex(static_cast<Eigen::Index>(v)), partial});
        out.value += partial;
    }
    out.error = out.extrapolation.error + roundoff;
    return out;
}

MacdonaldEvaluation A_of_t_s(const Polytope& polytope, double t, const ComplexPoint& s,
                             const DampedSumConfig& cfg)
{
    return A_of_t_s(polytope, vertex_simple_cones(polytope), t, s, cfg);
}

namespace {

std::vector<SimpleCone> flatten(const std::vector<std::vector<SimpleCone>>& vertex_cones)
{
    std::vector<SimpleCone> out;
    for (const auto& list : vertex_cones)
        out.insert(out.end(), list.begin(), list.end());
    return out;
}

bool certified(std::span<const SimpleCone> cones, const Point& direction,
               const std::vector<double>& sigmas, int R, double threshold)
{
    const int d = static_cast<int>(direction.size());
    for (const auto& cone : cones)
        for (int j = 0; j < d; ++j) {
            const Point w = cone.generators().col(j);
            const double slope = w.dot(direction);
            // |<w, m> + sigma <w, x>| over the box; only near-cancelling m matter.
            LatticePoint m = LatticePoint::Constant(d, -R);
            for (;;) {
                const double base = w.dot(m.cast<double>());
                for (double sigma : sigmas)
                    if (std::abs(base + sigma * slope) <= threshold)
                        return false;
                int k = 0;
                while (k < d && m(k) == R) {
                    m(k) = -R;
                    ++k;
                }
                if (k == d)
                    break;
                ++m(k);
            }
        }
    return true;
}

std::vector<double> sigma_schedule_for(const Polytope& polytope, double t, const Point& x)
{
    double extent = 0.0;
    for (Eigen::Index v = 0; v < polytope.num_vertices(); ++v)
        extent = std::max(extent, std::abs(t) * std::abs(polytope.vertex(v).dot(x)));
    const double top = std::min(0.1, 0.05 / (2.0 * kPi * std::max(1.0, extent)));
    std::vector<double> sigmas;
    for (int k = 0; k < 7; ++k)
        sigmas.push_back(top * std::pow(10.0, -k / 6.0));
    return sigmas;
}

// Least-squares polynomial in u = sigma / sigma_max; returns coefficients,
// rms residual and the intercept's variance factor.
struct Fit {
    Eigen::VectorXd coef;
    double rms = 0.0;
    double intercept_factor = 0.0;
};

Fit poly_fit(const std::vector<double>& sigmas, const Eigen::VectorXd& y, int degree)
{
    const Eigen::Index n = static_cast<Eigen::Index>(sigmas.size());
    const double top = *std::max_element(sigmas.begin(), sigmas.end());
    Eigen::MatrixXd A(n, degree + 1);
    for (Eigen::Index i = 0; i < n; ++i)
        for (int j = 0; j <= degree; ++j)
            A(i, j) = std::pow(sigmas[i] / top, j);
    Fit fit;
    fit.coef = A.colPivHouseholderQr().solve(y);
    const Eigen::VectorXd res = A * fit.coef - y;
    fit.rms = std::sqrt(res.squaredNorm() / static_cast<double>(n));
    const Eigen::MatrixXd gram_inv = (A.transpose() * A).inverse();
    fit.intercept_factor = std::sqrt(std::max(0.0, gram_inv(0, 0)));
    return fit;
}

}  // namespace

LimitConfig resolve_limit_config(const Polytope& polytope, double t, const LimitConfig& limit_cfg,
                                 const DampedSumConfig& cfg)
{
    const int d = polytope.dim();
    LimitConfig out = limit_cfg;
    if (out.fit_degree < 0)
        out.fit_degree = d + 1;
    if (out.direction.size() != 0 && out.direction.size() != d)
        throw Error(ErrorCode::DimensionMismatch, "limit direction has the wrong length");
    if (out.direction.size() == d && out.direction.norm() == 0.0)
        throw Error(ErrorCode::InvalidArgument, "limit direction must be nonzero");

    const auto cones = flatten(vertex_simple_cones(polytope));
    int R = 0;
    for (double eps : cfg.eps_schedule)
        R = std::max(R, cfg.radius_for(eps));

    const bool fixed_direction = out.direction.size() == d;
    Rng rng = make_rng(out.seed, 0);
    std::uniform_int_distribution<int> numer(1, 9);
    std::uniform_int_distribution<int> denom(1, 9);
    Point candidate = fixed_direction ? out.direction : Point::Ones(d);
    for (int attempt = 0; attempt < 32; ++attempt) {
        std::vector<double> sigmas = out.sigma_schedule.empty()
                                         ? sigma_schedule_for(polytope, t, candidate)
                                         : out.sigma_schedule;
        if (certified(cones, candidate, sigmas, R, out.certify_threshold)) {
            out.direction = candidate;
            out.sigma_schedule = sigmas;
            if (static_cast<int>(out.sigma_schedule.size()) <= out.fit_degree)
                throw Error(ErrorCode::ScheduleTooShort,
                            "sigma schedule needs more points than the fit degree");
            return out;
        }
        if (fixed_direction)
            throw Error(ErrorCode::PoleHit,
                        "direction " + describe(candidate) + " meets a pole on the sigma schedule");
        for (int k = 0; k < d; ++k)
            candidate(k) = static_cast<double>(numer(rng)) / denom(rng);
    }
    throw Error(ErrorCode::PoleHit, "no generic direction found");
}

LimitResult A_of_t(const Polytope& polytope, double t, const LimitConfig& limit_cfg,
                   const DampedSumConfig& cfg)
{
    const LimitConfig lc = resolve_limit_config(polytope, t, limit_cfg, cfg);
    const auto vertex_cones = vertex_simple_cones(polytope);
    const std::size_t n = lc.sigma_schedule.size();
    const std::size_t levels = cfg.eps_schedule.size();

    LimitResult out;
    out.t = t;
    out.direction = lc.direction;
    out.sigmas = lc.sigma_schedule;
    Eigen::VectorXd re(n), im(n);
    std::vector<Eigen::VectorXd> level_re(levels, Eigen::VectorXd(n));
    double max_error = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const ComplexPoint s = complexify(lc.sigma_schedule[i] * lc.direction);
        const MacdonaldEvaluation eval = A_of_t_s(polytope, vertex_cones, t, s, cfg);
        out.values.push_back(eval.value);
        out.errors.push_back(eval.error);
        re(static_cast<Eigen::Index>(i)) = eval.value.real();
        im(static_cast<Eigen::Index>(i)) = eval.value.imag();
        for (std::size_t k = 0; k < levels; ++k)
            level_re[k](static_cast<Eigen::Index>(i)) = eval.extrapolation.levels[k].real();
        max_error = std::max(max_error, eval.error);
    }

    const Fit fit_re = poly_fit(lc.sigma_schedule, re, lc.fit_degree);
    const Fit fit_im = poly_fit(lc.sigma_schedule, im, lc.fit_degree);
    out.value = fit_re.coef(0);
    out.imaginary = fit_im.coef(0);
    out.fit_residual = fit_re.rms;
    const double dof = static_cast<double>(n) / static_cast<double>(n - lc.fit_degree - 1);
    out.error = max_error + fit_re.rms * std::sqrt(dof) * fit_re.intercept_factor;

    std::vector<Complex> intercepts;
    for (std::size_t k = 0; k < levels; ++k)
        intercepts.push_back(poly_fit(lc.sigma_schedule, level_re[k], lc.fit_degree).coef(0));
    out.swapped_order_value = richardson(cfg.eps_schedule, intercepts, false).value.real();

    const double scale = 1.0 + std::abs(out.value);
    if (std::abs(out.imaginary) > 1e-6 * scale)
        throw Error(ErrorCode::ImaginaryResidue,
                    "imaginary part " + describe(out.imaginary) + " left at sigma = 0");
    if (fit_re.rms > 10.0 * max_error && fit_re.rms > 1e-6 * scale)
        throw Error(ErrorCode::PoorFit, "fit residual " + describe(fit_re.rms) +
                                            " exceeds the point errors (" +
                                            describe(max_error) + ")");
    return out;
}

VerificationReport verify_cone_reciprocity(const SimpleCone& cone, const Point& shift,
                                           const ComplexPoint& s, const DampedSumConfig& cfg,
                                           double tolerance)
{
    cfg.validate();
    const int d = cone.dim();
    if (shift.size() != d || s.size() != d)
        throw Error(ErrorCode::DimensionMismatch, "shift, s and cone dimensions differ");
    const Point apex = cone.apex() + shift;
    const std::vector<ConeSumTerm> plus{{1.0, cone.with_apex(apex)}};
    const std::vector<ConeSumTerm> minus{{1.0, cone.with_apex(-apex)}};
    const ComplexPoint neg_s = -s;
    const double sign = parity(d);

    auto fixed_residual = [&](double eps) {
        const Complex lhs = damped_transform_sum(plus, neg_s, cfg, eps).value;
        const Complex rhs = damped_transform_sum(minus, s, cfg, eps).value;
        return std::pair{lhs, rhs};
    };

    std::vector<Complex> lhs_levels, rhs_levels;
    double worst = 0.0;
    for (double eps : cfg.eps_schedule) {
        auto [l, r] = fixed_residual(eps);
        lhs_levels.push_back(l);
        rhs_levels.push_back(r);
        worst = std::max(worst, std::abs(l - sign * r));
    }
    auto [l05, r05] = fixed_residual(0.05);

    VerificationReport report;
    report.identity = "cone_reciprocity";
    report.inputs = {{"generators_det", describe(cone.det())},
                     {"apex", describe(apex)},
                     {"s", describe(s)},
                     {"p", describe(cfg.p)}};
    const Extrapolation lhs = richardson(cfg.eps_schedule, lhs_levels);
    const Extrapolation rhs = richardson(cfg.eps_schedule, rhs_levels);
    report.lhs = lhs.value;
    report.rhs = rhs.value;
    report.residual = std::abs(lhs.value - sign * rhs.value);
    report.tolerance = tolerance;
    report.pass = report.residual < tolerance;
    report.diagnostics = {{"fixed_eps_residual_max", worst},
                          {"residual_eps_0.05", std::abs(l05 - sign * r05)},
                          {"lhs_error", lhs.error},
                          {"rhs_error", rhs.error},
                          {"sign", sign}};
    return report;
}

VerificationReport verify_brion(const Polytope& polytope, const ComplexPoint& s,
                                const DampedSumConfig& cfg, double tolerance)
{
    const Estimate<Complex> direct = alpha_polytope_direct(polytope, s, cfg.p);
    const MacdonaldEvaluation cones = A_of_t_s(polytope, 1.0, s, cfg);

    VerificationReport report;
    report.identity = "brion";
    report.inputs = {{"s", describe(s)}, {"p", describe(cfg.p)}};
    report.lhs = direct.value;
    report.rhs = cones.value;
    report.residual = std::abs(direct.value - cones.value);
    report.tolerance = tolerance;
    report.pass = report.residual < tolerance;
    report.diagnostics = {{"lhs_error", direct.error}, {"rhs_error", cones.error}};
    for (const auto& partial : cones.per_vertex)
        report.partials.push_back(partial.value);
    return report;
}

VerificationReport verify_macdonald(const Polytope& polytope, double t, const ComplexPoint& s,
                                    const DampedSumConfig& cfg, double tolerance)
{
    const auto vertex_cones = vertex_simple_cones(polytope);
    const MacdonaldEvaluation lhs = A_of_t_s(polytope, vertex_cones, -t, s, cfg);
    const MacdonaldEvaluation rhs = A_of_t_s(polytope, vertex_cones, t, -s, cfg);
    const double sign = parity(polytope.dim());

    double worst = 0.0;
    for (std::size_t k = 0; k < cfg.eps_schedule.size(); ++k)
        worst = std::max(worst, std::abs(lhs.extrapolation.levels[k] -
                                         sign * rhs.extrapolation.levels[k]));

    VerificationReport report;
    report.identity = "macdonald_reciprocity";
    report.inputs = {{"t", describe(t)}, {"s", describe(s)}, {"p", describe(cfg.p)}};
    report.lhs = lhs.value;
    report.rhs = rhs.value;
    report.residual = std::abs(lhs.value - sign * rhs.value);
    report.tolerance = tolerance;
    report.pass = report.residual < tolerance;
    report.diagnostics = {{"fixed_eps_residual_max", worst},
                          {"lhs_error", lhs.error},
                          {"rhs_error", rhs.error},
                          {"sign", sign}};
    return report;
}

ConjectureResult conjecture_check(const Polytope& polytope, const DampedSumConfig& cfg,
                                  const LimitConfig& limit_cfg, double tolerance)
{
    ConjectureResult out;
    out.limit = A_of_t(polytope, 0.0, limit_cfg, cfg);
    out.odd_dimension = polytope.dim() % 2 == 1;
    out.tolerance = tolerance;
    out.pass = std::abs(out.limit.value) < tolerance;
    return out;
}

int brianchon_gram_sum(const Polytope& polytope, const std::vector<Face>& faces, const Point& x)
{
    int total = 0;
    for (const auto& face : faces) {
        bool inside = true;
        for (int f : face.facet_indices) {
            const Facet& facet = polytope.facets()[f];
            if (facet.normal.dot(x) > facet.offset) {
                inside = false;
                break;
            }
        }
        if (inside)
            total += face.sign();
    }
    return total;
}

BrianchonGramReport brianchon_gram_check(const Polytope& polytope, std::size_t n_points,
                                         std::uint64_t seed)
{
    const auto all_faces = faces(polytope);
    const int d = polytope.dim();
    const Point lo = polytope.vertices().rowwise().minCoeff();
    const Point hi = polytope.vertices().rowwise().maxCoeff();
    const Point span = hi - lo;
    const double band = 1e-9 * std::max(1.0, polytope.scale());

    Rng rng = make_rng(seed, 0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> pick_facet(0, polytope.facets().size() - 1);
    std::exponential_distribution<double> expo(1.0);

    auto draw = [&](std::size_t i) {
        Point x(d);
        switch (i % 3) {
        case 0:
            for (int k = 0; k < d; ++k)
                x(k) = lo(k) + span(k) * unit(rng);
            break;
        case 1:
            for (int k = 0; k < d; ++k)
                x(k) = lo(k) - span(k) + 3.0 * span(k) * unit(rng);
            break;
        default: {
            const Facet& facet = polytope.facets()[pick_facet(rng)];
            x.setZero();
            double total = 0.0;
            for (int v : facet.vertices) {
                const double w = expo(rng);
                x += w * polytope.vertex(v);
                total += w;
            }
            x /= total;
            x += facet.normal * (2e-3 * unit(rng) - 1e-3) * std::max(1.0, polytope.scale());
        }
        }
        return x;
    };

    BrianchonGramReport report;
    report.n_points = n_points;
    for (std::size_t i = 0; i < n_points; ++i) {
        Point x = draw(i);
        while (polytope.halfspaces().slack(x).cwiseAbs().minCoeff() < band)
            x = draw(i);
        const int lhs = polytope.contains(x, 0.0) ? 1 : 0;
        report.n_inside += static_cast<std::size_t>(lhs);
        if (brianchon_gram_sum(polytope, all_faces, x) != lhs) {
            ++report.n_failures;
            report.counterexamples.push_back(x);
        }
    }
    report.pass = report.n_failures == 0;
    return report;
}

}  // namespace solidsum
