#include "solidsum/solid_angle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "combinatorics.hpp"
#include "solidsum/error.hpp"
#include "solidsum/extrapolation.hpp"
#include "solidsum/parallel.hpp"
#include "solidsum/sampling.hpp"

namespace solidsum {

const char* to_string(SolidAngleMethod method)
{
    switch (method) {
    case SolidAngleMethod::Exact: return "exact";
    case SolidAngleMethod::MonteCarloBall: return "monte_carlo_ball";
    case SolidAngleMethod::GaussianLimit: return "gaussian_limit";
    }
    return "unknown";
}

double lp_gaussian_constant(double p)
{
    return std::pow(2.0 * std::tgamma(1.0 / p + 1.0), p);
}

std::vector<double> default_eps_schedule()
{
    std::vector<double> eps;
    for (int k = 0; k < 6; ++k)
        eps.push_back(0.5 * std::ldexp(1.0, -k));
    return eps;
}

namespace {

void check_p(double p)
{
    if (!(p >= 1.0) || !std::isfinite(p))
        throw Error(ErrorCode::InvalidArgument, "p must be a finite real >= 1");
}

double cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b)
{
    return a.x() * b.y() - a.y() * b.x();
}

// The two generators of a planar cone, checked for independence.
std::pair<Eigen::Vector2d, Eigen::Vector2d> planar_generators(const Cone& cone)
{
    if (cone.dim() != 2 || cone.generators.rows() != 2 || cone.generators.cols() != 2)
        throw Error(ErrorCode::DimensionMismatch, "planar cone with two generators expected");
    Eigen::Vector2d u = cone.generators.col(0);
    Eigen::Vector2d v = cone.generators.col(1);
    if (u.norm() == 0.0 || v.norm() == 0.0)
        throw Error(ErrorCode::DegenerateCone, "zero generator");
    if (std::abs(cross(u, v)) <= 1e-12 * u.norm() * v.norm()) {
        if (u.dot(v) < 0.0)
            throw Error(ErrorCode::NotPointed, "generators are antiparallel");
        throw Error(ErrorCode::DegenerateCone, "generators are parallel");
    }
    return {u, v};
}

using Polygon = std::vector<Eigen::Vector2d>;

// Sutherland-Hodgman against {y : cross(a, y) >= 0}.
Polygon clip_left_of(const Polygon& poly, const Eigen::Vector2d& a)
{
    Polygon out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Vector2d& cur = poly[i];
        const Eigen::Vector2d& nxt = poly[(i + 1) % n];
        const double fc = cross(a, cur);
        const double fn = cross(a, nxt);
        if (fc >= 0.0)
            out.push_back(cur);
        if ((fc >= 0.0) != (fn >= 0.0)) {
            const double t = fc / (fc - fn);
            out.push_back(cur + t * (nxt - cur));
        }
    }
    return out;
}

double shoelace(const Polygon& poly)
{
    double area = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i)
        area += cross(poly[i], poly[(i + 1) % poly.size()]);
    return 0.5 * area;
}

struct BlockTally {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::vector<double> level_hits;
};

bool inside(const HalfSpaces& body, const Point& y)
{
    return (body.offsets - body.normals * y).minCoeff() >= 0.0;
}

std::size_t block_count(std::size_t n)
{
    return (n + kSampleBlock - 1) / kSampleBlock;
}

std::size_t block_size(std::size_t n, std::size_t b)
{
    return std::min(kSampleBlock, n - b * kSampleBlock);
}

void check_samples(std::size_t n)
{
    if (n < 1)
        throw Error(ErrorCode::InvalidArgument, "n_samples must be at least 1");
}

}  // namespace

SolidAngleEstimate solid_angle_exact_2d(const Cone& cone)
{
    auto [u, v] = planar_generators(cone);
    const double c = std::clamp(u.dot(v) / (u.norm() * v.norm()), -1.0, 1.0);
    return {std::acos(c) / (2.0 * kPi), 0.0, SolidAngleMethod::Exact};
}

SolidAngleEstimate solid_angle_exact_2d_l1(const Cone& cone)
{
    auto [u, v] = planar_generators(cone);
    if (cross(u, v) < 0.0)
        std::swap(u, v);
    Polygon diamond{{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    // Cone = left of u and right of v.
    Polygon clipped = clip_left_of(diamond, u);
    clipped = clip_left_of(clipped, -v);
    const double area = clipped.size() < 3 ? 0.0 : std::abs(shoelace(clipped));
    return {std::clamp(area / 2.0, 0.0, 1.0), 0.0, SolidAngleMethod::Exact};
}

SolidAngleEstimate solid_angle_mc(const HalfSpaces& body, const Point& x, double p,
                                  double epsilon, std::size_t n_samples, std::uint64_t seed)
{
    check_p(p);
    check_samples(n_samples);
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw Error(ErrorCode::BadEpsilon, "ball radius must be positive, got " +
                                               std::to_string(epsilon));
    if (x.size() != body.dim())
        throw Error(ErrorCode::DimensionMismatch, "point and body dimensions differ");

    const std::size_t blocks = block_count(n_samples);
    std::vector<std::size_t> hits(blocks, 0);
    parallel_for(blocks, [&](std::size_t b) {
        Rng rng = make_rng(seed, b);
        std::size_t count = 0;
        for (std::size_t i = 0; i < block_size(n_samples, b); ++i)
            if (inside(body, x + sample_lp_ball(rng, body.dim(), p, epsilon)))
                ++count;
        hits[b] = count;
    });
    std::size_t total = 0;
    for (std::size_t h : hits)
        total += h;
    const double n = static_cast<double>(n_samples);
    const double value = static_cast<double>(total) / n;
    return {value, std::sqrt(value * (1.0 - value) / n), SolidAngleMethod::MonteCarloBall};
}

SolidAngleEstimate solid_angle_mc(const Cone& cone, const Point& x, double p, double epsilon,
                                  std::size_t n_samples, std::uint64_t seed)
{
    return solid_angle_mc(cone_halfspaces(cone), x, p, epsilon, n_samples, seed);
}

double default_ball_radius(const Polytope& polytope, const Point& x, double p)
{
    check_p(p);
    const Eigen::VectorXd slack = polytope.halfspaces().slack(x);
    const double band = kBoundaryTolerance * std::max(1.0, polytope.scale());
    double nearest = std::numeric_limits<double>::infinity();
    for (Eigen::Index f = 0; f < slack.size(); ++f)
        if (std::abs(slack(f)) > band)
            nearest = std::min(nearest, std::abs(slack(f)));
    if (!std::isfinite(nearest))
        nearest = polytope.scale();
    // The l^p ball of radius r sits in the Euclidean ball of radius r d^{max(0, 1/2 - 1/p)}.
    const double spread = std::pow(static_cast<double>(polytope.dim()),
                                   std::max(0.0, 0.5 - 1.0 / p));
    return 0.5 * nearest / spread;
}

SolidAngleEstimate solid_angle_mc(const Polytope& polytope, const Point& x, double p,
                                  std::optional<double> epsilon, std::size_t n_samples,
                                  std::uint64_t seed)
{
    const double eps = epsilon ? *epsilon : default_ball_radius(polytope, x, p);
    return solid_angle_mc(polytope.halfspaces(), x, p, eps, n_samples, seed);
}

SolidAngleEstimate solid_angle_gaussian(const HalfSpaces& body, const Point& x, double p,
                                        std::span<const double> eps_schedule,
                                        std::size_t n_samples, std::uint64_t seed)
{
    check_p(p);
    check_samples(n_samples);
    const std::vector<double> weights = richardson_weights(eps_schedule);
    if (x.size() != body.dim())
        throw Error(ErrorCode::DimensionMismatch, "point and body dimensions differ");

    const int d = body.dim();
    const std::size_t levels = eps_schedule.size();
    const double c = lp_gaussian_constant(p);
    std::vector<double> widths(levels);
    for (std::size_t k = 0; k < levels; ++k)
        widths[k] = std::pow(eps_schedule[k] / c, 1.0 / p);

    const std::size_t blocks = block_count(n_samples);
    std::vector<BlockTally> tallies(blocks);
    parallel_for(blocks, [&](std::size_t b) {
        Rng rng = make_rng(seed, b);
        BlockTally tally;
        tally.level_hits.assign(levels, 0.0);
        Point g(d);
        for (std::size_t i = 0; i < block_size(n_samples, b); ++i) {
            for (int k = 0; k < d; ++k)
                g(k) = sample_exp_power(rng, p);
            double y = 0.0;
            for (std::size_t k = 0; k < levels; ++k) {
                const double hit = inside(body, x + widths[k] * g) ? 1.0 : 0.0;
                tally.level_hits[k] += hit;
                y += weights[k] * hit;
            }
            tally.sum += y;
            tally.sum_sq += y * y;
        }
        tallies[b] = std::move(tally);
    });

    double sum = 0.0;
    double sum_sq = 0.0;
    std::vector<Complex> level_means(levels, 0.0);
    for (const auto& tally : tallies) {
        sum += tally.sum;
        sum_sq += tally.sum_sq;
        for (std::size_t k = 0; k < levels; ++k)
            level_means[k] += tally.level_hits[k];
    }
    const double n = static_cast<double>(n_samples);
    for (auto& m : level_means)
        m /= n;
    const double mean = sum / n;
    const double variance = std::max(0.0, sum_sq / n - mean * mean);
    const double sampling = std::sqrt(variance / n);
    const double residual = richardson(eps_schedule, level_means, false).error;
    // A finite sample cannot resolve below one count.
    const double error = std::max(std::hypot(sampling, residual), 0.5 / n);
    return {std::clamp(mean, 0.0, 1.0), error, SolidAngleMethod::GaussianLimit};
}

SolidAngleEstimate solid_angle_gaussian(const SimpleCone& cone, const Point& x, double p,
                                        std::span<const double> eps_schedule,
                                        std::size_t n_samples, std::uint64_t seed)
{
    return solid_angle_gaussian(cone.halfspaces(), x, p, eps_schedule, n_samples, seed);
}

// ---------------------------------------------------------------------------
// Deterministic convolution.

namespace {

// The 1-D density exp(-|v|^p) / (2 Gamma(1/p + 1)).
struct ExpPower {
    double p;
    double norm;
    double window;

    explicit ExpPower(double p_)
        : p(p_), norm(1.0 / (2.0 * std::tgamma(1.0 / p_ + 1.0))), window(std::pow(40.0, 1.0 / p_))
    {
    }

    double density(double v) const { return norm * std::exp(-std::pow(std::abs(v), p)); }

    double cdf(double v) const
    {
        if (v == std::numeric_limits<double>::infinity())
            return 1.0;
        if (v == -std::numeric_limits<double>::infinity())
            return 0.0;
        if (p == 2.0)
            return 0.5 * std::erfc(-v);
        const double half = 0.5 * boost::math::gamma_p(1.0 / p, std::pow(std::abs(v), p));
        return v >= 0.0 ? 0.5 + half : 0.5 - half;
    }
};

constexpr double kFlat = 1e-13;

// Mass of {v : A v <= r} under the product density over the cube [-L, L]^k.
double region_mass(const Eigen::MatrixXd& A, const Eigen::VectorXd& r, const ExpPower& rho)
{
    const Eigen::Index k = A.cols();
    const double L = rho.window;

    // Drop constraints satisfied on the whole cube; bail out on one that misses it.
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        const double reach = L * A.row(i).cwiseAbs().sum();
        if (r(i) >= reach)
            continue;
        if (r(i) <= -reach)
            return 0.0;
        keep.push_back(i);
    }
    if (keep.empty())
        return 1.0;

    if (k == 1) {
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
        for (Eigen::Index i : keep) {
            const double a = A(i, 0);
            if (std::abs(a) <= kFlat) {
                if (r(i) < 0.0)
                    return 0.0;
            } else if (a > 0.0) {
                hi = std::min(hi, r(i) / a);
            } else {
                lo = std::max(lo, r(i) / a);
            }
        }
        return hi <= lo ? 0.0 : rho.cdf(hi) - rho.cdf(lo);
    }

    const Eigen::Index m = static_cast<Eigen::Index>(keep.size());
    Eigen::MatrixXd B(m, k);
    Eigen::VectorXd s(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        B.row(i) = A.row(keep[i]);
        s(i) = r(keep[i]);
    }

    // Kinks of the slice mass as a function of the first coordinate.
    std::vector<double> cuts{-L, 0.0, L};
    auto add_cut = [&](double v) {
        if (std::isfinite(v) && v > -L && v < L)
            cuts.push_back(v);
    };
    // Every face of the arrangement lying in a hyperplane v1 = const.
    for (Eigen::Index j = 1; j <= std::min(m, k); ++j) {
        detail::for_each_combination(static_cast<int>(m), static_cast<int>(j),
                                     [&](const std::vector<int>& rows) {
                                         Eigen::MatrixXd M(j, k);
                                         Eigen::VectorXd rhs(j);
                                         for (Eigen::Index q = 0; q < j; ++q) {
                                             M.row(q) = B.row(rows[q]);
                                             rhs(q) = s(rows[q]);
                                         }
                                         Eigen::MatrixXd with_axis(j + 1, k);
                                         with_axis << M, Eigen::RowVectorXd::Unit(k, 0);
                                         Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
                                         lu.setThreshold(1e-10);
                                         Eigen::FullPivLU<Eigen::MatrixXd> lu_axis(with_axis);
                                         lu_axis.setThreshold(1e-10);
                                         if (lu.rank() != lu_axis.rank())
                                             return;
                                         const Eigen::VectorXd v =
                                             M.completeOrthogonalDecomposition().solve(rhs);
                                         if ((M * v - rhs).norm() > 1e-9 * (1.0 + rhs.norm()))
                                             return;
                                         add_cut(v(0));
                                     });
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-13; }),
               cuts.end());

    const Eigen::MatrixXd rest = B.rightCols(k - 1);
    const Eigen::VectorXd first = B.col(0);
    auto slice = [&](double v) {
        return rho.density(v) * region_mass(rest, s - first * v, rho);
    };
    double total = 0.0;
    for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
        if (cuts[j + 1] - cuts[j] < 1e-14)
            continue;
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
            slice, cuts[j], cuts[j + 1], 12, 1e-13);
    }
    return total;
}

}  // namespace

double gaussian_convolution(const HalfSpaces& body, const Point& x, double p, double eps)
{
    check_p(p);
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw Error(ErrorCode::BadEpsilon, "eps must be positive");
    if (x.size() != body.dim())
        throw Error(ErrorCode::DimensionMismatch, "point and body dimensions differ");
    if (body.size() == 0)
        return 1.0;
    const double width = std::pow(eps / lp_gaussian_constant(p), 1.0 / p);
    const Eigen::VectorXd r = (body.offsets - body.normals * x) / width;
    return std::clamp(region_mass(body.normals, r, ExpPower(p)), 0.0, 1.0);
}

// ---------------------------------------------------------------------------

SolidAngleEstimate polytope_solid_angle(const Polytope& polytope, const Point& x, double p,
                                        bool prefer_exact, std::size_t n_samples,
                                        std::uint64_t seed)
{
    check_p(p);
    if (x.size() != polytope.dim())
        throw Error(ErrorCode::DimensionMismatch, "point and polytope dimensions differ");
    const Eigen::VectorXd slack = polytope.halfspaces().slack(x);
    const double band = kBoundaryTolerance * std::max(1.0, polytope.scale());
    if (slack.minCoeff() < -band)
        return {0.0, 0.0, SolidAngleMethod::Exact};

    const std::vector<int> incident = polytope.incident_facets(x);
    if (incident.empty())
        return {1.0, 0.0, SolidAngleMethod::Exact};
    if (incident.size() == 1)
        return {0.5, 0.0, SolidAngleMethod::Exact};

    HalfSpaces local;
    local.normals.resize(static_cast<Eigen::Index>(incident.size()), polytope.dim());
    for (std::size_t i = 0; i < incident.size(); ++i)
        local.normals.row(static_cast<Eigen::Index>(i)) =
            polytope.facets()[incident[i]].normal.transpose();
    local.offsets = local.normals * x;

    const int d = polytope.dim();
    if (d == 2 && prefer_exact && (p == 1.0 || p == 2.0)) {
        // Edge directions: along each facet line, pointing into the other half-plane.
        Eigen::MatrixXd gens(2, 2);
        for (int j = 0; j < 2; ++j) {
            const Eigen::Vector2d n = local.normals.row(j).transpose();
            const Eigen::Vector2d other = local.normals.row(1 - j).transpose();
            Eigen::Vector2d dir(-n.y(), n.x());
            if (other.dot(dir) > 0.0)
                dir = -dir;
            gens.col(j) = dir;
        }
        const Cone cone{x, gens};
        return p == 2.0 ? solid_angle_exact_2d(cone) : solid_angle_exact_2d_l1(cone);
    }
    if (d == 3 && p == 2.0 && incident.size() == 2) {
        const double cosine =
            std::clamp(local.normals.row(0).dot(local.normals.row(1)), -1.0, 1.0);
        return {(kPi - std::acos(cosine)) / (2.0 * kPi), 0.0, SolidAngleMethod::Exact};
    }
    return solid_angle_mc(local, x, p, 1.0, n_samples, seed);
}

}  // namespace solidsum
