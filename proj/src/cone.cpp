#include "solidsum/cone.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "combinatorics.hpp"
#include "solidsum/error.hpp"

namespace solidsum {

namespace {

constexpr double kRelativeDetTolerance = 1e-12;

bool antiparallel(const Point& a, const Point& b)
{
    const double na = a.norm(), nb = b.norm();
    return a.dot(b) < 0.0 && std::abs(a.dot(b) + na * nb) <= 1e-12 * na * nb;
}

int column_rank(const Eigen::MatrixXd& m)
{
    if (m.cols() == 0)
        return 0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-10);
    return static_cast<int>(lu.rank());
}

}  // namespace

SimpleCone::SimpleCone(Point apex, Eigen::MatrixXd generators)
    : apex_(std::move(apex)), generators_(std::move(generators))
{
    const int d = dim();
    if (generators_.rows() != d || generators_.cols() != d)
        throw Error(ErrorCode::DimensionMismatch,
                    "simple cone in dimension " + std::to_string(d) + " needs a " +
                        std::to_string(d) + "x" + std::to_string(d) + " generator matrix");
    det_ = generators_.determinant();
    const double scale = generators_.colwise().norm().prod();
    if (!(std::abs(det_) > kRelativeDetTolerance * scale))
        throw Error(ErrorCode::DegenerateCone, "generators are linearly dependent");
    inverse_ = generators_.inverse();
}

SimpleCone SimpleCone::with_apex(Point apex) const
{
    SimpleCone out = *this;
    out.apex_ = std::move(apex);
    return out;
}

bool SimpleCone::contains(const Point& x, double tol) const
{
    return coordinates(x).minCoeff() >= -tol;
}

HalfSpaces SimpleCone::halfspaces() const
{
    // lambda_i(x) >= 0  <=>  -row_i . x <= -row_i . apex
    HalfSpaces hs;
    const int d = dim();
    hs.normals.resize(d, d);
    hs.offsets.resize(d);
    for (int i = 0; i < d; ++i) {
        Eigen::RowVectorXd row = -inverse_.row(i);
        row.normalize();
        hs.normals.row(i) = row;
        hs.offsets(i) = row.dot(apex_);
    }
    return hs;
}

Point normalize_generator(const Point& w)
{
    double smallest = 0.0;
    for (Eigen::Index k = 0; k < w.size(); ++k) {
        const double a = std::abs(w(k));
        if (a > 1e-14 * w.cwiseAbs().maxCoeff() && (smallest == 0.0 || a < smallest))
            smallest = a;
    }
    if (smallest == 0.0)
        throw Error(ErrorCode::DegenerateCone, "zero generator");
    return w / smallest;
}

Cone normalized(const Cone& cone)
{
    Cone out = cone;
    for (Eigen::Index j = 0; j < out.generators.cols(); ++j)
        out.generators.col(j) = normalize_generator(cone.generators.col(j));
    return out;
}

HalfSpaces cone_halfspaces(const Cone& cone)
{
    const int d = cone.dim();
    const int k = static_cast<int>(cone.generators.cols());
    if (cone.generators.rows() != d)
        throw Error(ErrorCode::DimensionMismatch, "generator length differs from apex dimension");
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b)
            if (antiparallel(cone.generators.col(a), cone.generators.col(b)))
                throw Error(ErrorCode::NotPointed, "generators " + std::to_string(a) + " and " +
                                                       std::to_string(b) +
                                                       " point in opposite directions");
    if (column_rank(cone.generators) < d)
        throw Error(ErrorCode::DegenerateCone, "generators do not span the ambient space");

    std::vector<Point> normals;
    auto consider = [&](Point n) {
        const Eigen::VectorXd side = cone.generators.transpose() * n;
        const double tol = 1e-12 * cone.generators.cwiseAbs().maxCoeff();
        if (side.maxCoeff() > tol) {
            if (side.minCoeff() < -tol)
                return;
            n = -n;
        }
        for (const auto& m : normals)
            if ((m - n).norm() < 1e-9)
                return;
        normals.push_back(n);
    };
    if (d == 1) {
        consider(Point::Ones(1));
    } else {
        Eigen::MatrixXd unit = cone.generators.colwise().normalized();
        detail::for_each_combination(k, d - 1, [&](const std::vector<int>& subset) {
            Eigen::MatrixXd rows(d - 1, d);
            for (int r = 0; r < d - 1; ++r)
                rows.row(r) = unit.col(subset[r]).transpose();
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
            if (svd.singularValues()(d - 2) <= 1e-10)
                return;
            consider(svd.matrixV().col(d - 1).normalized());
        });
    }

    HalfSpaces hs;
    hs.normals.resize(static_cast<Eigen::Index>(normals.size()), d);
    for (std::size_t r = 0; r < normals.size(); ++r)
        hs.normals.row(static_cast<Eigen::Index>(r)) = normals[r].transpose();
    if (column_rank(hs.normals.transpose()) < d)
        throw Error(ErrorCode::NotPointed, "cone contains a line through its apex");
    hs.offsets = hs.normals * cone.apex;
    return hs;
}

bool is_pointed(const Cone& cone)
{
    try {
        cone_halfspaces(cone);
        return true;
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NotPointed)
            return false;
        throw;
    }
}

std::vector<SimpleCone> triangulate_cone(const Cone& cone)
{
    const int d = cone.dim();
    const int k = static_cast<int>(cone.generators.cols());
    const HalfSpaces hs = cone_halfspaces(cone);  // validates pointedness

    if (k == d)
        return {SimpleCone(cone.apex, cone.generators)};

    // Keep extreme rays only: generators lying on at least d-1 independent facets.
    std::vector<int> extreme;
    for (int j = 0; j < k; ++j) {
        const Point g = cone.generators.col(j).normalized();
        std::vector<int> tight;
        for (Eigen::Index f = 0; f < hs.size(); ++f)
            if (std::abs(hs.normals.row(f).dot(g)) <= 1e-10)
                tight.push_back(static_cast<int>(f));
        Eigen::MatrixXd rows(static_cast<Eigen::Index>(tight.size()), d);
        for (std::size_t r = 0; r < tight.size(); ++r)
            rows.row(static_cast<Eigen::Index>(r)) = hs.normals.row(tight[r]);
        if (column_rank(rows.transpose()) >= d - 1)
            extreme.push_back(j);
    }

    if (static_cast<int>(extreme.size()) == d) {
        Eigen::MatrixXd w(d, d);
        for (int j = 0; j < d; ++j)
            w.col(j) = cone.generators.col(extreme[j]);
        return {SimpleCone(cone.apex, w)};
    }
    if (d != 3)
        throw Error(ErrorCode::UnsupportedDimension,
                    "triangulation of non-simple cones is implemented for d = 3");

    Point axis = Point::Zero(3);
    for (int j : extreme)
        axis += cone.generators.col(j).normalized();
    axis.normalize();
    Eigen::Vector3d a = axis;
    Eigen::Vector3d e1 = a.unitOrthogonal();
    Eigen::Vector3d e2 = a.cross(e1);

    std::vector<std::pair<double, int>> by_angle;
    for (int j : extreme) {
        const Eigen::Vector3d g = cone.generators.col(j).normalized();
        by_angle.emplace_back(std::atan2(g.dot(e2), g.dot(e1)), j);
    }
    std::sort(by_angle.begin(), by_angle.end());

    auto lex_less = [&](int x, int y) {
        const Point& gx = cone.generators.col(x);
        const Point& gy = cone.generators.col(y);
        return std::lexicographical_compare(gx.data(), gx.data() + 3, gy.data(), gy.data() + 3);
    };
    std::size_t root = 0;
    for (std::size_t i = 1; i < by_angle.size(); ++i)
        if (lex_less(by_angle[i].second, by_angle[root].second))
            root = i;
    std::rotate(by_angle.begin(), by_angle.begin() + static_cast<long>(root), by_angle.end());

    std::vector<SimpleCone> out;
    for (std::size_t i = 1; i + 1 < by_angle.size(); ++i) {
        Eigen::MatrixXd w(3, 3);
        w.col(0) = cone.generators.col(by_angle[0].second);
        w.col(1) = cone.generators.col(by_angle[i].second);
        w.col(2) = cone.generators.col(by_angle[i + 1].second);
        const double scale = w.colwise().norm().prod();
        if (std::abs(w.determinant()) <= kRelativeDetTolerance * scale)
            continue;
        out.emplace_back(cone.apex, w);
    }
    return out;
}

std::vector<std::vector<SimpleCone>> vertex_simple_cones(const Polytope& polytope)
{
    std::vector<std::vector<SimpleCone>> out;
    out.reserve(static_cast<std::size_t>(polytope.num_vertices()));
    for (Eigen::Index v = 0; v < polytope.num_vertices(); ++v)
        out.push_back(triangulate_cone(normalized(vertex_tangent_cone(polytope, v))));
    return out;
}

}  // namespace solidsum
