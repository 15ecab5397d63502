#include "solidsum/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "combinatorics.hpp"
#include "solidsum/error.hpp"

namespace solidsum {

namespace {

// Unit normal of the hyperplane spanned by the rows of `diffs` ((d-1) x d),
// or an empty vector when the rows are dependent.
Point hyperplane_normal(const Eigen::MatrixXd& diffs, int dim)
{
    if (dim == 1)
        return Point::Ones(1);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (sv.size() < dim - 1 || sv(dim - 2) <= 1e-12 * std::max(1.0, sv(0)))
        return {};
    return svd.matrixV().col(dim - 1).normalized();
}

std::vector<Facet> enumerate_facets(const Eigen::MatrixXd& pts, double tol)
{
    const int dim = static_cast<int>(pts.rows());
    const int n = static_cast<int>(pts.cols());
    std::vector<Facet> facets;
    detail::for_each_combination(n, dim, [&](const std::vector<int>& subset) {
        Eigen::MatrixXd diffs(dim - 1, dim);
        for (int k = 1; k < dim; ++k)
            diffs.row(k - 1) = (pts.col(subset[k]) - pts.col(subset[0])).transpose();
        Point normal = hyperplane_normal(diffs, dim);
        if (normal.size() == 0)
            return;
        double offset = normal.dot(pts.col(subset[0]));
        Eigen::VectorXd side = pts.transpose() * normal - Eigen::VectorXd::Constant(n, offset);
        if (side.maxCoeff() > tol) {
            if (side.minCoeff() < -tol)
                return;
            normal = -normal;
            offset = -offset;
            side = -side;
        }
        for (const auto& f : facets)
            if ((f.normal - normal).norm() < 1e-9 && std::abs(f.offset - offset) < tol)
                return;
        Facet facet{normal, offset, {}};
        for (int j = 0; j < n; ++j)
            if (std::abs(side(j)) <= tol)
                facet.vertices.push_back(j);
        facets.push_back(std::move(facet));
    });
    return facets;
}

int rank_of_rows(const Eigen::MatrixXd& m, double tol)
{
    if (m.rows() == 0 || m.cols() == 0)
        return 0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(tol);
    return static_cast<int>(lu.rank());
}

}  // namespace

bool HalfSpaces::contains(const Point& x, double tol) const
{
    return size() == 0 || slack(x).minCoeff() >= -tol;
}

HalfSpaces HalfSpaces::translated(const Point& shift) const
{
    HalfSpaces out = *this;
    out.offsets += normals * shift;
    return out;
}

int affine_rank(const Eigen::MatrixXd& points, double tol)
{
    if (points.cols() <= 1)
        return 0;
    Eigen::MatrixXd diffs = points.rightCols(points.cols() - 1).colwise() - points.col(0);
    return rank_of_rows(diffs, tol);
}

Polytope::Polytope(const Eigen::MatrixXd& points)
{
    const int dim = static_cast<int>(points.rows());
    if (dim < 1)
        throw Error(ErrorCode::DimensionMismatch, "polytope dimension must be positive");
    if (!points.allFinite())
        throw Error(ErrorCode::DegenerateInput, "vertex coordinates must be finite");

    scale_ = std::max(1.0, points.cwiseAbs().maxCoeff());
    const double tol = kBoundaryTolerance * scale_;

    std::vector<int> unique;
    for (Eigen::Index j = 0; j < points.cols(); ++j) {
        bool dup = false;
        for (int k : unique)
            if ((points.col(j) - points.col(k)).cwiseAbs().maxCoeff() <= tol)
                dup = true;
        if (dup)
            discarded_.push_back(points.col(j));
        else
            unique.push_back(static_cast<int>(j));
    }
    Eigen::MatrixXd pts(dim, static_cast<Eigen::Index>(unique.size()));
    for (std::size_t k = 0; k < unique.size(); ++k)
        pts.col(static_cast<Eigen::Index>(k)) = points.col(unique[k]);

    if (pts.cols() < dim + 1 || affine_rank(pts, tol) < dim)
        throw Error(ErrorCode::DegenerateInput,
                    "affine hull of the vertices has dimension < " + std::to_string(dim));

    std::vector<Facet> facets = enumerate_facets(pts, tol);

    // A point is extreme iff the normals of its facets span R^d.
    std::vector<int> keep;
    std::vector<int> remap(pts.cols(), -1);
    for (int j = 0; j < pts.cols(); ++j) {
        std::vector<int> incident;
        for (std::size_t f = 0; f < facets.size(); ++f)
            if (std::binary_search(facets[f].vertices.begin(), facets[f].vertices.end(), j))
                incident.push_back(static_cast<int>(f));
        Eigen::MatrixXd normals(static_cast<Eigen::Index>(incident.size()), dim);
        for (std::size_t r = 0; r < incident.size(); ++r)
            normals.row(static_cast<Eigen::Index>(r)) = facets[incident[r]].normal.transpose();
        if (rank_of_rows(normals, 1e-9) == dim) {
            remap[j] = static_cast<int>(keep.size());
            keep.push_back(j);
        } else {
            discarded_.push_back(pts.col(j));
        }
    }

    vertices_.resize(dim, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t k = 0; k < keep.size(); ++k)
        vertices_.col(static_cast<Eigen::Index>(k)) = pts.col(keep[k]);
    for (auto& f : facets) {
        std::vector<int> vs;
        for (int j : f.vertices)
            if (remap[j] >= 0)
                vs.push_back(remap[j]);
        f.vertices = std::move(vs);
    }
    facets_ = std::move(facets);
    rebuild_halfspaces();
}

void Polytope::rebuild_halfspaces()
{
    const Eigen::Index nf = static_cast<Eigen::Index>(facets_.size());
    halfspaces_.normals.resize(nf, dim());
    halfspaces_.offsets.resize(nf);
    for (Eigen::Index f = 0; f < nf; ++f) {
        halfspaces_.normals.row(f) = facets_[f].normal.transpose();
        halfspaces_.offsets(f) = facets_[f].offset;
    }
}

bool Polytope::contains(const Point& x, double tol) const
{
    return halfspaces_.contains(x, tol * std::max(1.0, scale_));
}

std::vector<int> Polytope::incident_facets(const Point& x, double tol) const
{
    std::vector<int> out;
    const Eigen::VectorXd slack = halfspaces_.slack(x);
    const double band = tol * std::max(1.0, scale_);
    for (Eigen::Index f = 0; f < slack.size(); ++f)
        if (std::abs(slack(f)) <= band)
            out.push_back(static_cast<int>(f));
    return out;
}

Polytope Polytope::dilated(double t) const
{
    if (!(t > 0.0))
        throw Error(ErrorCode::InvalidArgument, "dilation factor must be positive");
    Polytope out;
    out.vertices_ = vertices_ * t;
    out.facets_ = facets_;
    for (auto& f : out.facets_)
        f.offset *= t;
    out.scale_ = std::max(1.0, scale_ * t);
    out.rebuild_halfspaces();
    return out;
}

Polytope load_polytope(int dim, const std::vector<std::vector<double>>& vertex_rows)
{
    if (dim < 1)
        throw Error(ErrorCode::DimensionMismatch, "dimension must be positive");
    Eigen::MatrixXd pts(dim, static_cast<Eigen::Index>(vertex_rows.size()));
    for (std::size_t j = 0; j < vertex_rows.size(); ++j) {
        if (static_cast<int>(vertex_rows[j].size()) != dim)
            throw Error(ErrorCode::DimensionMismatch,
                        "vertex " + std::to_string(j) + " has " +
                            std::to_string(vertex_rows[j].size()) + " coordinates, expected " +
                            std::to_string(dim));
        for (int k = 0; k < dim; ++k)
            pts(k, static_cast<Eigen::Index>(j)) = vertex_rows[j][k];
    }
    return Polytope(pts);
}

std::vector<Face> faces(const Polytope& polytope)
{
    const int dim = polytope.dim();
    if (dim > 3)
        throw Error(ErrorCode::UnsupportedDimension, "face enumeration supports d <= 3");

    std::set<std::vector<int>> sets;
    for (const auto& f : polytope.facets())
        sets.insert(f.vertices);
    // Close under intersection: every face is an intersection of facets.
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<int>> current(sets.begin(), sets.end());
        for (std::size_t a = 0; a < current.size(); ++a)
            for (std::size_t b = a + 1; b < current.size(); ++b) {
                std::vector<int> meet;
                std::set_intersection(current[a].begin(), current[a].end(), current[b].begin(),
                                      current[b].end(), std::back_inserter(meet));
                if (!meet.empty() && sets.insert(meet).second)
                    grew = true;
            }
    }
    std::vector<int> all(static_cast<std::size_t>(polytope.num_vertices()));
    std::iota(all.begin(), all.end(), 0);
    sets.insert(all);

    const double tol = kBoundaryTolerance * polytope.scale();
    std::vector<Face> out;
    for (const auto& vs : sets) {
        Face face;
        face.vertex_indices = vs;
        Eigen::MatrixXd pts(dim, static_cast<Eigen::Index>(vs.size()));
        for (std::size_t k = 0; k < vs.size(); ++k)
            pts.col(static_cast<Eigen::Index>(k)) = polytope.vertex(vs[k]);
        face.dim = affine_rank(pts, tol);
        if (face.dim < dim)
            for (std::size_t f = 0; f < polytope.facets().size(); ++f) {
                const auto& fv = polytope.facets()[f].vertices;
                if (std::includes(fv.begin(), fv.end(), vs.begin(), vs.end()))
                    face.facet_indices.push_back(static_cast<int>(f));
            }
        out.push_back(std::move(face));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const Face& a, const Face& b) { return a.dim < b.dim; });
    return out;
}

HalfSpaces tangent_cone_halfspaces(const Polytope& polytope, const Face& face)
{
    HalfSpaces out;
    const Eigen::Index n = static_cast<Eigen::Index>(face.facet_indices.size());
    out.normals.resize(n, polytope.dim());
    out.offsets.resize(n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto& f = polytope.facets()[face.facet_indices[r]];
        out.normals.row(r) = f.normal.transpose();
        out.offsets(r) = f.offset;
    }
    return out;
}

Cone vertex_tangent_cone(const Polytope& polytope, Eigen::Index v_index)
{
    if (v_index < 0 || v_index >= polytope.num_vertices())
        throw Error(ErrorCode::BadIndex, "vertex index " + std::to_string(v_index) +
                                             " out of range [0, " +
                                             std::to_string(polytope.num_vertices()) + ")");
    const int dim = polytope.dim();
    const int v = static_cast<int>(v_index);

    // Neighbours along edges: pairs {v, u} that are the full vertex set of the
    // intersection of all facets containing both.
    std::vector<int> neighbours;
    for (int u = 0; u < polytope.num_vertices(); ++u) {
        if (u == v)
            continue;
        std::vector<int> common;
        for (const auto& f : polytope.facets()) {
            const bool hv = std::binary_search(f.vertices.begin(), f.vertices.end(), v);
            const bool hu = std::binary_search(f.vertices.begin(), f.vertices.end(), u);
            if (hv && hu) {
                if (common.empty()) {
                    common = f.vertices;
                } else {
                    std::vector<int> meet;
                    std::set_intersection(common.begin(), common.end(), f.vertices.begin(),
                                          f.vertices.end(), std::back_inserter(meet));
                    common = std::move(meet);
                }
            }
        }
        // In 1-D there are no facets containing both endpoints; the segment
        // itself is the edge.
        if (dim == 1 || (common.size() == 2))
            neighbours.push_back(u);
    }

    Cone cone;
    cone.apex = polytope.vertex(v_index);
    cone.generators.resize(dim, static_cast<Eigen::Index>(neighbours.size()));
    for (std::size_t k = 0; k < neighbours.size(); ++k)
        cone.generators.col(static_cast<Eigen::Index>(k)) =
            polytope.vertex(neighbours[k]) - cone.apex;
    return cone;
}

std::vector<LatticePoint> lattice_points(const Polytope& polytope, double t)
{
    if (!(t >= 0.0) || !std::isfinite(t))
        throw Error(ErrorCode::InvalidArgument, "dilation t must be a finite value >= 0");
    const int dim = polytope.dim();
    const double tol = kBoundaryTolerance * std::max(1.0, polytope.scale() * t);
    const Eigen::MatrixXd scaled = polytope.vertices() * t;
    LatticePoint lo(dim), hi(dim);
    for (int k = 0; k < dim; ++k) {
        lo(k) = static_cast<std::int64_t>(std::ceil(scaled.row(k).minCoeff() - tol));
        hi(k) = static_cast<std::int64_t>(std::floor(scaled.row(k).maxCoeff() + tol));
        if (hi(k) < lo(k))
            return {};
    }
    const HalfSpaces& hs = polytope.halfspaces();
    std::vector<LatticePoint> out;
    LatticePoint m = lo;
    while (true) {
        const Point x = m.cast<double>();
        if ((hs.normals * x - hs.offsets * t).maxCoeff() <= tol)
            out.push_back(m);
        int k = 0;
        while (k < dim && m(k) == hi(k)) {
            m(k) = lo(k);
            ++k;
        }
        if (k == dim)
            break;
        ++m(k);
    }
    return out;
}

}  // namespace solidsum
