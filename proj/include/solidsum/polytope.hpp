/**
 * Convex polytopes in vertex representation, their facets and face lattice,
 * vertex tangent cones and lattice points of dilates.
 *
 * Facets are found by brute force over d-subsets of the vertices, which is
 * plenty for the small polytopes handled here.  The face lattice is only
 * exposed for d <= 3.
 */

#ifndef SOLIDSUM_POLYTOPE_HPP
#define SOLIDSUM_POLYTOPE_HPP

#include <vector>

#include "solidsum/types.hpp"

namespace solidsum {

/// Membership tolerance for boundary tests.  Points inside the band count as
/// on the boundary.
inline constexpr double kBoundaryTolerance = 1e-10;

/**
 * Intersection of half-spaces {x : normals.row(i) . x <= offsets(i)}.  Normals
 * are unit length.  Zero rows means the whole space.
 */
struct HalfSpaces {
    Eigen::MatrixXd normals;
    Eigen::VectorXd offsets;

    int dim() const { return static_cast<int>(normals.cols()); }
    Eigen::Index size() const { return normals.rows(); }

    /// offsets - normals * x; nonnegative entries are satisfied constraints.
    Eigen::VectorXd slack(const Point& x) const { return offsets - normals * x; }

    bool contains(const Point& x, double tol = kBoundaryTolerance) const;

    HalfSpaces translated(const Point& shift) const;
};

struct Facet {
    Point normal;               // outward, unit length
    double offset = 0.0;        // normal . x <= offset
    std::vector<int> vertices;  // indices into the polytope's vertex list
};

/// A nonempty face.  facet_indices lists the facets containing it, which
/// define its tangent cone.
struct Face {
    int dim = 0;
    std::vector<int> vertex_indices;
    std::vector<int> facet_indices;

    int sign() const { return dim % 2 == 0 ? 1 : -1; }
};

class Polytope {
public:
    /// Columns of `points` are the input points.  Duplicate and non-extreme
    /// points are dropped and kept in discarded_points().
    explicit Polytope(const Eigen::MatrixXd& points);

    int dim() const { return static_cast<int>(vertices_.rows()); }
    Eigen::Index num_vertices() const { return vertices_.cols(); }
    const Eigen::MatrixXd& vertices() const { return vertices_; }
    Point vertex(Eigen::Index i) const { return vertices_.col(i); }

    const std::vector<Facet>& facets() const { return facets_; }
    const HalfSpaces& halfspaces() const { return halfspaces_; }
    const std::vector<Point>& discarded_points() const { return discarded_; }

    /// Length scale used to make tolerances relative.
    double scale() const { return scale_; }

    bool contains(const Point& x, double tol = kBoundaryTolerance) const;

    /// Indices of facets whose hyperplane passes within tol of x.
    std::vector<int> incident_facets(const Point& x, double tol = kBoundaryTolerance) const;

    /// The dilate tP for t > 0 (vertices scaled about the origin).
    Polytope dilated(double t) const;

private:
    Polytope() = default;
    void rebuild_halfspaces();

    Eigen::MatrixXd vertices_;
    std::vector<Facet> facets_;
    HalfSpaces halfspaces_;
    std::vector<Point> discarded_;
    double scale_ = 1.0;
};

/// Validating constructor from row-major coordinates.
Polytope load_polytope(int dim, const std::vector<std::vector<double>>& vertex_rows);

/// Pointed cone given by an apex and generator columns (not necessarily simple).
struct Cone {
    Point apex;
    Eigen::MatrixXd generators;

    int dim() const { return static_cast<int>(apex.size()); }
};

/**
 * Tangent cone of P at vertex v_index: apex v, generators (neighbour - v) for
 * every edge at v, ordered by neighbour index.
 */
Cone vertex_tangent_cone(const Polytope& polytope, Eigen::Index v_index);

/// Integer points of the closed dilate tP, t >= 0.
std::vector<LatticePoint> lattice_points(const Polytope& polytope, double t);

/// All nonempty faces including P itself, sorted by dimension.  d <= 3.
std::vector<Face> faces(const Polytope& polytope);

/// Tangent cone K_F of a face: the facets of P containing F.
HalfSpaces tangent_cone_halfspaces(const Polytope& polytope, const Face& face);

/// Affine rank of a set of points given as columns.
int affine_rank(const Eigen::MatrixXd& points, double tol);

}  // namespace solidsum

#endif  // SOLIDSUM_POLYTOPE_HPP
