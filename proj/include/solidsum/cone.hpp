#ifndef SOLIDSUM_CONE_HPP
#define SOLIDSUM_CONE_HPP

#include <vector>

#include "solidsum/polytope.hpp"

namespace solidsum {

/**
 * Simplicial cone apex + {W lambda : lambda >= 0} with d independent
 * generator columns.  det is the determinant of W as stored (signed).
 */
class SimpleCone {
public:
    SimpleCone(Point apex, Eigen::MatrixXd generators);

    int dim() const { return static_cast<int>(apex_.size()); }
    const Point& apex() const { return apex_; }
    const Eigen::MatrixXd& generators() const { return generators_; }
    double det() const { return det_; }
    double abs_det() const { return std::abs(det_); }

    SimpleCone with_apex(Point apex) const;

    /// Coordinates lambda of x - apex in the generator basis.
    Eigen::VectorXd coordinates(const Point& x) const { return inverse_ * (x - apex_); }

    bool contains(const Point& x, double tol = kBoundaryTolerance) const;

    HalfSpaces halfspaces() const;

    Cone as_cone() const { return Cone{apex_, generators_}; }

private:
    Point apex_;
    Eigen::MatrixXd generators_;
    Eigen::MatrixXd inverse_;
    double det_ = 0.0;
};

/// Rescales w so that its smallest nonzero |coordinate| equals 1.
Point normalize_generator(const Point& w);

/// Cone with every generator passed through normalize_generator.
Cone normalized(const Cone& cone);

/**
 * Facet inequalities of a full-dimensional cone.  Throws NotPointed when the
 * cone contains a line and DegenerateCone when the generators do not span.
 */
HalfSpaces cone_halfspaces(const Cone& cone);

bool is_pointed(const Cone& cone);

/**
 * Splits a pointed cone into simple cones with disjoint interiors.  In 3-D
 * the extreme rays are put in cyclic order and fanned from the
 * lexicographically smallest generator.
 */
std::vector<SimpleCone> triangulate_cone(const Cone& cone);

/// Triangulated vertex cones of P with normalized generators, one list per vertex.
std::vector<std::vector<SimpleCone>> vertex_simple_cones(const Polytope& polytope);

}  // namespace solidsum

#endif  // SOLIDSUM_CONE_HPP
