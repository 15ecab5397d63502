#ifndef SOLIDSUM_TEST_FIXTURES_HPP
#define SOLIDSUM_TEST_FIXTURES_HPP

#include <cmath>
#include <vector>

#include "solidsum/polytope.hpp"

namespace fixtures {

inline solidsum::Polytope unit_square()
{
    return solidsum::load_polytope(2, {{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

inline solidsum::Polytope triangle()
{
    return solidsum::load_polytope(2, {{0, 0}, {0, 1}, {std::sqrt(3.0), 0}});
}

inline solidsum::Polytope simplex3()
{
    return solidsum::load_polytope(3, {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
}

inline solidsum::Polytope golden_rectangle()
{
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    return solidsum::load_polytope(2, {{0, 0}, {phi, 0}, {phi, 1}, {0, 1}});
}

inline solidsum::Polytope golden_segment()
{
    return solidsum::load_polytope(1, {{0}, {(1.0 + std::sqrt(5.0)) / 2.0}});
}

inline solidsum::Point point(std::initializer_list<double> xs)
{
    solidsum::Point p(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index k = 0;
    for (double x : xs)
        p(k++) = x;
    return p;
}

/// Generator matrix from columns.
inline Eigen::MatrixXd columns(std::initializer_list<std::initializer_list<double>> cols)
{
    const auto d = static_cast<Eigen::Index>(cols.begin()->size());
    Eigen::MatrixXd w(d, static_cast<Eigen::Index>(cols.size()));
    Eigen::Index j = 0;
    for (const auto& c : cols) {
        Eigen::Index k = 0;
        for (double x : c)
            w(k++, j) = x;
        ++j;
    }
    return w;
}

/// Index of the vertex closest to x.
inline Eigen::Index vertex_index(const solidsum::Polytope& p, const solidsum::Point& x)
{
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < p.num_vertices(); ++i)
        if ((p.vertex(i) - x).norm() < (p.vertex(best) - x).norm())
            best = i;
    return best;
}

}  // namespace fixtures

#endif
