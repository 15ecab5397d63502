#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "solidsum/cone.hpp"
#include "solidsum/error.hpp"
#include "solidsum/solid_angle.hpp"

using namespace solidsum;
using fixtures::columns;
using fixtures::point;

namespace {

const Cone kQuadrant{point({0, 0}), columns({{1, 0}, {0, 1}})};

bool within_sigma(const SolidAngleEstimate& e, double truth, double k = 3.0)
{
    return std::abs(e.value - truth) <= k * e.std_error;
}

/// Shoelace area of a polygon given as vertex list.
double shoelace(const std::vector<Point>& poly)
{
    double a = 0.0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const Point& p = poly[i];
        const Point& q = poly[(i + 1) % poly.size()];
        a += p(0) * q(1) - p(1) * q(0);
    }
    return std::abs(a) / 2.0;
}

/**
 * l^1 solid angle of a 2-D cone with apex 0 whose rays both hit the diamond
 * inside one closed quadrant or across diamond corners: the region is the fan
 * from 0 through the ray hits and every diamond corner strictly between them.
 */
double l1_angle_by_fan(double theta1, double theta2)
{
    auto hit = [](double th) {
        const Point u = point({std::cos(th), std::sin(th)});
        return Point(u / (std::abs(u(0)) + std::abs(u(1))));
    };
    std::vector<Point> poly{point({0, 0}), hit(theta1)};
    for (int k = -4; k <= 8; ++k) {
        const double corner = k * kPi / 2.0;
        if (corner > theta1 + 1e-15 && corner < theta2 - 1e-15)
            poly.push_back(point({std::round(std::cos(corner)), std::round(std::sin(corner))}));
    }
    poly.push_back(hit(theta2));
    return shoelace(poly) / 2.0;
}

struct RandomCone {
    Cone cone;
    double theta1;
    double theta2;
};

/// Pointed 2-D cone with apex 0 between two random angles less than pi apart.
RandomCone random_cone(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> start(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> width(0.05, kPi - 0.05);
    std::uniform_real_distribution<double> length(0.3, 3.0);
    const double a = start(rng);
    const double b = a + width(rng);
    const double la = length(rng);
    const double lb = length(rng);
    Cone cone{point({0, 0}),
              columns({{la * std::cos(a), la * std::sin(a)}, {lb * std::cos(b), lb * std::sin(b)}})};
    return {cone, a, b};
}

}  // namespace

TEST_CASE("l^p Gaussian constant")
{
    CHECK(lp_gaussian_constant(2.0) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(lp_gaussian_constant(1.0) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("exact planar angles")
{
    CHECK(solid_angle_exact_2d(kQuadrant).value == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(solid_angle_exact_2d(kQuadrant).std_error == 0.0);
    CHECK(solid_angle_exact_2d(kQuadrant).method == SolidAngleMethod::Exact);

    const double r3 = std::sqrt(3.0);
    const Cone v2{point({0, 1}), columns({{0, -1}, {r3, -1}})};
    const Cone v3{point({r3, 0}), columns({{-1, 0}, {-r3, 1}})};
    CHECK(solid_angle_exact_2d(v2).value == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(solid_angle_exact_2d(v3).value == doctest::Approx(1.0 / 12.0).epsilon(1e-14));

    const Cone parallel{point({0, 0}), columns({{1, 1}, {2, 2}})};
    CHECK_THROWS_AS(solid_angle_exact_2d(parallel), Error);
}

TEST_CASE("four cones around a point add up to one")
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        const auto rc = random_cone(rng);
        const Point u1 = rc.cone.generators.col(0);
        const Point u2 = rc.cone.generators.col(1);
        double sum = 0.0;
        for (const auto& [a, b] : {std::pair{u1, u2}, std::pair{u2, Point(-u1)},
                                   std::pair{Point(-u1), Point(-u2)}, std::pair{Point(-u2), u1}}) {
            Eigen::MatrixXd w(2, 2);
            w << a, b;
            sum += solid_angle_exact_2d(Cone{point({0, 0}), w}).value;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("exact angles are scale invariant in the generators")
{
    const Cone cone{point({0, 0}), columns({{1, 0.3}, {-0.2, 1}})};
    const Cone scaled{point({0, 0}), columns({{7, 2.1}, {-0.02, 0.1}})};
    CHECK(solid_angle_exact_2d(scaled).value ==
          doctest::Approx(solid_angle_exact_2d(cone).value).epsilon(1e-15));
    CHECK(solid_angle_exact_2d_l1(scaled).value ==
          doctest::Approx(solid_angle_exact_2d_l1(cone).value).epsilon(1e-13));

    const auto mc = solid_angle_mc(cone, point({0, 0}), 2.0, 1.0, 50000, 5);
    const auto mc_scaled = solid_angle_mc(scaled, point({0, 0}), 2.0, 1.0, 50000, 5);
    CHECK(std::abs(mc.value - mc_scaled.value) <=
          3.0 * std::hypot(mc.std_error, mc_scaled.std_error) + 1e-12);
}

TEST_CASE("l^1 angles by polygon clipping")
{
    CHECK(solid_angle_exact_2d_l1(kQuadrant).value == doctest::Approx(0.25).epsilon(1e-14));
    // Triangle (0,0), (1,0), (1/2,1/2) has area 1/4.
    CHECK(solid_angle_exact_2d_l1(Cone{point({0, 0}), columns({{1, 0}, {1, 1}})}).value ==
          doctest::Approx(1.0 / 8.0).epsilon(1e-12));
    // Triangle (0,0), (1,0), (1/3,2/3) has area 1/3.
    CHECK(solid_angle_exact_2d_l1(Cone{point({0, 0}), columns({{1, 0}, {1, 2}})}).value ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-12));

    const Cone half_plane{point({0, 0}), columns({{1, 0}, {-1, 0}})};
    try {
        solid_angle_exact_2d_l1(half_plane);
        FAIL("expected NotPointed");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotPointed);
    }

    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto rc = random_cone(rng);
        CHECK(solid_angle_exact_2d_l1(rc.cone).value ==
              doctest::Approx(l1_angle_by_fan(rc.theta1, rc.theta2)).epsilon(1e-12));
    }
}

TEST_CASE("Monte Carlo ball fractions")
{
    const Polytope sq = fixtures::unit_square();
    const auto inside = solid_angle_mc(sq, point({0.5, 0.5}), 2.0, 0.1, 20000, 1);
    CHECK(inside.value == 1.0);
    CHECK(inside.std_error == 0.0);
    CHECK(inside.method == SolidAngleMethod::MonteCarloBall);

    for (double p : {1.0, 1.5, 2.0, 3.0}) {
        const auto corner = solid_angle_mc(kQuadrant, point({0, 0}), p, 1.0, 40000, 2);
        CHECK(within_sigma(corner, 0.25));
        const auto facet = solid_angle_mc(sq, point({0.5, 0.0}), p, std::nullopt, 40000, 3);
        CHECK(within_sigma(facet, 0.5));
    }

    const auto a = solid_angle_mc(kQuadrant, point({0, 0}), 1.5, 1.0, 10000, 9);
    const auto b = solid_angle_mc(kQuadrant, point({0, 0}), 1.5, 1.0, 10000, 9);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);

    CHECK_THROWS_AS(solid_angle_mc(kQuadrant, point({0, 0}), 2.0, 0.0, 100, 1), Error);
    CHECK_THROWS_AS(solid_angle_mc(kQuadrant, point({0, 0}), 2.0, -1.0, 100, 1), Error);
}

TEST_CASE("default ball radius stays clear of other facets")
{
    const Polytope sq = fixtures::unit_square();
    CHECK(default_ball_radius(sq, point({0, 0}), 2.0) == doctest::Approx(0.5));
    CHECK(default_ball_radius(sq, point({0.5, 0.0}), 2.0) == doctest::Approx(0.25));
    // l^1 balls of radius r already sit inside the Euclidean ball of radius r.
    CHECK(default_ball_radius(sq, point({0, 0}), 1.0) == doctest::Approx(0.5));
    CHECK(default_ball_radius(sq, point({0, 0}), 4.0) < 0.5);
}

TEST_CASE("Gaussian limit solid angles")
{
    const auto schedule = default_eps_schedule();
    REQUIRE(schedule.size() == 6);
    CHECK(schedule.front() == 0.5);
    CHECK(schedule.back() == 0.5 / 32);

    const SimpleCone quadrant(point({0, 0}), Eigen::MatrixXd::Identity(2, 2));
    for (double p : {1.0, 2.0}) {
        const auto e = solid_angle_gaussian(quadrant, point({0, 0}), p, schedule, kDefaultSamples, 4);
        CHECK(e.method == SolidAngleMethod::GaussianLimit);
        CHECK(within_sigma(e, 0.25));
    }

    const double r3 = std::sqrt(3.0);
    const SimpleCone v2(point({0, 1}), columns({{0, -1}, {r3, -1}}));
    CHECK(within_sigma(solid_angle_gaussian(v2, point({0, 1}), 2.0, schedule, kDefaultSamples, 5),
                       1.0 / 6.0));

    // Away from the apex the limit is the indicator.
    const auto inside = solid_angle_gaussian(quadrant, point({0.5, 0.5}), 2.0, schedule, 20000, 6);
    CHECK(inside.value == doctest::Approx(1.0).epsilon(1e-6));
    const auto edge = solid_angle_gaussian(quadrant, point({0.7, 0.0}), 2.0, schedule, 20000, 6);
    CHECK(within_sigma(edge, 0.5));

    const std::vector<double> one_level{0.5};
    CHECK_THROWS_AS(solid_angle_gaussian(quadrant, point({0, 0}), 2.0, one_level, 100, 1), Error);
}

TEST_CASE("Gaussian limit agrees with exact angles on random cones")
{
    std::mt19937_64 rng(2024);
    const auto schedule = default_eps_schedule();
    // Sum of squared z-scores over the 20 cones; the 0.999 quantile of chi^2 with 20 dof is 45.31.
    double chi2_g2 = 0.0, chi2_g1 = 0.0, chi2_mc = 0.0;
    auto z2 = [](const SolidAngleEstimate& e, double truth) {
        const double z = (e.value - truth) / e.std_error;
        return z * z;
    };
    for (int trial = 0; trial < 20; ++trial) {
        const auto rc = random_cone(rng);
        const SimpleCone cone(rc.cone.apex, rc.cone.generators);
        const std::uint64_t seed = 1 + static_cast<std::uint64_t>(trial);
        const double l2 = solid_angle_exact_2d(rc.cone).value;
        const double l1 = solid_angle_exact_2d_l1(rc.cone).value;
        const auto g2 = solid_angle_gaussian(cone, rc.cone.apex, 2.0, schedule, kDefaultSamples, seed);
        const auto g1 = solid_angle_gaussian(cone, rc.cone.apex, 1.0, schedule, kDefaultSamples, seed);
        const auto mc = solid_angle_mc(rc.cone, rc.cone.apex, 1.0, 1.0, kDefaultSamples, seed);
        INFO("trial ", trial, " exact ", l2, " ", l1, " estimates ", g2.value, " ", g1.value, " ",
             mc.value);
        CHECK(within_sigma(g2, l2));
        CHECK(within_sigma(g1, l1));
        CHECK(within_sigma(mc, l1));
        chi2_g2 += z2(g2, l2);
        chi2_g1 += z2(g1, l1);
        chi2_mc += z2(mc, l1);
    }
    CHECK(chi2_g2 < 45.31);
    CHECK(chi2_g1 < 45.31);
    CHECK(chi2_mc < 45.31);
}

TEST_CASE("deterministic Gaussian convolution")
{
    // Independent closed form for the square at p = 2: product of two 1-D normal CDF differences.
    const HalfSpaces square = fixtures::unit_square().halfspaces();
    for (double eps : {0.5, 0.1, 0.01}) {
        const double sd = std::sqrt(eps / (2.0 * kPi));
        auto interval = [&](double x) {
            return 0.5 * (std::erfc(-(1.0 - x) / (sd * std::sqrt(2.0))) -
                          std::erfc(x / (sd * std::sqrt(2.0))));
        };
        for (const Point& x : {point({0, 0}), point({0.3, 0.9}), point({-0.4, 1.2}), point({2, 2})}) {
            const double expected = interval(x(0)) * interval(x(1));
            CHECK(gaussian_convolution(square, x, 2.0, eps) ==
                  doctest::Approx(expected).epsilon(1e-10).scale(1.0));
        }
    }

    // Half-plane through x: exactly one half for every p.
    HalfSpaces half;
    half.normals = columns({{1, 0.5}}).transpose() / std::sqrt(1.25);
    half.offsets = Eigen::VectorXd::Zero(1);
    for (double p : {1.0, 1.5, 2.0, 3.0})
        CHECK(gaussian_convolution(half, point({0, 0}), p, 0.2) ==
              doctest::Approx(0.5).epsilon(1e-11));

    // Quadrant apex for p = 1 and p = 2: one quarter at every eps.
    const HalfSpaces quad = SimpleCone(point({0, 0}), Eigen::MatrixXd::Identity(2, 2)).halfspaces();
    for (double p : {1.0, 2.0})
        CHECK(gaussian_convolution(quad, point({0, 0}), p, 0.3) ==
              doctest::Approx(0.25).epsilon(1e-11));
}

TEST_CASE("polytope solid angle classification")
{
    const Polytope tri = fixtures::triangle();
    const double r3 = std::sqrt(3.0);
    CHECK(polytope_solid_angle(tri, point({0, 0}), 2.0, true, 1000, 1).value ==
          doctest::Approx(0.25));
    CHECK(polytope_solid_angle(tri, point({0, 1}), 2.0, true, 1000, 1).value ==
          doctest::Approx(1.0 / 6.0));
    CHECK(polytope_solid_angle(tri, point({r3, 0}), 2.0, true, 1000, 1).value ==
          doctest::Approx(1.0 / 12.0));
    CHECK(polytope_solid_angle(tri, point({1, 0}), 2.0, true, 1000, 1).value == 0.5);
    CHECK(polytope_solid_angle(tri, point({0.5, 0.3}), 2.0, true, 1000, 1).value == 1.0);
    CHECK(polytope_solid_angle(tri, point({2, 2}), 2.0, true, 1000, 1).value == 0.0);

    // 3-D edge at p = 2: dihedral angle / 2 pi.
    const Polytope simplex = fixtures::simplex3();
    CHECK(polytope_solid_angle(simplex, point({0.5, 0, 0}), 2.0, true, 1000, 1).value ==
          doctest::Approx(0.25).epsilon(1e-14));
    const double dihedral = std::acos(1.0 / std::sqrt(3.0));
    CHECK(polytope_solid_angle(simplex, point({0.5, 0.5, 0}), 2.0, true, 1000, 1).value ==
          doctest::Approx(dihedral / (2 * kPi)).epsilon(1e-14));

    // Vertex of the 3-simplex at the origin: an octant.
    const auto octant = polytope_solid_angle(simplex, point({0, 0, 0}), 2.0, true, 40000, 1);
    CHECK(within_sigma(octant, 0.125));
}

TEST_CASE("solid angles add over a triangulation")
{
    const Polytope sq = fixtures::unit_square();
    const Polytope lower = load_polytope(2, {{0, 0}, {1, 0}, {1, 1}});
    const Polytope upper = load_polytope(2, {{0, 0}, {1, 1}, {0, 1}});
    for (double p : {1.0, 2.0, 3.0}) {
        for (const auto& m : lattice_points(sq, 1)) {
            const Point x = m.cast<double>();
            const auto whole = polytope_solid_angle(sq, x, p, p != 3.0, 40000, 1);
            const auto a = polytope_solid_angle(lower, x, p, p != 3.0, 40000, 2);
            const auto b = polytope_solid_angle(upper, x, p, p != 3.0, 40000, 3);
            const double err = std::sqrt(whole.std_error * whole.std_error +
                                         a.std_error * a.std_error + b.std_error * b.std_error);
            CHECK(std::abs(whole.value - a.value - b.value) <= 3.0 * err + 1e-12);
        }
    }
}
