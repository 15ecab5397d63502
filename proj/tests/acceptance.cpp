// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "solidsum/lattice_sum.hpp"
#include "solidsum/macdonald.hpp"
#include "solidsum/oracle.hpp"
#include "solidsum/solid_angle.hpp"
#include "solidsum/triangle_example.hpp"

using namespace solidsum;
using fixtures::point;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void criterion(int number, const char* title, double budget_seconds,
               const std::function<void(Outcome&)>& body)
{
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail << " [exception: " << e.what() << "]";
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (budget_seconds > 0 && seconds > budget_seconds) {
        o.pass = false;
        o.detail << " [over the " << budget_seconds << " s budget]";
    }
    if (!o.pass)
        ++failures;
    std::printf("criterion %2d %s  %s (%.2f s)%s\n", number, o.pass ? "PASS" : "FAIL", title, seconds,
                o.detail.str().c_str());
    std::fflush(stdout);
}

DampedSumConfig schedule(int levels)
{
    DampedSumConfig cfg;
    cfg.eps_schedule.clear();
    for (int k = 0; k < levels; ++k)
        cfg.eps_schedule.push_back(0.5 * std::ldexp(1.0, -k));
    return cfg;
}

ComplexPoint cpoint(std::initializer_list<Complex> zs)
{
    ComplexPoint z(static_cast<Eigen::Index>(zs.size()));
    Eigen::Index k = 0;
    for (Complex v : zs)
        z(k++) = v;
    return z;
}

/// Random s such that <w, m + s> != 0 for every pairing vector w of the cones and every m.
ComplexPoint pole_free_s(std::mt19937_64& rng, const std::vector<SimpleCone>& cones)
{
    std::uniform_real_distribution<double> re(-0.45, 0.45);
    std::uniform_real_distribution<double> im(-0.5, 0.5);
    const int d = cones.front().dim();
    for (;;) {
        ComplexPoint s(d);
        for (int k = 0; k < d; ++k)
            s(k) = Complex(re(rng), im(rng));
        bool clear = true;
        for (const auto& cone : cones)
            for (int j = 0; j < d; ++j) {
                const Point w = cone.generators().col(j);
                clear = clear && std::abs(w.dot(s.imag())) >= 1e-2 * w.norm();
            }
        if (clear)
            return s;
    }
}

std::vector<SimpleCone> flat_vertex_cones(const Polytope& p)
{
    std::vector<SimpleCone> out;
    for (const auto& list : vertex_simple_cones(p))
        out.insert(out.end(), list.begin(), list.end());
    return out;
}

std::string show(const ComplexPoint& s)
{
    std::ostringstream o;
    o << "(";
    for (Eigen::Index k = 0; k < s.size(); ++k)
        o << (k ? ", " : "") << s(k).real() << (s(k).imag() < 0 ? "" : "+") << s(k).imag() << "i";
    o << ")";
    return o.str();
}

/// Pointed 2-D cone with apex 0 between two random angles less than pi apart.
Cone random_cone(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> start(0.0, 2.0 * kPi);
    std::uniform_real_distribution<double> width(0.05, kPi - 0.05);
    std::uniform_real_distribution<double> length(0.3, 3.0);
    const double a = start(rng);
    const double b = a + width(rng);
    const double la = length(rng);
    const double lb = length(rng);
    return Cone{point({0, 0}), fixtures::columns({{la * std::cos(a), la * std::sin(a)},
                                                  {lb * std::cos(b), lb * std::sin(b)}})};
}

/// Transform of the indicator of [0, 1], written out.
Complex interval_transform(Complex xi)
{
    if (std::abs(xi) < 1e-300)
        return 1.0;
    return (std::exp(2.0 * kPi * kI * xi) - 1.0) / (2.0 * kPi * kI * xi);
}

}  // namespace

int main()
{
    const Polytope square = fixtures::unit_square();
    const Polytope triangle = fixtures::triangle();
    const Polytope simplex = fixtures::simplex3();

    criterion(1, "triangle vertex determinants (1, sqrt 3, 1) to 1e-12", 0, [](Outcome& o) {
        const std::vector<double> none;
        const auto report = triangle_example(none, DampedSumConfig{}, LimitConfig{});
        o.detail << " dets " << report.determinants[0] << ", " << report.determinants[1] << ", "
                 << report.determinants[2] << "; max error " << report.determinant_error;
        o.require(report.determinant_error < 1e-12, "determinants");
    });

    criterion(2, "exact triangle vertex angles (1/4, 1/6, 1/12), sum 1/2", 1.0, [&](Outcome& o) {
        const double expected[3] = {0.25, 1.0 / 6.0, 1.0 / 12.0};
        const Point vertices[3] = {point({0, 0}), point({0, 1}), point({std::sqrt(3.0), 0})};
        double sum = 0.0;
        for (int v = 0; v < 3; ++v) {
            const auto e = polytope_solid_angle(triangle, vertices[v], 2.0, true, kDefaultSamples, 1);
            o.detail << " " << e.value;
            o.require(e.std_error == 0.0 && std::abs(e.value - expected[v]) < 1e-15, "vertex angle");
            sum += e.value;
        }
        o.detail << "; sum " << sum;
        o.require(std::abs(sum - 0.5) < 1e-15, "sum");
    });

    criterion(3, "unit square: oracle t^2 exactly, A_of_t within 1e-2", 120.0, [&](Outcome& o) {
        for (int t : {1, 2, 3}) {
            const double exact = A_t_oracle(square, t).value;
            const auto limit = A_of_t(square, t, LimitConfig{}, DampedSumConfig{});
            o.detail << " t=" << t << ": oracle " << exact << ", A " << limit.value;
            o.require(exact == double(t * t), "oracle");
            o.require(std::abs(limit.value - t * t) < 1e-2, "A_of_t");
        }
    });

    criterion(4, "Brion residual < 1e-4, square and triangle, 5 pole-free s each (8 eps levels)", 300.0,
              [&](Outcome& o) {
                  const DampedSumConfig cfg = schedule(8);
                  std::mt19937_64 rng(4);
                  double worst = 0.0;
                  for (const Polytope* p : {&square, &triangle}) {
                      const auto cones = flat_vertex_cones(*p);
                      for (int k = 0; k < 5; ++k) {
                          const ComplexPoint s = pole_free_s(rng, cones);
                          const auto r = verify_brion(*p, s, cfg, 1e-4);
                          worst = std::max(worst, r.residual);
                          o.require(r.pass, "s = " + show(s));
                      }
                  }
                  o.detail << " worst residual " << worst;
              });

    criterion(5, "cone reciprocity: < 1e-6 at eps 0.05, < 1e-5 extrapolated", 0, [&](Outcome& o) {
        const DampedSumConfig cfg;
        const SimpleCone quadrant(point({0, 0}), Eigen::MatrixXd::Identity(2, 2));
        const SimpleCone octant(point({0, 0, 0}), Eigen::MatrixXd::Identity(3, 3));
        std::mt19937_64 rng(5);
        double worst_fixed = 0.0;
        double worst = 0.0;
        auto check = [&](const SimpleCone& cone, const Point& shift, const ComplexPoint& s) {
            const auto r = verify_cone_reciprocity(cone, shift, s, cfg, 1e-5);
            const double fixed = r.diagnostics.at("residual_eps_0.05");
            worst_fixed = std::max(worst_fixed, fixed);
            worst = std::max(worst, r.residual);
            o.require(fixed < 1e-6 && r.pass, "s = " + show(s));
        };
        const std::vector<SimpleCone> quadrants{quadrant};
        for (int k = 0; k < 3; ++k) {
            const ComplexPoint s = pole_free_s(rng, quadrants);
            check(quadrant, Point::Zero(2), s);
            check(quadrant, point({0.5, std::sqrt(2.0)}), s);
        }
        check(octant, Point::Zero(3), cpoint({Complex(0.21, 0.1), Complex(-0.33, 0.25), Complex(0.12, -0.3)}));
        o.detail << " worst fixed-eps " << worst_fixed << ", extrapolated " << worst;
    });

    criterion(6, "Macdonald reciprocity < 1e-5, triangle, t in {0.5, 1.37}, 3 s (8 eps levels)", 0,
              [&](Outcome& o) {
                  const DampedSumConfig cfg = schedule(8);
                  std::mt19937_64 rng(6);
                  const auto cones = flat_vertex_cones(triangle);
                  double worst = 0.0;
                  for (int k = 0; k < 3; ++k) {
                      const ComplexPoint s = pole_free_s(rng, cones);
                      for (double t : {0.5, 1.37}) {
                          const auto r = verify_macdonald(triangle, t, s, cfg, 1e-5);
                          worst = std::max(worst, r.residual);
                          o.require(r.pass, "t = " + std::to_string(t) + ", s = " + show(s));
                      }
                  }
                  o.detail << " worst residual " << worst;
              });

    criterion(7, "|A(0)| < 1e-3 for the 3-simplex and the triangle", 0, [&](Outcome& o) {
        const auto s3 = conjecture_check(simplex, DampedSumConfig{}, LimitConfig{}, 1e-3);
        const auto tri = conjecture_check(triangle, DampedSumConfig{}, LimitConfig{}, 1e-3);
        o.detail << " simplex " << s3.limit.value << " +- " << s3.limit.error << ", triangle "
                 << tri.limit.value << " +- " << tri.limit.error;
        o.require(s3.pass, "simplex");
        o.require(tri.pass, "triangle");
    });

    criterion(8, "Gaussian limit vs exact (p = 1, 2) and l1 clipping vs MC, 20 cones, 3 sigma", 0,
              [&](Outcome& o) {
                  std::mt19937_64 rng(2024);
                  const auto eps = default_eps_schedule();
                  int misses = 0;
                  for (int trial = 0; trial < 20; ++trial) {
                      const Cone cone = random_cone(rng);
                      const SimpleCone simple(cone.apex, cone.generators);
                      const std::uint64_t seed = 1 + static_cast<std::uint64_t>(trial);
                      const double l2 = solid_angle_exact_2d(cone).value;
                      const double l1 = solid_angle_exact_2d_l1(cone).value;
                      const auto g2 = solid_angle_gaussian(simple, cone.apex, 2.0, eps, kDefaultSamples, seed);
                      const auto g1 = solid_angle_gaussian(simple, cone.apex, 1.0, eps, kDefaultSamples, seed);
                      const auto mc = solid_angle_mc(cone, cone.apex, 1.0, 1.0, kDefaultSamples, seed);
                      for (const auto& [estimate, truth] : {std::pair{g2, l2}, std::pair{g1, l1}, std::pair{mc, l1}})
                          if (std::abs(estimate.value - truth) > 3.0 * estimate.std_error)
                              ++misses;
                  }
                  o.detail << " misses " << misses << " of 60";
                  o.require(misses == 0, "3 sigma");
              });

    criterion(9, "unit square damped sums at eps 0.1: direct vs transform within 1e-8", 0, [&](Outcome& o) {
        const DampedSumConfig cfg;
        const double eps = 0.1;
        std::vector<ConeSumTerm> terms;
        for (const auto& cone : flat_vertex_cones(square))
            terms.push_back({1.0, cone});
        double worst = 0.0;
        for (const ComplexPoint& s : {cpoint({Complex(0.3, 0.2), Complex(-0.1, 0.4)}),
                                      cpoint({Complex(0.45, -0.7), Complex(0.05, 0.3)})}) {
            const Complex direct = damped_direct_sum(square, s, cfg, eps);
            const Complex transform = damped_transform_sum(terms, s, cfg, eps).value;
            worst = std::max(worst, std::abs(direct - transform));
        }
        // s = 0 through the product of interval transforms.
        Complex by_hand = 0.0;
        for (int m1 = -30; m1 <= 30; ++m1)
            for (int m2 = -30; m2 <= 30; ++m2)
                by_hand += interval_transform(double(m1)) * interval_transform(double(m2)) *
                           std::exp(-kPi * eps * double(m1 * m1 + m2 * m2));
        worst = std::max(worst, std::abs(damped_direct_sum(square, cpoint({0.0, 0.0}), cfg, eps) - by_hand));
        o.detail << " worst difference " << worst;
        o.require(worst < 1e-8, "agreement");
    });

    criterion(10, "Brianchon-Gram on 100 random points: square, triangle, tetrahedron", 0, [&](Outcome& o) {
        for (const Polytope* p : {&square, &triangle, &simplex}) {
            const auto r = brianchon_gram_check(*p, 100, 10);
            o.detail << " " << r.n_failures << "/" << r.n_points;
            o.require(r.pass && r.n_failures == 0, "identity");
        }
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
