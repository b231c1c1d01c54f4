#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "confocal/discrete.hpp"
#include "confocal/lowdim.hpp"

namespace cd = confocal::discrete;
namespace cl = confocal::lowdim;
using cd::LatticePoint;

TEST_CASE("params2 constants") {
    cl::Params2 p(5, 1);
    CHECK(p.d1() == doctest::Approx(1.0 / std::sqrt(3.5)).epsilon(1e-15));
    CHECK(p.d2() == p.d1());
    CHECK_THROWS_AS(cl::Params2(1, 5), std::invalid_argument);
}

TEST_CASE("eval2 agrees with the general evaluation") {
    cl::Params2 p(5, 1);
    const auto g = p.as_general();
    for (int m1 = -10; m1 <= -2; ++m1) {
        for (int m2 = -2; m2 <= 12; ++m2) {
            if (((m1 % 2) + 2) % 2 != ((m2 % 2) + 2) % 2) continue;
            const auto n = LatticePoint::from_doubled({m1, m2});
            const Eigen::Vector2d a = cl::eval2(p, 0.5 * m1, 0.5 * m2);
            const Eigen::VectorXd b = cd::eval(g, n);
            CHECK(std::abs(a[0] - b[0]) <= 1e-13 * std::max(1.0, std::abs(b[0])));
            CHECK(std::abs(a[1] - b[1]) <= 1e-13 * std::max(1.0, std::abs(b[1])));
        }
    }
}

// Reference value computed with mpmath at 40 digits.
TEST_CASE("eval2 spot value") {
    cl::Params2 p(5, 1);
    const Eigen::Vector2d x = cl::eval2(p, -3.5, 1.5);
    CHECK(x[0] == doctest::Approx(1.4469690675414851452).epsilon(1e-14));
    CHECK(x[1] == doctest::Approx(1.2099114025881934364).epsilon(1e-14));
}

TEST_CASE("derivative2 matches the forward difference of eval2") {
    cl::Params2 p(5, 1);
    for (double n1 : {-4.0, -3.5, -2.5}) {
        for (double n2 : {0.0, 1.5, 4.0}) {
            for (int i : {0, 1}) {
                const Eigen::Vector2d fd =
                    cl::eval2(p, n1 + (i == 0), n2 + (i == 1)) - cl::eval2(p, n1, n2);
                const Eigen::Vector2d cf = cl::derivative2(p, n1, n2, i);
                CHECK((fd - cf).norm() <= 1e-12);
            }
        }
    }
}

TEST_CASE("tau_step reproduces the half-lattice translate") {
    cl::Params2 p(5, 1);
    for (int sigma2 : {1, -1}) {
        const auto n = LatticePoint::from_doubled({-7, 3});
        const Eigen::Vector2d x = cl::eval2(p, -3.5, 1.5);
        const Eigen::Vector2d t = cl::tau_step(p, n, x, sigma2);
        const Eigen::Vector2d direct = cl::eval2(p, -3.0, 1.5 + 0.5 * sigma2);
        CHECK((t - direct).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

// mpmath: tau++ of x(-3.5, 1.5) = (1.7771137124566400644, 1.1807239980675332668)
TEST_CASE("tau_step spot value") {
    cl::Params2 p(5, 1);
    const auto n = LatticePoint::from_doubled({-7, 3});
    const Eigen::Vector2d t = cl::tau_step(p, n, cl::eval2(p, -3.5, 1.5), +1);
    CHECK(t[0] == doctest::Approx(1.7771137124566400644).epsilon(1e-13));
    CHECK(t[1] == doctest::Approx(1.1807239980675332668).epsilon(1e-13));
}

TEST_CASE("tau steps commute: ++ then +- equals +- then ++") {
    cl::Params2 p(5, 1);
    const auto n = LatticePoint::from_doubled({-6, 4});
    const Eigen::Vector2d x = cl::eval2(p, -3.0, 2.0);
    const Eigen::Vector2d a =
        cl::tau_step(p, n.shifted_sigma({1, 1}), cl::tau_step(p, n, x, +1), -1);
    const Eigen::Vector2d b =
        cl::tau_step(p, n.shifted_sigma({1, -1}), cl::tau_step(p, n, x, -1), +1);
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("tau_step refuses boundary points") {
    cl::Params2 p(5, 1);
    const auto n = LatticePoint::from_doubled({-2, 0});  // y = 0
    CHECK_THROWS_AS(cl::tau_step(p, n, cl::eval2(p, -1.0, 0.0), +1), std::domain_error);
}

TEST_CASE("conic relations for the dual pair") {
    cl::Params2 p(5, 1);
    for (int sigma2 : {1, -1}) {
        const auto r = cl::conic_relations(p, LatticePoint::from_doubled({-7, 3}), sigma2);
        for (int d = 0; d < 2; ++d) {
            REQUIRE(r.valid[d]);
            CHECK(r.residual[d] <= 1e-12);
        }
    }
}

TEST_CASE("isothermic ratio closed form") {
    cl::Params2 p(5, 1);
    const auto g = p.as_general();
    const auto n = LatticePoint::from_doubled({-6, 2});
    const auto f = cd::factorization_check(g, n, 0, 1);
    REQUIRE(f.valid);
    const double closed = cl::isothermic_ratio(p, n);
    CHECK(std::abs(f.lhs_ratio - closed) <= 1e-12 * std::max(1.0, std::abs(closed)));
    // -(n2+alpha-1/2)(n2+beta)/((n1+alpha+1/2)(n1+beta+1)) at n=(-3,1)
    CHECK(closed == doctest::Approx(-(1.0 + 4.5) * (1.0 + 1.0) / ((-3.0 + 5.5) * (-3.0 + 2.0)))
                        .epsilon(1e-13));
}

TEST_CASE("params3 constants") {
    cl::Params3 p(8, 4, 1);
    CHECK(p.a() == 8.5);
    CHECK(p.b() == 5.0);
    CHECK(p.c() == 2.5);
    CHECK(p.d1() == doctest::Approx(0.21821789023599238127).epsilon(1e-14));
    CHECK(p.d2() == doctest::Approx(0.338061701891406631).epsilon(1e-14));
    CHECK(p.d3() == doctest::Approx(0.25819888974716112568).epsilon(1e-14));
    // D_1^2 - D_2^2 + D_3^2 = 0 and D_1^2 a - D_2^2 b + D_3^2 c = 0
    CHECK(std::abs(p.d1() * p.d1() - p.d2() * p.d2() + p.d3() * p.d3()) <= 1e-15);
    CHECK(std::abs(p.d1() * p.d1() * p.a() - p.d2() * p.d2() * p.b() +
                   p.d3() * p.d3() * p.c()) <= 1e-15);
}

TEST_CASE("eval3 agrees with the general evaluation") {
    cl::Params3 p(8, 4, 1);
    const auto g = p.as_general();
    for (const auto& m : {std::vector<int>{-12, -4, 2}, std::vector<int>{-9, -3, 5},
                          std::vector<int>{-16, -8, 14}, std::vector<int>{-13, -7, 1}}) {
        const Eigen::Vector3d a = cl::eval3(p, 0.5 * m[0], 0.5 * m[1], 0.5 * m[2]);
        const Eigen::VectorXd b = cd::eval(g, LatticePoint::from_doubled(m));
        CHECK((a - Eigen::Vector3d(b)).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("derivative3 matches the forward difference of eval3") {
    cl::Params3 p(8, 4, 1);
    const double n1 = -5.5, n2 = -2.5, n3 = 1.5;
    for (int i = 0; i < 3; ++i) {
        const Eigen::Vector3d fd =
            cl::eval3(p, n1 + (i == 0), n2 + (i == 1), n3 + (i == 2)) - cl::eval3(p, n1, n2, n3);
        const Eigen::Vector3d cf = cl::derivative3(p, n1, n2, n3, i);
        CHECK((fd - cf).norm() <= 1e-12);
    }
}

TEST_CASE("quadric relations in three dimensions") {
    cl::Params3 p(8, 4, 1);
    const auto n = LatticePoint::from_doubled({-12, -4, 2});
    const auto r = cl::quadric_relations3(p, n, {1, 1, 1});
    for (int i = 0; i < 3; ++i) {
        REQUIRE(r.valid[i]);
        CHECK(r.residual[i] <= 1e-12);
    }
}

// Reference values computed with mpmath at 40 digits.
TEST_CASE("focal hyperbola points and conic residual") {
    cl::Params3 p(8, 4, 1);
    const auto pts = cl::focal_hyperbola(p, 0, 8);
    REQUIRE(pts.size() == 9);
    CHECK(pts[0][0] == doctest::Approx(1.9849917825996314545).epsilon(1e-13));
    CHECK(pts[0][1] == 0.0);
    CHECK(pts[0][2] == doctest::Approx(0.57205702053985562085).epsilon(1e-13));
    CHECK(pts[3][0] == doctest::Approx(2.1942436204200960575).epsilon(1e-13));
    CHECK(pts[3][2] == doctest::Approx(0.97115416052629250715).epsilon(1e-13));
    CHECK(pts[8][0] == doctest::Approx(2.5045013507018787492).epsilon(1e-13));
    CHECK(pts[8][2] == doctest::Approx(1.4077965739848009419).epsilon(1e-13));
    for (int m3 = -2; m3 <= 10; ++m3) CHECK(cl::focal_hyperbola_residual(p, m3) <= 1e-12);
}

TEST_CASE("focal ellipse points and conic residual") {
    cl::Params3 p(8, 4, 1);
    const auto pts = cl::focal_ellipse(p, -16, -9);
    REQUIRE(pts.size() == 8);
    CHECK(pts[0][0] == 0.0);  // n1 = -alpha endpoint
    CHECK(pts[0][1] == doctest::Approx(1.6384341240342475704).epsilon(1e-13));
    CHECK(pts[5][0] == doctest::Approx(1.9698601698386325517).epsilon(1e-13));
    CHECK(pts[5][1] == doctest::Approx(0.95365445401779220508).epsilon(1e-13));
    CHECK(pts[7][0] == doctest::Approx(2.363832203806359062).epsilon(1e-13));
    CHECK(pts[7][1] == doctest::Approx(0.47682722700889610254).epsilon(1e-13));
    for (int m1 = -16; m1 <= -9; ++m1) CHECK(cl::focal_ellipse_residual(p, m1) <= 1e-12);
    CHECK_THROWS_AS(cl::focal_ellipse(p, -18, -9), std::domain_error);
}
