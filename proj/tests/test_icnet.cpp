#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "confocal/errors.hpp"
#include "confocal/icnet.hpp"

namespace ci = confocal::icnet;

TEST_CASE("rhombic grid is an exact IC-net") {
    const auto grid = ci::rhombic(6, 6);
    const auto v = ci::build_vertices(grid);
    CHECK(v.order_ok);
    for (int i = 0; i + 1 < 6; ++i)
        for (int j = 0; j + 1 < 6; ++j) {
            CHECK(ci::cell_convex(v, i, j));
            CHECK(std::abs(ci::pitot_residual(v, i, j)) <= 1e-12);
        }
}

TEST_CASE("incircle of a rhombus has radius spacing/2") {
    const auto grid = ci::rhombic(5, 5, 0.3, 1.2, 1.0);
    const auto v = ci::build_vertices(grid);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const auto c = ci::incircle(grid, v, i, j);
            CHECK(c.radius == doctest::Approx(0.5).epsilon(1e-12));
            CHECK(c.max_side_error <= 1e-12);
        }
}

TEST_CASE("incircle rejects a non-tangential cell") {
    auto grid = ci::rhombic(4, 4);
    grid.cols[1].c += 0.05;  // parallel shift breaks the Pitot balance
    const auto v = ci::build_vertices(grid);
    CHECK_THROWS_AS(ci::incircle(grid, v, 1, 0), confocal::geometry_error);
}

TEST_CASE("build_vertices throws on near-parallel row/col pairs") {
    auto grid = ci::rhombic(3, 3);
    grid.cols[0] = grid.rows[0];
    CHECK_THROWS_AS(ci::build_vertices(grid), confocal::geometry_error);
}

TEST_CASE("perturbed grids are deterministic and lose tangentiality") {
    const auto grid = ci::rhombic(6, 6);
    const auto p1 = ci::perturbed(grid, 1e-3, 7);
    const auto p2 = ci::perturbed(grid, 1e-3, 7);
    for (int i = 0; i < 6; ++i) {
        CHECK(p1.rows[i].c == p2.rows[i].c);
        CHECK(p1.rows[i].a == p2.rows[i].a);
    }
    const auto v = ci::build_vertices(p1);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            worst = std::max(worst, std::abs(ci::pitot_residual(v, i, j)));
    CHECK(worst > 1e-5);
}

TEST_CASE("incenter_net dimensions") {
    const auto net = ci::incenter_net(ci::rhombic(7, 6));
    CHECK(net.n_rows == 6);
    CHECK(net.n_cols == 5);
    for (double r : net.radius) CHECK(r == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("IC-net theorem holds on the rhombic grid") {
    const auto rep = ci::verify_theorem(ci::rhombic(8, 8));
    CHECK(rep.tangential);
    CHECK(rep.max_pitot <= 1e-12);
    for (const char* name :
         {"diagonal_duality", "circularity", "conicality", "dual_orthogonality", "koenigs",
          "menelaus", "incircle_consistency"}) {
        INFO(name);
        const auto& pr = rep.properties.at(name);
        CHECK(pr.count > 0);
        CHECK(pr.max_residual <= 1e-10);
    }
    CHECK(rep.properties.at("conic_fit").max_residual <= 1e-8);
}

TEST_CASE("theorem residuals blow up on a perturbed grid") {
    const auto rep = ci::verify_theorem(ci::perturbed(ci::rhombic(8, 8), 1e-3, 3), 1.0);
    CHECK(rep.max_pitot > 1e-5);
    CHECK(rep.properties.at("koenigs").max_residual > 1e-5);
}

TEST_CASE("conformal factor separates with numerical rank 1") {
    const auto rep = ci::factorization_numerical(ci::rhombic(8, 8));
    CHECK(rep.q.rows() >= 3);
    CHECK(rep.q.cols() == 3);
    CHECK(rep.rank1_residual <= 1e-10);

    const auto bad = ci::factorization_numerical(ci::perturbed(ci::rhombic(8, 8), 1e-2, 5));
    CHECK(bad.rank1_residual > 1e-6);
}

TEST_CASE("solve projects a perturbed grid back onto the IC constraint set") {
    const auto seed = ci::perturbed(ci::rhombic(6, 6), 1e-3, 11);
    const auto res = ci::solve(seed, 1e-11, 200);
    CHECK(res.converged);
    CHECK(res.max_pitot <= 1e-10);
    CHECK(res.iterations > 0);

    const auto rep = ci::verify_theorem(res.grid, 1e-8);
    CHECK(rep.tangential);
    for (const char* name : {"diagonal_duality", "circularity", "dual_orthogonality", "koenigs"}) {
        INFO(name);
        CHECK(rep.properties.at(name).max_residual <= 1e-6);
    }
}

TEST_CASE("solve on an exact IC-net returns immediately") {
    const auto res = ci::solve(ci::rhombic(5, 5), 1e-10, 50);
    CHECK(res.converged);
    CHECK(res.iterations <= 1);
    CHECK(res.max_pitot <= 1e-12);
}
