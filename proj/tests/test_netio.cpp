#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "confocal/icnet.hpp"
#include "confocal/lowdim.hpp"
#include "confocal/mesh.hpp"
#include "confocal/netio.hpp"

namespace cd = confocal::discrete;
namespace cio = confocal::io;

TEST_CASE("generate_net counts: both parities") {
    cd::Params p({5, 1});
    cd::Window w;
    w.bounds = {{-5, -1}, {-1, 6}};
    const auto net_int = cio::generate_net(p, w, {0});
    CHECK(net_int.points.size() == 40);  // 5 x 8 integer points
    const auto net_half = cio::generate_net(p, w, {1});
    CHECK(net_half.points.size() == 28);  // 4 x 7 interior half points
    const auto both = cio::generate_net(p, w, {0, 1});
    CHECK(both.points.size() == 68);
}

TEST_CASE("generate_net drops out-of-domain lattice points") {
    cd::Params p({5, 1});
    cd::Window w;
    w.bounds = {{-7, 1}, {-3, 0}};  // exceeds the domain on all sides
    const auto net = cio::generate_net(p, w, {0});
    for (const auto& q : net.points) CHECK(p.in_domain(q.p));
    CHECK(net.points.size() == 5 * 2);  // domain clips to n1 in [-5,-1], n2 in [-1,0]
}

TEST_CASE("net json round trip") {
    cd::Params p({5, 1});
    cd::Window w;
    w.bounds = {{-4, -2}, {0, 3}};
    const auto net = cio::generate_net(p, w, {0, 1});
    const auto j = cio::net_to_json(net);
    CHECK(j["N"] == 2);
    const auto back = cio::net_from_json(j);
    REQUIRE(back.points.size() == net.points.size());
    CHECK(back.alpha == net.alpha);
    for (size_t i = 0; i < net.points.size(); ++i) {
        CHECK(back.points[i].p.m == net.points[i].p.m);
        CHECK(back.points[i].x == net.points[i].x);
    }
}

TEST_CASE("net_from_json rejects bad schemas") {
    CHECK_THROWS_AS(cio::net_from_json(cio::json::parse("{}")), std::invalid_argument);
    CHECK_THROWS_AS(cio::net_from_json(cio::json::parse(R"({"N":2,"alpha":[5],"points":[]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        cio::net_from_json(cio::json::parse(
            R"({"N":2,"alpha":[5,1],"points":[{"m2":[-2],"x":[1.0,2.0]}]})")),
        std::invalid_argument);
}

TEST_CASE("mesh json round trip preserves lattice tags") {
    cd::Params p({8, 4, 1});
    cd::Window w;
    w.bounds = {{-4, -1}, {-1, 3}};
    const auto mesh = confocal::mesh::surface_mesh(p, 0, -12, w);
    const auto back = cio::mesh_from_json(cio::mesh_to_json(mesh));
    CHECK(back.axis == mesh.axis);
    CHECK(back.level_m == mesh.level_m);
    CHECK(back.alpha == mesh.alpha);
    REQUIRE(back.vertices.size() == mesh.vertices.size());
    for (size_t i = 0; i < mesh.vertices.size(); ++i) {
        CHECK(back.vertices[i] == mesh.vertices[i]);
        CHECK(back.lattice[i] == mesh.lattice[i]);
    }
    CHECK(back.faces == mesh.faces);
}

TEST_CASE("line grid json round trip") {
    const auto grid = confocal::icnet::perturbed(confocal::icnet::rhombic(4, 5), 1e-2, 9);
    const auto back = cio::grid_from_json(cio::grid_to_json(grid));
    REQUIRE(back.rows.size() == grid.rows.size());
    REQUIRE(back.cols.size() == grid.cols.size());
    for (size_t i = 0; i < grid.rows.size(); ++i) {
        CHECK(back.rows[i].a == doctest::Approx(grid.rows[i].a).epsilon(1e-15));
        CHECK(back.rows[i].c == doctest::Approx(grid.rows[i].c).epsilon(1e-15));
    }
}

TEST_CASE("polyline json") {
    confocal::lowdim::Params3 p(8, 4, 1);
    const auto pts = confocal::lowdim::focal_hyperbola(p, 0, 4);
    const auto j = cio::polyline_to_json("focal_hyperbola", pts);
    CHECK(j["kind"] == "focal_hyperbola");
    REQUIRE(j["points"].size() == pts.size());
    CHECK(j["points"][0][0].get<double>() == pts[0][0]);
}

TEST_CASE("continuous samples json") {
    cio::ContinuousSamples s;
    s.a = {2.0, 1.0};
    Eigen::VectorXd u(2), x(2);
    u << -1.5, 0.5;
    x << 1.0, 2.0;
    s.points.emplace_back(u, x);
    const auto j = cio::continuous_to_json(s);
    CHECK(j["N"] == 2);
    CHECK(j["a"][0] == 2.0);
    REQUIRE(j["points"].size() == 1);
    CHECK(j["points"][0]["u"][0] == -1.5);
    CHECK(j["points"][0]["x"][1] == 2.0);
}

TEST_CASE("format_double round-trips doubles") {
    for (double v : {0.1, 1.0 / 3.0, 2.1380899352993951, -7.25e-13}) {
        CHECK(std::stod(cio::format_double(v)) == v);
    }
}
