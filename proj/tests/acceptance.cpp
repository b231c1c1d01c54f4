// Acceptance suite: one line per criterion, pinned tolerances, exit 1 on any
// failure.  Each criterion re-derives its expectations from the library's
// public interfaces only.
#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "confocal/continuous.hpp"
#include "confocal/discrete.hpp"
#include "confocal/epd.hpp"
#include "confocal/icnet.hpp"
#include "confocal/lowdim.hpp"
#include "confocal/mesh.hpp"
#include "confocal/netio.hpp"
#include "confocal/specfun.hpp"
#include "confocal/verify.hpp"

namespace {

int g_failures = 0;

void report(int idx, const char* what, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", idx, what, detail.c_str());
    if (!ok) ++g_failures;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

double suite_max(const confocal::verify::Report& rep, const char* name) {
    const auto it = rep.suites.find(name);
    return it == rep.suites.end() ? 1e300 : it->second.max_residual;
}

long suite_count(const confocal::verify::Report& rep, const char* name) {
    const auto it = rep.suites.find(name);
    return it == rep.suites.end() ? 0 : it->second.count;
}

// ---- 1: discrete square root identities and scaling limit ----
void criterion1() {
    namespace sf = confocal::specfun;
    double worst = 0.0;
    for (double u = 0.25; u <= 50.0; u += 0.25) {
        worst = std::max(worst, std::abs(sf::dsqrt(u + 1.0) - sf::dsqrt(u) - 0.5 / sf::dsqrt(u + 0.5)));
        worst = std::max(worst, std::abs(sf::dsqrt(u) * sf::dsqrt(u + 0.5) - u) / std::max(1.0, u));
    }
    bool mono = true;
    double prev = 1e300;
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
        const double err = std::abs(sf::dsqrt(2.0 / eps) * std::sqrt(eps) - std::sqrt(2.0));
        mono = mono && err < prev;
        prev = err;
    }
    report(1, "dsqrt difference/product identities and sqrt scaling limit",
           worst <= 1e-12 && mono && prev <= 1e-4,
           "identity " + fmt(worst) + ", final scaling error " + fmt(prev));
}

// ---- 2: continuous confocal coordinates ----
void criterion2() {
    namespace cc = confocal::continuous;
    namespace cv = confocal::verify;
    double ident = 0.0, invert = 0.0, ratio = 1e300;
    bool pass = true;
    const std::vector<std::vector<double>> systems = {{2.0, 1.0}, {3.0, 2.0, 1.0}};
    for (const auto& a : systems) {
        cc::Params p(a);
        const std::vector<int> grid(a.size(), a.size() == 2 ? 8 : 5);
        const auto rep = cv::verify_continuous(p, grid);
        for (const char* s : {"quadric_membership", "squared_coordinates", "sphere_identity",
                              "radial_identity", "orthogonality", "isothermic_ratio"}) {
            ident = std::max(ident, suite_max(rep, s));
        }
        invert = std::max(invert, suite_max(rep, "inversion_roundtrip"));

        Eigen::VectorXd u(p.dim());
        for (int i = 0; i < p.dim(); ++i) u[i] = -a[i] + (i + 1 < p.dim() ? 0.4 * (a[i] - a[i + 1]) : 0.9);
        const double r = cc::epd_residual(p, u, 0, p.dim() - 1, 1e-2) /
                         cc::epd_residual(p, u, 0, p.dim() - 1, 1e-3);
        ratio = std::min(ratio, r);
    }
    pass = ident <= 1e-10 && invert <= 1e-9 && ratio >= 50.0;
    report(2, "continuous identities, inversion round trip, EPD h^2 decay", pass,
           "identities " + fmt(ident) + ", round trip " + fmt(invert) + ", decay x" + fmt(ratio));
}

// ---- 3: N=2 discrete confocal conics ----
void criterion3() {
    namespace cd = confocal::discrete;
    namespace cv = confocal::verify;
    cd::Params p({5, 1});
    cd::Window w;
    w.bounds = {{-5, -1}, {-1, 6}};
    const auto rep = cv::verify_discrete(p, w, {0, 1});

    const Eigen::VectorXd spot = cd::eval(p, cd::LatticePoint::from_integer({-1, 0}));
    const bool spot_ok =
        std::abs(spot[0] - 2.1380899352993951) <= 1e-10 && spot[1] == 0.0;

    const bool pass = suite_max(rep, "depd") <= 1e-10 && suite_max(rep, "orthogonality") <= 1e-12 &&
                      suite_max(rep, "conics") <= 1e-11 && suite_max(rep, "tau_commute") <= 1e-12 &&
                      suite_max(rep, "tau_closed_form") <= 1e-10 &&
                      suite_max(rep, "isothermic") <= 1e-10 && suite_count(rep, "depd") > 0 &&
                      spot_ok;
    report(3, "alpha=(5,1) window identities and x(-1,0) = 4 sqrt(2/7)", pass,
           "depd " + fmt(suite_max(rep, "depd")) + ", conics " + fmt(suite_max(rep, "conics")) +
               ", tau " + fmt(suite_max(rep, "tau_closed_form")) + ", spot |dx| " +
               fmt(std::abs(spot[0] - 2.1380899352993951)));
}

// ---- 4: N=3 discrete confocal quadrics ----
void criterion4() {
    namespace cd = confocal::discrete;
    namespace cv = confocal::verify;
    cd::Params p({8, 4, 1});
    cd::Window w;
    w.bounds = {{-8, -4}, {-4, -1}, {-1, 8}};
    const auto rep = cv::verify_discrete(p, w, {0, 1});
    const bool pass = suite_max(rep, "depd") <= 1e-10 &&
                      suite_max(rep, "orthogonality") <= 1e-10 &&
                      suite_max(rep, "quadric") <= 1e-10 && suite_max(rep, "scalar") <= 1e-11 &&
                      suite_max(rep, "radial") <= 1e-11 &&
                      suite_max(rep, "d_consistency") <= 1e-14 && suite_count(rep, "quadric") > 0;
    report(4, "alpha=(8,4,1) window identities and scale consistency", pass,
           "depd " + fmt(suite_max(rep, "depd")) + ", quadric " + fmt(suite_max(rep, "quadric")) +
               ", scalar " + fmt(suite_max(rep, "scalar")) + ", D " +
               fmt(suite_max(rep, "d_consistency")));
}

// ---- 5: Koenigs property of the diagonal nets ----
void criterion5() {
    namespace cd = confocal::discrete;
    namespace ce = confocal::epd;
    const int di[8] = {1, 1, 0, -1, -1, -1, 0, 1};
    const int dj[8] = {0, 1, 1, 1, 0, -1, -1, -1};

    auto star = [&](const cd::Params& p, const std::vector<int>& m, int axis_i, int axis_j,
                    double bump) {
        const auto c = cd::LatticePoint::from_doubled(m);
        std::array<Eigen::VectorXd, 8> ring;
        for (int k = 0; k < 8; ++k) {
            auto q = m;
            q[axis_i] += 2 * di[k];
            q[axis_j] += 2 * dj[k];
            ring[k] = cd::eval(p, cd::LatticePoint::from_doubled(q));
        }
        ring[0] *= 1.0 + bump;
        return std::abs(ce::koenigs_multiratio_star(cd::eval(p, c), ring, 1e-3) - 1.0);
    };

    cd::Params p2({5, 1});
    double worst2 = 0.0;
    for (int m1 = -8; m1 <= -4; m1 += 2)
        for (int m2 = 2; m2 <= 8; m2 += 2)
            worst2 = std::max(worst2, star(p2, {m1, m2}, 0, 1, 0.0));

    cd::Params p3({8, 4, 1});
    double worst3 = 0.0;
    for (int m2 = -6; m2 <= -4; m2 += 2)
        for (int m3 = 2; m3 <= 6; m3 += 2)
            worst3 = std::max(worst3, star(p3, {-12, m2, m3}, 1, 2, 0.0));

    const double bumped = star(p2, {-6, 4}, 0, 1, 1e-6);
    const bool pass = worst2 <= 1e-12 && worst3 <= 1e-8 && bumped > 1e-6;
    report(5, "Koenigs multi-ratio = 1, sensitive to 1e-6 perturbation", pass,
           "Z2 " + fmt(worst2) + ", Z3 layer " + fmt(worst3) + ", perturbed " + fmt(bumped));
}

// ---- 6: quad mesh export ----
void criterion6() {
    namespace cd = confocal::discrete;
    namespace cm = confocal::mesh;
    cd::Params p({8, 4, 1});
    cd::Window w;
    w.bounds = {{-4, -1}, {-1, 8}};
    const auto mesh = cm::surface_mesh(p, 0, -12, w);
    const auto full = cm::reflect_mesh(mesh);
    const double planar = std::max(cm::max_planarity(mesh), cm::max_planarity(full));

    double angle = 0.0;
    for (int m2 : {-6, -4})
        for (int m3 : {0, 4, 10})
            for (int i = 0; i < 3; ++i)
                angle = std::max(
                    angle, cm::edge_dual_facet_angle(p, cd::LatticePoint::from_doubled({-12, m2, m3}), i));

    const auto back = cm::from_obj(cm::to_obj(mesh));
    bool lossless = back.vertices.size() == mesh.vertices.size() && back.faces == mesh.faces;
    for (size_t i = 0; lossless && i < mesh.vertices.size(); ++i) {
        lossless = back.vertices[i][0] == mesh.vertices[i][0] &&
                   back.vertices[i][1] == mesh.vertices[i][1] &&
                   back.vertices[i][2] == mesh.vertices[i][2];
    }
    const bool pass = planar <= 1e-10 && angle <= 1e-8 && lossless;
    report(6, "planar faces, edge/dual-facet orthogonality, lossless OBJ", pass,
           "planarity " + fmt(planar) + ", angle " + fmt(angle) + ", obj " +
               (lossless ? "exact" : "lossy"));
}

// ---- 7: umbilic points on the focal conics ----
void criterion7() {
    namespace cl = confocal::lowdim;
    cl::Params3 p(8, 4, 1);
    double worst = 0.0;
    for (int m3 = -2; m3 <= 16; ++m3) worst = std::max(worst, cl::focal_hyperbola_residual(p, m3));
    for (int m1 = -16; m1 <= -9; ++m1) worst = std::max(worst, cl::focal_ellipse_residual(p, m1));

    const auto hyp = cl::focal_hyperbola(p, -2, 4);
    const auto ell = cl::focal_ellipse(p, -16, -10);
    bool zeros = hyp[0][2] == 0.0 && ell[0][0] == 0.0;
    for (const auto& q : hyp) zeros = zeros && q[1] == 0.0;
    for (const auto& q : ell) zeros = zeros && q[2] == 0.0;

    report(7, "focal hyperbola/ellipse conic relations, exact boundary zeros",
           worst <= 1e-10 && zeros, "residual " + fmt(worst) + std::string(zeros ? ", zeros bitwise" : ", zeros inexact"));
}

// ---- 8: continuum limit of the discrete net ----
void criterion8() {
    namespace cd = confocal::discrete;
    namespace cc = confocal::continuous;
    auto deviation = [](long long L) {
        cd::Params pd({5 * L, L});
        cc::Params pc({5.0 * L + 0.5, 1.0 * L + 1.0});
        double worst = 0.0;
        for (int s1 = 1; s1 <= 5; ++s1) {
            for (int s2 = 1; s2 <= 5; ++s2) {
                const long long n1 = -5 * L + 4 * L * s1 / 6;
                const long long n2 = -L + 7 * L * s2 / 6;
                const auto xd = cd::eval(pd, cd::LatticePoint::from_doubled(
                                                 {static_cast<int>(2 * n1), static_cast<int>(2 * n2)}));
                Eigen::VectorXd u(2);
                u << n1 - 0.5, n2 - 1.0;
                const auto xc = cc::eval(pc, u);
                for (int k = 0; k < 2; ++k)
                    if (xc[k] != 0.0) worst = std::max(worst, std::abs(xd[k] - xc[k]) / std::abs(xc[k]));
            }
        }
        return worst;
    };
    bool mono = true;
    double prev = 1e300, first = 0.0, last = 0.0;
    for (long long L : {10, 20, 40, 70, 100}) {
        const double d = deviation(L);
        if (L == 10) first = d;
        last = d;
        mono = mono && d < prev;
        prev = d;
    }
    const bool pass = mono && first > 0.01 && first < 0.05 && last < 0.005;
    report(8, "discrete net converges to the continuous system as L grows", pass,
           "dev(10) " + fmt(first) + " -> dev(100) " + fmt(last) +
               (mono ? ", strictly decreasing" : ", NOT monotone"));
}

// ---- 9: IC-net theorem and solver ----
void criterion9() {
    namespace ci = confocal::icnet;
    const auto exact = ci::verify_theorem(ci::rhombic(8, 8));
    double worst = 0.0;
    for (const char* s : {"diagonal_duality", "circularity", "conicality", "dual_orthogonality",
                          "koenigs", "menelaus", "incircle_consistency"})
        worst = std::max(worst, exact.properties.at(s).max_residual);
    const double conic = exact.properties.at("conic_fit").max_residual;

    const auto solved = ci::solve(ci::perturbed(ci::rhombic(8, 8), 1e-3, 11), 1e-11, 300);
    const auto rep = ci::verify_theorem(solved.grid, 1e-8);
    double worst_solved = 0.0;
    for (const char* s : {"diagonal_duality", "circularity", "dual_orthogonality", "koenigs", "menelaus"})
        worst_solved = std::max(worst_solved, rep.properties.at(s).max_residual);
    const double rank1 = ci::factorization_numerical(solved.grid).rank1_residual;

    const bool pass = exact.tangential && worst <= 1e-10 && conic <= 1e-8 && solved.converged &&
                      solved.max_pitot <= 1e-10 && rep.tangential && worst_solved <= 1e-6 &&
                      rank1 <= 1e-5;
    report(9, "IC-net theorem on the rhombic grid; solver restores a perturbed grid", pass,
           "exact " + fmt(worst) + ", conic " + fmt(conic) + ", solved pitot " +
               fmt(solved.max_pitot) + ", props " + fmt(worst_solved) + ", rank1 " + fmt(rank1));
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (g_failures) std::printf("%d criterion(s) FAILED\n", g_failures);
    else std::printf("all 9 criteria passed\n");
    return g_failures ? 1 : 0;
}
