#include "confocal/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>

#include "confocal/epd.hpp"
#include "confocal/errors.hpp"
#include "confocal/lowdim.hpp"
#include "confocal/mesh.hpp"

namespace confocal::verify {

void SuiteResult::add(double r) {
    max_residual = std::max(max_residual, r);
    ++count;
}

bool Report::pass() const {
    for (const auto& [name, s] : suites) {
        if (!s.pass) return false;
    }
    return true;
}

std::vector<std::string> Report::failing() const {
    std::vector<std::string> out;
    for (const auto& [name, s] : suites) {
        if (!s.pass) out.push_back(name);
    }
    return out;
}

nlohmann::json Report::to_json() const {
    nlohmann::json js;
    for (const auto& [name, s] : suites) {
        js[name] = {{"max_residual", s.max_residual},
                    {"tolerance", s.tolerance},
                    {"pass", s.pass},
                    {"count", s.count},
                    {"skipped", s.skipped}};
    }
    return {{"pass", pass()}, {"suites", std::move(js)}, {"config", config_echo}};
}

double Tolerances::get(const std::string& suite, double fallback) const {
    auto it = overrides.find(suite);
    return it == overrides.end() ? fallback : it->second;
}

namespace {

using discrete::LatticePoint;

using Lookup = std::function<std::optional<Eigen::VectorXd>(const LatticePoint&)>;

SuiteResult& suite(Report& rep, const Tolerances& tol, const std::string& name,
                   double fallback) {
    SuiteResult& s = rep.suites[name];
    s.tolerance = tol.get(name, fallback);
    return s;
}

std::vector<std::vector<int>> sign_vectors(int n) {
    std::vector<std::vector<int>> out;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> s(n);
        for (int k = 0; k < n; ++k) s[k] = mask & (1 << k) ? -1 : 1;
        out.push_back(std::move(s));
    }
    return out;
}

// Enumerate the window-and-domain points of the given parities (mirrors
// io::generate_net's convention: parity 1 walks lo + 1/2 .. hi - 1/2).
std::vector<LatticePoint> window_points(const discrete::Params& p,
                                        const discrete::Window& window,
                                        const std::vector<int>& parities) {
    const int N = p.dim();
    std::vector<LatticePoint> pts;
    for (int par : parities) {
        std::vector<int> count(N);
        bool empty = false;
        for (int d = 0; d < N; ++d) {
            count[d] = window.bounds[d][1] - window.bounds[d][0] + 1 - par;
            if (count[d] <= 0) empty = true;
        }
        if (empty) continue;
        std::vector<int> idx(N, 0), m(N);
        for (;;) {
            for (int d = 0; d < N; ++d) {
                m[d] = 2 * (window.bounds[d][0] + idx[d]) + par;
            }
            auto q = LatticePoint::from_doubled(m);
            if (p.in_domain(q)) pts.push_back(std::move(q));
            int d = N - 1;
            while (d >= 0 && ++idx[d] == count[d]) idx[d--] = 0;
            if (d < 0) break;
        }
    }
    return pts;
}

// All suites that only need net values at lattice points, shared between the
// closed-form and the stored-value verifiers.
void run_point_suites(Report& rep, const discrete::Params& p,
                      const std::vector<LatticePoint>& points, const Lookup& get,
                      const Tolerances& tol) {
    const int N = p.dim();
    const auto& alpha = p.alpha();
    const auto sigmas = sign_vectors(N);

    SuiteResult& s_depd = suite(rep, tol, "depd", 1e-10);
    SuiteResult& s_mr = suite(rep, tol, "koenigs_multiratio", 1e-8);
    SuiteResult& s_ortho = suite(rep, tol, "orthogonality", 1e-10);
    SuiteResult& s_prod = suite(rep, tol, "product", 1e-10);
    SuiteResult& s_quad = suite(rep, tol, "quadric", 1e-10);
    SuiteResult& s_scal = suite(rep, tol, "scalar", 1e-11);
    SuiteResult& s_rad = suite(rep, tol, "radial", 1e-11);
    SuiteResult& s_fact = suite(rep, tol, "factorization", 1e-10);
    SuiteResult& s_bound = suite(rep, tol, "boundary", 0.0);
    SuiteResult* s_plan = N == 3 ? &suite(rep, tol, "planarity", 1e-10) : nullptr;

    SuiteResult* s_conic = nullptr;
    SuiteResult* s_tau = nullptr;
    SuiteResult* s_comm = nullptr;
    SuiteResult* s_iso = nullptr;
    std::optional<lowdim::Params2> p2;
    if (N == 2) {
        p2.emplace(alpha[0], alpha[1]);
        s_conic = &suite(rep, tol, "conics", 1e-11);
        s_tau = &suite(rep, tol, "tau_closed_form", 1e-10);
        s_comm = &suite(rep, tol, "tau_commute", 1e-12);
        s_iso = &suite(rep, tol, "isothermic", 1e-10);
    }

    for (const LatticePoint& n : points) {
        const auto x0_opt = get(n);
        if (!x0_opt) continue;
        const Eigen::VectorXd& x0 = *x0_opt;

        // boundary: components with an exact zero factor must be stored as
        // exact zeros.
        for (int k = 0; k < N; ++k) {
            bool zero_factor = false;
            for (int i = 0; i < N; ++i) {
                const long long arg2 = i < k ? -n.m[i] - 2 * alpha[k] - (k - i) + 1
                                             : n.m[i] + 2 * alpha[k] + (k - i);
                if (arg2 == 0) zero_factor = true;
            }
            if (zero_factor) s_bound.add(std::abs(x0[k]));
        }

        // pairwise face/star identities
        for (int i = 0; i < N; ++i) {
            for (int j = i + 1; j < N; ++j) {
                const auto xi = get(n.shifted(i));
                const auto xj = get(n.shifted(j));
                const auto xij = get(n.shifted(i).shifted(j));
                if (xi && xj && xij) {
                    const long long d2 = n.m[i] - n.m[j] + (j - i);
                    if (d2 == 0) {
                        s_depd.skip();
                    } else {
                        const double d = 0.5 * static_cast<double>(d2);
                        const Eigen::VectorXd lhs = *xij - *xi - *xj + x0;
                        const Eigen::VectorXd rhs = (0.5 / d) * (*xj - *xi);
                        s_depd.add((lhs - rhs).norm());
                    }
                    if (s_plan) {
                        s_plan->add(mesh::planarity_residual(
                            {Eigen::Vector3d(x0), Eigen::Vector3d(*xi),
                             Eigen::Vector3d(*xij), Eigen::Vector3d(*xj)}));
                    }
                } else {
                    s_depd.skip();
                    if (s_plan) s_plan->skip();
                }

                // Koenigs multi-ratio needs the full 8-ring in the (i, j) plane.
                const std::array<std::pair<int, int>, 8> ring_shift = {
                    {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}}};
                std::array<Eigen::VectorXd, 8> ring;
                bool ok = true;
                for (int r = 0; r < 8 && ok; ++r) {
                    const auto q = get(n.shifted(i, ring_shift[r].first)
                                           .shifted(j, ring_shift[r].second));
                    if (q) ring[r] = *q;
                    else ok = false;
                }
                if (ok) {
                    try {
                        s_mr.add(std::abs(
                            epd::koenigs_multiratio_star(x0, ring, 1e-3) - 1.0));
                    } catch (const geometry_error&) {
                        s_mr.skip();
                    }
                } else {
                    s_mr.skip();
                }
            }
        }

        // orthogonality of Delta_i x(n) and Delta_j x(n - e_j + f/2)
        for (int i = 0; i < N; ++i) {
            for (int j = 0; j < N; ++j) {
                if (i == j) continue;
                const auto xi = get(n.shifted(i));
                const LatticePoint base = n.shifted(j, -1).shifted_half_f(+1);
                const auto xb = get(base);
                const auto xbj = get(base.shifted(j));
                if (!xi || !xb || !xbj) {
                    s_ortho.skip();
                    continue;
                }
                s_ortho.add(std::abs((*xi - x0).dot(*xbj - *xb)));
            }
        }

        // dual-pair identities over all sigma
        for (const auto& sg : sigmas) {
            const auto xd = get(n.shifted_sigma(sg));
            if (!xd) {
                s_prod.skip();
                continue;
            }
            long long scalar_rhs4 = 0;
            for (int k = 0; k < N; ++k) {
                double num = 1.0, den = 1.0;
                for (int i = 0; i < N; ++i) {
                    num *= 0.25 * static_cast<double>(2LL * n.m[i] + 4 * alpha[k] +
                                                      2 * (k - i) - (1 - sg[i]));
                    if (i != k) {
                        den *= 0.5 * static_cast<double>(2 * (alpha[k] - alpha[i]) + (k - i));
                    }
                }
                s_prod.add(std::abs(x0[k] * (*xd)[k] - num / den));
                scalar_rhs4 += 2LL * n.m[k] + 4 * alpha[k] - (1 - sg[k]);
            }
            s_scal.add(std::abs(x0.dot(*xd) - 0.25 * static_cast<double>(scalar_rhs4)));

            for (int i = 0; i < N; ++i) {
                double sum = 0.0;
                bool valid = true;
                for (int k = 0; k < N; ++k) {
                    const long long den4 =
                        2LL * n.m[i] + 4 * alpha[k] + 2 * (k - i) + sg[i] - 1;
                    if (den4 == 0) {
                        valid = false;
                        break;
                    }
                    sum += x0[k] * (*xd)[k] / (0.25 * static_cast<double>(den4));
                }
                if (valid) s_quad.add(std::abs(sum - 1.0));
                else s_quad.skip();

                if (sg[i] == -1) {
                    const auto xdi = get(n.shifted_sigma(sg).shifted(i));
                    if (xdi) s_rad.add(std::abs(x0.dot(*xdi - *xd) - 0.5));
                    else s_rad.skip();
                }
            }
        }

        // conformal factorization of the dual-shift products
        for (int i = 0; i < N; ++i) {
            for (int j = 0; j < N; ++j) {
                if (i == j) continue;
                const auto xi = get(n.shifted(i));
                const auto xh = get(n.shifted_half_f(+1));
                const auto xhi = get(n.shifted_half_f(+1).shifted(i));
                const LatticePoint base = n.shifted(j, -1).shifted_half_f(+1);
                const auto xb = get(base);
                const auto xbj = get(base.shifted(j));
                const auto xf = get(n.shifted_half_f(+1).shifted_half_f(+1));
                const auto xfj = get(n.shifted_half_f(+1).shifted_half_f(+1).shifted(j, -1));
                if (!xi || !xh || !xhi || !xb || !xbj || !xf || !xfj) {
                    s_fact.skip();
                    continue;
                }
                const double num = (*xi - x0).dot(*xhi - *xh);
                const double den = (*xbj - *xb).dot(*xf - *xfj);
                double rnum = -1.0, rden = 1.0;
                bool valid = den != 0.0;
                for (int t = 0; t < N; ++t) {
                    if (t != i && t != j) {
                        rnum *= 0.5 * static_cast<double>(n.m[i] - n.m[t] + (t - i) + 1);
                        const long long f2 = n.m[j] - n.m[t] + (t - j) - 1;
                        if (f2 == 0) valid = false;
                        rden *= 0.5 * static_cast<double>(f2);
                    }
                    rnum *= 0.5 * static_cast<double>(n.m[j] + 2 * alpha[t] + (t - j));
                    const long long f2 = n.m[i] + 2 * alpha[t] + (t - i) + 1;
                    if (f2 == 0) valid = false;
                    rden *= 0.5 * static_cast<double>(f2);
                }
                if (!valid) {
                    s_fact.skip();
                    continue;
                }
                const double rhs = rnum / rden;
                s_fact.add(std::abs(num / den - rhs) / std::max(1.0, std::abs(rhs)));
            }
        }

        // N = 2 extras against the independent closed forms
        if (N == 2) {
            for (int sigma2 : {+1, -1}) {
                const LatticePoint target = n.shifted_sigma({1, sigma2});
                const auto xt = get(target);
                if (!xt) {
                    s_conic->skip();
                    s_tau->skip();
                    continue;
                }
                // conic membership, denominators in doubled integers
                const long long m1 = n.m[0], m2 = n.m[1];
                const long long A = alpha[0], B = alpha[1];
                const std::array<std::array<long long, 2>, 2> den2 = {{
                    {m1 + 2 * A, m1 + 2 * B + 1},
                    {sigma2 == 1 ? m2 + 2 * A - 1 : m2 + 2 * A - 2,
                     sigma2 == 1 ? m2 + 2 * B : m2 + 2 * B - 1},
                }};
                for (const auto& dr : den2) {
                    if (dr[0] == 0 || dr[1] == 0) {
                        s_conic->skip();
                        continue;
                    }
                    s_conic->add(std::abs(x0[0] * (*xt)[0] / (0.5 * dr[0]) +
                                          x0[1] * (*xt)[1] / (0.5 * dr[1]) - 1.0));
                }

                if (x0[0] == 0.0 || x0[1] == 0.0) {
                    s_tau->skip();
                } else {
                    const Eigen::Vector2d stepped =
                        lowdim::tau_step(*p2, n, Eigen::Vector2d(x0), sigma2);
                    s_tau->add((stepped - Eigen::Vector2d(*xt)).cwiseAbs().maxCoeff());
                }
            }

            if (x0[0] != 0.0 && x0[1] != 0.0) {
                try {
                    const Eigen::Vector2d via_pp = lowdim::tau_step(
                        *p2, n.shifted_sigma({1, 1}),
                        lowdim::tau_step(*p2, n, Eigen::Vector2d(x0), +1), -1);
                    const Eigen::Vector2d via_pm = lowdim::tau_step(
                        *p2, n.shifted_sigma({1, -1}),
                        lowdim::tau_step(*p2, n, Eigen::Vector2d(x0), -1), +1);
                    s_comm->add((via_pp - via_pm).cwiseAbs().maxCoeff());
                } catch (const std::domain_error&) {
                    s_comm->skip();
                }
            } else {
                s_comm->skip();
            }

            // isothermic quotient needs the full 8-point stencil
            const auto xi = get(n.shifted(0));
            const auto xh = get(n.shifted_half_f(+1));
            const auto xhi = get(n.shifted_half_f(+1).shifted(0));
            const LatticePoint base = n.shifted(1, -1).shifted_half_f(+1);
            const auto xb = get(base);
            const auto xbj = get(base.shifted(1));
            const auto xf = get(n.shifted_half_f(+1).shifted_half_f(+1));
            const auto xfj = get(n.shifted_half_f(+1).shifted_half_f(+1).shifted(1, -1));
            if (xi && xh && xhi && xb && xbj && xf && xfj) {
                const double num = (*xi - x0).dot(*xhi - *xh);
                const double den = (*xbj - *xb).dot(*xf - *xfj);
                if (den == 0.0) s_iso->skip();
                else s_iso->add(std::abs(num / den - lowdim::isothermic_ratio(*p2, n)));
            } else {
                s_iso->skip();
            }
        }
    }
}

void add_closed_form_suites(Report& rep, const discrete::Params& p,
                            const discrete::Window& window, const Tolerances& tol) {
    if (p.dim() != 3) return;
    const auto& alpha = p.alpha();
    lowdim::Params3 p3(alpha[0], alpha[1], alpha[2]);

    SuiteResult& g2 = suite(rep, tol, "umbilic_g2", 1e-10);
    const int m3_hi = 2 * window.bounds[2][1];
    for (int m3 = -2 * static_cast<int>(alpha[2]); m3 + 1 <= m3_hi; ++m3) {
        g2.add(lowdim::focal_hyperbola_residual(p3, m3));
    }

    SuiteResult& g5 = suite(rep, tol, "umbilic_g5", 1e-10);
    for (int m1 = -2 * static_cast<int>(alpha[0]);
         m1 + 1 <= -2 * static_cast<int>(alpha[1]); ++m1) {
        g5.add(lowdim::focal_ellipse_residual(p3, m1));
    }

    SuiteResult& dc = suite(rep, tol, "d_consistency", 1e-14);
    const double d1 = p3.d1(), d2 = p3.d2(), d3 = p3.d3();
    dc.add(std::abs(d1 * d1 - d2 * d2 + d3 * d3));
    dc.add(std::abs(d1 * d1 * p3.a() - d2 * d2 * p3.b() + d3 * d3 * p3.c()));
    for (int k = 0; k < 3; ++k) {
        const double dk = k == 0 ? d1 : k == 1 ? d2 : d3;
        dc.add(std::abs(dk - p.scale(k)));
    }
}

void close_all(Report& rep) {
    for (auto& [name, s] : rep.suites) s.close();
}

}  // namespace

Report verify_discrete(const discrete::Params& p, const discrete::Window& window,
                       const std::vector<int>& parities, const Tolerances& tol) {
    if (window.dim() != p.dim()) {
        throw std::invalid_argument("verify_discrete: window dimension mismatch");
    }
    Report rep;
    rep.config_echo = {{"alpha", p.alpha()}, {"parities", parities}};
    for (const auto& b : window.bounds) rep.config_echo["window"].push_back({b[0], b[1]});

    const auto points = window_points(p, window, parities);
    const Lookup get = [&p](const LatticePoint& q) -> std::optional<Eigen::VectorXd> {
        if (!p.in_domain(q)) return std::nullopt;
        return discrete::eval(p, q);
    };
    run_point_suites(rep, p, points, get, tol);
    add_closed_form_suites(rep, p, window, tol);
    close_all(rep);
    return rep;
}

Report verify_net(const io::Net& net, const Tolerances& tol) {
    const discrete::Params p(net.alpha);
    Report rep;
    rep.config_echo = {{"alpha", net.alpha}, {"points", net.points.size()}};

    std::map<std::vector<int>, Eigen::VectorXd> values;
    std::vector<LatticePoint> points;
    for (const auto& pt : net.points) {
        if (!pt.p.uniform_parity() || !p.in_domain(pt.p)) continue;
        values[pt.p.m] = pt.x;
        points.push_back(pt.p);
    }
    const Lookup get = [&values](const LatticePoint& q) -> std::optional<Eigen::VectorXd> {
        auto it = values.find(q.m);
        if (it == values.end()) return std::nullopt;
        return it->second;
    };
    run_point_suites(rep, p, points, get, tol);
    close_all(rep);
    return rep;
}

Report verify_continuous(const continuous::Params& p, const std::vector<int>& grid,
                         const Tolerances& tol) {
    const int N = p.dim();
    if (static_cast<int>(grid.size()) != N) {
        throw std::invalid_argument("verify_continuous: grid dimension mismatch");
    }
    for (int g : grid) {
        if (g < 1) throw std::invalid_argument("verify_continuous: grid counts must be >= 1");
    }
    Report rep;
    rep.config_echo = {{"a", p.a()}, {"grid", grid}};

    SuiteResult& s_quad = suite(rep, tol, "quadric_membership", 1e-10);
    SuiteResult& s_sq = suite(rep, tol, "squared_coordinates", 1e-11);
    SuiteResult& s_sphere = suite(rep, tol, "sphere_identity", 1e-10);
    SuiteResult& s_rad = suite(rep, tol, "radial_identity", 1e-10);
    SuiteResult& s_ortho = suite(rep, tol, "orthogonality", 1e-10);
    SuiteResult& s_iso = suite(rep, tol, "isothermic_ratio", 1e-10);
    SuiteResult& s_inv = suite(rep, tol, "inversion_roundtrip", 1e-9);
    SuiteResult& s_epd = suite(rep, tol, "epd_decay", 0.02);

    const auto& a = p.a();
    // Interior sample coordinates per axis: the open interval between
    // consecutive poles (the last axis gets a window of width a_0 - a_{N-1}).
    std::vector<std::vector<double>> samples(N);
    for (int i = 0; i < N; ++i) {
        const double lo = -a[i];
        const double hi = i + 1 < N ? -a[i + 1] : -a[N - 1] + (a[0] - a[N - 1]);
        for (int s = 0; s < grid[i]; ++s) {
            samples[i].push_back(lo + (hi - lo) * (s + 1) / (grid[i] + 1));
        }
    }

    std::vector<int> idx(N, 0);
    for (;;) {
        Eigen::VectorXd u(N);
        for (int d = 0; d < N; ++d) u[d] = samples[d][idx[d]];

        const Eigen::VectorXd x = continuous::eval(p, u);
        for (int i = 0; i < N; ++i) {
            s_quad.add(continuous::quadric_residual(p, x, u[i]));
            const double sq = continuous::squared_coordinate(p, u, i);
            s_sq.add(std::abs(x[i] * x[i] - sq) / std::max(1.0, std::abs(sq)));
        }
        double trace = 0.0;
        for (int i = 0; i < N; ++i) trace += u[i] + a[i];
        s_sphere.add(std::abs(x.squaredNorm() - trace));

        const Eigen::MatrixXd J = continuous::jacobian(p, u);
        for (int i = 0; i < N; ++i) {
            s_rad.add(std::abs(x.dot(J.col(i)) - 0.5));
            for (int j = i + 1; j < N; ++j) {
                s_ortho.add(std::abs(J.col(i).dot(J.col(j))));
                const auto iso = continuous::isothermic_factors(p, u, i, j);
                const double mi = continuous::metric_coefficient(p, u, i);
                const double mj = continuous::metric_coefficient(p, u, j);
                s_iso.add(std::abs(mi / mj - iso.ratio) /
                          std::max(1.0, std::abs(iso.ratio)));
            }
        }

        const Eigen::VectorXd u_back = continuous::invert(p, x);
        s_inv.add((u_back - u).cwiseAbs().maxCoeff());

        // second-order decay of the EPD finite-difference residual (skipped
        // when the h = 1e-2 stencil leaves the domain on dense grids)
        for (int i = 0; i < N; ++i) {
            for (int j = i + 1; j < N; ++j) {
                try {
                    const double r1 = continuous::epd_residual(p, u, i, j, 1e-2);
                    const double r2 = continuous::epd_residual(p, u, i, j, 1e-3);
                    if (r1 == 0.0) s_epd.skip();
                    else s_epd.add(r2 / r1);
                } catch (const std::domain_error&) {
                    s_epd.skip();
                }
            }
        }

        int d = N - 1;
        while (d >= 0 && ++idx[d] == grid[d]) idx[d--] = 0;
        if (d < 0) break;
    }

    close_all(rep);
    return rep;
}

}  // namespace confocal::verify
