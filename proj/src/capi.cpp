#include "confocal/capi.h"

#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "confocal/continuous.hpp"
#include "confocal/discrete.hpp"
#include "confocal/errors.hpp"
#include "confocal/icnet.hpp"
#include "confocal/lowdim.hpp"
#include "confocal/mesh.hpp"
#include "confocal/netio.hpp"
#include "confocal/verify.hpp"

struct confocal_discrete {
    confocal::discrete::Params p;
};

struct confocal_continuous {
    confocal::continuous::Params p;
};

namespace {

using nlohmann::json;

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class F>
int guarded(F&& f) {
    try {
        f();
        g_last_error.clear();
        return CONFOCAL_OK;
    } catch (const json::parse_error& e) {
        g_last_error = e.what();
        return CONFOCAL_ERR_IO;
    } catch (const confocal::geometry_error& e) {
        g_last_error = e.what();
        return CONFOCAL_ERR_GEOMETRY;
    } catch (const confocal::solver_error& e) {
        g_last_error = e.what();
        return CONFOCAL_ERR_SOLVER;
    } catch (const std::domain_error& e) {
        g_last_error = e.what();
        return CONFOCAL_ERR_DOMAIN;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return CONFOCAL_ERR_PARAM;
    }
}

int require(bool ok, const char* what) {
    if (ok) return CONFOCAL_OK;
    g_last_error = what;
    return CONFOCAL_ERR_PARAM;
}

confocal::discrete::Window make_window(const int* lo, const int* hi, int n) {
    confocal::discrete::Window w;
    for (int i = 0; i < n; ++i) w.bounds.push_back({lo[i], hi[i]});
    return w;
}

std::vector<int> make_parities(int parity) {
    if (parity == 0) return {0};
    if (parity == 1) return {1};
    if (parity == 2) return {0, 1};
    throw std::invalid_argument("parity must be 0, 1 or 2");
}

confocal::verify::Tolerances parse_tolerances(const char* text) {
    confocal::verify::Tolerances tol;
    if (!text || !*text) return tol;
    const json j = json::parse(text);
    if (!j.is_object()) {
        throw std::invalid_argument("tolerances document must be a JSON object");
    }
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number()) {
            throw std::invalid_argument("tolerance for '" + key + "' must be a number");
        }
        tol.overrides[key] = value.get<double>();
    }
    return tol;
}

void emit_report(const confocal::verify::Report& rep, char** report_json, int* pass) {
    if (report_json) *report_json = dup_string(rep.to_json().dump(2));
    if (pass) *pass = rep.pass() ? 1 : 0;
}

}  // namespace

extern "C" {

const char* confocal_version(void) { return "1.0.0"; }

const char* confocal_last_error(void) { return g_last_error.c_str(); }

void confocal_string_free(char* s) { std::free(s); }

int confocal_discrete_create(const long long* alpha, int n, confocal_discrete** out) {
    if (int rc = require(alpha && out && n >= 2, "confocal_discrete_create: bad arguments")) return rc;
    return guarded([&] {
        *out = new confocal_discrete{
            confocal::discrete::Params(std::vector<long long>(alpha, alpha + n))};
    });
}

void confocal_discrete_free(confocal_discrete* h) { delete h; }

int confocal_discrete_dim(const confocal_discrete* h, int* out) {
    if (int rc = require(h && out, "confocal_discrete_dim: bad arguments")) return rc;
    *out = h->p.dim();
    g_last_error.clear();
    return CONFOCAL_OK;
}

int confocal_discrete_scale(const confocal_discrete* h, int k, double* out) {
    if (int rc = require(h && out, "confocal_discrete_scale: bad arguments")) return rc;
    if (int rc = require(k >= 0 && k < h->p.dim(), "confocal_discrete_scale: k out of range")) return rc;
    *out = h->p.scale(k);
    g_last_error.clear();
    return CONFOCAL_OK;
}

int confocal_discrete_eval(const confocal_discrete* h, const int* m_doubled, double* out) {
    if (int rc = require(h && m_doubled && out, "confocal_discrete_eval: bad arguments")) return rc;
    return guarded([&] {
        const auto n = confocal::discrete::LatticePoint::from_doubled(
            std::vector<int>(m_doubled, m_doubled + h->p.dim()));
        const Eigen::VectorXd x = confocal::discrete::eval(h->p, n);
        for (int i = 0; i < h->p.dim(); ++i) out[i] = x[i];
    });
}

int confocal_discrete_net_json(const confocal_discrete* h, const int* lo, const int* hi,
                               int parity, char** out_json) {
    if (int rc = require(h && lo && hi && out_json, "confocal_discrete_net_json: bad arguments")) return rc;
    return guarded([&] {
        const auto net = confocal::io::generate_net(
            h->p, make_window(lo, hi, h->p.dim()), make_parities(parity));
        *out_json = dup_string(confocal::io::net_to_json(net).dump(2));
    });
}

int confocal_discrete_verify(const confocal_discrete* h, const int* lo, const int* hi,
                             int parity, const char* tolerances_json,
                             char** report_json, int* pass) {
    if (int rc = require(h && lo && hi, "confocal_discrete_verify: bad arguments")) return rc;
    return guarded([&] {
        const auto rep = confocal::verify::verify_discrete(
            h->p, make_window(lo, hi, h->p.dim()), make_parities(parity),
            parse_tolerances(tolerances_json));
        emit_report(rep, report_json, pass);
    });
}

int confocal_net_verify_json(const char* net_json, const char* tolerances_json,
                             char** report_json, int* pass) {
    if (int rc = require(net_json != nullptr, "confocal_net_verify_json: bad arguments")) return rc;
    return guarded([&] {
        const auto net = confocal::io::net_from_json(json::parse(net_json));
        const auto rep = confocal::verify::verify_net(net, parse_tolerances(tolerances_json));
        emit_report(rep, report_json, pass);
    });
}

int confocal_discrete_mesh(const confocal_discrete* h, int axis, int level_m,
                           const int* lo, const int* hi, int reflect, int format,
                           char** out) {
    if (int rc = require(h && lo && hi && out, "confocal_discrete_mesh: bad arguments")) return rc;
    if (int rc = require(format == 0 || format == 1, "confocal_discrete_mesh: format must be 0 or 1")) return rc;
    return guarded([&] {
        confocal::discrete::Window w;
        w.bounds = {{lo[0], hi[0]}, {lo[1], hi[1]}};
        auto mesh = confocal::mesh::surface_mesh(h->p, axis, level_m, w);
        if (reflect) mesh = confocal::mesh::reflect_mesh(mesh);
        *out = dup_string(format == 1 ? confocal::mesh::to_obj(mesh)
                                      : confocal::io::mesh_to_json(mesh).dump(2));
    });
}

int confocal_discrete_focal_curve(const confocal_discrete* h, int kind,
                                  int m_lo, int m_hi, char** out_json) {
    if (int rc = require(h && out_json, "confocal_discrete_focal_curve: bad arguments")) return rc;
    if (int rc = require(kind == 0 || kind == 1, "confocal_discrete_focal_curve: kind must be 0 or 1")) return rc;
    return guarded([&] {
        if (h->p.dim() != 3) {
            throw std::invalid_argument("focal curves require a 3D net");
        }
        const auto& a = h->p.alpha();
        const confocal::lowdim::Params3 p3(a[0], a[1], a[2]);
        const auto pts = kind == 0 ? confocal::lowdim::focal_hyperbola(p3, m_lo, m_hi)
                                   : confocal::lowdim::focal_ellipse(p3, m_lo, m_hi);
        *out_json = dup_string(
            confocal::io::polyline_to_json(kind == 0 ? "focal_hyperbola" : "focal_ellipse", pts)
                .dump(2));
    });
}

int confocal_continuous_create(const double* a, int n, confocal_continuous** out) {
    if (int rc = require(a && out && n >= 2, "confocal_continuous_create: bad arguments")) return rc;
    return guarded([&] {
        *out = new confocal_continuous{
            confocal::continuous::Params(std::vector<double>(a, a + n))};
    });
}

void confocal_continuous_free(confocal_continuous* h) { delete h; }

int confocal_continuous_eval(const confocal_continuous* h, const double* u, double* out) {
    if (int rc = require(h && u && out, "confocal_continuous_eval: bad arguments")) return rc;
    return guarded([&] {
        const Eigen::VectorXd x = confocal::continuous::eval(
            h->p, Eigen::Map<const Eigen::VectorXd>(u, h->p.dim()));
        for (int i = 0; i < h->p.dim(); ++i) out[i] = x[i];
    });
}

int confocal_continuous_invert(const confocal_continuous* h, const double* x, double* out) {
    if (int rc = require(h && x && out, "confocal_continuous_invert: bad arguments")) return rc;
    return guarded([&] {
        const Eigen::VectorXd u = confocal::continuous::invert(
            h->p, Eigen::Map<const Eigen::VectorXd>(x, h->p.dim()));
        for (int i = 0; i < h->p.dim(); ++i) out[i] = u[i];
    });
}

int confocal_continuous_sample_json(const confocal_continuous* h, const int* grid,
                                    char** out_json) {
    if (int rc = require(h && grid && out_json, "confocal_continuous_sample_json: bad arguments")) return rc;
    return guarded([&] {
        const int N = h->p.dim();
        const auto& a = h->p.a();
        confocal::io::ContinuousSamples samples;
        samples.a = a;
        std::vector<std::vector<double>> axis(N);
        for (int i = 0; i < N; ++i) {
            if (grid[i] < 1) {
                throw std::invalid_argument("grid counts must be >= 1");
            }
            const double lo = -a[i];
            const double hi = i + 1 < N ? -a[i + 1] : -a[N - 1] + (a[0] - a[N - 1]);
            for (int s = 0; s < grid[i]; ++s) {
                axis[i].push_back(lo + (hi - lo) * (s + 1) / (grid[i] + 1));
            }
        }
        std::vector<int> idx(N, 0);
        for (;;) {
            Eigen::VectorXd u(N);
            for (int d = 0; d < N; ++d) u[d] = axis[d][idx[d]];
            samples.points.emplace_back(u, confocal::continuous::eval(h->p, u));
            int d = N - 1;
            while (d >= 0 && ++idx[d] == grid[d]) idx[d--] = 0;
            if (d < 0) break;
        }
        *out_json = dup_string(confocal::io::continuous_to_json(samples).dump(2));
    });
}

int confocal_continuous_verify(const confocal_continuous* h, const int* grid,
                               const char* tolerances_json, char** report_json,
                               int* pass) {
    if (int rc = require(h && grid, "confocal_continuous_verify: bad arguments")) return rc;
    return guarded([&] {
        const auto rep = confocal::verify::verify_continuous(
            h->p, std::vector<int>(grid, grid + h->p.dim()),
            parse_tolerances(tolerances_json));
        emit_report(rep, report_json, pass);
    });
}

int confocal_icnet_builtin(const char* name, int rows, int cols, double theta,
                           double phi, double spacing, char** grid_json) {
    if (int rc = require(name && grid_json, "confocal_icnet_builtin: bad arguments")) return rc;
    return guarded([&] {
        if (std::string(name) != "rhombic") {
            throw std::invalid_argument(std::string("unknown builtin grid '") + name + "'");
        }
        const auto grid = confocal::icnet::rhombic(rows, cols, theta, phi, spacing);
        *grid_json = dup_string(confocal::io::grid_to_json(grid).dump(2));
    });
}

int confocal_icnet_perturb(const char* grid_json, double magnitude,
                           unsigned long long seed, char** out_json) {
    if (int rc = require(grid_json && out_json, "confocal_icnet_perturb: bad arguments")) return rc;
    return guarded([&] {
        const auto grid = confocal::io::grid_from_json(json::parse(grid_json));
        const auto out = confocal::icnet::perturbed(grid, magnitude, seed);
        *out_json = dup_string(confocal::io::grid_to_json(out).dump(2));
    });
}

int confocal_icnet_verify(const char* grid_json, const char* tolerances_json,
                          char** report_json, int* pass) {
    if (int rc = require(grid_json != nullptr, "confocal_icnet_verify: bad arguments")) return rc;
    return guarded([&] {
        const auto grid = confocal::io::grid_from_json(json::parse(grid_json));
        const auto tol = parse_tolerances(tolerances_json);
        const double pitot_tol = tol.get("pitot", 1e-9);
        const auto rep = confocal::icnet::verify_theorem(grid, pitot_tol);

        bool all_pass = rep.tangential;
        json suites;
        for (const auto& [name, pr] : rep.properties) {
            const double t = tol.get(name, name == "conic_fit" ? 1e-8 : 1e-6);
            const bool p = pr.max_residual <= t;
            all_pass = all_pass && p;
            suites[name] = {{"max_residual", pr.max_residual},
                            {"tolerance", t},
                            {"pass", p},
                            {"count", pr.count},
                            {"skipped", pr.skipped}};
        }
        const json out = {{"pass", all_pass},
                          {"tangential", rep.tangential},
                          {"max_pitot", rep.max_pitot},
                          {"pitot_tolerance", pitot_tol},
                          {"suites", std::move(suites)}};
        if (report_json) *report_json = dup_string(out.dump(2));
        if (pass) *pass = all_pass ? 1 : 0;
    });
}

int confocal_icnet_solve(const char* grid_json, double tol, int max_iter,
                         char** solved_json, double* max_pitot, int* iterations,
                         int* converged) {
    if (int rc = require(grid_json != nullptr, "confocal_icnet_solve: bad arguments")) return rc;
    return guarded([&] {
        const auto grid = confocal::io::grid_from_json(json::parse(grid_json));
        const auto result = confocal::icnet::solve(grid, tol, max_iter);
        if (solved_json) *solved_json = dup_string(confocal::io::grid_to_json(result.grid).dump(2));
        if (max_pitot) *max_pitot = result.max_pitot;
        if (iterations) *iterations = result.iterations;
        if (converged) *converged = result.converged ? 1 : 0;
    });
}

}  // extern "C"
