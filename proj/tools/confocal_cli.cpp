// confocal -- command line front end.  Links only the public C API.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "confocal/capi.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct StringOut {
    char* s = nullptr;
    ~StringOut() { confocal_string_free(s); }
    std::string str() const { return s ? std::string(s) : std::string(); }
};

[[noreturn]] void die(int code, const std::string& msg) {
    std::cerr << "confocal: " << msg << "\n";
    std::exit(code);
}

void check(int rc) {
    if (rc == CONFOCAL_OK) return;
    die(rc == CONFOCAL_ERR_IO ? kExitIo : kExitUsage, confocal_last_error());
}

// "lo:hi,lo:hi,..." in lattice units.
void parse_window(const std::string& text, int dim, std::vector<int>& lo,
                  std::vector<int>& hi) {
    lo.clear();
    hi.clear();
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        const auto colon = part.find(':');
        if (colon == std::string::npos) die(kExitUsage, "window ranges must look like lo:hi");
        try {
            lo.push_back(std::stoi(part.substr(0, colon)));
            hi.push_back(std::stoi(part.substr(colon + 1)));
        } catch (const std::exception&) {
            die(kExitUsage, "bad window range '" + part + "'");
        }
        if (lo.back() > hi.back()) die(kExitUsage, "window range '" + part + "' is empty");
    }
    if (static_cast<int>(lo.size()) != dim) {
        die(kExitUsage, "window needs one lo:hi range per coordinate");
    }
}

void parse_grid(const std::string& text, std::vector<int>& grid) {
    grid.clear();
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, 'x')) {
        try {
            grid.push_back(std::stoi(part));
        } catch (const std::exception&) {
            die(kExitUsage, "bad grid '" + text + "'");
        }
        if (grid.back() < 1) die(kExitUsage, "grid counts must be positive");
    }
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) die(kExitIo, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) die(kExitIo, "cannot write " + path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << "\n";
}

using DiscreteHandle = std::unique_ptr<confocal_discrete, decltype(&confocal_discrete_free)>;

DiscreteHandle make_discrete(const std::vector<long long>& alphas) {
    if (alphas.size() < 2) die(kExitUsage, "--alphas needs at least two values");
    confocal_discrete* h = nullptr;
    check(confocal_discrete_create(alphas.data(), static_cast<int>(alphas.size()), &h));
    return DiscreteHandle(h, &confocal_discrete_free);
}

std::string tolerance_json(const std::vector<std::string>& overrides) {
    if (overrides.empty()) return {};
    std::string out = "{";
    for (size_t i = 0; i < overrides.size(); ++i) {
        const auto eq = overrides[i].find('=');
        if (eq == std::string::npos) die(kExitUsage, "--tol needs name=value");
        if (i) out += ",";
        out += "\"" + overrides[i].substr(0, eq) + "\":" + overrides[i].substr(eq + 1);
    }
    return out + "}";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"confocal: discrete confocal coordinate nets"};
    app.set_version_flag("--version", std::string(confocal_version()));
    app.require_subcommand(1);

    // ---- generate ----
    auto* gen = app.add_subcommand("generate", "evaluate a net over a lattice window");
    std::vector<long long> gen_alphas;
    std::string gen_window, gen_out;
    bool gen_half = false, gen_both = false;
    gen->add_option("--alphas", gen_alphas, "strictly decreasing integer shape parameters")
        ->required();
    gen->add_option("--window", gen_window, "lattice window lo:hi,lo:hi,...")->required();
    gen->add_flag("--half-parity", gen_half, "half-integer sublattice instead of integer");
    gen->add_flag("--both-parities", gen_both, "integer and half-integer sublattices");
    gen->add_option("-o,--output", gen_out, "output file (default stdout)");

    // ---- verify ----
    auto* ver = app.add_subcommand("verify", "check the defining identities");
    std::vector<long long> ver_alphas;
    std::string ver_window, ver_input, ver_out;
    bool ver_half = false, ver_both = false, ver_quiet = false;
    std::vector<std::string> ver_tol;
    bool ver_continuous = false;
    std::vector<double> ver_a;
    std::string ver_grid = "8x8";
    ver->add_option("--alphas", ver_alphas, "verify the closed form for these parameters");
    ver->add_option("--window", ver_window, "lattice window lo:hi,...");
    ver->add_flag("--half-parity", ver_half, "half-integer sublattice");
    ver->add_flag("--both-parities", ver_both, "both sublattices");
    ver->add_option("--input", ver_input, "verify a stored net file instead ('-' = stdin)");
    ver->add_flag("--continuous", ver_continuous, "verify the smooth coordinate system");
    ver->add_option("--a", ver_a, "continuous semi-axis parameters (with --continuous)");
    ver->add_option("--grid", ver_grid, "continuous sample grid, e.g. 32x32");
    ver->add_option("--tol", ver_tol, "per-suite tolerance override name=value");
    ver->add_option("-o,--output", ver_out, "write the JSON report here");
    ver->add_flag("-q,--quiet", ver_quiet, "suppress the report on stdout");

    // ---- export ----
    auto* exp = app.add_subcommand("export", "quad mesh of a coordinate surface");
    std::vector<long long> exp_alphas;
    std::string exp_window, exp_out, exp_format = "obj";
    int exp_axis = 0, exp_level = 0;
    bool exp_reflect = false;
    int exp_focal = -1;
    std::string exp_focal_kind;
    std::string exp_focal_range;
    exp->add_option("--alphas", exp_alphas, "shape parameters")->required();
    exp->add_option("--axis", exp_axis, "fixed coordinate direction (0-based)");
    exp->add_option("--level", exp_level, "doubled lattice level of the fixed direction");
    exp->add_option("--window", exp_window, "window over the two free directions");
    exp->add_flag("--reflect", exp_reflect, "mirror into all eight orthants");
    exp->add_option("--format", exp_format, "obj or json")
        ->check(CLI::IsMember({"obj", "json"}));
    exp->add_option("--focal", exp_focal_kind, "export a focal curve: hyperbola or ellipse")
        ->check(CLI::IsMember({"hyperbola", "ellipse"}));
    exp->add_option("--focal-range", exp_focal_range, "doubled coordinate range lo:hi");
    exp->add_option("-o,--output", exp_out, "output file (default stdout)");

    // ---- icnet ----
    auto* ic = app.add_subcommand("icnet", "inscribed-circle line grids");
    std::string ic_builtin, ic_input, ic_out, ic_report_out;
    int ic_rows = 8, ic_cols = 8;
    double ic_theta = 0.3, ic_phi = 1.2, ic_spacing = 1.0;
    double ic_perturb = 0.0;
    unsigned long long ic_seed = 1;
    bool ic_verify = false, ic_solve = false, ic_quiet = false;
    std::vector<std::string> ic_tol;
    double ic_solve_tol = 1e-10;
    int ic_max_iter = 100;
    ic->add_option("--builtin", ic_builtin, "start from a builtin grid (rhombic)");
    ic->add_option("--input", ic_input, "start from a stored grid file ('-' = stdin)");
    ic->add_option("--grid", ic_rows, "builtin grid rows")->group("builtin");
    ic->add_option("--cols", ic_cols, "builtin grid cols")->group("builtin");
    ic->add_option("--theta", ic_theta, "first pencil normal angle")->group("builtin");
    ic->add_option("--phi", ic_phi, "angle between the pencils")->group("builtin");
    ic->add_option("--spacing", ic_spacing, "line spacing")->group("builtin");
    ic->add_option("--perturb", ic_perturb, "perturb all line parameters by this magnitude");
    ic->add_option("--rng-seed", ic_seed, "perturbation seed");
    ic->add_flag("--verify", ic_verify, "check the IC-net theorem properties");
    ic->add_flag("--solve", ic_solve, "project onto the IC constraint set first");
    ic->add_option("--tol", ic_tol, "per-property tolerance override name=value");
    ic->add_option("--solve-tol", ic_solve_tol, "solver target for the Pitot defects");
    ic->add_option("--max-iter", ic_max_iter, "solver iteration cap");
    ic->add_option("-o,--output", ic_out, "write the (solved) grid here");
    ic->add_option("--report", ic_report_out, "write the verification report here");
    ic->add_flag("-q,--quiet", ic_quiet, "suppress stdout reports");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    if (gen->parsed()) {
        auto h = make_discrete(gen_alphas);
        std::vector<int> lo, hi;
        parse_window(gen_window, static_cast<int>(gen_alphas.size()), lo, hi);
        const int parity = gen_both ? 2 : (gen_half ? 1 : 0);
        StringOut out;
        check(confocal_discrete_net_json(h.get(), lo.data(), hi.data(), parity, &out.s));
        write_output(gen_out, out.str());
        return kExitPass;
    }

    if (ver->parsed()) {
        const std::string tols = tolerance_json(ver_tol);
        StringOut report;
        int pass = 0;
        if (ver_continuous) {
            if (ver_a.size() < 2) die(kExitUsage, "--continuous needs --a with at least two values");
            confocal_continuous* raw = nullptr;
            check(confocal_continuous_create(ver_a.data(), static_cast<int>(ver_a.size()), &raw));
            std::unique_ptr<confocal_continuous, decltype(&confocal_continuous_free)> h(
                raw, &confocal_continuous_free);
            std::vector<int> grid;
            parse_grid(ver_grid, grid);
            if (grid.size() == 1) grid.assign(ver_a.size(), grid[0]);
            if (grid.size() != ver_a.size()) die(kExitUsage, "--grid needs one count per axis");
            check(confocal_continuous_verify(h.get(), grid.data(), tols.empty() ? nullptr : tols.c_str(),
                                             &report.s, &pass));
        } else if (!ver_input.empty()) {
            const std::string doc = read_input(ver_input);
            check(confocal_net_verify_json(doc.c_str(), tols.empty() ? nullptr : tols.c_str(),
                                           &report.s, &pass));
        } else {
            if (ver_alphas.empty()) die(kExitUsage, "need --alphas, --input or --continuous");
            auto h = make_discrete(ver_alphas);
            std::vector<int> lo, hi;
            if (ver_window.empty()) die(kExitUsage, "--alphas verification needs --window");
            parse_window(ver_window, static_cast<int>(ver_alphas.size()), lo, hi);
            const int parity = ver_both ? 2 : (ver_half ? 1 : 0);
            check(confocal_discrete_verify(h.get(), lo.data(), hi.data(), parity,
                                           tols.empty() ? nullptr : tols.c_str(), &report.s,
                                           &pass));
        }
        if (!ver_out.empty()) write_output(ver_out, report.str());
        if (!ver_quiet) write_output("", report.str());
        return pass ? kExitPass : kExitFail;
    }

    if (exp->parsed()) {
        auto h = make_discrete(exp_alphas);
        if (!exp_focal_kind.empty()) {
            if (exp_focal_range.empty()) die(kExitUsage, "--focal needs --focal-range lo:hi");
            std::vector<int> lo, hi;
            parse_window(exp_focal_range, 1, lo, hi);
            exp_focal = exp_focal_kind == "hyperbola" ? 0 : 1;
            StringOut out;
            check(confocal_discrete_focal_curve(h.get(), exp_focal, lo[0], hi[0], &out.s));
            write_output(exp_out, out.str());
            return kExitPass;
        }
        if (exp_window.empty()) die(kExitUsage, "export needs --window over the free directions");
        std::vector<int> lo, hi;
        parse_window(exp_window, 2, lo, hi);
        StringOut out;
        check(confocal_discrete_mesh(h.get(), exp_axis, exp_level, lo.data(), hi.data(),
                                     exp_reflect ? 1 : 0, exp_format == "obj" ? 1 : 0, &out.s));
        write_output(exp_out, out.str());
        return kExitPass;
    }

    if (ic->parsed()) {
        std::string grid_json;
        if (!ic_input.empty()) {
            grid_json = read_input(ic_input);
        } else if (!ic_builtin.empty()) {
            StringOut out;
            check(confocal_icnet_builtin(ic_builtin.c_str(), ic_rows, ic_cols, ic_theta, ic_phi,
                                         ic_spacing, &out.s));
            grid_json = out.str();
        } else {
            die(kExitUsage, "icnet needs --builtin or --input");
        }
        if (ic_perturb != 0.0) {
            StringOut out;
            check(confocal_icnet_perturb(grid_json.c_str(), ic_perturb, ic_seed, &out.s));
            grid_json = out.str();
        }
        if (ic_solve) {
            StringOut out;
            double max_pitot = 0.0;
            int iterations = 0, converged = 0;
            check(confocal_icnet_solve(grid_json.c_str(), ic_solve_tol, ic_max_iter, &out.s,
                                       &max_pitot, &iterations, &converged));
            grid_json = out.str();
            if (!ic_quiet) {
                std::fprintf(stderr, "solve: %s after %d iterations, max Pitot defect %.3e\n",
                             converged ? "converged" : "NOT converged", iterations, max_pitot);
            }
            if (!converged) {
                if (!ic_out.empty()) write_output(ic_out, grid_json);
                return kExitFail;
            }
        }
        if (!ic_out.empty()) write_output(ic_out, grid_json);
        int pass = 1;
        if (ic_verify) {
            const std::string tols = tolerance_json(ic_tol);
            StringOut report;
            check(confocal_icnet_verify(grid_json.c_str(), tols.empty() ? nullptr : tols.c_str(),
                                        &report.s, &pass));
            if (!ic_report_out.empty()) write_output(ic_report_out, report.str());
            if (!ic_quiet) write_output("", report.str());
        } else if (ic_out.empty() && !ic_solve) {
            write_output("", grid_json);
        }
        return pass ? kExitPass : kExitFail;
    }

    return kExitUsage;
}
