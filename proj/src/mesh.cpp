#include "confocal/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "confocal/errors.hpp"

namespace confocal::mesh {

QuadMesh surface_mesh(const discrete::Params& p, int axis, int level_m,
                      const discrete::Window& window) {
    if (p.dim() != 3) {
        throw std::invalid_argument("mesh::surface_mesh: needs a 3D net");
    }
    if (axis < 0 || axis > 2) {
        throw std::invalid_argument("mesh::surface_mesh: axis out of range");
    }
    if (window.dim() != 2) {
        throw std::invalid_argument("mesh::surface_mesh: window must cover the two free axes");
    }
    const int free1 = axis == 0 ? 1 : 0;
    const int free2 = axis == 2 ? 1 : 2;
    const int parity = ((level_m % 2) + 2) % 2;
    const auto [lo1, hi1] = window.bounds[0];
    const auto [lo2, hi2] = window.bounds[1];
    if (lo1 > hi1 || lo2 > hi2) {
        throw std::invalid_argument("mesh::surface_mesh: empty window");
    }
    // Window is the real interval [lo, hi]: parity-1 layers use the
    // half-integer points lo + 1/2, ..., hi - 1/2.
    const int rows = hi1 - lo1 + 1 - parity;
    const int cols = hi2 - lo2 + 1 - parity;

    QuadMesh mesh;
    mesh.axis = axis;
    mesh.level_m = level_m;
    mesh.alpha = p.alpha();

    std::vector<int> index(static_cast<std::size_t>(rows) * cols, -1);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            std::vector<int> m(3);
            m[axis] = level_m;
            m[free1] = 2 * (lo1 + r) + parity;
            m[free2] = 2 * (lo2 + c) + parity;
            const auto n = discrete::LatticePoint::from_doubled(m);
            if (!p.in_domain(n)) continue;
            index[r * cols + c] = static_cast<int>(mesh.vertices.size());
            mesh.vertices.emplace_back(discrete::eval(p, n));
            mesh.lattice.push_back(m);
        }
    }
    for (int r = 0; r + 1 < rows; ++r) {
        for (int c = 0; c + 1 < cols; ++c) {
            const int v00 = index[r * cols + c];
            const int v10 = index[(r + 1) * cols + c];
            const int v11 = index[(r + 1) * cols + c + 1];
            const int v01 = index[r * cols + c + 1];
            if (v00 < 0 || v10 < 0 || v11 < 0 || v01 < 0) continue;
            mesh.faces.push_back({v00, v10, v11, v01});
        }
    }
    return mesh;
}

double planarity_residual(const std::array<Eigen::Vector3d, 4>& quad) {
    Eigen::Matrix3d m;
    m.col(0) = quad[1] - quad[0];
    m.col(1) = quad[2] - quad[0];
    m.col(2) = quad[3] - quad[0];
    double edge = 0.0;
    for (int k = 0; k < 4; ++k) edge += (quad[(k + 1) % 4] - quad[k]).norm();
    edge *= 0.25;
    if (edge == 0.0) {
        throw geometry_error("mesh::planarity_residual: degenerate quad");
    }
    return std::abs(m.determinant()) / (edge * edge * edge);
}

double max_planarity(const QuadMesh& mesh) {
    double worst = 0.0;
    for (const auto& f : mesh.faces) {
        worst = std::max(worst,
                         planarity_residual({mesh.vertices[f[0]], mesh.vertices[f[1]],
                                             mesh.vertices[f[2]], mesh.vertices[f[3]]}));
    }
    return worst;
}

std::vector<Eigen::VectorXd> reflect_orthants(const std::vector<Eigen::VectorXd>& pts) {
    std::vector<Eigen::VectorXd> out;
    std::set<std::vector<double>> seen;
    for (const auto& p : pts) {
        const int N = static_cast<int>(p.size());
        for (int mask = 0; mask < (1 << N); ++mask) {
            std::vector<double> q(N);
            for (int k = 0; k < N; ++k) {
                q[k] = (mask >> k) & 1 ? -p[k] : p[k];
            }
            if (!seen.insert(q).second) continue;
            out.emplace_back(Eigen::Map<Eigen::VectorXd>(q.data(), N));
        }
    }
    return out;
}

QuadMesh reflect_mesh(const QuadMesh& mesh) {
    QuadMesh out;
    out.axis = mesh.axis;
    out.level_m = mesh.level_m;
    out.alpha = mesh.alpha;

    std::map<std::array<double, 3>, int> seen;
    std::set<std::array<int, 4>> face_keys;
    for (int mask = 0; mask < 8; ++mask) {
        const double sx = mask & 1 ? -1.0 : 1.0;
        const double sy = mask & 2 ? -1.0 : 1.0;
        const double sz = mask & 4 ? -1.0 : 1.0;
        const bool flip = sx * sy * sz < 0.0;

        std::vector<int> remap(mesh.vertices.size());
        for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
            const Eigen::Vector3d q(sx * mesh.vertices[v][0], sy * mesh.vertices[v][1],
                                    sz * mesh.vertices[v][2]);
            const std::array<double, 3> key = {q[0], q[1], q[2]};
            auto [it, inserted] = seen.emplace(key, static_cast<int>(out.vertices.size()));
            if (inserted) {
                out.vertices.push_back(q);
                out.lattice.push_back(mesh.lattice.empty() ? std::vector<int>{}
                                                           : mesh.lattice[v]);
            }
            remap[v] = it->second;
        }
        for (const auto& f : mesh.faces) {
            std::array<int, 4> nf = {remap[f[0]], remap[f[1]], remap[f[2]], remap[f[3]]};
            if (flip) std::swap(nf[1], nf[3]);  // keep consistent winding
            std::array<int, 4> key = nf;
            std::sort(key.begin(), key.end());
            if (!face_keys.insert(key).second) continue;
            out.faces.push_back(nf);
        }
    }
    return out;
}

double edge_dual_facet_angle(const discrete::Params& p,
                             const discrete::LatticePoint& n, int i) {
    if (p.dim() != 3) {
        throw std::invalid_argument("mesh::edge_dual_facet_angle: needs a 3D net");
    }
    if (i < 0 || i > 2) {
        throw std::invalid_argument("mesh::edge_dual_facet_angle: direction out of range");
    }
    const Eigen::VectorXd edge = discrete::derivative(p, n, i);
    const int j = i == 0 ? 1 : 0;
    const int k = i == 2 ? 1 : 2;

    // Dual facet corners at n + f/2 - {0, e_j} - {0, e_k}.
    const auto corner = [&](int dj, int dk) {
        discrete::LatticePoint q = n.shifted_half_f(+1);
        q.m[j] += 2 * dj;
        q.m[k] += 2 * dk;
        return Eigen::Vector3d(discrete::eval(p, q));
    };
    const Eigen::Vector3d c00 = corner(0, 0);
    const Eigen::Vector3d c01 = corner(0, -1);
    const Eigen::Vector3d c10 = corner(-1, 0);
    const Eigen::Vector3d c11 = corner(-1, -1);
    const Eigen::Vector3d normal = (c11 - c00).cross(c10 - c01);

    if (edge.norm() == 0.0 || normal.norm() == 0.0) {
        throw geometry_error("mesh::edge_dual_facet_angle: degenerate edge or facet");
    }
    // atan2 of the perpendicular part keeps precision near zero, where
    // acos(1 - eps) would floor at sqrt(eps).
    const Eigen::Vector3d e(edge);
    const Eigen::Vector3d perp = e - e.dot(normal) / normal.squaredNorm() * normal;
    return std::atan2(perp.norm(), std::abs(e.dot(normal)) / normal.norm());
}

std::string to_obj(const QuadMesh& mesh) {
    std::string out;
    out.reserve(mesh.vertices.size() * 64 + mesh.faces.size() * 32);
    char buf[128];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof(buf), "v %.17g %.17g %.17g\n", v[0], v[1], v[2]);
        out += buf;
    }
    for (const auto& f : mesh.faces) {
        std::snprintf(buf, sizeof(buf), "f %d %d %d %d\n", f[0] + 1, f[1] + 1,
                      f[2] + 1, f[3] + 1);
        out += buf;
    }
    return out;
}

QuadMesh from_obj(const std::string& text) {
    QuadMesh mesh;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            Eigen::Vector3d v;
            if (!(ls >> v[0] >> v[1] >> v[2])) {
                throw std::invalid_argument("mesh::from_obj: bad vertex at line " +
                                            std::to_string(lineno));
            }
            mesh.vertices.push_back(v);
        } else if (tag == "f") {
            std::array<int, 4> f{};
            if (!(ls >> f[0] >> f[1] >> f[2] >> f[3])) {
                throw std::invalid_argument("mesh::from_obj: bad face at line " +
                                            std::to_string(lineno));
            }
            for (int& idx : f) {
                if (idx < 1 || idx > static_cast<int>(mesh.vertices.size())) {
                    throw std::invalid_argument("mesh::from_obj: face index out of range at line " +
                                                std::to_string(lineno));
                }
                --idx;
            }
            mesh.faces.push_back(f);
        }
        // other tags ignored
    }
    return mesh;
}

}  // namespace confocal::mesh
