#include "confocal/netio.hpp"

#include <cstdio>
#include <stdexcept>

namespace confocal::io {

namespace {

std::vector<double> to_std(const Eigen::VectorXd& v) {
    return {v.data(), v.data() + v.size()};
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

[[noreturn]] void bad_schema(const char* what, const std::exception& e) {
    throw std::invalid_argument(std::string("io: bad ") + what + " document: " + e.what());
}

}  // namespace

Net generate_net(const discrete::Params& p, const discrete::Window& window,
                 const std::vector<int>& parities) {
    if (window.dim() != p.dim()) {
        throw std::invalid_argument("io::generate_net: window dimension mismatch");
    }
    for (int par : parities) {
        if (par != 0 && par != 1) {
            throw std::invalid_argument("io::generate_net: parities must be 0 or 1");
        }
    }
    Net net;
    net.alpha = p.alpha();
    const int N = p.dim();
    for (int par : parities) {
        // Lattice points of this parity inside the real window [lo, hi]:
        // parity 1 walks the half-integers lo + 1/2 .. hi - 1/2.
        std::vector<int> count(N), m(N);
        bool empty = false;
        for (int d = 0; d < N; ++d) {
            count[d] = window.bounds[d][1] - window.bounds[d][0] + 1 - par;
            if (count[d] <= 0) empty = true;
        }
        if (empty) continue;
        std::vector<int> idx(N, 0);
        for (;;) {
            for (int d = 0; d < N; ++d) {
                m[d] = 2 * (window.bounds[d][0] + idx[d]) + par;
            }
            const auto q = discrete::LatticePoint::from_doubled(m);
            if (p.in_domain(q)) {
                net.points.push_back({q, discrete::eval(p, q)});
            }
            int d = N - 1;
            while (d >= 0 && ++idx[d] == count[d]) idx[d--] = 0;
            if (d < 0) break;
        }
    }
    return net;
}

json net_to_json(const Net& net) {
    json points = json::array();
    for (const auto& pt : net.points) {
        points.push_back({{"m2", pt.p.m}, {"x", to_std(pt.x)}});
    }
    return {{"N", net.dim()}, {"alpha", net.alpha}, {"points", std::move(points)}};
}

Net net_from_json(const json& j) {
    try {
        Net net;
        net.alpha = j.at("alpha").get<std::vector<long long>>();
        if (j.at("N").get<int>() != net.dim()) {
            throw std::invalid_argument("io: N does not match alpha length");
        }
        for (const auto& pj : j.at("points")) {
            NetPoint pt;
            pt.p = discrete::LatticePoint::from_doubled(pj.at("m2").get<std::vector<int>>());
            pt.x = to_eigen(pj.at("x").get<std::vector<double>>());
            if (pt.p.dim() != net.dim() || pt.x.size() != net.dim()) {
                throw std::invalid_argument("io: point dimension mismatch");
            }
            net.points.push_back(std::move(pt));
        }
        return net;
    } catch (const json::exception& e) {
        bad_schema("net", e);
    }
}

json polyline_to_json(const std::string& kind,
                      const std::vector<Eigen::Vector3d>& points) {
    json pts = json::array();
    for (const auto& p : points) {
        pts.push_back({p[0], p[1], p[2]});
    }
    return {{"kind", kind}, {"points", std::move(pts)}};
}

json mesh_to_json(const mesh::QuadMesh& m) {
    json verts = json::array();
    for (const auto& v : m.vertices) verts.push_back({v[0], v[1], v[2]});
    json faces = json::array();
    for (const auto& f : m.faces) faces.push_back(f);
    return {{"layer", {{"axis", m.axis}, {"level_m", m.level_m}, {"alpha", m.alpha}}},
            {"vertices", std::move(verts)},
            {"faces", std::move(faces)},
            {"lattice", m.lattice}};
}

mesh::QuadMesh mesh_from_json(const json& j) {
    try {
        mesh::QuadMesh m;
        const auto& layer = j.at("layer");
        m.axis = layer.at("axis").get<int>();
        m.level_m = layer.at("level_m").get<int>();
        m.alpha = layer.at("alpha").get<std::vector<long long>>();
        for (const auto& vj : j.at("vertices")) {
            const auto v = vj.get<std::vector<double>>();
            if (v.size() != 3) {
                throw std::invalid_argument("io: mesh vertex must have 3 components");
            }
            m.vertices.emplace_back(v[0], v[1], v[2]);
        }
        for (const auto& fj : j.at("faces")) {
            const auto f = fj.get<std::vector<int>>();
            if (f.size() != 4) {
                throw std::invalid_argument("io: mesh face must have 4 corners");
            }
            for (int idx : f) {
                if (idx < 0 || idx >= static_cast<int>(m.vertices.size())) {
                    throw std::invalid_argument("io: mesh face index out of range");
                }
            }
            m.faces.push_back({f[0], f[1], f[2], f[3]});
        }
        m.lattice = j.at("lattice").get<std::vector<std::vector<int>>>();
        return m;
    } catch (const json::exception& e) {
        bad_schema("mesh", e);
    }
}

json grid_to_json(const icnet::LineGrid& grid) {
    const auto family = [](const std::vector<icnet::Line>& lines) {
        json out = json::array();
        for (const auto& l : lines) out.push_back({l.a, l.b, l.c});
        return out;
    };
    return {{"rows", family(grid.rows)}, {"cols", family(grid.cols)}};
}

icnet::LineGrid grid_from_json(const json& j) {
    try {
        const auto family = [](const json& arr) {
            std::vector<icnet::Line> lines;
            for (const auto& lj : arr) {
                const auto v = lj.get<std::vector<double>>();
                if (v.size() != 3) {
                    throw std::invalid_argument("io: line must have 3 coefficients");
                }
                lines.push_back(icnet::Line::from_coeffs(v[0], v[1], v[2]));
            }
            return lines;
        };
        icnet::LineGrid grid;
        grid.rows = family(j.at("rows"));
        grid.cols = family(j.at("cols"));
        return grid;
    } catch (const json::exception& e) {
        bad_schema("grid", e);
    }
}

json continuous_to_json(const ContinuousSamples& s) {
    json points = json::array();
    for (const auto& [u, x] : s.points) {
        points.push_back({{"u", to_std(u)}, {"x", to_std(x)}});
    }
    return {{"N", s.a.size()}, {"a", s.a}, {"points", std::move(points)}};
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace confocal::io
