#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "confocal/discrete.hpp"
#include "confocal/icnet.hpp"
#include "confocal/mesh.hpp"

namespace confocal::io {

using json = nlohmann::json;

// Discrete net file: {"N": ., "alpha": [...], "points":
// [{"m2": [doubled lattice coords], "x": [coordinates]}, ...]}.
struct NetPoint {
    discrete::LatticePoint p;
    Eigen::VectorXd x;
};

struct Net {
    std::vector<long long> alpha;
    std::vector<NetPoint> points;

    int dim() const { return static_cast<int>(alpha.size()); }
};

// Enumerate the window-and-domain lattice points of the requested parities
// (0 = integer, 1 = half-integer) in row-major order and evaluate the net.
Net generate_net(const discrete::Params& p, const discrete::Window& window,
                 const std::vector<int>& parities);

json net_to_json(const Net& net);
Net net_from_json(const json& j);  // throws std::invalid_argument on bad schema

// Focal-curve polyline: {"kind": "focal_hyperbola"|"focal_ellipse",
// "points": [[x, y, z], ...]}.
json polyline_to_json(const std::string& kind,
                      const std::vector<Eigen::Vector3d>& points);

// Mesh file: {"layer": {...}, "vertices": [[x,y,z]...], "faces": [[4
// ints]...], "lattice": [[m...]...]}.  Import/export round-trips exactly.
json mesh_to_json(const mesh::QuadMesh& mesh);
mesh::QuadMesh mesh_from_json(const json& j);

// IC line grid: {"rows": [[a,b,c],...], "cols": [[a,b,c],...]}, unit
// normals.
json grid_to_json(const icnet::LineGrid& grid);
icnet::LineGrid grid_from_json(const json& j);

// Continuous sample file: {"N": ., "a": [...], "points": [{"u": [...],
// "x": [...]}, ...]}.
struct ContinuousSamples {
    std::vector<double> a;
    std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> points;  // (u, x)
};

json continuous_to_json(const ContinuousSamples& s);

// Shortest-round-trip decimal formatting used by the OBJ writer.
std::string format_double(double v);

}  // namespace confocal::io
