#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "confocal/discrete.hpp"

namespace confocal::mesh {

// Quad surface mesh extracted from one coordinate layer of an N=3 discrete
// confocal net.  Vertices carry their doubled lattice coordinates so the
// lattice location of every point stays recoverable after export.
struct QuadMesh {
    int axis = 0;           // fixed direction, 0-based
    int level_m = 0;        // doubled coordinate of the fixed direction
    std::vector<long long> alpha;
    std::vector<Eigen::Vector3d> vertices;
    std::vector<std::array<int, 4>> faces;        // 0-based, row-major order
    std::vector<std::vector<int>> lattice;        // doubled coords per vertex
};

// Layer n_axis = level_m/2 sampled over the window of the two free axes
// (window.bounds in free-axis order).  Faces connect lattice-adjacent
// vertices; faces with any corner outside the domain are dropped.
QuadMesh surface_mesh(const discrete::Params& p, int axis, int level_m,
                      const discrete::Window& window);

// Normalized non-planarity |det(q1-q0, q2-q0, q3-q0)| / (mean edge length)^3.
double planarity_residual(const std::array<Eigen::Vector3d, 4>& quad);

// Largest planarity residual over all faces.
double max_planarity(const QuadMesh& mesh);

// All 2^N sign reflections of a point set, discarding duplicates produced by
// exact-zero components on the coordinate hyperplanes.
std::vector<Eigen::VectorXd> reflect_orthants(const std::vector<Eigen::VectorXd>& pts);

// Reflect a mesh through all 8 orthants; vertices on mirror planes are
// shared (deduplicated by exact comparison -- boundary zeros are exact).
QuadMesh reflect_mesh(const QuadMesh& mesh);

// Angle (radians) between the U-edge [x(n), x(n+e_i)] and the normal of its
// dual U*-facet (vertices x(n + f/2 - sum of subsets of the other two
// directions)).  Zero in exact arithmetic.
double edge_dual_facet_angle(const discrete::Params& p,
                             const discrete::LatticePoint& n, int i);

// Wavefront OBJ with "v x y z" and 1-based "f i j k l" lines, row-major
// vertex order, %.17g floats (lossless double round trip).
std::string to_obj(const QuadMesh& mesh);

// Minimal OBJ reader for the v/f subset written by to_obj.
QuadMesh from_obj(const std::string& text);

}  // namespace confocal::mesh
