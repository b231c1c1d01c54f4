#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace confocal::icnet {

// Oriented line a x + b y = c with unit normal (a, b).
struct Line {
    double a = 1.0, b = 0.0, c = 0.0;

    static Line from_angle(double theta, double offset);
    static Line from_coeffs(double a, double b, double c);  // normalizes
    double distance(const Eigen::Vector2d& p) const { return std::abs(a * p.x() + b * p.y() - c); }
};

// Two ordered families of lines; cell (i, j) is bounded by rows i, i+1 and
// cols j, j+1.  An IC-net is such a grid in which every cell has an
// inscribed circle.
struct LineGrid {
    std::vector<Line> rows, cols;

    int n_rows() const { return static_cast<int>(rows.size()); }
    int n_cols() const { return static_cast<int>(cols.size()); }
};

// Rhombic reference grid: two pencils of parallel lines (normal directions
// theta and theta + phi) with common spacing; every cell is a rhombus.
LineGrid rhombic(int n_rows, int n_cols, double theta = 0.3, double phi = 1.2,
                 double spacing = 1.0);

// Deterministic perturbation of all angles and offsets by uniform
// [-magnitude, magnitude] (mt19937_64 with the given seed).
LineGrid perturbed(const LineGrid& grid, double magnitude, std::uint64_t seed = 1);

struct VertexGrid {
    int n_rows = 0, n_cols = 0;
    std::vector<Eigen::Vector2d> f;  // row-major
    bool order_ok = true;            // vertex order along every line is monotone
    std::string order_note;

    const Eigen::Vector2d& at(int i, int j) const { return f[i * n_cols + j]; }
};

// All pairwise intersections f_ij = rows[i] ^ cols[j].  Near-parallel pairs
// throw confocal::geometry_error; order violations are reported in the
// result, not thrown (a valid line grid may still fail to be an IC-net).
VertexGrid build_vertices(const LineGrid& grid);

// Pitot defect (|AB| + |CD|) - (|BC| + |DA|) of the quad A=f(i,j),
// B=f(i+1,j), C=f(i+1,j+1), D=f(i,j+1); zero iff the (convex) cell is
// tangential.
double pitot_residual(const VertexGrid& v, int i, int j);

bool cell_convex(const VertexGrid& v, int i, int j);

struct Incircle {
    Eigen::Vector2d center;
    double radius = 0.0;
    double max_side_error = 0.0;  // max |dist(center, side line) - radius|
};

// Inscribed circle of cell (i, j): intersection of the interior angle
// bisectors at two opposite vertices; the center must lie inside the cell
// and be equidistant (to 1e-9 relative) from all four side lines.
// Non-tangential cells throw confocal::geometry_error carrying the Pitot
// defect.
Incircle incircle(const LineGrid& grid, const VertexGrid& v, int i, int j);

// Incenter net omega (one center per cell) plus the diagonal subnets
//   eta(k, l)    = omega(k - l, k + l)      (i + j even)
//   eta~(k, l)   = same with k, l half-integers (i + j odd).
// Stored on omega indices; parity selects the subnet.
struct IncenterNet {
    int n_rows = 0, n_cols = 0;               // = cells of the grid
    std::vector<Eigen::Vector2d> omega;       // row-major
    std::vector<double> radius;

    const Eigen::Vector2d& at(int i, int j) const { return omega[i * n_cols + j]; }
};

IncenterNet incenter_net(const LineGrid& grid);

struct PropertyResult {
    double max_residual = 0.0;
    long count = 0;
    long skipped = 0;
};

// Residuals of the IC-net theorem on the dual subnets:
//   conic_fit        (i)   max |l^T Q l| of the best dual conic over all lines
//   diagonal_duality (ii)  distance of eta~ from the diagonal intersection of
//                          its eta quad (and vice versa)
//   circularity      (iii) |opposite angle sums - pi| per subnet quad
//   conicality       (iii) same per subnet vertex star
//   dual_orthogonality (iv) |cos| of the angle between dual edge pairs
//   koenigs          (v)   |multi-ratio - 1| at subnet vertices with the other
//                          subnet's points as diagonal intersections
//   menelaus         (v)   omega Menelaus product |prod - 1| over eta~ quads
//                          with the IC-net vertices on their edges
//   incircle_consistency   max relative side-distance error of all incircles
struct TheoremReport {
    std::map<std::string, PropertyResult> properties;
    bool tangential = true;       // all cells pass the Pitot test
    double max_pitot = 0.0;

    double residual(const std::string& name) const;
};

TheoremReport verify_theorem(const LineGrid& grid, double pitot_tol = 1e-9);

// Separability check of the discrete conformal factor: quotient
//   Q(k,l) = <eta_(1) - eta, eta~_(1) - eta~> / <eta~ - eta~_(-2), eta_(12) - eta_(1)>
// sampled over the eta lattice; for IC-nets Q separates as F(k) G(l), i.e.
// the sample matrix has numerical rank 1.  rank1_residual = sigma_2/sigma_1.
struct FactorizationReport {
    Eigen::MatrixXd q;
    double rank1_residual = 0.0;
};

FactorizationReport factorization_numerical(const LineGrid& grid);

struct SolveResult {
    LineGrid grid;
    double max_pitot = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Levenberg-damped Gauss-Newton over all line parameters (angle, offset)
// minimizing the cell Pitot defects; numerical Jacobian.  Returns
// converged = false (never throws) when max_iter is exhausted.
SolveResult solve(const LineGrid& seed, double tol = 1e-10, int max_iter = 100);

}  // namespace confocal::icnet
