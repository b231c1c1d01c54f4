#pragma once

#include <Eigen/Dense>
#include <array>
#include <map>
#include <utility>
#include <vector>

namespace confocal::epd {

// Discrete Euler-Poisson-Darboux equation on Z^2 (one pair of directions):
//   Delta_i Delta_j x = gamma/(n_i + eps_i - n_j - eps_j) (Delta_j x - Delta_i x).
// eps carries the per-direction lattice shifts; only differences
// eps_i - eps_j ever enter.
struct Params {
    double gamma = 0.5;
    std::vector<double> eps;  // one entry per direction label
};

// Finite patch of an R^d-valued net over two directions (dir_i, dir_j),
// stored on doubled lattice coordinates so integer and half-integer
// sublattices share one exact indexing scheme.
class NetWindow {
public:
    NetWindow(int dir_i, int dir_j) : dir_i_(dir_i), dir_j_(dir_j) {}

    int dir_i() const { return dir_i_; }
    int dir_j() const { return dir_j_; }

    void set(int mi, int mj, Eigen::VectorXd value);  // doubled coords
    bool has(int mi, int mj) const;
    const Eigen::VectorXd& at(int mi, int mj) const;  // throws if absent

private:
    int dir_i_, dir_j_;
    std::map<std::pair<int, int>, Eigen::VectorXd> values_;
};

// Residual ||Delta_i Delta_j x - gamma/d (Delta_j x - Delta_i x)|| of the
// elementary face based at doubled coords (mi, mj); the four stencil values
// must be present.  Throws confocal::geometry_error when d = 0.
double depd_residual(const NetWindow& net, const Params& p, int mi, int mj);

// Coefficients (A, B) of the Darboux form Delta_i Delta_j x = A Delta_i x +
// B Delta_j x for the dEPD face based at (mi, mj): A = -gamma/d, B = +gamma/d
// with d = n_i + eps_i - n_j - eps_j.
std::pair<double, double> darboux_coeffs(const Params& p, int dir_i, int dir_j,
                                         int mi, int mj);

// Explicit Koenigs function nu(n) = mu(n_i - n_j) for the dEPD,
//   mu(m) = Gamma((m + de + gamma + 1)/2) / Gamma((m + de - gamma + 1)/2),
// de = eps_i - eps_j.  Defined (and positive) for m + de - gamma + 1 > 0;
// throws std::domain_error outside.
double koenigs_nu(double m, double delta_eps, double gamma);

// Compatibility residual |lhs/rhs - 1| of the 3D Koenigs closure condition
//   (A_(ij)+1)/(B_(ij)+1) = (A_(j)+B_(j)+1)/(A_(i)+B_(i)+1) * (A+1)/(B+1)
// for Darboux coefficients given on the four faces of a 2x2 block:
// ab[0][0] = face at n, ab[1][0] = face at n+e_i, ab[0][1] = n+e_j,
// ab[1][1] = n+e_i+e_j.
double koenigs_compatibility(const std::array<std::array<std::pair<double, double>, 2>, 2>& ab);

// Intersection point of the diagonals [q0,q2] and [q1,q3] of a planar
// quadrilateral in R^d.  Validates planarity: the gap between the two
// diagonal lines must not exceed planarity_tol * mean diagonal length
// (confocal::geometry_error otherwise).
Eigen::VectorXd diagonal_intersection(const std::array<Eigen::VectorXd, 4>& quad,
                                      double planarity_tol = 1e-9);

// Signed ratio in which m divides the segment [p, q], computed by projection
// onto the segment direction: <m-p, u> / <q-m, u>, u = (q-p)/|q-p|.
double segment_ratio(const Eigen::VectorXd& p, const Eigen::VectorXd& m,
                     const Eigen::VectorXd& q);

// Koenigs criterion: multi-ratio of the four vertex neighbors against the
// four diagonal-intersection points of the incident faces,
//   prod_k ratio(neighbor_k, diag_k, neighbor_{k+1}),
// equal to 1 exactly for Koenigs nets.  neighbors in cyclic order
// (+i, +j, -i, -j); diag[k] lies on [neighbors[k], neighbors[k+1]].
double koenigs_multiratio(const std::array<Eigen::VectorXd, 4>& neighbors,
                          const std::array<Eigen::VectorXd, 4>& diag);

// Convenience form for a full vertex star: ring holds the 8 surrounding
// points in cyclic order x_(+i), x_(+i+j), x_(+j), x_(-i+j), x_(-i),
// x_(-i-j), x_(-j), x_(+i-j); diagonal intersections are computed from the
// four faces.  planarity_tol is forwarded to diagonal_intersection (a loose
// value keeps the ratio finite for mildly perturbed nets, where the residual
// itself reports the deviation).
double koenigs_multiratio_star(const Eigen::VectorXd& center,
                               const std::array<Eigen::VectorXd, 8>& ring,
                               double planarity_tol = 1e-9);

enum class Branch { plus, minus };

// Separable dEPD factor.  Plus branch rho(n) = (n + shift)_gamma, defined
// for n + shift >= 0; minus branch rho(n) = (-n - shift - gamma + 1)_gamma,
// defined for -n - shift - gamma + 1 >= 0.  Both satisfy
// rho(n+1)/rho(n) = (n + shift + gamma)/(n + shift).
double separable_rho(double n, double shift, double gamma, Branch branch);

}  // namespace confocal::epd
