#pragma once

#include <Eigen/Dense>
#include <vector>

namespace confocal::continuous {

// Confocal quadrics sum_k x_k^2/(a_k + lambda) = 1 with strictly decreasing
// semiaxes a_1 > a_2 > ... > a_N.  Elliptic coordinates u live in the closure
// of the domain U: -a_1 < u_1 < -a_2 < ... < -a_N < u_N.
class Params {
public:
    explicit Params(std::vector<double> a);

    int dim() const { return static_cast<int>(a_.size()); }
    const std::vector<double>& a() const { return a_; }

    // Normalization constant D_k (0-based k) with
    // D_k^{-2} = prod_{i<k}(a_i - a_k) * prod_{i>k}(a_k - a_i).
    double scale(int k) const;

    // True if u lies in the closed domain bar-U.
    bool contains(const Eigen::VectorXd& u) const;

private:
    std::vector<double> a_;
};

// Point on the confocal system: x_k = D_k prod_{i<k} sqrt(-(u_i+a_k))
// * prod_{i>=k} sqrt(u_i + a_k).  Requires u in bar-U (throws
// std::domain_error otherwise); boundary points give exact zero components.
Eigen::VectorXd eval(const Params& p, const Eigen::VectorXd& u);

// Squared coordinate x_k^2 = prod_i (u_i + a_k) / prod_{i != k} (a_k - a_i),
// evaluated as the rational expression (no square roots).
double squared_coordinate(const Params& p, const Eigen::VectorXd& u, int k);

// Analytic Jacobian d x_k / d u_i = x_k / (2 (a_k + u_i)); rows k, cols i.
// Requires u strictly interior.
Eigen::MatrixXd jacobian(const Params& p, const Eigen::VectorXd& u);

// Elliptic coordinates of a point with all x_k > 0: the N roots of
// f(lambda) = sum_k x_k^2/(a_k + lambda) - 1, one per pole interval.
// Bisection to 1e-13 * interval width followed by three Newton steps.
Eigen::VectorXd invert(const Params& p, const Eigen::VectorXd& x);

// |sum_k x_k^2 / (a_k + lambda) - 1|.
double quadric_residual(const Params& p, const Eigen::VectorXd& x, double lambda);

// Finite-difference residual of the Euler-Poisson-Darboux equation
// d2x/du_i du_j = gamma/(u_i - u_j) (dx/du_j - dx/du_i), gamma = 1/2,
// with central differences of step h.  O(h^2) for interior u.
double epd_residual(const Params& p, const Eigen::VectorXd& u, int i, int j, double h);

// |<dx/du_i, dx/du_j>| from the analytic Jacobian (exactly zero in theory).
double orthogonality_residual(const Params& p, const Eigen::VectorXd& u, int i, int j);

// Metric coefficient |dx/du_i|^2 = 1/4 prod_{m != i}(u_i - u_m) / prod_m (u_i + a_m).
double metric_coefficient(const Params& p, const Eigen::VectorXd& u, int i);

struct IsothermicFactors {
    double s;       // |u_i - u_j|^{1/2}
    double ratio;   // alpha_i(u_i) / alpha_j(u_j), see metric_coefficient
};

// Conformal factorization of the (i,j) metric: |dx/du_i|^2 / |dx/du_j|^2
// separates as ratio(u_i, u_j) with the closed form
//   -prod_{m != i,j}(u_i - u_m) prod_m (u_j + a_m)
//    / (prod_m (u_i + a_m) prod_{m != i,j}(u_j - u_m)).
IsothermicFactors isothermic_factors(const Params& p, const Eigen::VectorXd& u, int i, int j);

enum class Branch { plus, minus };

// Separable solution factor rho(u) = sqrt(u + c) (plus branch, u >= -c) or
// sqrt(-(u + c)) (minus branch, u <= -c).  Sign mismatch throws
// std::domain_error.  Satisfies rho'/rho = (1/2)/(c + u) on either branch.
double separable_rho(double u, double c, Branch branch);

}  // namespace confocal::continuous
