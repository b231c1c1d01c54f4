#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace confocal::discrete {

// Point of Z^N union (Z + 1/2)^N stored in doubled coordinates m = 2n, so
// both sublattices share exact integer arithmetic: all m_i even is the
// integer lattice U, all odd the dual lattice U*.
struct LatticePoint {
    std::vector<int> m;

    LatticePoint() = default;
    static LatticePoint from_integer(const std::vector<int>& n);
    static LatticePoint from_doubled(std::vector<int> m);

    int dim() const { return static_cast<int>(m.size()); }
    double n(int i) const { return 0.5 * m[i]; }
    bool on_integer_lattice() const;  // all even
    bool on_half_lattice() const;     // all odd
    bool uniform_parity() const { return on_integer_lattice() || on_half_lattice(); }

    // Full lattice step: n -> n + steps * e_i.
    LatticePoint shifted(int i, int steps = 1) const;
    // Half step n -> n + sigma/2 for a sign vector sigma in {+-1}^N.
    LatticePoint shifted_sigma(const std::vector<int>& sigma) const;
    // Dual shift n -> n + dir * f/2, f = (1, ..., 1).
    LatticePoint shifted_half_f(int dir = +1) const;

    bool operator==(const LatticePoint&) const = default;
    auto operator<=>(const LatticePoint&) const = default;
};

// Discrete confocal coordinates (gamma = 1/2) for a strictly decreasing
// integer spectrum alpha_1 > ... > alpha_N:
//   x_k(n) = D_k prod_{i<k} (-n_i - alpha_k - (k-i)/2 + 1/2)_{1/2}
//                prod_{i>=k} (n_i + alpha_k + (k-i)/2)_{1/2}
// on the domain -alpha_1 <= n_1 <= -alpha_2 <= ... <= -alpha_N <= n_N of
// both sublattices.
class Params {
public:
    explicit Params(std::vector<long long> alpha);
    // Test hook: override the normalization constants D_k.
    Params(std::vector<long long> alpha, std::vector<double> scales);

    int dim() const { return static_cast<int>(alpha_.size()); }
    const std::vector<long long>& alpha() const { return alpha_; }

    // D_k with D_k^{-1} = prod_{i<k} sqrt(alpha_i - alpha_k + (i-k)/2)
    //                   * prod_{i>k} sqrt(alpha_k - alpha_i + (k-i)/2).
    double scale(int k) const { return scales_[k]; }

    // Closed-domain membership (ordering chain in exact doubled arithmetic).
    bool in_domain(const LatticePoint& p) const;

private:
    std::vector<long long> alpha_;
    std::vector<double> scales_;
};

// Rectangular window lo_i <= n_i <= hi_i in (undoubled) lattice units.
struct Window {
    std::vector<std::array<int, 2>> bounds;

    int dim() const { return static_cast<int>(bounds.size()); }
};

// Net point x(n).  Requires p.dim() components of uniform parity inside the
// closed domain (std::invalid_argument / std::domain_error otherwise).
// Boundary points produce exact 0.0 components (zero factors are detected in
// integer arithmetic before any Gamma evaluation).
Eigen::VectorXd eval(const Params& p, const LatticePoint& n);

// Forward difference Delta_i x(n) = x(n + e_i) - x(n).
Eigen::VectorXd derivative(const Params& p, const LatticePoint& n, int i);

// |<Delta_i x(n), Delta_j x(n - e_j + f/2)>| -- the discrete orthogonality
// residual between the two sublattices (zero in exact arithmetic for the
// canonical scaling).
double orthogonality_residual(const Params& p, const LatticePoint& n, int i, int j);

struct ProductIdentity {
    double lhs;  // x_k(n) x_k(n + sigma/2)
    double rhs;  // prod_i (n_i + alpha_k + (k-i)/2 - (1-sigma_i)/4) / prod_{i!=k}(alpha_k - alpha_i + (k-i)/2)
};

ProductIdentity product_identity(const Params& p, const LatticePoint& n,
                                 const std::vector<int>& sigma, int k);

struct QuadricResidual {
    bool valid;       // false when a zero denominator makes the sum removable
    double residual;  // |sum_k x_k(n) x_k(n+sigma/2) / den_k(i) - 1|
};

// Quadric membership of the dual pair (x(n), x(n+sigma/2)) with respect to
// the family member indexed by direction i: denominators
// n_i + alpha_k + (k-i)/2 - (1-sigma_i)/4.  Exact zero denominators are
// classified in integer arithmetic and reported via valid = false.
QuadricResidual quadric_residual(const Params& p, const LatticePoint& n,
                                 const std::vector<int>& sigma, int i);

struct ScalarIdentity {
    double lhs;  // <x(n), x(n + sigma/2)>
    double rhs;  // sum_k (n_k + alpha_k - (1-sigma_k)/4)
};

ScalarIdentity scalar_identity(const Params& p, const LatticePoint& n,
                               const std::vector<int>& sigma);

// |<x(n), Delta_i x(n + sigma/2)> - 1/2| for sigma_i = -1 (throws
// std::invalid_argument when sigma_i != -1).
double radial_residual(const Params& p, const LatticePoint& n,
                       const std::vector<int>& sigma, int i);

struct Factorization {
    double s2;         // |n_i - n_j + (j-i)/2 + 1/2|
    double lhs_ratio;  // <D_i x(n), D_i x(n+f/2)> / <D_j x(n-e_j+f/2), D_j x(n-e_j+f)>
    double rhs_ratio;  // closed form phi_i(n_i) / phi_j(n_j)
    bool valid;        // false when the lhs denominator vanishes exactly
};

// Conformal factorization of the dual-shift inner products: the quotient
// separates into phi_i(n_i)/phi_j(n_j) with
//   -prod_{m != i,j}(n_i - n_m + (m-i)/2 + 1/2) prod_m (n_j + alpha_m + (m-j)/2)
//   / (prod_m (n_i + alpha_m + (m-i)/2 + 1/2) prod_{m != i,j}(n_j - n_m + (m-j)/2 - 1/2)).
Factorization factorization_check(const Params& p, const LatticePoint& n, int i, int j);

}  // namespace confocal::discrete
