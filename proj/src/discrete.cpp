#include "confocal/discrete.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "confocal/specfun.hpp"

namespace confocal::discrete {

LatticePoint LatticePoint::from_integer(const std::vector<int>& n) {
    LatticePoint p;
    p.m.reserve(n.size());
    for (int v : n) p.m.push_back(2 * v);
    return p;
}

LatticePoint LatticePoint::from_doubled(std::vector<int> m) {
    LatticePoint p;
    p.m = std::move(m);
    return p;
}

bool LatticePoint::on_integer_lattice() const {
    for (int v : m)
        if (v % 2 != 0) return false;
    return !m.empty();
}

bool LatticePoint::on_half_lattice() const {
    for (int v : m)
        if (v % 2 == 0) return false;
    return !m.empty();
}

LatticePoint LatticePoint::shifted(int i, int steps) const {
    if (i < 0 || i >= dim()) {
        throw std::invalid_argument("LatticePoint::shifted: index out of range");
    }
    LatticePoint p = *this;
    p.m[i] += 2 * steps;
    return p;
}

LatticePoint LatticePoint::shifted_sigma(const std::vector<int>& sigma) const {
    if (static_cast<int>(sigma.size()) != dim()) {
        throw std::invalid_argument("LatticePoint::shifted_sigma: dimension mismatch");
    }
    LatticePoint p = *this;
    for (int i = 0; i < dim(); ++i) {
        if (sigma[i] != 1 && sigma[i] != -1) {
            throw std::invalid_argument("LatticePoint::shifted_sigma: sigma entries must be +-1");
        }
        p.m[i] += sigma[i];
    }
    return p;
}

LatticePoint LatticePoint::shifted_half_f(int dir) const {
    if (dir != 1 && dir != -1) {
        throw std::invalid_argument("LatticePoint::shifted_half_f: dir must be +-1");
    }
    LatticePoint p = *this;
    for (int& v : p.m) v += dir;
    return p;
}

namespace {

std::vector<double> canonical_scales(const std::vector<long long>& alpha) {
    const int N = static_cast<int>(alpha.size());
    std::vector<double> s(N);
    for (int k = 0; k < N; ++k) {
        double inv_sq = 1.0;
        for (int i = 0; i < N; ++i) {
            // alpha_i - alpha_k + (i-k)/2 for i < k, alpha_k - alpha_i + (k-i)/2
            // for i > k; both stay positive for a strictly decreasing integer
            // spectrum.  Doubled to keep the half-integer shifts exact.
            if (i < k) inv_sq *= 0.5 * static_cast<double>(2 * (alpha[i] - alpha[k]) - (k - i));
            if (i > k) inv_sq *= 0.5 * static_cast<double>(2 * (alpha[k] - alpha[i]) + (k - i));
        }
        s[k] = 1.0 / std::sqrt(inv_sq);
    }
    return s;
}

void validate_alpha(const std::vector<long long>& alpha) {
    if (alpha.size() < 2) {
        throw std::invalid_argument("discrete::Params: need at least two spectrum entries");
    }
    for (std::size_t i = 0; i + 1 < alpha.size(); ++i) {
        if (alpha[i] <= alpha[i + 1]) {
            throw std::invalid_argument("discrete::Params: spectrum must be strictly decreasing");
        }
    }
}

void check_point(const Params& p, const LatticePoint& n, const char* who) {
    if (n.dim() != p.dim()) {
        throw std::invalid_argument(std::string(who) + ": dimension mismatch");
    }
    if (!n.uniform_parity()) {
        throw std::invalid_argument(std::string(who) + ": mixed-parity lattice point");
    }
    if (!p.in_domain(n)) {
        throw std::domain_error(std::string(who) + ": point outside the closed domain");
    }
}

void check_sigma(const Params& p, const std::vector<int>& sigma, const char* who) {
    if (static_cast<int>(sigma.size()) != p.dim()) {
        throw std::invalid_argument(std::string(who) + ": sigma dimension mismatch");
    }
    for (int s : sigma) {
        if (s != 1 && s != -1) {
            throw std::invalid_argument(std::string(who) + ": sigma entries must be +-1");
        }
    }
}

}  // namespace

Params::Params(std::vector<long long> alpha) : alpha_(std::move(alpha)) {
    validate_alpha(alpha_);
    scales_ = canonical_scales(alpha_);
}

Params::Params(std::vector<long long> alpha, std::vector<double> scales)
    : alpha_(std::move(alpha)), scales_(std::move(scales)) {
    validate_alpha(alpha_);
    if (scales_.size() != alpha_.size()) {
        throw std::invalid_argument("discrete::Params: scales/alpha size mismatch");
    }
}

bool Params::in_domain(const LatticePoint& p) const {
    if (p.dim() != dim()) return false;
    for (int i = 0; i < dim(); ++i) {
        if (p.m[i] + 2 * alpha_[i] < 0) return false;  // n_i >= -alpha_i
        if (i + 1 < dim() && p.m[i] + 2 * alpha_[i + 1] > 0) return false;
    }
    return true;
}

Eigen::VectorXd eval(const Params& p, const LatticePoint& n) {
    check_point(p, n, "discrete::eval");
    const int N = p.dim();
    const auto& alpha = p.alpha();
    Eigen::VectorXd x(N);
    for (int k = 0; k < N; ++k) {
        double v = p.scale(k);
        bool zero = false;
        for (int i = 0; i < N && !zero; ++i) {
            // Doubled pochhammer arguments; exact integers classify the zero
            // and negative cases before any Gamma call.
            const long long arg2 = i < k ? -n.m[i] - 2 * alpha[k] - (k - i) + 1
                                         : n.m[i] + 2 * alpha[k] + (k - i);
            if (arg2 < 0) {
                throw std::domain_error("discrete::eval: negative pochhammer argument");
            }
            if (arg2 == 0) {
                zero = true;
            } else {
                v *= specfun::dsqrt(0.5 * static_cast<double>(arg2));
            }
        }
        x[k] = zero ? 0.0 : v;
    }
    return x;
}

Eigen::VectorXd derivative(const Params& p, const LatticePoint& n, int i) {
    return eval(p, n.shifted(i)) - eval(p, n);
}

double orthogonality_residual(const Params& p, const LatticePoint& n, int i, int j) {
    if (i == j) {
        throw std::invalid_argument("discrete::orthogonality_residual: i == j");
    }
    const Eigen::VectorXd di = derivative(p, n, i);
    const LatticePoint q = n.shifted(j, -1).shifted_half_f(+1);
    const Eigen::VectorXd dj = derivative(p, q, j);
    return std::abs(di.dot(dj));
}

ProductIdentity product_identity(const Params& p, const LatticePoint& n,
                                 const std::vector<int>& sigma, int k) {
    check_sigma(p, sigma, "discrete::product_identity");
    if (k < 0 || k >= p.dim()) {
        throw std::invalid_argument("discrete::product_identity: k out of range");
    }
    const auto& alpha = p.alpha();
    const double xk = eval(p, n)[k];
    const double xk_dual = eval(p, n.shifted_sigma(sigma))[k];

    double num = 1.0, den = 1.0;
    for (int i = 0; i < p.dim(); ++i) {
        // Quartered numerator factor n_i + alpha_k + (k-i)/2 - (1-sigma_i)/4.
        const long long num4 = 2LL * n.m[i] + 4 * alpha[k] + 2 * (k - i) - (1 - sigma[i]);
        num *= 0.25 * static_cast<double>(num4);
        if (i != k) {
            den *= 0.5 * static_cast<double>(2 * (alpha[k] - alpha[i]) + (k - i));
        }
    }
    return {xk * xk_dual, num / den};
}

QuadricResidual quadric_residual(const Params& p, const LatticePoint& n,
                                 const std::vector<int>& sigma, int i) {
    check_sigma(p, sigma, "discrete::quadric_residual");
    if (i < 0 || i >= p.dim()) {
        throw std::invalid_argument("discrete::quadric_residual: i out of range");
    }
    const auto& alpha = p.alpha();
    const Eigen::VectorXd x0 = eval(p, n);
    const Eigen::VectorXd x1 = eval(p, n.shifted_sigma(sigma));

    double sum = 0.0;
    for (int k = 0; k < p.dim(); ++k) {
        const long long den4 = 2LL * n.m[i] + 4 * alpha[k] + 2 * (k - i) - (1 - sigma[i]);
        if (den4 == 0) {
            // The matching numerator factor of x_k x_k^* vanishes too; the
            // term is a removable 0/0 this formula cannot evaluate.
            return {false, 0.0};
        }
        sum += x0[k] * x1[k] / (0.25 * static_cast<double>(den4));
    }
    return {true, std::abs(sum - 1.0)};
}

ScalarIdentity scalar_identity(const Params& p, const LatticePoint& n,
                               const std::vector<int>& sigma) {
    check_sigma(p, sigma, "discrete::scalar_identity");
    const auto& alpha = p.alpha();
    const double lhs = eval(p, n).dot(eval(p, n.shifted_sigma(sigma)));
    long long rhs4 = 0;
    for (int k = 0; k < p.dim(); ++k) {
        rhs4 += 2LL * n.m[k] + 4 * alpha[k] - (1 - sigma[k]);
    }
    return {lhs, 0.25 * static_cast<double>(rhs4)};
}

double radial_residual(const Params& p, const LatticePoint& n,
                       const std::vector<int>& sigma, int i) {
    check_sigma(p, sigma, "discrete::radial_residual");
    if (i < 0 || i >= p.dim() || sigma[i] != -1) {
        throw std::invalid_argument("discrete::radial_residual: needs sigma_i = -1");
    }
    const Eigen::VectorXd x0 = eval(p, n);
    const Eigen::VectorXd di = derivative(p, n.shifted_sigma(sigma), i);
    return std::abs(x0.dot(di) - 0.5);
}

Factorization factorization_check(const Params& p, const LatticePoint& n, int i, int j) {
    if (i == j || i < 0 || j < 0 || i >= p.dim() || j >= p.dim()) {
        throw std::invalid_argument("discrete::factorization_check: bad direction pair");
    }
    const auto& alpha = p.alpha();

    const Eigen::VectorXd di_n = derivative(p, n, i);
    const Eigen::VectorXd di_dual = derivative(p, n.shifted_half_f(+1), i);
    const double num = di_n.dot(di_dual);

    const LatticePoint base = n.shifted(j, -1).shifted_half_f(+1);
    const Eigen::VectorXd dj_base = derivative(p, base, j);
    const Eigen::VectorXd dj_far = derivative(p, base.shifted_half_f(+1), j);
    const double den = dj_base.dot(dj_far);

    Factorization out;
    out.s2 = std::abs(0.5 * (n.m[i] - n.m[j]) + 0.5 * (j - i) + 0.5);
    out.valid = den != 0.0;
    out.lhs_ratio = out.valid ? num / den : 0.0;

    // phi_i(n_i) / phi_j(n_j) in doubled arithmetic.
    double rnum = -1.0, rden = 1.0;
    for (int t = 0; t < p.dim(); ++t) {
        if (t != i && t != j) {
            rnum *= 0.5 * static_cast<double>(n.m[i] - n.m[t] + (t - i) + 1);
            const long long dfac2 = n.m[j] - n.m[t] + (t - j) - 1;
            if (dfac2 == 0) out.valid = false;
            rden *= 0.5 * static_cast<double>(dfac2);
        }
        rnum *= 0.5 * static_cast<double>(n.m[j] + 2 * alpha[t] + (t - j));
        const long long dfac2 = n.m[i] + 2 * alpha[t] + (t - i) + 1;
        if (dfac2 == 0) out.valid = false;
        rden *= 0.5 * static_cast<double>(dfac2);
    }
    out.rhs_ratio = out.valid ? rnum / rden : 0.0;
    return out;
}

}  // namespace confocal::discrete
