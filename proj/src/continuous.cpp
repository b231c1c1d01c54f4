#include "confocal/continuous.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace confocal::continuous {

namespace {

void check_index(const Params& p, int i, const char* who) {
    if (i < 0 || i >= p.dim()) {
        throw std::invalid_argument(std::string(who) + ": direction index out of range");
    }
}

}  // namespace

Params::Params(std::vector<double> a) : a_(std::move(a)) {
    if (a_.size() < 2) {
        throw std::invalid_argument("continuous::Params: need at least two semiaxes");
    }
    for (std::size_t i = 0; i + 1 < a_.size(); ++i) {
        if (!(a_[i] > a_[i + 1])) {
            throw std::invalid_argument(
                "continuous::Params: semiaxes must be strictly decreasing (a[" +
                std::to_string(i) + "] <= a[" + std::to_string(i + 1) + "])");
        }
    }
}

double Params::scale(int k) const {
    check_index(*this, k, "continuous::Params::scale");
    double inv_sq = 1.0;
    for (int i = 0; i < dim(); ++i) {
        if (i < k) inv_sq *= a_[i] - a_[k];
        if (i > k) inv_sq *= a_[k] - a_[i];
    }
    return 1.0 / std::sqrt(inv_sq);
}

bool Params::contains(const Eigen::VectorXd& u) const {
    if (u.size() != dim()) return false;
    for (int i = 0; i < dim(); ++i) {
        if (!(u[i] >= -a_[i])) return false;                       // lower bound
        if (i + 1 < dim() && !(u[i] <= -a_[i + 1])) return false;  // interlacing
    }
    return true;
}

Eigen::VectorXd eval(const Params& p, const Eigen::VectorXd& u) {
    const int N = p.dim();
    if (u.size() != N) {
        throw std::invalid_argument("continuous::eval: dimension mismatch");
    }
    if (!p.contains(u)) {
        throw std::domain_error("continuous::eval: u outside the closed domain");
    }
    const auto& a = p.a();
    Eigen::VectorXd x(N);
    for (int k = 0; k < N; ++k) {
        double v = p.scale(k);
        for (int i = 0; i < N; ++i) {
            const double t = u[i] + a[k];
            // Domain ordering makes t <= 0 for i < k and t >= 0 for i >= k;
            // clamp the sign under roundoff at the interval ends.
            v *= std::sqrt(std::max(i < k ? -t : t, 0.0));
        }
        x[k] = v;
    }
    return x;
}

double squared_coordinate(const Params& p, const Eigen::VectorXd& u, int k) {
    check_index(p, k, "continuous::squared_coordinate");
    const auto& a = p.a();
    double num = 1.0, den = 1.0;
    for (int i = 0; i < p.dim(); ++i) {
        num *= u[i] + a[k];
        if (i != k) den *= a[k] - a[i];
    }
    return num / den;
}

Eigen::MatrixXd jacobian(const Params& p, const Eigen::VectorXd& u) {
    const int N = p.dim();
    const auto& a = p.a();
    const Eigen::VectorXd x = eval(p, u);
    Eigen::MatrixXd J(N, N);
    for (int k = 0; k < N; ++k) {
        for (int i = 0; i < N; ++i) {
            const double t = a[k] + u[i];
            if (t == 0.0) {
                throw std::domain_error(
                    "continuous::jacobian: boundary point (a_k + u_i = 0)");
            }
            J(k, i) = 0.5 * x[k] / t;
        }
    }
    return J;
}

double quadric_residual(const Params& p, const Eigen::VectorXd& x, double lambda) {
    const auto& a = p.a();
    double s = 0.0;
    for (int k = 0; k < p.dim(); ++k) s += x[k] * x[k] / (a[k] + lambda);
    return std::abs(s - 1.0);
}

Eigen::VectorXd invert(const Params& p, const Eigen::VectorXd& x) {
    const int N = p.dim();
    if (x.size() != N) {
        throw std::invalid_argument("continuous::invert: dimension mismatch");
    }
    for (int k = 0; k < N; ++k) {
        if (!(x[k] > 0.0)) {
            throw std::domain_error(
                "continuous::invert: requires strictly positive coordinates");
        }
    }
    const auto& a = p.a();

    const auto f = [&](double lam) {
        double s = -1.0;
        for (int k = 0; k < N; ++k) s += x[k] * x[k] / (a[k] + lam);
        return s;
    };
    const auto fprime = [&](double lam) {
        double s = 0.0;
        for (int k = 0; k < N; ++k) {
            const double t = a[k] + lam;
            s -= x[k] * x[k] / (t * t);
        }
        return s;
    };

    Eigen::VectorXd u(N);
    for (int r = 0; r < N; ++r) {
        // Root r lives in (-a_r, -a_{r+1}); the last one in (-a_{N-1}, ub)
        // with ub = -a_{N-1} + |x|^2 + a_0, where f is already negative.
        double lo = -a[r];
        double hi = r + 1 < N ? -a[r + 1] : -a[N - 1] + x.squaredNorm() + a[0];
        const double width = hi - lo;
        // f -> +inf at lo+ and f < 0 approaching hi (next pole or ub), so
        // bisect on sign(f) with implicit endpoint signs.
        double mid = lo;
        while (hi - lo > 1e-13 * width) {
            mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;  // stuck at double resolution
            (f(mid) > 0.0 ? lo : hi) = mid;
        }
        double root = 0.5 * (lo + hi);
        for (int it = 0; it < 3; ++it) {
            const double step = f(root) / fprime(root);
            const double next = root - step;
            if (std::isfinite(next) && next > -a[r] &&
                (r + 1 >= N || next < -a[r + 1])) {
                root = next;
            }
        }
        u[r] = root;
    }
    return u;
}

double epd_residual(const Params& p, const Eigen::VectorXd& u, int i, int j, double h) {
    check_index(p, i, "continuous::epd_residual");
    check_index(p, j, "continuous::epd_residual");
    if (i == j) throw std::invalid_argument("continuous::epd_residual: i == j");
    if (!(h > 0.0)) throw std::invalid_argument("continuous::epd_residual: h <= 0");

    const auto at = [&](double di, double dj) {
        Eigen::VectorXd v = u;
        v[i] += di;
        v[j] += dj;
        return eval(p, v);
    };
    const Eigen::VectorXd dij =
        (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4.0 * h * h);
    const Eigen::VectorXd di = (at(h, 0) - at(-h, 0)) / (2.0 * h);
    const Eigen::VectorXd dj = (at(0, h) - at(0, -h)) / (2.0 * h);
    const double c = 0.5 / (u[i] - u[j]);
    return (dij - c * (dj - di)).norm();
}

double orthogonality_residual(const Params& p, const Eigen::VectorXd& u, int i, int j) {
    const Eigen::MatrixXd J = jacobian(p, u);
    return std::abs(J.col(i).dot(J.col(j)));
}

double metric_coefficient(const Params& p, const Eigen::VectorXd& u, int i) {
    check_index(p, i, "continuous::metric_coefficient");
    const auto& a = p.a();
    double num = 0.25, den = 1.0;
    for (int m = 0; m < p.dim(); ++m) {
        if (m != i) num *= u[i] - u[m];
        den *= u[i] + a[m];
    }
    return num / den;
}

IsothermicFactors isothermic_factors(const Params& p, const Eigen::VectorXd& u,
                                     int i, int j) {
    check_index(p, i, "continuous::isothermic_factors");
    check_index(p, j, "continuous::isothermic_factors");
    if (i == j) throw std::invalid_argument("continuous::isothermic_factors: i == j");
    const auto& a = p.a();
    double num = -1.0, den = 1.0;
    for (int m = 0; m < p.dim(); ++m) {
        if (m != i && m != j) {
            num *= u[i] - u[m];
            den *= u[j] - u[m];
        }
        num *= u[j] + a[m];
        den *= u[i] + a[m];
    }
    return {std::sqrt(std::abs(u[i] - u[j])), num / den};
}

double separable_rho(double u, double c, Branch branch) {
    const double t = u + c;
    if (branch == Branch::plus) {
        if (t < 0.0) {
            throw std::domain_error("continuous::separable_rho: sign mismatch (u + c < 0 on plus branch)");
        }
        return std::sqrt(t);
    }
    if (t > 0.0) {
        throw std::domain_error("continuous::separable_rho: sign mismatch (u + c > 0 on minus branch)");
    }
    return std::sqrt(-t);
}

}  // namespace confocal::continuous
