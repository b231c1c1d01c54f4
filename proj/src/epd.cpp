#include "confocal/epd.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "confocal/errors.hpp"
#include "confocal/specfun.hpp"

namespace confocal::epd {

void NetWindow::set(int mi, int mj, Eigen::VectorXd value) {
    values_[{mi, mj}] = std::move(value);
}

bool NetWindow::has(int mi, int mj) const {
    return values_.count({mi, mj}) != 0;
}

const Eigen::VectorXd& NetWindow::at(int mi, int mj) const {
    auto it = values_.find({mi, mj});
    if (it == values_.end()) {
        throw std::out_of_range("epd::NetWindow::at: no value at (" +
                                std::to_string(mi) + ", " + std::to_string(mj) + ")");
    }
    return it->second;
}

namespace {

double face_gap(const Params& p, int dir_i, int dir_j, int mi, int mj) {
    if (dir_i < 0 || dir_i >= static_cast<int>(p.eps.size()) || dir_j < 0 ||
        dir_j >= static_cast<int>(p.eps.size()) || dir_i == dir_j) {
        throw std::invalid_argument("epd: bad direction pair");
    }
    // n_i + eps_i - n_j - eps_j on the doubled lattice.
    return 0.5 * (mi - mj) + p.eps[dir_i] - p.eps[dir_j];
}

}  // namespace

double depd_residual(const NetWindow& net, const Params& p, int mi, int mj) {
    const double d = face_gap(p, net.dir_i(), net.dir_j(), mi, mj);
    if (d == 0.0) {
        throw geometry_error("epd::depd_residual: singular face (n_i + eps_i = n_j + eps_j)");
    }
    const Eigen::VectorXd& x00 = net.at(mi, mj);
    const Eigen::VectorXd& x10 = net.at(mi + 2, mj);
    const Eigen::VectorXd& x01 = net.at(mi, mj + 2);
    const Eigen::VectorXd& x11 = net.at(mi + 2, mj + 2);
    const Eigen::VectorXd lhs = x11 - x10 - x01 + x00;
    const Eigen::VectorXd rhs = (p.gamma / d) * ((x01 - x00) - (x10 - x00));
    return (lhs - rhs).norm();
}

std::pair<double, double> darboux_coeffs(const Params& p, int dir_i, int dir_j,
                                         int mi, int mj) {
    const double d = face_gap(p, dir_i, dir_j, mi, mj);
    if (d == 0.0) {
        throw geometry_error("epd::darboux_coeffs: singular face");
    }
    return {-p.gamma / d, p.gamma / d};
}

double koenigs_nu(double m, double delta_eps, double gamma) {
    const double lower = 0.5 * (m + delta_eps - gamma + 1.0);
    if (!(lower > 0.0)) {
        throw std::domain_error("epd::koenigs_nu: m + delta_eps - gamma + 1 must be positive");
    }
    return std::exp(specfun::log_gamma(0.5 * (m + delta_eps + gamma + 1.0)) -
                    specfun::log_gamma(lower));
}

double koenigs_compatibility(
    const std::array<std::array<std::pair<double, double>, 2>, 2>& ab) {
    const auto& [A, B] = ab[0][0];
    const auto& [Ai, Bi] = ab[1][0];  // face shifted by e_i
    const auto& [Aj, Bj] = ab[0][1];  // face shifted by e_j
    const auto& [Aij, Bij] = ab[1][1];
    const double lhs = (Aij + 1.0) / (Bij + 1.0);
    const double rhs = (Aj + Bj + 1.0) / (Ai + Bi + 1.0) * (A + 1.0) / (B + 1.0);
    return std::abs(lhs / rhs - 1.0);
}

Eigen::VectorXd diagonal_intersection(const std::array<Eigen::VectorXd, 4>& quad,
                                      double planarity_tol) {
    const Eigen::VectorXd d1 = quad[2] - quad[0];
    const Eigen::VectorXd d2 = quad[3] - quad[1];
    const Eigen::VectorXd w = quad[1] - quad[0];

    // Closest points of the two diagonal lines: minimize |p0 + s d1 - q1 - t d2|.
    const double a = d1.squaredNorm();
    const double b = d1.dot(d2);
    const double c = d2.squaredNorm();
    const double det = a * c - b * b;
    if (det <= 0.0 || a == 0.0 || c == 0.0) {
        throw geometry_error("epd::diagonal_intersection: degenerate diagonals");
    }
    const double e = d1.dot(w);
    const double f = d2.dot(w);
    const double s = (c * e - b * f) / det;
    const double t = (b * e - a * f) / det;

    const Eigen::VectorXd on1 = quad[0] + s * d1;
    const Eigen::VectorXd on2 = quad[1] + t * d2;
    const double gap = (on1 - on2).norm();
    const double scale = 0.5 * (d1.norm() + d2.norm());
    if (gap > planarity_tol * scale) {
        throw geometry_error("epd::diagonal_intersection: quad not planar (gap " +
                             std::to_string(gap / scale) + " of diagonal length)");
    }
    return 0.5 * (on1 + on2);
}

double segment_ratio(const Eigen::VectorXd& p, const Eigen::VectorXd& m,
                     const Eigen::VectorXd& q) {
    const Eigen::VectorXd d = q - p;
    const double len = d.norm();
    if (len == 0.0) {
        throw std::invalid_argument("epd::segment_ratio: zero-length segment");
    }
    const Eigen::VectorXd u = d / len;
    const double num = (m - p).dot(u);
    const double den = (q - m).dot(u);
    if (den == 0.0) {
        throw geometry_error("epd::segment_ratio: division point coincides with endpoint");
    }
    return num / den;
}

double koenigs_multiratio(const std::array<Eigen::VectorXd, 4>& neighbors,
                          const std::array<Eigen::VectorXd, 4>& diag) {
    double r = 1.0;
    for (int k = 0; k < 4; ++k) {
        r *= segment_ratio(neighbors[k], diag[k], neighbors[(k + 1) % 4]);
    }
    return r;
}

double koenigs_multiratio_star(const Eigen::VectorXd& center,
                               const std::array<Eigen::VectorXd, 8>& ring,
                               double planarity_tol) {
    // ring: x_(+i), x_(+i+j), x_(+j), x_(-i+j), x_(-i), x_(-i-j), x_(-j), x_(+i-j).
    // Face k spans center, ring[2k], ring[2k+1], ring[2k+2 mod 8]; its "white"
    // diagonal is [ring[2k], ring[2k+2]], and the intersection M_k with the
    // "black" diagonal [center, ring[2k+1]] divides it.
    std::array<Eigen::VectorXd, 4> neighbors;
    std::array<Eigen::VectorXd, 4> diag;
    for (int k = 0; k < 4; ++k) {
        const Eigen::VectorXd& a = ring[2 * k];
        const Eigen::VectorXd& b = ring[(2 * k + 2) % 8];
        diag[k] = diagonal_intersection({center, a, ring[2 * k + 1], b}, planarity_tol);
        neighbors[k] = a;
    }
    return koenigs_multiratio(neighbors, diag);
}

double separable_rho(double n, double shift, double gamma, Branch branch) {
    if (branch == Branch::plus) {
        const double t = n + shift;
        if (t < 0.0) {
            throw std::domain_error("epd::separable_rho: n + shift < 0 on plus branch");
        }
        return specfun::pochhammer(t, gamma);
    }
    const double t = -n - shift - gamma + 1.0;
    if (t < 0.0) {
        throw std::domain_error("epd::separable_rho: outside minus-branch domain");
    }
    return specfun::pochhammer(t, gamma);
}

}  // namespace confocal::epd
