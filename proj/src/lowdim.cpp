#include "confocal/lowdim.hpp"

#include <cmath>
#include <stdexcept>

#include "confocal/specfun.hpp"

namespace confocal::lowdim {

using specfun::dsqrt;

Params2::Params2(long long a, long long b) : alpha(a), beta(b) {
    if (alpha <= beta) {
        throw std::invalid_argument("lowdim::Params2: requires alpha > beta");
    }
}

double Params2::d1() const { return 1.0 / std::sqrt(alpha - beta - 0.5); }
double Params2::d2() const { return d1(); }

discrete::Params Params2::as_general() const {
    return discrete::Params({alpha, beta});
}

Eigen::Vector2d eval2(const Params2& p, double n1, double n2) {
    const double a = static_cast<double>(p.alpha);
    const double b = static_cast<double>(p.beta);
    return {p.d1() * dsqrt(n1 + a) * dsqrt(n2 + a - 0.5),
            p.d2() * dsqrt(-n1 - b) * dsqrt(n2 + b)};
}

Eigen::Vector2d derivative2(const Params2& p, double n1, double n2, int i) {
    const double a = static_cast<double>(p.alpha);
    const double b = static_cast<double>(p.beta);
    if (i == 0) {
        return {0.5 * p.d1() * dsqrt(n2 + a - 0.5) / dsqrt(n1 + a + 0.5),
                -0.5 * p.d2() * dsqrt(n2 + b) / dsqrt(-n1 - b - 0.5)};
    }
    if (i == 1) {
        return {0.5 * p.d1() * dsqrt(n1 + a) / dsqrt(n2 + a),
                0.5 * p.d2() * dsqrt(-n1 - b) / dsqrt(n2 + b + 0.5)};
    }
    throw std::invalid_argument("lowdim::derivative2: i must be 0 or 1");
}

Eigen::Vector2d tau_step(const Params2& p, const discrete::LatticePoint& n,
                         const Eigen::Vector2d& x, int sigma2) {
    if (n.dim() != 2) {
        throw std::invalid_argument("lowdim::tau_step: need a 2D lattice point");
    }
    if (sigma2 != 1 && sigma2 != -1) {
        throw std::invalid_argument("lowdim::tau_step: sigma2 must be +-1");
    }
    if (x[0] == 0.0 || x[1] == 0.0) {
        throw std::domain_error("lowdim::tau_step: boundary point (zero component)");
    }
    const long long m1 = n.m[0], m2 = n.m[1];
    const long long A = p.alpha, B = p.beta;
    // Halved factors, e.g. n1 + alpha = (m1 + 2 alpha)/2.
    const double n1a = 0.5 * static_cast<double>(m1 + 2 * A);
    const double n1b = 0.5 * static_cast<double>(m1 + 2 * B + 1);
    const double dden = 0.5 * static_cast<double>(2 * (A - B) - 1);
    double n2a, n2b;
    if (sigma2 == 1) {
        n2a = 0.5 * static_cast<double>(m2 + 2 * A - 1);
        n2b = 0.5 * static_cast<double>(m2 + 2 * B);
    } else {
        n2a = 0.5 * static_cast<double>(m2 + 2 * A - 2);
        n2b = 0.5 * static_cast<double>(m2 + 2 * B - 1);
    }
    return {n1a * n2a / (dden * x[0]), n1b * n2b / (-dden * x[1])};
}

ConicRelations conic_relations(const Params2& p, const discrete::LatticePoint& n,
                               int sigma2) {
    if (n.dim() != 2) {
        throw std::invalid_argument("lowdim::conic_relations: need a 2D lattice point");
    }
    if (sigma2 != 1 && sigma2 != -1) {
        throw std::invalid_argument("lowdim::conic_relations: sigma2 must be +-1");
    }
    const long long m1 = n.m[0], m2 = n.m[1];
    const long long A = p.alpha, B = p.beta;
    const Eigen::Vector2d x0 = eval2(p, 0.5 * m1, 0.5 * m2);
    const Eigen::Vector2d x1 =
        eval2(p, 0.5 * (m1 + 1), 0.5 * (m2 + sigma2));

    // Doubled denominators per direction.
    const std::array<std::array<long long, 2>, 2> den2 = {{
        {m1 + 2 * A, m1 + 2 * B + 1},
        {sigma2 == 1 ? m2 + 2 * A - 1 : m2 + 2 * A - 2,
         sigma2 == 1 ? m2 + 2 * B : m2 + 2 * B - 1},
    }};

    ConicRelations out;
    for (int i = 0; i < 2; ++i) {
        if (den2[i][0] == 0 || den2[i][1] == 0) {
            out.valid[i] = false;
            out.residual[i] = 0.0;
            continue;
        }
        out.valid[i] = true;
        out.residual[i] = std::abs(x0[0] * x1[0] / (0.5 * den2[i][0]) +
                                   x0[1] * x1[1] / (0.5 * den2[i][1]) - 1.0);
    }
    return out;
}

double isothermic_ratio(const Params2& p, const discrete::LatticePoint& n) {
    if (n.dim() != 2) {
        throw std::invalid_argument("lowdim::isothermic_ratio: need a 2D lattice point");
    }
    const long long m1 = n.m[0], m2 = n.m[1];
    const long long A = p.alpha, B = p.beta;
    const double num = 0.25 * static_cast<double>(m2 + 2 * A - 1) *
                       static_cast<double>(m2 + 2 * B);
    const double den = 0.25 * static_cast<double>(m1 + 2 * A + 1) *
                       static_cast<double>(m1 + 2 * B + 2);
    return -num / den;
}

Params3::Params3(long long a, long long b, long long g)
    : alpha(a), beta(b), gamma_lat(g) {
    if (alpha <= beta || beta <= gamma_lat) {
        throw std::invalid_argument("lowdim::Params3: requires alpha > beta > gamma");
    }
}

double Params3::d_sq() const { return 1.0 / ((a() - b()) * (a() - c()) * (b() - c())); }
double Params3::d1() const { return std::sqrt((b() - c()) * d_sq()); }
double Params3::d2() const { return std::sqrt((a() - c()) * d_sq()); }
double Params3::d3() const { return std::sqrt((a() - b()) * d_sq()); }

discrete::Params Params3::as_general() const {
    return discrete::Params({alpha, beta, gamma_lat});
}

Eigen::Vector3d eval3(const Params3& p, double n1, double n2, double n3) {
    const double A = static_cast<double>(p.alpha);
    const double B = static_cast<double>(p.beta);
    const double G = static_cast<double>(p.gamma_lat);
    return {p.d1() * dsqrt(n1 + A) * dsqrt(n2 + A - 0.5) * dsqrt(n3 + A - 1.0),
            p.d2() * dsqrt(-n1 - B) * dsqrt(n2 + B) * dsqrt(n3 + B - 0.5),
            p.d3() * dsqrt(-n1 - G - 0.5) * dsqrt(-n2 - G) * dsqrt(n3 + G)};
}

Eigen::Vector3d derivative3(const Params3& p, double n1, double n2, double n3, int i) {
    const double A = static_cast<double>(p.alpha);
    const double B = static_cast<double>(p.beta);
    const double G = static_cast<double>(p.gamma_lat);
    const double D1 = p.d1(), D2 = p.d2(), D3 = p.d3();
    switch (i) {
        case 0:  // signs (+,-,-)
            return {0.5 * D1 * dsqrt(n2 + A - 0.5) * dsqrt(n3 + A - 1.0) / dsqrt(n1 + A + 0.5),
                    -0.5 * D2 * dsqrt(n2 + B) * dsqrt(n3 + B - 0.5) / dsqrt(-n1 - B - 0.5),
                    -0.5 * D3 * dsqrt(-n2 - G) * dsqrt(n3 + G) / dsqrt(-n1 - G - 1.0)};
        case 1:  // signs (+,+,-)
            return {0.5 * D1 * dsqrt(n1 + A) * dsqrt(n3 + A - 1.0) / dsqrt(n2 + A),
                    0.5 * D2 * dsqrt(-n1 - B) * dsqrt(n3 + B - 0.5) / dsqrt(n2 + B + 0.5),
                    -0.5 * D3 * dsqrt(-n1 - G - 0.5) * dsqrt(n3 + G) / dsqrt(-n2 - G - 0.5)};
        case 2:  // signs (+,+,+)
            return {0.5 * D1 * dsqrt(n1 + A) * dsqrt(n2 + A - 0.5) / dsqrt(n3 + A - 0.5),
                    0.5 * D2 * dsqrt(-n1 - B) * dsqrt(n2 + B) / dsqrt(n3 + B),
                    0.5 * D3 * dsqrt(-n1 - G - 0.5) * dsqrt(-n2 - G) / dsqrt(n3 + G + 0.5)};
        default:
            throw std::invalid_argument("lowdim::derivative3: i must be 0, 1 or 2");
    }
}

QuadricRelations3 quadric_relations3(const Params3& p, const discrete::LatticePoint& n,
                                     const std::array<int, 3>& sigma) {
    if (n.dim() != 3) {
        throw std::invalid_argument("lowdim::quadric_relations3: need a 3D lattice point");
    }
    for (int s : sigma) {
        if (s != 1 && s != -1) {
            throw std::invalid_argument("lowdim::quadric_relations3: sigma entries must be +-1");
        }
    }
    const std::array<long long, 3> alpha = {p.alpha, p.beta, p.gamma_lat};
    const Eigen::Vector3d x0 = eval3(p, 0.5 * n.m[0], 0.5 * n.m[1], 0.5 * n.m[2]);
    const Eigen::Vector3d x1 = eval3(p, 0.5 * (n.m[0] + sigma[0]),
                                     0.5 * (n.m[1] + sigma[1]),
                                     0.5 * (n.m[2] + sigma[2]));

    QuadricRelations3 out;
    for (int i = 0; i < 3; ++i) {
        double sum = 0.0;
        bool valid = true;
        for (int k = 0; k < 3; ++k) {
            // Quartered denominator n_i + alpha_k + (k-i)/2 - (1-sigma_i)/4
            // -- equivalently (t_i + a_k) in the shifted variables.
            const long long den4 =
                2LL * n.m[i] + 4 * alpha[k] + 2 * (k - i) + sigma[i] - 1;
            if (den4 == 0) {
                valid = false;
                break;
            }
            sum += x0[k] * x1[k] / (0.25 * static_cast<double>(den4));
        }
        out.valid[i] = valid;
        out.residual[i] = valid ? std::abs(sum - 1.0) : 0.0;
    }
    return out;
}

namespace {

void check_hyperbola_m3(const Params3& p, int m3) {
    if (m3 + 2 * p.gamma_lat < 0) {
        throw std::domain_error("lowdim::focal_hyperbola: n3 < -gamma");
    }
}

void check_ellipse_m1(const Params3& p, int m1) {
    if (m1 + 2 * p.alpha < 0 || m1 + 2 * p.beta > 0) {
        throw std::domain_error("lowdim::focal_ellipse: n1 outside [-alpha, -beta]");
    }
}

}  // namespace

std::vector<Eigen::Vector3d> focal_hyperbola(const Params3& p, int m3_lo, int m3_hi) {
    if (m3_lo > m3_hi) {
        throw std::invalid_argument("lowdim::focal_hyperbola: empty range");
    }
    const double A = static_cast<double>(p.alpha);
    const double B = static_cast<double>(p.beta);
    const double G = static_cast<double>(p.gamma_lat);
    std::vector<Eigen::Vector3d> pts;
    pts.reserve(m3_hi - m3_lo + 1);
    for (int m3 = m3_lo; m3 <= m3_hi; ++m3) {
        check_hyperbola_m3(p, m3);
        const double n3 = 0.5 * m3;
        pts.emplace_back(p.d1() * (A - B - 0.5) * dsqrt(n3 + A - 1.0), 0.0,
                         p.d3() * (B - G - 0.5) * dsqrt(n3 + G));
    }
    return pts;
}

std::vector<Eigen::Vector3d> focal_ellipse(const Params3& p, int m1_lo, int m1_hi) {
    if (m1_lo > m1_hi) {
        throw std::invalid_argument("lowdim::focal_ellipse: empty range");
    }
    const double A = static_cast<double>(p.alpha);
    const double B = static_cast<double>(p.beta);
    const double G = static_cast<double>(p.gamma_lat);
    std::vector<Eigen::Vector3d> pts;
    pts.reserve(m1_hi - m1_lo + 1);
    for (int m1 = m1_lo; m1 <= m1_hi; ++m1) {
        check_ellipse_m1(p, m1);
        const double n1 = 0.5 * m1;
        pts.emplace_back(p.d1() * (A - G - 1.0) * dsqrt(n1 + A),
                         p.d2() * (B - G - 0.5) * dsqrt(-n1 - B), 0.0);
    }
    return pts;
}

double focal_hyperbola_residual(const Params3& p, int m3) {
    check_hyperbola_m3(p, m3);
    check_hyperbola_m3(p, m3 + 1);
    const auto pts = focal_hyperbola(p, m3, m3 + 1);
    const double A = static_cast<double>(p.alpha);
    const double B = static_cast<double>(p.beta);
    const double G = static_cast<double>(p.gamma_lat);
    return std::abs(pts[0][0] * pts[1][0] / (A - B - 0.5) -
                    pts[0][2] * pts[1][2] / (B - G - 0.5) - 1.0);
}

double focal_ellipse_residual(const Params3& p, int m1) {
    check_ellipse_m1(p, m1);
    check_ellipse_m1(p, m1 + 1);
    const auto pts = focal_ellipse(p, m1, m1 + 1);
    const double A = static_cast<double>(p.alpha);
    const double B = static_cast<double>(p.beta);
    const double G = static_cast<double>(p.gamma_lat);
    return std::abs(pts[0][0] * pts[1][0] / (A - G - 1.0) +
                    pts[0][1] * pts[1][1] / (B - G - 0.5) - 1.0);
}

}  // namespace confocal::lowdim
