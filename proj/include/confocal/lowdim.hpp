#pragma once

#include <Eigen/Dense>
#include <vector>

#include "confocal/discrete.hpp"

namespace confocal::lowdim {

// N = 2 specialization (discrete confocal conics), alpha > beta integers:
//   x(n) = D1 (n1 + alpha)_{1/2} (n2 + alpha - 1/2)_{1/2}
//   y(n) = D2 (-n1 - beta)_{1/2} (n2 + beta)_{1/2}
// with D1^2 = D2^2 = 1/(alpha - beta - 1/2).
struct Params2 {
    long long alpha, beta;

    Params2(long long a, long long b);
    double d1() const;
    double d2() const;
    discrete::Params as_general() const;
};

// Closed-form evaluation (independent of discrete::eval; used to
// cross-validate it).  n1, n2 in lattice units, may be half-integers.
Eigen::Vector2d eval2(const Params2& p, double n1, double n2);

// Closed-form lattice derivatives Delta_1 x (i = 0) and Delta_2 x (i = 1).
Eigen::Vector2d derivative2(const Params2& p, double n1, double n2, int i);

// One dual-lattice step via the bilinear relations: maps x(n) to
// x(n + (1/2, sigma2/2)), sigma2 = +1 or -1.  Requires both components of x
// nonzero (std::domain_error otherwise -- boundary points are not mapped).
Eigen::Vector2d tau_step(const Params2& p, const discrete::LatticePoint& n,
                         const Eigen::Vector2d& x, int sigma2);

struct ConicRelations {
    // residuals of x x+ / den1 + y y+ / den2 = 1 for the two directions;
    // valid[i] = false marks an exact zero denominator (removable case).
    std::array<double, 2> residual;
    std::array<bool, 2> valid;
};

// Conic membership of the dual pair (x(n), x(n + sigma/2)) for
// sigma = (+1, s2): direction-1 denominators (n1 + alpha, n1 + beta + 1/2),
// direction-2 denominators (n2 + alpha - (1 - s2/2)/... ) -- see the
// denominators in quadric_residual; this is its N=2 closed form.
ConicRelations conic_relations(const Params2& p, const discrete::LatticePoint& n, int sigma2);

// Closed form of the isothermic quotient
//   <Delta_1 x(n), Delta_1 x(n+f/2)> / <Delta_2 x(n-e_2+f/2), Delta_2 x(n-e_2+f)>
//   = -(n2 + alpha - 1/2)(n2 + beta) / ((n1 + alpha + 1/2)(n1 + beta + 1)).
double isothermic_ratio(const Params2& p, const discrete::LatticePoint& n);

// N = 3 specialization, alpha > beta > gamma_lat integers, with the shifted
// continuous semiaxes a = alpha + 1/2, b = beta + 1, c = gamma_lat + 3/2.
struct Params3 {
    long long alpha, beta, gamma_lat;

    Params3(long long a, long long b, long long g);
    double a() const { return alpha + 0.5; }
    double b() const { return beta + 1.0; }
    double c() const { return gamma_lat + 1.5; }

    // D^2 = 1/((a-b)(a-c)(b-c)); D_1^2 = (b-c) D^2, D_2^2 = (a-c) D^2,
    // D_3^2 = (a-b) D^2.
    double d_sq() const;
    double d1() const;
    double d2() const;
    double d3() const;
    discrete::Params as_general() const;
};

// Closed-form evaluation (independent transcription of the N=3 formulas).
Eigen::Vector3d eval3(const Params3& p, double n1, double n2, double n3);

// Closed-form lattice derivatives, i = 0, 1, 2; component sign patterns
// (+,-,-), (+,+,-), (+,+,+).
Eigen::Vector3d derivative3(const Params3& p, double n1, double n2, double n3, int i);

struct QuadricRelations3 {
    std::array<double, 3> residual;  // per direction i
    std::array<bool, 3> valid;
};

// The three quadric relations for the dual pair (x(n), x(n+sigma/2)) in the
// shifted variables u = n1 + sigma1/4 - 3/4, v = n2 + sigma2/4 - 5/4,
// w = n3 + sigma3/4 - 7/4 (denominators u+a..., v+a..., w+a...).
QuadricRelations3 quadric_relations3(const Params3& p, const discrete::LatticePoint& n,
                                     const std::array<int, 3>& sigma);

// Umbilic curve through the umbilic points of the ellipsoid layer: the
// discrete focal hyperbola at n1 = n2 = -beta,
//   x(n3) = (D1 (alpha-beta-1/2) (n3+alpha-1)_{1/2}, 0, D3 (beta-gamma-1/2) (n3+gamma)_{1/2})
// traversed over doubled coordinates m3 = m_lo..m_hi (integer and
// half-integer points interleaved).  Requires n3 >= -gamma_lat.
std::vector<Eigen::Vector3d> focal_hyperbola(const Params3& p, int m3_lo, int m3_hi);

// Discrete focal ellipse at n2 = n3 = -gamma_lat,
//   x(n1) = (D1 (alpha-gamma-1) (n1+alpha)_{1/2}, D2 (beta-gamma-1/2) (-n1-beta)_{1/2}, 0),
// m1 = m_lo..m_hi doubled, -alpha <= n1 <= -beta.
std::vector<Eigen::Vector3d> focal_ellipse(const Params3& p, int m1_lo, int m1_hi);

// Conic residuals of consecutive curve points (n., n. + 1/2):
//   hyperbola: x x+/(alpha-beta-1/2) - z z+/(beta-gamma-1/2) = 1
//   ellipse:   x x+/(alpha-gamma-1)  + y y+/(beta-gamma-1/2) = 1
double focal_hyperbola_residual(const Params3& p, int m3);
double focal_ellipse_residual(const Params3& p, int m1);

}  // namespace confocal::lowdim
