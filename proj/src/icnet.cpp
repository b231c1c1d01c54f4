#include "confocal/icnet.hpp"

#include <algorithm>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "confocal/errors.hpp"

namespace confocal::icnet {

Line Line::from_angle(double theta, double offset) {
    return {std::cos(theta), std::sin(theta), offset};
}

Line Line::from_coeffs(double a, double b, double c) {
    const double n = std::hypot(a, b);
    if (n == 0.0) {
        throw std::invalid_argument("icnet::Line: zero normal");
    }
    return {a / n, b / n, c / n};
}

LineGrid rhombic(int n_rows, int n_cols, double theta, double phi, double spacing) {
    if (n_rows < 2 || n_cols < 2) {
        throw std::invalid_argument("icnet::rhombic: need at least two lines per family");
    }
    if (spacing <= 0.0) {
        throw std::invalid_argument("icnet::rhombic: spacing must be positive");
    }
    LineGrid g;
    for (int i = 0; i < n_rows; ++i) g.rows.push_back(Line::from_angle(theta, i * spacing));
    for (int j = 0; j < n_cols; ++j) g.cols.push_back(Line::from_angle(theta + phi, j * spacing));
    return g;
}

LineGrid perturbed(const LineGrid& grid, double magnitude, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> delta(-magnitude, magnitude);
    const auto jiggle = [&](const Line& l) {
        const double theta = std::atan2(l.b, l.a) + delta(rng);
        return Line::from_angle(theta, l.c + delta(rng));
    };
    LineGrid out;
    for (const Line& l : grid.rows) out.rows.push_back(jiggle(l));
    for (const Line& l : grid.cols) out.cols.push_back(jiggle(l));
    return out;
}

namespace {

Eigen::Vector2d intersect(const Line& r, const Line& c) {
    const double det = r.a * c.b - r.b * c.a;
    if (std::abs(det) < 1e-12) {
        throw geometry_error("icnet: near-parallel line pair");
    }
    return {(r.c * c.b - r.b * c.c) / det, (r.a * c.c - r.c * c.a) / det};
}

// Smallest-residual circle center/radius against the four side lines of cell
// (i, j), signed inward from the cell centroid; never throws.
Incircle fit_incircle(const LineGrid& grid, const VertexGrid& v, int i, int j) {
    const std::array<Line, 4> sides = {grid.cols[j], grid.rows[i + 1],
                                       grid.cols[j + 1], grid.rows[i]};
    const Eigen::Vector2d cen = 0.25 * (v.at(i, j) + v.at(i + 1, j) +
                                        v.at(i + 1, j + 1) + v.at(i, j + 1));
    Eigen::Matrix<double, 4, 3> A;
    Eigen::Vector4d b;
    for (int k = 0; k < 4; ++k) {
        const Line& l = sides[k];
        const double s = l.c - l.a * cen.x() - l.b * cen.y() >= 0.0 ? 1.0 : -1.0;
        A.row(k) << s * l.a, s * l.b, 1.0;
        b[k] = s * l.c;
    }
    const Eigen::Vector3d sol = A.colPivHouseholderQr().solve(b);
    Incircle out;
    out.center = sol.head<2>();
    out.radius = sol[2];
    for (const Line& l : sides) {
        out.max_side_error = std::max(out.max_side_error,
                                      std::abs(l.distance(out.center) - out.radius));
    }
    return out;
}

double angle_at(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                const Eigen::Vector2d& c) {
    const Eigen::Vector2d u = a - b, w = c - b;
    const double d = u.dot(w) / (u.norm() * w.norm());
    return std::acos(std::clamp(d, -1.0, 1.0));
}

double signed_ratio(const Eigen::Vector2d& p, const Eigen::Vector2d& m,
                    const Eigen::Vector2d& q) {
    const Eigen::Vector2d d = q - p;
    const Eigen::Vector2d u = d / d.norm();
    return (m - p).dot(u) / (q - m).dot(u);
}

// Intersection of segments [p, r] and [q, s].
Eigen::Vector2d diag_int(const Eigen::Vector2d& p, const Eigen::Vector2d& q,
                         const Eigen::Vector2d& r, const Eigen::Vector2d& s) {
    Eigen::Matrix2d A;
    A.col(0) = r - p;
    A.col(1) = -(s - q);
    if (std::abs(A.determinant()) < 1e-14 * A.norm() * A.norm()) {
        throw geometry_error("icnet: parallel diagonals");
    }
    const Eigen::Vector2d tw = A.inverse() * (q - p);
    return p + tw[0] * (r - p);
}

}  // namespace

VertexGrid build_vertices(const LineGrid& grid) {
    VertexGrid v;
    v.n_rows = grid.n_rows();
    v.n_cols = grid.n_cols();
    v.f.resize(static_cast<std::size_t>(v.n_rows) * v.n_cols);
    for (int i = 0; i < v.n_rows; ++i) {
        for (int j = 0; j < v.n_cols; ++j) {
            v.f[i * v.n_cols + j] = intersect(grid.rows[i], grid.cols[j]);
        }
    }

    // Vertex order along each line must be monotone in the tangent direction.
    const auto monotone = [](const std::vector<double>& t) {
        bool inc = true, dec = true;
        for (std::size_t k = 0; k + 1 < t.size(); ++k) {
            if (t[k + 1] <= t[k]) inc = false;
            if (t[k + 1] >= t[k]) dec = false;
        }
        return inc || dec;
    };
    for (int i = 0; i < v.n_rows && v.order_ok; ++i) {
        std::vector<double> t(v.n_cols);
        const Eigen::Vector2d tan(-grid.rows[i].b, grid.rows[i].a);
        for (int j = 0; j < v.n_cols; ++j) t[j] = tan.dot(v.at(i, j));
        if (!monotone(t)) {
            v.order_ok = false;
            v.order_note = "row line " + std::to_string(i);
        }
    }
    for (int j = 0; j < v.n_cols && v.order_ok; ++j) {
        std::vector<double> t(v.n_rows);
        const Eigen::Vector2d tan(-grid.cols[j].b, grid.cols[j].a);
        for (int i = 0; i < v.n_rows; ++i) t[i] = tan.dot(v.at(i, j));
        if (!monotone(t)) {
            v.order_ok = false;
            v.order_note = "col line " + std::to_string(j);
        }
    }
    return v;
}

double pitot_residual(const VertexGrid& v, int i, int j) {
    const Eigen::Vector2d& A = v.at(i, j);
    const Eigen::Vector2d& B = v.at(i + 1, j);
    const Eigen::Vector2d& C = v.at(i + 1, j + 1);
    const Eigen::Vector2d& D = v.at(i, j + 1);
    return ((B - A).norm() + (D - C).norm()) - ((C - B).norm() + (A - D).norm());
}

bool cell_convex(const VertexGrid& v, int i, int j) {
    const std::array<Eigen::Vector2d, 4> q = {v.at(i, j), v.at(i + 1, j),
                                              v.at(i + 1, j + 1), v.at(i, j + 1)};
    int sign = 0;
    for (int k = 0; k < 4; ++k) {
        const Eigen::Vector2d e1 = q[(k + 1) % 4] - q[k];
        const Eigen::Vector2d e2 = q[(k + 2) % 4] - q[(k + 1) % 4];
        const double cross = e1.x() * e2.y() - e1.y() * e2.x();
        if (cross == 0.0) return false;
        const int s = cross > 0.0 ? 1 : -1;
        if (sign == 0) sign = s;
        if (s != sign) return false;
    }
    return true;
}

Incircle incircle(const LineGrid& grid, const VertexGrid& v, int i, int j) {
    Incircle c = fit_incircle(grid, v, i, j);
    const double tol = 1e-9 * std::max(c.radius, 1e-9);
    if (c.radius <= 0.0 || c.max_side_error > tol) {
        std::ostringstream msg;
        msg << "icnet::incircle: cell (" << i << ", " << j
            << ") is not tangential (Pitot defect " << pitot_residual(v, i, j) << ")";
        throw geometry_error(msg.str());
    }
    return c;
}

IncenterNet incenter_net(const LineGrid& grid) {
    const VertexGrid v = build_vertices(grid);
    IncenterNet net;
    net.n_rows = grid.n_rows() - 1;
    net.n_cols = grid.n_cols() - 1;
    net.omega.resize(static_cast<std::size_t>(net.n_rows) * net.n_cols);
    net.radius.resize(net.omega.size());
    for (int i = 0; i < net.n_rows; ++i) {
        for (int j = 0; j < net.n_cols; ++j) {
            const Incircle c = incircle(grid, v, i, j);
            net.omega[i * net.n_cols + j] = c.center;
            net.radius[i * net.n_cols + j] = c.radius;
        }
    }
    return net;
}

double TheoremReport::residual(const std::string& name) const {
    auto it = properties.find(name);
    if (it == properties.end()) {
        throw std::invalid_argument("icnet::TheoremReport: unknown property " + name);
    }
    return it->second.max_residual;
}

TheoremReport verify_theorem(const LineGrid& grid, double pitot_tol) {
    const VertexGrid v = build_vertices(grid);
    const int Rw = grid.n_rows() - 1;
    const int Cw = grid.n_cols() - 1;
    if (Rw < 3 || Cw < 3) {
        throw std::invalid_argument("icnet::verify_theorem: grid too small");
    }

    TheoremReport rep;
    auto& props = rep.properties;

    std::vector<Eigen::Vector2d> W(static_cast<std::size_t>(Rw) * Cw);
    const auto at = [&](int i, int j) -> const Eigen::Vector2d& {
        return W[i * Cw + j];
    };
    PropertyResult inc;
    for (int i = 0; i < Rw; ++i) {
        for (int j = 0; j < Cw; ++j) {
            const double defect = std::abs(pitot_residual(v, i, j));
            rep.max_pitot = std::max(rep.max_pitot, defect);
            if (defect > pitot_tol) rep.tangential = false;
            const Incircle c = fit_incircle(grid, v, i, j);
            W[i * Cw + j] = c.center;
            inc.max_residual = std::max(inc.max_residual,
                                        c.max_side_error / std::max(c.radius, 1e-30));
            ++inc.count;
        }
    }
    props["incircle_consistency"] = inc;

    // (i) all lines tangent to one conic: dual-conic fit on unit line coords.
    {
        const int L = grid.n_rows() + grid.n_cols();
        Eigen::MatrixXd M(L, 6);
        int r = 0;
        for (const auto* fam : {&grid.rows, &grid.cols}) {
            for (const Line& l : *fam) {
                Eigen::Vector3d u(l.a, l.b, -l.c);
                u /= u.norm();
                M.row(r++) << u[0] * u[0], u[1] * u[1], u[2] * u[2], 2 * u[0] * u[1],
                    2 * u[0] * u[2], 2 * u[1] * u[2];
            }
        }
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
        const Eigen::VectorXd q = svd.matrixV().col(5);
        props["conic_fit"] = {(M * q).cwiseAbs().maxCoeff(), L, 0};
    }

    // (ii) each subnet point is the diagonal intersection of the other
    // subnet's quad around it.
    {
        PropertyResult pr;
        for (int i = 1; i + 1 < Rw; ++i) {
            for (int j = 0; j + 2 < Cw; ++j) {
                if ((i + j) % 2 != 0) continue;
                try {
                    const Eigen::Vector2d M = diag_int(at(i, j), at(i + 1, j + 1),
                                                       at(i, j + 2), at(i - 1, j + 1));
                    pr.max_residual = std::max(pr.max_residual, (M - at(i, j + 1)).norm());
                    ++pr.count;
                } catch (const geometry_error&) {
                    ++pr.skipped;
                }
            }
        }
        props["diagonal_duality"] = pr;
    }

    // (iii) circularity: opposite angles of every subnet quad sum to pi.
    {
        PropertyResult pr;
        for (int i = 1; i + 1 < Rw; ++i) {
            for (int j = 0; j + 2 < Cw; ++j) {
                if ((i + j) % 2 != 0) continue;
                const std::array<Eigen::Vector2d, 4> q = {at(i, j), at(i + 1, j + 1),
                                                          at(i, j + 2), at(i - 1, j + 1)};
                const double s1 = angle_at(q[3], q[0], q[1]) + angle_at(q[1], q[2], q[3]);
                const double s2 = angle_at(q[0], q[1], q[2]) + angle_at(q[2], q[3], q[0]);
                pr.max_residual = std::max({pr.max_residual, std::abs(s1 - std::numbers::pi),
                                            std::abs(s2 - std::numbers::pi)});
                ++pr.count;
            }
        }
        props["circularity"] = pr;
    }

    // (iii) conicality: opposite angle sums of every interior subnet vertex star.
    {
        PropertyResult pr;
        for (int i = 1; i + 1 < Rw; ++i) {
            for (int j = 1; j + 1 < Cw; ++j) {
                if ((i + j) % 2 != 0) continue;
                const std::array<Eigen::Vector2d, 4> nb = {at(i + 1, j + 1), at(i - 1, j + 1),
                                                           at(i - 1, j - 1), at(i + 1, j - 1)};
                std::array<double, 4> th;
                for (int k = 0; k < 4; ++k) {
                    th[k] = angle_at(nb[k], at(i, j), nb[(k + 1) % 4]);
                }
                pr.max_residual = std::max({pr.max_residual, std::abs(th[0] + th[2] - std::numbers::pi),
                                            std::abs(th[1] + th[3] - std::numbers::pi)});
                ++pr.count;
            }
        }
        props["conicality"] = pr;
    }

    // (iv) edges of one subnet are orthogonal to the dual edges of the other.
    {
        PropertyResult pr;
        for (int i = 0; i + 1 < Rw; ++i) {
            for (int j = 0; j + 1 < Cw; ++j) {
                if ((i + j) % 2 != 0) continue;
                const Eigen::Vector2d e = at(i + 1, j + 1) - at(i, j);
                const Eigen::Vector2d d = at(i, j + 1) - at(i + 1, j);
                pr.max_residual = std::max(pr.max_residual,
                                           std::abs(e.dot(d)) / (e.norm() * d.norm()));
                ++pr.count;
            }
        }
        props["dual_orthogonality"] = pr;
    }

    // (v) Koenigs multi-ratio at subnet vertices, the other subnet supplying
    // the diagonal intersection points.
    {
        PropertyResult pr;
        for (int i = 1; i + 1 < Rw; ++i) {
            for (int j = 1; j + 1 < Cw; ++j) {
                if ((i + j) % 2 != 0) continue;
                const std::array<Eigen::Vector2d, 4> nb = {at(i + 1, j + 1), at(i - 1, j + 1),
                                                           at(i - 1, j - 1), at(i + 1, j - 1)};
                const std::array<Eigen::Vector2d, 4> dg = {at(i, j + 1), at(i - 1, j),
                                                           at(i, j - 1), at(i + 1, j)};
                double mr = 1.0;
                for (int k = 0; k < 4; ++k) {
                    mr *= signed_ratio(nb[k], dg[k], nb[(k + 1) % 4]);
                }
                pr.max_residual = std::max(pr.max_residual, std::abs(mr - 1.0));
                ++pr.count;
            }
        }
        props["koenigs"] = pr;
    }

    // (v) Menelaus form: the grid vertices divide the dual-subnet quad edges
    // in ratios whose product is 1.
    {
        PropertyResult pr;
        for (int i = 1; i + 1 < Rw; ++i) {
            for (int j = 1; j + 1 < Cw; ++j) {
                if ((i + j) % 2 != 0) continue;
                const std::array<Eigen::Vector2d, 4> V = {at(i, j - 1), at(i + 1, j),
                                                          at(i, j + 1), at(i - 1, j)};
                const std::array<Eigen::Vector2d, 4> pts = {v.at(i + 1, j), v.at(i + 1, j + 1),
                                                            v.at(i, j + 1), v.at(i, j)};
                double prod = 1.0;
                for (int k = 0; k < 4; ++k) {
                    prod *= signed_ratio(V[k], pts[k], V[(k + 1) % 4]);
                }
                pr.max_residual = std::max(pr.max_residual, std::abs(prod - 1.0));
                ++pr.count;
            }
        }
        props["menelaus"] = pr;
    }

    return rep;
}

FactorizationReport factorization_numerical(const LineGrid& grid) {
    // Least-squares centers so the probe stays defined on near-IC grids,
    // where the rank-1 defect is exactly what we want to measure.
    const VertexGrid v = build_vertices(grid);
    IncenterNet net;
    net.n_rows = grid.n_rows() - 1;
    net.n_cols = grid.n_cols() - 1;
    net.omega.resize(static_cast<std::size_t>(net.n_rows) * net.n_cols);
    for (int i = 0; i < net.n_rows; ++i)
        for (int j = 0; j < net.n_cols; ++j)
            net.omega[i * net.n_cols + j] = fit_incircle(grid, v, i, j).center;
    const int Rw = net.n_rows, Cw = net.n_cols;
    // eta(k, l) = omega(k - l, k + l); samples need k-l+1 <= Rw-1 and
    // k+l+2 <= Cw-1 over l in [-1, 1].
    const int k_hi = std::min(Rw - 3, Cw - 4);
    if (k_hi < 1) {
        throw std::invalid_argument("icnet::factorization_numerical: grid too small (need >= 7x8 cells)");
    }
    const auto eta = [&](int i, int j) -> const Eigen::Vector2d& {
        return net.at(i, j);
    };
    Eigen::MatrixXd Q(k_hi, 3);
    for (int k = 1; k <= k_hi; ++k) {
        for (int l = -1; l <= 1; ++l) {
            const Eigen::Vector2d num_a = eta(k - l + 1, k + l + 1) - eta(k - l, k + l);
            const Eigen::Vector2d num_b = eta(k - l + 1, k + l + 2) - eta(k - l, k + l + 1);
            const Eigen::Vector2d den_a = eta(k - l, k + l + 1) - eta(k - l + 1, k + l);
            const Eigen::Vector2d den_b = eta(k - l, k + l + 2) - eta(k - l + 1, k + l + 1);
            Q(k - 1, l + 1) = num_a.dot(num_b) / den_a.dot(den_b);
        }
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(Q);
    FactorizationReport rep;
    rep.q = Q;
    rep.rank1_residual = svd.singularValues()[1] / svd.singularValues()[0];
    return rep;
}

namespace {

struct Packed {
    Eigen::VectorXd x;
    int n_rows, n_cols;

    static Packed pack(const LineGrid& g) {
        Packed p{Eigen::VectorXd(2 * (g.n_rows() + g.n_cols())), g.n_rows(), g.n_cols()};
        int k = 0;
        for (const auto* fam : {&g.rows, &g.cols}) {
            for (const Line& l : *fam) {
                p.x[k++] = std::atan2(l.b, l.a);
                p.x[k++] = l.c;
            }
        }
        return p;
    }

    LineGrid unpack() const {
        LineGrid g;
        int k = 0;
        for (int i = 0; i < n_rows; ++i, k += 2) g.rows.push_back(Line::from_angle(x[k], x[k + 1]));
        for (int j = 0; j < n_cols; ++j, k += 2) g.cols.push_back(Line::from_angle(x[k], x[k + 1]));
        return g;
    }
};

Eigen::VectorXd all_pitot(const LineGrid& g) {
    const VertexGrid v = build_vertices(g);
    Eigen::VectorXd F((g.n_rows() - 1) * (g.n_cols() - 1));
    int k = 0;
    for (int i = 0; i + 1 < g.n_rows(); ++i) {
        for (int j = 0; j + 1 < g.n_cols(); ++j) {
            F[k++] = pitot_residual(v, i, j);
        }
    }
    return F;
}

}  // namespace

SolveResult solve(const LineGrid& seed, double tol, int max_iter) {
    Packed p = Packed::pack(seed);
    const int n = static_cast<int>(p.x.size());

    Eigen::VectorXd F = all_pitot(p.unpack());
    double lambda = 1e-8;
    int it = 0;
    bool stuck = false;
    while (!stuck && F.cwiseAbs().maxCoeff() > tol && it < max_iter) {
        Eigen::MatrixXd J(F.size(), n);
        const double h = 1e-7;
        for (int k = 0; k < n; ++k) {
            Packed q = p;
            q.x[k] += h;
            J.col(k) = (all_pitot(q.unpack()) - F) / h;
        }
        const Eigen::MatrixXd JtJ = J.transpose() * J;
        const Eigen::VectorXd g = J.transpose() * F;
        for (;;) {
            Eigen::MatrixXd damped = JtJ;
            damped.diagonal().array() += lambda;
            const Eigen::VectorXd dx = damped.ldlt().solve(-g);
            Packed q = p;
            q.x += dx;
            Eigen::VectorXd Fn;
            try {
                Fn = all_pitot(q.unpack());
            } catch (const geometry_error&) {
                // step collapsed a line pair; damp harder, but stop once
                // damping alone cannot produce an evaluable trial
                lambda *= 10.0;
                if (lambda > 1e16) {
                    stuck = true;
                    break;
                }
                continue;
            }
            if (Fn.squaredNorm() < F.squaredNorm() || lambda > 1e8) {
                p = q;
                F = Fn;
                lambda = std::max(lambda * 0.3, 1e-12);
                break;
            }
            lambda *= 10.0;
        }
        ++it;
    }

    SolveResult out;
    out.grid = p.unpack();
    out.max_pitot = F.cwiseAbs().maxCoeff();
    out.iterations = it;
    out.converged = out.max_pitot <= tol;
    return out;
}

}  // namespace confocal::icnet
