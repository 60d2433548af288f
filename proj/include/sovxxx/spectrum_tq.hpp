#pragma once

#include "sov_basis.hpp"

#include <optional>

namespace sovxxx {

// A_{s zbar+, s zbar-}(lambda), s = +-1
inline cplx a_func(cplx lambda, const ModelParams& m, const GaugedBoundaryParams& g, int sign) {
    if (std::abs(lambda) == 0.0) throw PoleError("a_func: lambda = 0");
    cplx e = m.eta, zp = static_cast<double>(sign) * g.zetabar_p, zm = static_cast<double>(sign) * g.zetabar_m;
    return static_cast<double>(sign_pow(m.n_sites)) * (2.0 * lambda + e) / (2.0 * lambda) *
           (lambda - e / 2.0 + zp) * (lambda - e / 2.0 + zm) / (zp * zm) * a_of(lambda, m) * d_of(-lambda, m);
}

inline cplx leading_t_coefficient(const GaugedBoundaryParams& g) {
    return (2.0 + g.bbar_m * g.cbar_p) / (g.zetabar_p * g.zetabar_m);
}

// Deterministic off-node sample points for functional identities.
inline std::vector<cplx> sample_points(int count, cplx eta, double phase = 0.0) {
    std::vector<cplx> out;
    double r = std::abs(eta);
    for (int j = 0; j < count; ++j) {
        double ang = 2.0 * std::numbers::pi * (j + 0.41) / count + phase;
        out.push_back(std::polar(r * (0.55 + 0.35 * ((j * 7) % 5) / 4.0), ang));
    }
    return out;
}

struct Eigenpair {
    std::vector<cplx> t_values_at_xi;
    EvenPoly t_poly;
    Vec right_vec;
    RowVec left_vec;
};

inline std::vector<Eigenpair> diagonalize_transfer(const ModelParams& m, const GaugedBoundaryParams& g,
                                                   cplx lambda0, double gap_tol = 1e-9) {
    validate_sov_inputs(m, g);
    Mat t0 = gauged_transfer(lambda0, m, g);
    Eigen::ComplexEigenSolver<Mat> es(t0);
    if (es.info() != Eigen::Success) throw InconsistencyError("diagonalize_transfer: eigensolver failed");
    const Vec& ev = es.eigenvalues();
    double scale = ev.cwiseAbs().maxCoeff();
    for (int i = 0; i < ev.size(); ++i)
        for (int j = i + 1; j < ev.size(); ++j)
            if (std::abs(ev(i) - ev(j)) < gap_tol * (1.0 + scale))
                throw GenericityError("diagonalize_transfer: near-degenerate spectrum, resample parameters");
    Mat v = es.eigenvectors();
    Mat vinv = v.partialPivLu().inverse();
    auto coeffs = interpolate_even<Mat>([&](cplx l) { return gauged_transfer(l, m, g); }, m.n_sites + 1,
                                        2.0 * std::abs(m.eta));
    std::vector<Eigenpair> out;
    for (int i = 0; i < ev.size(); ++i) {
        Eigenpair p;
        p.right_vec = v.col(i);
        p.left_vec = vinv.row(i);
        std::vector<cplx> c;
        for (const auto& tk : coeffs) c.push_back((p.left_vec * tk * p.right_vec)(0, 0));
        p.t_poly = EvenPoly(c);
        for (auto x : m.xi) p.t_values_at_xi.push_back(p.t_poly(x));
        out.push_back(std::move(p));
    }
    return out;
}

// Interpolation form of t from its values at xi_1..xi_N.
inline cplx t_from_values_at(cplx lambda, const ModelParams& m, const GaugedBoundaryParams& g,
                             const std::vector<cplx>& t_at_xi) {
    if (static_cast<int>(t_at_xi.size()) != m.n_sites) throw InvalidInput("t_from_values: need N values");
    cplx l2 = lambda * lambda, e2 = m.eta * m.eta / 4.0;
    cplx lead = leading_t_coefficient(g) * (l2 - e2), mid = 2.0 * static_cast<double>(sign_pow(m.n_sites)) * qdet_bulk(0.0, m);
    for (auto x : m.xi) {
        lead *= l2 - x * x;
        mid *= (l2 - x * x) / (e2 - x * x);
    }
    cplx sum(0.0);
    for (int a = 0; a < m.n_sites; ++a) {
        cplx xa = m.xi[a];
        cplx term = (4.0 * l2 - m.eta * m.eta) / (4.0 * xa * xa - m.eta * m.eta) * t_at_xi[a];
        for (int b = 0; b < m.n_sites; ++b)
            if (b != a) term *= (l2 - m.xi[b] * m.xi[b]) / (xa * xa - m.xi[b] * m.xi[b]);
        sum += term;
    }
    return lead + mid + sum;
}

inline EvenPoly t_from_values(const ModelParams& m, const GaugedBoundaryParams& g, const std::vector<cplx>& t_at_xi) {
    auto c = interpolate_even<cplx>([&](cplx l) { return t_from_values_at(l, m, g, t_at_xi); }, m.n_sites + 1,
                                    2.0 * std::abs(m.eta));
    return EvenPoly(c);
}

// max_n scaled |t(x0) t(x1) - A(x0) A(-x1)|
inline double check_discrete_system(const EvenPoly& t, const ModelParams& m, const GaugedBoundaryParams& g) {
    double worst = 0.0;
    for (int n = 0; n < m.n_sites; ++n) {
        cplx x0 = shifted_xi(m, n, 0), x1 = shifted_xi(m, n, 1);
        worst = std::max(worst, scaled_residual(t(x0) * t(x1), a_func(x0, m, g, 1) * a_func(-x1, m, g, 1)));
    }
    return worst;
}

enum class TQVariant { Inhomogeneous, HomogeneousQ, HomogeneousP };

struct TQSolution {
    EvenPoly q_poly;
    TQVariant variant = TQVariant::Inhomogeneous;
    int degree = 0;
    double residual = 0.0;  // functional-equation residual
    std::vector<cplx> roots_sq;
};

// F(lambda) = (bbar cbar / zbar- zbar+)(lambda^2 - eta^2/4) prod_{b,h}(lambda^2 - xi_b^(h)^2)
inline cplx f_inhom(cplx lambda, const ModelParams& m, const GaugedBoundaryParams& g) {
    cplx l2 = lambda * lambda;
    cplx r = g.bbar_m * g.cbar_p / (g.zetabar_m * g.zetabar_p) * (l2 - m.eta * m.eta / 4.0);
    for (int n = 0; n < m.n_sites; ++n)
        for (int h = 0; h < 2; ++h) {
            cplx x = shifted_xi(m, n, h);
            r *= l2 - x * x;
        }
    return r;
}

// Residual of t Q = A_s(l) Q(l - eta) + A_s(-l) Q(l + eta) [+ F].
inline double verify_tq(const EvenPoly& t, const EvenPoly& q, const ModelParams& m, const GaugedBoundaryParams& g,
                        int sign, bool with_inhomogeneity) {
    double worst = 0.0;
    for (auto l : sample_points(2 * m.n_sites + 6, m.eta, 0.2)) {
        cplx lhs = t(l) * q(l);
        cplx r1 = a_func(l, m, g, sign) * q(l - m.eta);
        cplx r2 = a_func(-l, m, g, sign) * q(l + m.eta);
        cplx r3 = with_inhomogeneity ? f_inhom(l, m, g) : cplx(0.0);
        double scale = 1.0 + std::max({std::abs(lhs), std::abs(r1), std::abs(r2), std::abs(r3)});
        worst = std::max(worst, std::abs(lhs - r1 - r2 - r3) / scale);
    }
    return worst;
}

// Monic Q of degree q solving Q(x1_n) - r_n Q(x0_n) = 0, r_n = t(x0_n)/A_s(x0_n).
inline TQSolution q_from_t(const EvenPoly& t, const ModelParams& m, const GaugedBoundaryParams& g, int sign,
                           int degree, bool with_inhomogeneity) {
    int n_sites = m.n_sites;
    if (degree < 0 || degree > n_sites) throw InvalidInput("q_from_t: degree out of range");
    Mat rows(n_sites, degree);
    Vec rhs(n_sites);
    for (int n = 0; n < n_sites; ++n) {
        cplx x0 = shifted_xi(m, n, 0), x1 = shifted_xi(m, n, 1);
        cplx a0 = a_func(x0, m, g, sign);
        if (std::abs(a0) < 1e-300) throw InconsistencyError("q_from_t: A(xi^(0)) vanishes");
        cplx r = t(x0) / a0;
        for (int k = 0; k < degree; ++k) rows(n, k) = std::pow(x1, 2 * k) - r * std::pow(x0, 2 * k);
        rhs(n) = -(std::pow(x1, 2 * degree) - r * std::pow(x0, 2 * degree));
    }
    std::vector<cplx> c(degree + 1, cplx(0.0));
    c[degree] = 1.0;
    if (degree > 0) {
        Eigen::VectorXd scale = rows.colwise().norm().transpose();
        for (int k = 0; k < degree; ++k)
            if (scale(k) == 0.0) scale(k) = 1.0;
        Mat scaled = rows * scale.cwiseInverse().asDiagonal();
        Vec sol = scaled.completeOrthogonalDecomposition().solve(rhs);
        for (int k = 0; k < degree; ++k) c[k] = sol(k) / scale(k);
    }
    TQSolution s;
    s.q_poly = EvenPoly(c);
    s.degree = degree;
    s.variant = with_inhomogeneity ? TQVariant::Inhomogeneous
                                   : (sign > 0 ? TQVariant::HomogeneousQ : TQVariant::HomogeneousP);
    s.residual = verify_tq(t, s.q_poly, m, g, sign, with_inhomogeneity);
    s.roots_sq = s.q_poly.roots_sq();
    return s;
}

// Inhomogeneous case: degree N. Homogeneous case (cbar_+ = 0): lowest degree passing tol.
inline std::optional<TQSolution> solve_tq(const EvenPoly& t, const ModelParams& m, const GaugedBoundaryParams& g,
                                          int sign, double tol) {
    bool inhom = std::abs(g.cbar_p) != 0.0;
    if (inhom) {
        auto s = q_from_t(t, m, g, sign, m.n_sites, true);
        if (s.residual < tol) return s;
        return std::nullopt;
    }
    for (int q = 0; q <= m.n_sites; ++q) {
        auto s = q_from_t(t, m, g, sign, q, false);
        if (s.residual < tol) return s;
    }
    return std::nullopt;
}

inline cplx wronskian(const EvenPoly& q, const EvenPoly& p, const GaugedBoundaryParams& g, cplx eta, cplx lambda) {
    cplx s = lambda - eta / 2.0;
    return (s + g.zetabar_p) * (s + g.zetabar_m) * q(lambda - eta) * p(lambda) -
           (s - g.zetabar_p) * (s - g.zetabar_m) * q(lambda) * p(lambda - eta);
}

struct WronskianCheck {
    double residual_a_minus;  // reading a(-lambda) d(lambda)
    double residual_a_plus;   // reading a(lambda) d(-lambda)
    bool degrees_sum_to_n;
    std::string passing_reading() const {
        return residual_a_minus <= residual_a_plus ? "a(-lambda)d(lambda)" : "a(lambda)d(-lambda)";
    }
    double residual() const { return std::min(residual_a_minus, residual_a_plus); }
};

inline WronskianCheck wronskian_check(const EvenPoly& q, const EvenPoly& p, const ModelParams& m,
                                      const GaugedBoundaryParams& g) {
    WronskianCheck w{0.0, 0.0, q.degree() + p.degree() == m.n_sites};
    cplx cst = 2.0 * static_cast<double>(sign_pow(m.n_sites)) *
               (g.zetabar_p + g.zetabar_m + static_cast<double>(p.degree() - q.degree()) * m.eta);
    for (auto l : sample_points(2 * m.n_sites + 6, m.eta, 0.5)) {
        cplx lhs = wronskian(q, p, g, m.eta, l);
        cplx ra = cst * (l - m.eta / 2.0) * a_of(-l, m) * d_of(l, m);
        cplx rb = cst * (l - m.eta / 2.0) * a_of(l, m) * d_of(-l, m);
        w.residual_a_minus = std::max(w.residual_a_minus, scaled_residual(lhs, ra));
        w.residual_a_plus = std::max(w.residual_a_plus, scaled_residual(lhs, rb));
    }
    return w;
}

// t from the pair (Q, P) of the homogeneous equations.
inline cplx t_from_qp(const EvenPoly& q, const EvenPoly& p, const ModelParams& m, const GaugedBoundaryParams& g,
                      cplx lambda) {
    cplx zp = g.zetabar_p, zm = g.zetabar_m, e = m.eta;
    cplx c = zp + zm + static_cast<double>(p.degree() - q.degree()) * e;
    if (std::abs(c) < 1e-14) throw InconsistencyError("t_from_qp: vanishing prefactor");
    cplx sum(0.0);
    for (int eps : {1, -1}) {
        cplx el = static_cast<double>(eps) * lambda;
        sum += static_cast<double>(eps) * (el - e / 2.0 + zp) * (el + e / 2.0 + zp) * (el - e / 2.0 + zm) *
               (el + e / 2.0 + zm) * q(el - e) * p(el + e);
    }
    return sum / (2.0 * lambda * zp * zm * c);
}

struct EigenstateForms {
    Vec right;
    RowVec left;          // (f g)^h weights
    RowVec left_flipped;  // (-g)^h weights with the flipped Vandermonde
};

inline EigenstateForms eigenstate_from_q(const EvenPoly& q, const ModelParams& m, const GaugedBoundaryParams& g,
                                         const SovBasis& basis) {
    int dim = m.dim();
    EigenstateForms out{Vec::Zero(dim), RowVec::Zero(dim), RowVec::Zero(dim)};
    std::vector<cplx> fg, mg;
    for (int n = 0; n < m.n_sites; ++n) {
        fg.push_back(f_factor(m, n) * g_factor(m, g, n));
        mg.push_back(-g_factor(m, g, n));
    }
    cplx flip_pref = vandermonde_sq(shifted_xi_uniform(m, 0)) / vandermonde_sq(shifted_xi_uniform(m, 1));
    unsigned full = static_cast<unsigned>(dim) - 1u;
    for (unsigned mask = 0; mask < static_cast<unsigned>(dim); ++mask) {
        cplx qprod(1.0), wl(1.0), wf(1.0);
        for (int n = 0; n < m.n_sites; ++n) {
            int h = h_bit(mask, n);
            qprod *= q(shifted_xi(m, n, h));
            if (h) {
                wl *= fg[n];
                wf *= mg[n];
            }
        }
        cplx v = vandermonde_sq(shifted_xi_all(m, mask));
        out.right += qprod * v * basis.right[mask];
        out.left += wl * qprod * v * basis.left[mask];
        out.left_flipped += wf * qprod * flip_pref * vandermonde_sq(shifted_xi_all(m, full ^ mask)) * basis.left[mask];
    }
    return out;
}

// Max relative residual of T(l) psi = t(l) psi (right) and psi T = t psi (left).
inline double eigenstate_residual(const EvenPoly& t, const Vec& right, const RowVec& left, const ModelParams& m,
                                  const GaugedBoundaryParams& g) {
    double worst = 0.0;
    for (auto l : sample_points(m.n_sites + 3, m.eta, 1.1)) {
        Mat tm = gauged_transfer(l, m, g);
        cplx tv = t(l);
        double scale_r = (tm.norm() + std::abs(tv)) * right.norm();
        double scale_l = (tm.norm() + std::abs(tv)) * left.norm();
        worst = std::max(worst, (tm * right - tv * right).norm() / scale_r);
        worst = std::max(worst, (left * tm - tv * left).norm() / scale_l);
    }
    return worst;
}

}  // namespace sovxxx
