#pragma once

#include "gauge.hpp"

namespace sovxxx {

// h in {0,1}^N packed as a bit mask: h_n = (mask >> n) & 1, n 0-based.
inline int h_bit(unsigned mask, int n) { return static_cast<int>((mask >> n) & 1u); }

inline cplx shifted_xi(const ModelParams& m, int n, int h) {
    return m.xi[n] + m.eta / 2.0 - static_cast<double>(h) * m.eta;
}

inline std::vector<cplx> shifted_xi_all(const ModelParams& m, unsigned mask) {
    std::vector<cplx> out;
    for (int n = 0; n < m.n_sites; ++n) out.push_back(shifted_xi(m, n, h_bit(mask, n)));
    return out;
}

inline std::vector<cplx> shifted_xi_uniform(const ModelParams& m, int h) {
    return shifted_xi_all(m, h ? (1u << m.n_sites) - 1u : 0u);
}

// prod_{j<k} (x_k^2 - x_j^2)
inline cplx vandermonde_sq(const std::vector<cplx>& xs) {
    cplx r(1.0);
    for (std::size_t j = 0; j < xs.size(); ++j)
        for (std::size_t k = j + 1; k < xs.size(); ++k) r *= xs[k] * xs[k] - xs[j] * xs[j];
    return r;
}

// A_-(lambda) = (-1)^N abar_-(lambda) a(lambda) d(-lambda)
inline cplx a_minus_scalar(cplx lambda, const ModelParams& m, const GaugedBoundaryParams& g) {
    return static_cast<double>(sign_pow(m.n_sites)) * abar_minus(lambda, g, m.eta) * a_of(lambda, m) *
           d_of(-lambda, m);
}

inline cplx norm_factor(const ModelParams& m, const GaugedBoundaryParams& g) {
    cplx r = vandermonde_sq(m.xi) * vandermonde_sq(shifted_xi_uniform(m, 0)) /
             vandermonde_sq(shifted_xi_uniform(m, 1));
    for (auto x : m.xi) {
        if (std::abs(x - g.zetabar_m) < 1e-14) throw PoleError("norm_factor: xi_n equals zetabar_-");
        r *= x * g.bbar_m / (x - g.zetabar_m);
    }
    return r;
}

// Second closed form with the gauged K_- entries at eta/2 - xi_n.
inline cplx norm_factor_entries(const ModelParams& m, const GaugedBoundaryParams& g) {
    cplx r = vandermonde_sq(m.xi) * vandermonde_sq(shifted_xi_uniform(m, 0)) /
             vandermonde_sq(shifted_xi_uniform(m, 1));
    for (auto x : m.xi) {
        cplx l = m.eta / 2.0 - x;
        r *= bbar_minus(l, g, m.eta) / abar_minus(l, g, m.eta);
    }
    return r;
}

struct SovBasis {
    int n_sites = 0;
    std::vector<RowVec> left;  // indexed by mask
    std::vector<Vec> right;
    cplx norm_factor{1.0};
    // Normalized operators used in the construction, kept for the N_xi matrix-element form.
    std::vector<Mat> left_raisers;
    std::vector<Mat> right_raisers;

    int size() const { return static_cast<int>(left.size()); }
};

inline void validate_sov_inputs(const ModelParams& m, const GaugedBoundaryParams& g) {
    m.validate_generic();
    g.validate();
    if (!g.sov_applicable()) throw InvalidInput("SoV requires bbar_- != 0");
    double delta = m.default_delta();
    for (int n = 0; n < m.n_sites; ++n) {
        if (std::abs(2.0 * m.xi[n] - m.eta) < delta) throw GenericityError("k_n pole: 2 xi_n = eta");
        if (std::abs(m.xi[n] - g.zetabar_m) < delta)
            throw GenericityError("xi_n too close to zetabar_-");
    }
}

inline SovBasis build_sov_basis(const ModelParams& m, const GaugedBoundaryParams& g) {
    validate_sov_inputs(m, g);
    int n_sites = m.n_sites, dim = m.dim();
    SovBasis basis;
    basis.n_sites = n_sites;
    for (int n = 0; n < n_sites; ++n) {
        cplx l = m.eta / 2.0 - m.xi[n];
        cplx am = a_minus_scalar(l, m, g);
        if (std::abs(am) < 1e-14) throw GenericityError("A_-(eta/2 - xi_n) vanishes");
        basis.left_raisers.push_back(gauged_boundary_minus(l, m, g).A() / am);
        cplx kn = (2.0 * m.xi[n] + m.eta) / (2.0 * m.xi[n] - m.eta);
        basis.right_raisers.push_back(gauged_boundary_minus(m.xi[n] + m.eta / 2.0, m, g).D() / (kn * am));
    }
    RowVec all_up = RowVec::Zero(dim);
    all_up(0) = 1.0;
    Vec all_down = Vec::Zero(dim);
    all_down(dim - 1) = 1.0;
    for (unsigned mask = 0; mask < static_cast<unsigned>(dim); ++mask) {
        RowVec l = all_up;
        Vec r = all_down;
        for (int n = 0; n < n_sites; ++n) {
            if (h_bit(mask, n) == 0)
                l = l * basis.left_raisers[n];
            else
                r = basis.right_raisers[n] * r;
        }
        basis.left.push_back(l);
        basis.right.push_back(r);
    }
    basis.norm_factor = norm_factor(m, g);
    return basis;
}

// V^(xi^(0)) <0| prod_n Abar_-(eta/2 - xi_n)/A_-(eta/2 - xi_n) |0_>
inline cplx norm_factor_matrix_element(const ModelParams& m, const SovBasis& b) {
    return vandermonde_sq(shifted_xi_uniform(m, 0)) * b.left[0](b.left[0].size() - 1);
}

// B-bar_-(lambda) eigenvalue on <h| and |h>.
inline cplx bbar_eigenvalue(cplx lambda, unsigned mask, const ModelParams& m, const GaugedBoundaryParams& g) {
    cplx r = static_cast<double>(sign_pow(m.n_sites)) * bbar_minus(lambda, g, m.eta);
    for (auto x : shifted_xi_all(m, mask)) r *= (lambda - x) * (-lambda - x);
    return r;
}

// Max relative residual of the B-bar_- eigen-equations over all h and given lambdas.
inline double bbar_eigen_residual(const SovBasis& b, const ModelParams& m, const GaugedBoundaryParams& g,
                                  const std::vector<cplx>& lambdas) {
    double worst = 0.0;
    for (auto l : lambdas) {
        Mat op = gauged_boundary_minus(l, m, g).B();
        for (unsigned mask = 0; mask < static_cast<unsigned>(b.size()); ++mask) {
            cplx ev = bbar_eigenvalue(l, mask, m, g);
            double sr = (op * b.right[mask] - ev * b.right[mask]).norm() /
                        (1.0 + std::abs(ev) * b.right[mask].norm());
            double sl = (b.left[mask] * op - ev * b.left[mask]).norm() /
                        (1.0 + std::abs(ev) * b.left[mask].norm());
            worst = std::max({worst, sr, sl});
        }
    }
    return worst;
}

// Max scaled deviation of <h'|h> from delta_{h,h'} N / V^(xi^(h)).
inline double pairing_residual(const SovBasis& b, const ModelParams& m) {
    double worst = 0.0;
    for (unsigned hp = 0; hp < static_cast<unsigned>(b.size()); ++hp)
        for (unsigned h = 0; h < static_cast<unsigned>(b.size()); ++h) {
            cplx got = (b.left[hp] * b.right[h])(0, 0);
            cplx want = (h == hp) ? b.norm_factor / vandermonde_sq(shifted_xi_all(m, h)) : cplx(0.0);
            double scale = b.left[hp].norm() * b.right[h].norm();
            worst = std::max(worst, std::abs(got - want) / (scale + std::abs(want)));
        }
    return worst;
}

inline double condition_number(const Mat& a) {
    Eigen::JacobiSVD<Mat> svd(a);
    auto s = svd.singularValues();
    return s(0) / s(s.size() - 1);
}

inline Mat right_basis_matrix(const SovBasis& b) {
    Mat out(b.size(), b.size());
    for (int i = 0; i < b.size(); ++i) out.col(i) = b.right[i];
    return out;
}

inline Mat left_basis_matrix(const SovBasis& b) {
    Mat out(b.size(), b.size());
    for (int i = 0; i < b.size(); ++i) out.row(i) = b.left[i];
    return out;
}

namespace detail {
// Lagrange weight of the a-th node in the Abar/Dbar interpolation.
inline cplx action_weight(cplx lambda, int a, int eps, const std::vector<cplx>& x, cplx eta) {
    cplx xa = x[a];
    cplx w = (2.0 * lambda - eta) * (lambda + static_cast<double>(eps) * xa) /
             (2.0 * xa * (2.0 * xa - static_cast<double>(eps) * eta));
    for (std::size_t b = 0; b < x.size(); ++b)
        if (static_cast<int>(b) != a) w *= (lambda * lambda - x[b] * x[b]) / (xa * xa - x[b] * x[b]);
    return w;
}
}  // namespace detail

// Checks the interpolated action of Abar_-(lambda) on every <h| and of
// Dbar_-(lambda) on every |h>; returns the max relative residual.
inline double action_a_minus_check(const ModelParams& m, const GaugedBoundaryParams& g, const SovBasis& b,
                                   cplx lambda) {
    auto u = gauged_boundary_minus(lambda, m, g);
    Mat abar = u.A(), dbar = u.D();
    cplx det0 = static_cast<double>(sign_pow(m.n_sites)) * qdet_bulk(0.0, m);
    double worst = 0.0;
    int n_sites = m.n_sites;
    for (unsigned mask = 0; mask < static_cast<unsigned>(b.size()); ++mask) {
        auto x = shifted_xi_all(m, mask);
        cplx prod_eta = 1.0, prod_l = 1.0;
        for (auto xb : x) {
            prod_eta *= (lambda * lambda - xb * xb) / (m.eta * m.eta / 4.0 - xb * xb);
            prod_l *= lambda * lambda - xb * xb;
        }
        cplx diag_left = det0 * prod_eta + (2.0 * lambda - m.eta) / (2.0 * g.zetabar_m) * prod_l;
        cplx diag_right = det0 * prod_eta - (2.0 * lambda - m.eta) / (2.0 * g.zetabar_m) * prod_l;
        RowVec want_l = diag_left * b.left[mask];
        Vec want_r = diag_right * b.right[mask];
        for (int a = 0; a < n_sites; ++a)
            for (int eps : {1, -1}) {
                int ha = h_bit(mask, a) + eps;
                if (ha < 0 || ha > 1) continue;
                unsigned shifted = mask ^ (1u << a);
                cplx w = detail::action_weight(lambda, a, eps, x, m.eta);
                want_l += w * a_minus_scalar(static_cast<double>(eps) * x[a], m, g) * b.left[shifted];
                cplx ka = (2.0 * m.xi[a] + m.eta) / (2.0 * m.xi[a] - m.eta);
                cplx x_other = shifted_xi(m, a, 1 - h_bit(mask, a));
                want_r += w * std::pow(ka, eps) * a_minus_scalar(-static_cast<double>(eps) * x_other, m, g) *
                          b.right[shifted];
            }
        RowVec got_l = b.left[mask] * abar;
        Vec got_r = dbar * b.right[mask];
        worst = std::max(worst, (got_l - want_l).norm() / (1.0 + got_l.norm()));
        worst = std::max(worst, (got_r - want_r).norm() / (1.0 + got_r.norm()));
    }
    return worst;
}

// f_n and g_n factors (n 0-based).
inline cplx f_factor(const ModelParams& m, int n) {
    cplx r(-1.0);
    cplx x = m.xi[n], e = m.eta;
    for (int a = 0; a < m.n_sites; ++a) {
        if (a == n) continue;
        cplx y = m.xi[a];
        cplx den = (x - y - e) * (x + y - e);
        if (std::abs(den) < 1e-300) throw GenericityError("f_factor: vanishing denominator");
        r *= (x - y + e) * (x + y + e) / den;
    }
    return r;
}

// Same factor through the shifted inhomogeneities.
inline cplx f_factor_shifted(const ModelParams& m, int n) {
    cplx r(-1.0);
    cplx x0 = shifted_xi(m, n, 0), x1 = shifted_xi(m, n, 1);
    for (int a = 0; a < m.n_sites; ++a) {
        if (a == n) continue;
        cplx y0 = shifted_xi(m, a, 0), y1 = shifted_xi(m, a, 1);
        r *= (x0 * x0 - y1 * y1) * (x0 * x0 - y0 * y0) / ((x1 * x1 - y1 * y1) * (x1 * x1 - y0 * y0));
    }
    return r;
}

inline cplx g_factor(const ModelParams& m, const GaugedBoundaryParams& g, int n) {
    cplx x = m.xi[n];
    cplx den = (x - g.zetabar_p) * (x - g.zetabar_m);
    if (std::abs(den) < 1e-14) throw PoleError("g_factor: xi_n equals a zetabar");
    return (x + g.zetabar_p) * (x + g.zetabar_m) / den;
}

}  // namespace sovxxx
