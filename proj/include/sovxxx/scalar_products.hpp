#pragma once

#include "separate_states.hpp"

#include <functional>

namespace sovxxx {

using ScalarFn = std::function<cplx(cplx)>;

enum class PairingVariant { Plain, Mixed, DoubleUnder };

inline double relative_residual(cplx a, cplx b) {
    double s = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / s;
}

// Gamma(x + m) / Gamma(x) as a finite product.
inline cplx gamma_ratio(cplx x, int m) {
    cplx r(1.0);
    if (m >= 0) {
        for (int j = 0; j < m; ++j) r *= x + static_cast<double>(j);
        return r;
    }
    for (int j = 1; j <= -m; ++j) {
        cplx f = x - static_cast<double>(j);
        if (std::abs(f) < 1e-14) throw PoleError("gamma_ratio: pole");
        r *= f;
    }
    return 1.0 / r;
}

inline cplx vandermonde_sq_reversed(const std::vector<cplx>& xs) {
    return vandermonde_sq(std::vector<cplx>(xs.rbegin(), xs.rend()));
}

inline std::vector<cplx> shifted(const std::vector<cplx>& xs, cplx s) {
    std::vector<cplx> out(xs);
    for (auto& x : out) x += s;
    return out;
}

// Newton basis p_j(z) = prod_{k<j}(z - c_k); a unitriangular change of the monomial basis.
inline cplx newton_basis(cplx z, int j, const std::vector<cplx>& centers) {
    cplx r(1.0);
    for (int k = 0; k < j; ++k) r *= z - centers[k];
    return r;
}

// det[f(x_i)(x_i + eta/2)^{2j} + f(-x_i)(x_i - eta/2)^{2j}] / det[x_i^{2j}] as a determinant, with
// the powers replaced by the Newton basis on the x_i^2 so that the denominator is triangular.
inline cplx a_functional_det(const std::vector<cplx>& xs, const ScalarFn& f, cplx eta) {
    int n = static_cast<int>(xs.size());
    if (n == 0) return 1.0;
    std::vector<cplx> centers;
    for (auto x : xs) centers.push_back(x * x);
    cplx v = vandermonde_sq(xs);
    if (std::abs(v) < 1e-300) throw InvalidInput("a_functional: degenerate nodes");
    Mat num(n, n);
    for (int i = 0; i < n; ++i) {
        cplx fp = f(xs[i]), fm = f(-xs[i]);
        cplx zp = std::pow(xs[i] + eta / 2.0, 2), zm = std::pow(xs[i] - eta / 2.0, 2);
        for (int j = 0; j < n; ++j) num(i, j) = fp * newton_basis(zp, j, centers) + fm * newton_basis(zm, j, centers);
    }
    return det_or_one(num) / v;
}

// Same quantity expanded by multilinearity over the rows:
// sum_{s in {+-1}^L} prod_i f(s_i x_i) V(x + s eta/2) / V(x).
// If magnitude is given it receives the sum of the absolute values of the terms.
inline cplx a_functional_sum(const std::vector<cplx>& xs, const ScalarFn& f, cplx eta, double* magnitude = nullptr) {
    int n = static_cast<int>(xs.size());
    if (magnitude) *magnitude = 1.0;
    if (n == 0) return 1.0;
    if (n > 20) throw InvalidInput("a_functional_sum: too many nodes");
    std::vector<cplx> fv[2];
    for (auto x : xs) {
        fv[0].push_back(f(x));
        fv[1].push_back(f(-x));
    }
    // ratio[j][k][sj][sk] = ((x_k + s_k eta/2)^2 - (x_j + s_j eta/2)^2) / (x_k^2 - x_j^2)
    std::vector<cplx> ratio(static_cast<std::size_t>(n * n * 4));
    auto at = [&](int j, int k, int sj, int sk) -> cplx& { return ratio[((j * n + k) * 2 + sj) * 2 + sk]; };
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            cplx den = xs[k] * xs[k] - xs[j] * xs[j];
            if (std::abs(den) < 1e-300) throw InvalidInput("a_functional: degenerate nodes");
            for (int sj = 0; sj < 2; ++sj)
                for (int sk = 0; sk < 2; ++sk) {
                    cplx yj = xs[j] + (sj ? -eta : eta) / 2.0, yk = xs[k] + (sk ? -eta : eta) / 2.0;
                    at(j, k, sj, sk) = (yk * yk - yj * yj) / den;
                }
        }
    cplx total(0.0);
    double mag = 0.0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        cplx term(1.0);
        for (int j = 0; j < n; ++j) {
            int sj = (mask >> j) & 1u;
            term *= fv[sj][j];
            for (int k = j + 1; k < n; ++k) term *= at(j, k, sj, (mask >> k) & 1u);
        }
        total += term;
        mag += std::abs(term);
    }
    if (magnitude) *magnitude = mag;
    return total;
}

inline cplx a_functional(const std::vector<cplx>& xs, const ScalarFn& f, cplx eta, double* magnitude = nullptr) {
    if (xs.size() <= 14) return a_functional_sum(xs, f, eta, magnitude);
    cplx r = a_functional_det(xs, f, eta);
    if (magnitude) *magnitude = std::abs(r);
    return r;
}

// |lhs - rhs| relative to the larger side or to the terms that were summed to produce them.
inline double cancellation_residual(cplx lhs, cplx rhs, double terms) {
    return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), terms, 1e-300});
}

// lambda -> (lambda + xp)(lambda + xm)/lambda prod_m (lambda^2 - z_m^2)/((lambda + eta/2)^2 - z_m^2)
inline ScalarFn f_kernel(cplx xp, cplx xm, std::vector<cplx> zs, cplx eta) {
    return [=](cplx l) {
        if (std::abs(l) == 0.0) throw PoleError("f_kernel: lambda = 0");
        cplx r = (l + xp) * (l + xm) / l;
        for (auto z : zs) {
            cplx den = (l + eta / 2.0) * (l + eta / 2.0) - z * z;
            if (std::abs(den) == 0.0) throw PoleError("f_kernel: pole");
            r *= (l * l - z * z) / den;
        }
        return r;
    };
}

inline cplx izergin_like(cplx xp, cplx xm, const std::vector<cplx>& xs, const std::vector<cplx>& zs, cplx eta) {
    int n = static_cast<int>(xs.size());
    if (static_cast<int>(zs.size()) != n) throw InvalidInput("izergin_like: set sizes differ");
    cplx pre(1.0);
    for (auto x : xs)
        for (auto z : zs) pre *= x * x - z * z;
    cplx den(1.0);
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) den *= (xs[j] * xs[j] - xs[k] * xs[k]) * (zs[k] * zs[k] - zs[j] * zs[j]);
    if (std::abs(den) < 1e-300) throw InvalidInput("izergin_like: coincident nodes");
    Mat ker(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            cplx x = xs[i], z = zs[k], s(0.0);
            for (int eps : {1, -1}) {
                double e = eps;
                s += e * (x + e * xp) * (x + e * xm) / (x * ((x + e * eta / 2.0) * (x + e * eta / 2.0) - z * z));
            }
            ker(i, k) = s;
        }
    return pre / den * det_or_one(ker);
}

// L x L matrix of the generalized Slavnov representation; L = |ys| >= M = |xs|.
inline Mat slavnov_matrix(const std::vector<cplx>& xs, const std::vector<cplx>& ys, const ScalarFn& f, cplx eta) {
    int mm = static_cast<int>(xs.size()), ll = static_cast<int>(ys.size());
    if (ll < mm) throw InvalidInput("slavnov_matrix: need |y| >= |x|");
    auto big_x = [&](cplx l) {
        cplx r(1.0);
        for (auto x : xs) r *= l * l - x * x;
        return r;
    };
    auto phi = [&](cplx l) { return (2.0 * l - eta) / (2.0 * l + eta) * big_x(l + eta) / big_x(l - eta); };
    std::vector<cplx> phi_x, f_x, f_mx;
    for (auto x : xs) {
        phi_x.push_back(phi(x));
        f_x.push_back(f(x));
        f_mx.push_back(f(-x));
    }
    std::vector<cplx> centers;
    for (auto y : ys) centers.push_back(y * y);
    Mat s(ll, ll);
    for (int i = 0; i < ll; ++i) {
        cplx y = ys[i];
        for (int k = 0; k < ll; ++k) {
            cplx v(0.0);
            for (int eps : {1, -1}) {
                double e = eps;
                cplx ye = y + e * eta / 2.0;
                cplx w = f(e * y) * big_x(y + e * eta);
                if (k < mm) {
                    cplx x = xs[k];
                    w *= f_mx[k] / (ye * ye - (x + eta / 2.0) * (x + eta / 2.0)) -
                         f_x[k] * phi_x[k] / (ye * ye - (x - eta / 2.0) * (x - eta / 2.0));
                } else {
                    w *= newton_basis(ye * ye, k - mm, centers);
                }
                v += w;
            }
            s(i, k) = v;
        }
    }
    return s;
}

inline cplx slavnov_like(const std::vector<cplx>& xs, const std::vector<cplx>& ys, const ScalarFn& f, cplx eta) {
    cplx pre = vandermonde_sq(shifted(xs, -eta / 2.0)) / vandermonde_sq(shifted(xs, eta / 2.0)) /
               (vandermonde_sq_reversed(xs) * vandermonde_sq(ys));
    return pre * det_or_one(slavnov_matrix(xs, ys, f, eta));
}

// Residual of A_x[f_{xp,xm,z}] = (-1)^M 2^{L-M} prod_j (xp+xm+j eta) A_z[f_{-xp+eta/2,-xm+eta/2,x}], M <= L.
inline double identity2_check(cplx xp, cplx xm, const std::vector<cplx>& xs, const std::vector<cplx>& zs, cplx eta) {
    int ll = static_cast<int>(xs.size()), mm = static_cast<int>(zs.size());
    if (mm > ll) throw InvalidInput("identity2_check: need |z| <= |x|");
    double m1 = 0.0, m2 = 0.0;
    cplx lhs = a_functional(xs, f_kernel(xp, xm, zs, eta), eta, &m1);
    cplx c = static_cast<double>(sign_pow(mm)) * std::pow(2.0, ll - mm);
    for (int j = 0; j < ll - mm; ++j) c *= xp + xm + static_cast<double>(j) * eta;
    cplx rhs = c * a_functional(zs, f_kernel(-xp + eta / 2.0, -xm + eta / 2.0, xs, eta), eta, &m2);
    return cancellation_residual(lhs, rhs, std::max(m1, std::abs(c) * m2));
}

// Worst pairwise residual among the four equal forms
// A_z[f_{xp,xm,x}], I_{xp,xm}(z,x), (-1)^L I_{eta/2-xp,eta/2-xm}(x,z), (-1)^L A_x[f_{eta/2-xp,eta/2-xm,z}].
inline double identity1_check(cplx xp, cplx xm, const std::vector<cplx>& xs, const std::vector<cplx>& zs, cplx eta) {
    int ll = static_cast<int>(xs.size());
    double sg = sign_pow(ll);
    cplx yp = -xp + eta / 2.0, ym = -xm + eta / 2.0;
    double m1 = 0.0, m2 = 0.0;
    std::vector<cplx> v{a_functional(zs, f_kernel(xp, xm, xs, eta), eta, &m1), izergin_like(xp, xm, zs, xs, eta),
                        sg * izergin_like(yp, ym, xs, zs, eta), sg * a_functional(xs, f_kernel(yp, ym, zs, eta), eta, &m2)};
    double worst = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i)
        worst = std::max(worst, cancellation_residual(v[0], v[i], std::max(m1, m2)));
    return worst;
}

// A_x[f_{xp,xm,z}] with |z| < |x|; vanishes when xp + xm = -j eta, 0 <= j < |x| - |z|.
inline cplx corollary_zero_value(cplx xp, int j, const std::vector<cplx>& xs, const std::vector<cplx>& zs, cplx eta,
                                 double* magnitude = nullptr) {
    if (zs.size() >= xs.size() || j < 0 || j >= static_cast<int>(xs.size() - zs.size()))
        throw InvalidInput("corollary_zero_value: need 0 <= j < |x| - |z|");
    return a_functional(xs, f_kernel(xp, -xp - static_cast<double>(j) * eta, zs, eta), eta, magnitude);
}

// Gamma-ratio form, valid for any sizes |x| = L, |z| = M.
inline double corollary_gamma_check(cplx xp, cplx xm, const std::vector<cplx>& xs, const std::vector<cplx>& zs,
                                    cplx eta) {
    int ll = static_cast<int>(xs.size()), mm = static_cast<int>(zs.size());
    double m1 = 0.0, m2 = 0.0;
    cplx lhs = a_functional(xs, f_kernel(xp, xm, zs, eta), eta, &m1);
    cplx c = static_cast<double>(sign_pow(mm)) * std::pow(2.0 * eta, ll - mm) * gamma_ratio((xp + xm) / eta, ll - mm);
    cplx rhs = c * a_functional(zs, f_kernel(-xp + eta / 2.0, -xm + eta / 2.0, xs, eta), eta, &m2);
    return cancellation_residual(lhs, rhs, std::max(m1, std::abs(c) * m2));
}

// A_{x u y}[f] against the Slavnov form S_{x,y}[f].
inline double identity3_check(const std::vector<cplx>& xs, const std::vector<cplx>& ys, const ScalarFn& f, cplx eta) {
    std::vector<cplx> all(xs);
    all.insert(all.end(), ys.begin(), ys.end());
    double mag = 0.0;
    cplx a = a_functional(all, f, eta, &mag);
    return cancellation_residual(a, slavnov_like(xs, ys, f, eta), mag);
}

// mu -> ((-mu - eta/2 + z1)(-mu - eta/2 + z2)/(-mu)) a(-mu) d(mu)
inline ScalarFn tilde_a_fn(const ModelParams& m, cplx z1, cplx z2) {
    return [m, z1, z2](cplx mu) {
        if (std::abs(mu) == 0.0) throw PoleError("tilde_a: mu = 0");
        cplx e2 = m.eta / 2.0;
        return (-mu - e2 + z1) * (-mu - e2 + z2) / (-mu) * a_of(-mu, m) * d_of(mu, m);
    };
}

// Ã_{s zbar+, s zbar-}(lambda)
inline cplx tilde_a(cplx lambda, const GaugedBoundaryParams& g, int sign, const ModelParams& m) {
    double s = sign;
    return tilde_a_fn(m, s * g.zetabar_p, s * g.zetabar_m)(lambda);
}

struct SovScalarProduct {
    cplx value;       // (f g)^h-type determinant
    cplx value_flip;  // flipped-Vandermonde determinant
    double internal_residual;
    double magnitude;       // Hadamard bound of |value|
    double magnitude_flip;  // Hadamard bound of |value_flip|
};

// SoV determinant forms of <alpha|beta>, <alpha_|beta>, <alpha_|beta_> for
// Bethe-normalized separate states.
inline SovScalarProduct sov_scalar_product_forms(const EvenPoly& alpha, const EvenPoly& beta, PairingVariant v,
                                                 const ModelParams& m, const GaugedBoundaryParams& g) {
    int n_sites = m.n_sites;
    std::vector<cplx> w1(n_sites), w2(n_sites);
    for (int i = 0; i < n_sites; ++i) {
        cplx f = f_factor(m, i), gn = g_factor(m, g, i);
        switch (v) {
            case PairingVariant::Plain: w1[i] = f * gn; w2[i] = -gn; break;
            case PairingVariant::Mixed: w1[i] = f; w2[i] = -1.0; break;
            case PairingVariant::DoubleUnder:
                if (std::abs(gn) < 1e-14) throw PoleError("g_n = 0 in double-under pairing");
                w1[i] = f / gn;
                w2[i] = -1.0 / gn;
                break;
        }
    }
    Mat m1(n_sites, n_sites), m2(n_sites, n_sites);
    for (int i = 0; i < n_sites; ++i) {
        cplx x0 = shifted_xi(m, i, 0), x1 = shifted_xi(m, i, 1);
        cplx c0 = alpha(x0) * beta(x0), c1 = alpha(x1) * beta(x1);
        for (int j = 0; j < n_sites; ++j) {
            m1(i, j) = c0 * std::pow(x0, 2 * j) + w1[i] * c1 * std::pow(x1, 2 * j);
            m2(i, j) = c0 * std::pow(x1, 2 * j) + w2[i] * c1 * std::pow(x0, 2 * j);
        }
    }
    SovScalarProduct out;
    out.value = det_or_one(m1) / norm_factor(m, g);
    cplx pref(1.0);
    for (auto x : m.xi) pref *= (x - g.zetabar_m) / (x * g.bbar_m);
    out.value_flip = pref * det_or_one(m2) / vandermonde_sq(m.xi);
    out.internal_residual = scaled_residual(out.value, out.value_flip);
    double rel = relative_residual(out.value, out.value_flip);
    out.internal_residual = std::min(out.internal_residual, rel);
    out.magnitude = m1.rowwise().norm().prod() / std::abs(norm_factor(m, g));
    out.magnitude_flip = std::abs(pref) * m2.rowwise().norm().prod() / std::abs(vandermonde_sq(m.xi));
    return out;
}

inline cplx sov_scalar_product(const EvenPoly& alpha, const EvenPoly& beta, PairingVariant v, const ModelParams& m,
                               const GaugedBoundaryParams& g, double tol = 1e-8) {
    auto r = sov_scalar_product_forms(alpha, beta, v, m, g);
    if (r.internal_residual > tol)
        throw InconsistencyError("sov_scalar_product: determinant forms disagree, residual " +
                                 std::to_string(r.internal_residual));
    return r.value;
}

struct OffShellResult {
    cplx a_form;
    cplx slavnov_form;
    bool vanishes_by_theorem = false;
};

namespace detail {
struct OffShellSetup {
    cplx prefactor;
    ScalarFn kernel;
};

inline OffShellSetup off_shell_setup(int n_total, PairingVariant v, const ModelParams& m,
                                     const GaugedBoundaryParams& g, cplx zbar) {
    int n_sites = m.n_sites;
    cplx e = m.eta, zp = g.zetabar_p, zm = g.zetabar_m;
    cplx pw = std::pow(2.0 * e, n_sites - n_total);
    cplx pre(1.0);
    switch (v) {
        case PairingVariant::Plain:
            for (auto x : m.xi) pre /= (zp - x) * g.bbar_m;
            pre *= pw * gamma_ratio((zp + zm) / e, n_sites - n_total);
            return {pre, tilde_a_fn(m, zp, zm)};
        case PairingVariant::DoubleUnder:
            for (auto x : m.xi) pre *= (x - zm) / ((-zp - x) * (x + zm) * g.bbar_m);
            pre *= pw * gamma_ratio(-(zp + zm) / e, n_sites - n_total);
            return {pre, tilde_a_fn(m, -zp, -zm)};
        case PairingVariant::Mixed: {
            for (auto x : m.xi) pre *= (x - zm) / ((zbar * zbar - x * x) * g.bbar_m);
            double fact = 1.0;
            for (int j = 2; j <= n_total - n_sites; ++j) fact *= j;
            pre *= static_cast<double>(sign_pow(n_total - n_sites)) * pw / fact;
            return {pre, tilde_a_fn(m, zbar, -zbar)};
        }
    }
    return {pre, tilde_a_fn(m, zp, zm)};
}
}  // namespace detail

// Off-shell A-functional and Slavnov forms; zbar is the free parameter of the mixed variant.
inline OffShellResult off_shell_sp(const std::vector<cplx>& alpha, const std::vector<cplx>& beta, PairingVariant v,
                                   const ModelParams& m, const GaugedBoundaryParams& g, cplx zbar = cplx(0.37, 0.21)) {
    int n_total = static_cast<int>(alpha.size() + beta.size());
    OffShellResult out{0.0, 0.0, false};
    if (v == PairingVariant::Mixed && n_total < m.n_sites) {
        out.vanishes_by_theorem = true;
        return out;
    }
    auto setup = detail::off_shell_setup(n_total, v, m, g, zbar);
    std::vector<cplx> nodes(alpha);
    nodes.insert(nodes.end(), beta.begin(), beta.end());
    out.a_form = setup.prefactor * a_functional(nodes, setup.kernel, m.eta);
    const auto& xs = alpha.size() <= beta.size() ? alpha : beta;
    const auto& ys = alpha.size() <= beta.size() ? beta : alpha;
    out.slavnov_form = setup.prefactor * slavnov_like(xs, ys, setup.kernel, m.eta);
    return out;
}

enum class OnShellSide { QSide, PSide };

// d t(beta)/d root_k for t(l) = sum_eps A_s(eps l) Q(l - eps eta)/Q(l).
inline cplx t_root_derivative(cplx beta, const EvenPoly& q, cplx root, int sign, const ModelParams& m,
                              const GaugedBoundaryParams& g) {
    cplx e = m.eta, s(0.0);
    for (int eps : {1, -1}) {
        double de = eps;
        cplx bm = beta - de * e;
        s += a_func(de * beta, m, g, sign) * q(bm) / q(beta) * (-2.0 * root) *
             (1.0 / (bm * bm - root * root) - 1.0 / (beta * beta - root * root));
    }
    return s;
}

// Central finite difference of the same derivative, for cross-checks.
inline cplx t_root_derivative_fd(cplx beta, const std::vector<cplx>& roots, int k, int sign, const ModelParams& m,
                                 const GaugedBoundaryParams& g, double step = 1e-6) {
    auto t_of = [&](const std::vector<cplx>& rs) {
        EvenPoly q = EvenPoly::from_roots(rs);
        cplx s(0.0);
        for (double eps : {1.0, -1.0}) s += a_func(eps * beta, m, g, sign) * q(beta - eps * m.eta) / q(beta);
        return s;
    };
    auto up = roots, dn = roots;
    up[k] += step;
    dn[k] -= step;
    return (t_of(up) - t_of(dn)) / (2.0 * step);
}

struct OnShellResult {
    cplx value;
    bool vanishes_by_theorem = false;
    Mat matrix;
};

// <beta|Q_t> (QSide, root set of Q_t) or <beta_|Q_t> (PSide, root set of P_t;
// q_roots supplies the d-ratio back to |Q_t>). Constrained case only.
inline OnShellResult on_shell_sp(const std::vector<cplx>& beta, const std::vector<cplx>& roots, OnShellSide side,
                                 const ModelParams& m, const GaugedBoundaryParams& g,
                                 const std::vector<cplx>& q_roots = {}) {
    if (std::abs(g.cbar_p) != 0.0) throw InvalidInput("on_shell_sp: requires cbar_+ = 0");
    int n_sites = m.n_sites, nb = static_cast<int>(beta.size()), deg = static_cast<int>(roots.size());
    int sign = side == OnShellSide::QSide ? 1 : -1;
    OnShellResult out{0.0, false, Mat()};
    if (nb < deg) {
        out.vanishes_by_theorem = true;
        return out;
    }
    cplx e = m.eta, zp = g.zetabar_p, zm = g.zetabar_m;
    EvenPoly q = EvenPoly::from_roots(roots);
    std::vector<cplx> centers;
    for (auto b : beta) centers.push_back(b * b);
    Mat s(nb, nb);
    for (int i = 0; i < nb; ++i) {
        cplx b = beta[i];
        for (int k = 0; k < nb; ++k) {
            if (k < deg) {
                s(i, k) = t_root_derivative(b, q, roots[k], sign, m, g);
            } else {
                cplx v(0.0);
                for (int eps : {1, -1}) {
                    double de = eps;
                    cplx be = b + de * e / 2.0;
                    v += de * a_func(-de * b, m, g, sign) * q(b + de * e) / q(b) * be * newton_basis(be * be, k - deg, centers);
                }
                s(i, k) = 2.0 * v;
            }
        }
    }
    cplx pre = std::pow(2.0 * e, n_sites - deg - nb) *
               gamma_ratio(static_cast<double>(sign) * (zp + zm) / e, n_sites - deg - nb);
    if (side == OnShellSide::QSide) {
        for (auto x : m.xi) pre /= (zp - x) * g.bbar_m;
    } else {
        for (auto x : m.xi) pre *= (x - zm) / ((-zp - x) * (x + zm) * g.bbar_m);
        cplx dr(1.0);
        for (auto l : q_roots) dr *= d_of(l, m) * d_of(-l, m);
        for (auto mu : roots) dr /= d_of(mu, m) * d_of(-mu, m);
        pre *= dr;
    }
    for (auto r : roots) pre *= tilde_a(-r, g, sign, m);
    for (auto b : beta)
        pre *= 2.0 * static_cast<double>(sign_pow(n_sites)) * zp * zm * q(b) / (e * e - 4.0 * b * b);
    pre *= vandermonde_sq(shifted(roots, -e / 2.0)) / vandermonde_sq(shifted(roots, e / 2.0)) /
           (vandermonde_sq_reversed(roots) * vandermonde_sq(beta));
    out.value = pre * det_or_one(s);
    out.matrix = s;
    return out;
}

}  // namespace sovxxx
