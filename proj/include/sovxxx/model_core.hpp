#pragma once

#include "poly.hpp"
#include "types.hpp"

namespace sovxxx {

// 2x2 matrix of operators on the 2^N-dim chain, stored as one (2D)x(2D) matrix
// with the auxiliary index outermost.
struct OperatorValued2x2 {
    Mat full;

    int dim() const { return static_cast<int>(full.rows() / 2); }
    Mat A() const { return full.topLeftCorner(dim(), dim()); }
    Mat B() const { return full.topRightCorner(dim(), dim()); }
    Mat C() const { return full.bottomLeftCorner(dim(), dim()); }
    Mat D() const { return full.bottomRightCorner(dim(), dim()); }

    static OperatorValued2x2 from_blocks(const Mat& a, const Mat& b, const Mat& c, const Mat& d) {
        int n = static_cast<int>(a.rows());
        Mat f(2 * n, 2 * n);
        f << a, b, c, d;
        return {f};
    }

    // Transpose in auxiliary space only.
    OperatorValued2x2 aux_transposed() const { return from_blocks(A(), C(), B(), D()); }

    Mat aux_trace() const { return A() + D(); }
};

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

namespace pauli {
inline Mat2 x() { Mat2 m; m << 0, 1, 1, 0; return m; }
inline Mat2 y() { Mat2 m; m << 0, cplx(0, -1), cplx(0, 1), 0; return m; }
inline Mat2 z() { Mat2 m; m << 1, 0, 0, -1; return m; }
inline Mat2 plus() { Mat2 m; m << 0, 1, 0, 0; return m; }
inline Mat2 minus() { Mat2 m; m << 0, 0, 1, 0; return m; }
inline Mat2 unit(int i, int j) { Mat2 m = Mat2::Zero(); m(i, j) = 1.0; return m; }
}  // namespace pauli

// Single-site operator on site n (0-based; site 0 is the most significant bit).
inline Mat site_operator(const Mat2& op, int n, int n_sites) {
    Mat left = Mat::Identity(1 << n, 1 << n);
    Mat right = Mat::Identity(1 << (n_sites - n - 1), 1 << (n_sites - n - 1));
    return kron(kron(left, op), right);
}

// K (x) Id_D, auxiliary factor first.
inline Mat aux_embed(const Mat2& k, int dim) { return kron(k, Mat::Identity(dim, dim)); }

inline Mat4 r_matrix(cplx lambda, cplx eta) {
    Mat4 r = Mat4::Zero();
    r(0, 0) = lambda + eta;
    r(1, 1) = lambda;
    r(1, 2) = eta;
    r(2, 1) = eta;
    r(2, 2) = lambda;
    r(3, 3) = lambda + eta;
    return r;
}

inline Mat2 k_scalar(cplx lambda, cplx zeta, cplx kappa, cplx tau) {
    if (std::abs(zeta) == 0.0) throw InvalidInput("k_scalar: zeta must be nonzero");
    Mat2 k;
    k << zeta + lambda, 2.0 * kappa * std::exp(tau) * lambda,
        2.0 * kappa * std::exp(-tau) * lambda, zeta - lambda;
    return k / zeta;
}

inline Mat2 k_minus(cplx lambda, const RawBoundaryParams& b, cplx eta) {
    return k_scalar(lambda - eta / 2.0, b.zeta_m, b.kappa_m, b.tau_m);
}

inline Mat2 k_plus(cplx lambda, const RawBoundaryParams& b, cplx eta) {
    return k_scalar(lambda + eta / 2.0, b.zeta_p, b.kappa_p, b.tau_p);
}

// Closed forms  det_q K_-+(lambda) = -+2(lambda -+ eta)((1+4 kappa^2)/zeta^2 lambda^2 - 1).
inline cplx qdet_k_minus_closed(cplx lambda, const RawBoundaryParams& b, cplx eta) {
    return -2.0 * (lambda - eta) *
           ((1.0 + 4.0 * b.kappa_m * b.kappa_m) / (b.zeta_m * b.zeta_m) * lambda * lambda - 1.0);
}

inline cplx qdet_k_plus_closed(cplx lambda, const RawBoundaryParams& b, cplx eta) {
    return 2.0 * (lambda + eta) *
           ((1.0 + 4.0 * b.kappa_p * b.kappa_p) / (b.zeta_p * b.zeta_p) * lambda * lambda - 1.0);
}

// (2 lambda - 2 eta) K(lambda + eta/2) K(-lambda + eta/2); a multiple of Id for a
// reflection-algebra element K.
template <class KFn>
Mat2 qdet_from_inversion(KFn&& k, cplx lambda, cplx eta) {
    return (2.0 * lambda - 2.0 * eta) * k(lambda + eta / 2.0) * k(-lambda + eta / 2.0);
}

inline cplx a_of(cplx lambda, const ModelParams& m) {
    cplx r(1.0);
    for (auto x : m.xi) r *= lambda - x + m.eta / 2.0;
    return r;
}

inline cplx d_of(cplx lambda, const ModelParams& m) {
    cplx r(1.0);
    for (auto x : m.xi) r *= lambda - x - m.eta / 2.0;
    return r;
}

inline cplx qdet_bulk(cplx lambda, const ModelParams& m) {
    return a_of(lambda + m.eta / 2.0, m) * d_of(lambda - m.eta / 2.0, m);
}

// R_{0n}(u) = u Id + eta P_{0n} on aux (x) chain.
inline Mat r_aux_site(cplx u, int n, const ModelParams& m) {
    int dim = m.dim();
    Mat out = u * Mat::Identity(2 * dim, 2 * dim);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out += m.eta * kron(pauli::unit(i, j), site_operator(pauli::unit(j, i), n, m.n_sites));
    return out;
}

inline OperatorValued2x2 bulk_monodromy(cplx lambda, const ModelParams& m) {
    int dim = m.dim();
    Mat out = Mat::Identity(2 * dim, 2 * dim);
    for (int n = m.n_sites - 1; n >= 0; --n)
        out = out * r_aux_site(lambda - m.xi[n] - m.eta / 2.0, n, m);
    return {out};
}

// (-1)^N sigma^y M^{t0}(-lambda) sigma^y
inline OperatorValued2x2 hat_of(const OperatorValued2x2& m_at_minus, int n_sites) {
    int dim = m_at_minus.dim();
    Mat sy = aux_embed(pauli::y(), dim);
    Mat f = static_cast<double>(sign_pow(n_sites)) * sy * m_at_minus.aux_transposed().full * sy;
    return {f};
}

inline OperatorValued2x2 hat_monodromy(cplx lambda, const ModelParams& m) {
    return hat_of(bulk_monodromy(-lambda, m), m.n_sites);
}

// U_-(lambda) = M(lambda) K M^(lambda) for any scalar 2x2 K.
inline OperatorValued2x2 boundary_monodromy_minus(cplx lambda, const ModelParams& m, const Mat2& k) {
    Mat f = bulk_monodromy(lambda, m).full * aux_embed(k, m.dim()) * hat_monodromy(lambda, m).full;
    return {f};
}

// U_+(lambda), obtained from U_+^{t0} = M^{t0} K^{t0} M^^{t0}.
inline OperatorValued2x2 boundary_monodromy_plus(cplx lambda, const ModelParams& m, const Mat2& k) {
    Mat f = bulk_monodromy(lambda, m).aux_transposed().full * aux_embed(k.transpose(), m.dim()) *
            hat_monodromy(lambda, m).aux_transposed().full;
    return OperatorValued2x2{f}.aux_transposed();
}

inline Mat transfer_matrix(cplx lambda, const ModelParams& m, const RawBoundaryParams& b) {
    auto u = boundary_monodromy_minus(lambda, m, k_minus(lambda, b, m.eta));
    return OperatorValued2x2{aux_embed(k_plus(lambda, b, m.eta), m.dim()) * u.full}.aux_trace();
}

// Same transfer matrix written as tr_0 K_-(lambda) U_+(lambda).
inline Mat transfer_matrix_plus_form(cplx lambda, const ModelParams& m, const RawBoundaryParams& b) {
    auto u = boundary_monodromy_plus(lambda, m, k_plus(lambda, b, m.eta));
    return OperatorValued2x2{aux_embed(k_minus(lambda, b, m.eta), m.dim()) * u.full}.aux_trace();
}

// Embeds an aux (x) chain operator into aux1 (x) aux2 (x) chain, acting on slot 1 or 2.
inline Mat embed_aux_slot(const Mat& full, int slot) {
    int dim = static_cast<int>(full.rows() / 2);
    Mat out = Mat::Zero(4 * dim, 4 * dim);
    for (int a = 0; a < 2; ++a)
        for (int ap = 0; ap < 2; ++ap)
            for (int s = 0; s < 2; ++s) {
                int row = slot == 1 ? (2 * a + s) : (2 * s + a);
                int col = slot == 1 ? (2 * ap + s) : (2 * s + ap);
                out.block(row * dim, col * dim, dim, dim) = full.block(a * dim, ap * dim, dim, dim);
            }
    return out;
}

inline Mat r12_embedded(cplx lambda, cplx eta, int dim) {
    return kron(r_matrix(lambda, eta), Mat::Identity(dim, dim));
}

// Relative residual of R12(l-u) M1(l) M2(u) = M2(u) M1(l) R12(l-u).
inline double rtt_residual(cplx l, cplx u, const ModelParams& m) {
    int dim = m.dim();
    Mat m1 = embed_aux_slot(bulk_monodromy(l, m).full, 1);
    Mat m2 = embed_aux_slot(bulk_monodromy(u, m).full, 2);
    Mat r = r12_embedded(l - u, m.eta, dim);
    return matrix_residual(r * m1 * m2, m2 * m1 * r);
}

// Relative residual of the reflection equation for V(lambda) = U(lambda + eta/2).
template <class UFn>
double reflection_residual(UFn&& v, cplx l, cplx u, cplx eta) {
    Mat v1 = embed_aux_slot(v(l).full, 1);
    Mat v2 = embed_aux_slot(v(u).full, 2);
    int dim = static_cast<int>(v1.rows() / 4);
    Mat rm = r12_embedded(l - u, eta, dim);
    Mat rp = r12_embedded(l + u, eta, dim);
    return matrix_residual(rm * v1 * rp * v2, v2 * rp * v1 * rm);
}

// A(l + eta/2) D(l - eta/2) - B(l + eta/2) C(l - eta/2) against a(l + eta/2) d(l - eta/2) Id.
inline double qdet_bulk_residual(cplx l, const ModelParams& m) {
    auto p = bulk_monodromy(l + m.eta / 2.0, m), q = bulk_monodromy(l - m.eta / 2.0, m);
    Mat op = p.A() * q.D() - p.B() * q.C();
    return matrix_residual(op, qdet_bulk(l, m) * Mat::Identity(m.dim(), m.dim()));
}

// (2l - 2eta) U_-(l + eta/2) U_-(-l + eta/2) = det_q M(l) det_q M(-l) det_q K_-(l) Id.
inline double boundary_inversion_residual(cplx l, const ModelParams& m, const RawBoundaryParams& b) {
    cplx e = m.eta;
    auto u1 = boundary_monodromy_minus(l + e / 2.0, m, k_minus(l + e / 2.0, b, e));
    auto u2 = boundary_monodromy_minus(-l + e / 2.0, m, k_minus(-l + e / 2.0, b, e));
    cplx s = qdet_bulk(l, m) * qdet_bulk(-l, m) * qdet_k_minus_closed(l, b, e);
    return matrix_residual((2.0 * l - 2.0 * e) * u1.full * u2.full, s * Mat::Identity(2 * m.dim(), 2 * m.dim()));
}

// Yang-Baxter residual on C^2 (x) C^2 (x) C^2.
inline double yang_baxter_residual(cplx l, cplx u, cplx eta) {
    Mat i2 = Mat::Identity(2, 2);
    Mat r12 = kron(r_matrix(l - u, eta), i2);
    Mat r23 = kron(i2, r_matrix(u, eta));
    Mat p23 = kron(i2, r_matrix(0.0, 1.0));
    Mat r13 = p23 * kron(r_matrix(l, eta), i2) * p23;
    return matrix_residual(r12 * r13 * r23, r23 * r13 * r12);
}

inline Mat hamiltonian_direct(const RawBoundaryParams& b, int n_sites, cplx eta) {
    b.validate();
    int dim = 1 << n_sites;
    Mat h = Mat::Zero(dim, dim);
    const Mat2 s[3] = {pauli::x(), pauli::y(), pauli::z()};
    for (int i = 0; i + 1 < n_sites; ++i)
        for (const auto& op : s) h += site_operator(op, i, n_sites) * site_operator(op, i + 1, n_sites);
    auto boundary = [&](cplx zeta, cplx kappa, cplx tau) -> Mat2 {
        return (eta / zeta) * (pauli::z() + 2.0 * kappa *
                                                (std::exp(tau) * pauli::plus() + std::exp(-tau) * pauli::minus()));
    };
    h += site_operator(boundary(b.zeta_m, b.kappa_m, b.tau_m), 0, n_sites);
    h += site_operator(boundary(b.zeta_p, b.kappa_p, b.tau_p), n_sites - 1, n_sites);
    return h;
}

struct HamiltonianFit {
    Mat hamiltonian;
    cplx constant;
    double residual;
};

// Homogeneous-limit derivative of the transfer matrix at eta/2, compared with the
// direct Hamiltonian up to one additive constant.
inline HamiltonianFit hamiltonian_from_transfer(const RawBoundaryParams& b, int n_sites, cplx eta,
                                                double tol = 1e-8) {
    b.validate();
    ModelParams hom{n_sites, eta, std::vector<cplx>(n_sites, cplx(0.0))};
    auto coeffs = interpolate_even<Mat>(
        [&](cplx l) { return transfer_matrix(l, hom, b); }, n_sites + 1, 2.0 * std::abs(eta));
    cplx l0 = eta / 2.0;
    int dim = hom.dim();
    Mat deriv = Mat::Zero(dim, dim);
    for (std::size_t k = 1; k < coeffs.size(); ++k)
        deriv += (2.0 * static_cast<double>(k) * std::pow(l0, 2 * static_cast<int>(k) - 1)) * coeffs[k];
    cplx pref = 2.0 * std::pow(eta, 1 - 2 * n_sites) /
                (k_plus(l0, b, eta).trace() * k_minus(l0, b, eta).trace());
    Mat h = pref * deriv;
    Mat direct = hamiltonian_direct(b, n_sites, eta);
    cplx c = (h - direct).trace() / static_cast<double>(dim);
    double res = matrix_residual(h - c * Mat::Identity(dim, dim), direct);
    if (res > tol)
        throw InconsistencyError("hamiltonian_from_transfer: residual " + std::to_string(res));
    return {h, c, res};
}

}  // namespace sovxxx
