#pragma once

#include "model_core.hpp"

#include <random>

namespace sovxxx {

namespace detail {
// Off-diagonal entry (1 - eps sqrt(1+4k^2)) / (2 k e^{s tau}); zero-numerator convention at k = 0.
inline cplx gauge_entry(cplx kappa, cplx tau, int eps, double tau_sign) {
    if (std::abs(kappa) == 0.0) {
        if (eps != 1) throw InvalidInput("gauge_matrix: kappa = 0 requires eps = +1");
        return cplx(0.0);
    }
    cplx root = std::sqrt(1.0 + 4.0 * kappa * kappa);
    return (1.0 - static_cast<double>(eps) * root) / (2.0 * kappa * std::exp(tau_sign * tau));
}
}  // namespace detail

inline Mat2 gauge_matrix(const RawBoundaryParams& b, const GaugeChoice& g) {
    g.validate();
    Mat2 w;
    w << 1.0, -detail::gauge_entry(b.kappa_p, b.tau_p, g.eps_p, -1.0),
        detail::gauge_entry(b.kappa_m, b.tau_m, g.eps_m, 1.0), 1.0;
    if (std::abs(w.determinant()) < 1e-12) throw InvalidInput("gauge_matrix: W is singular");
    return w;
}

// Reads (zetabar, off-diagonal coefficient) off W K(mu) W^{-1} at mu = 1.
inline GaugedBoundaryParams gauged_params_via_w(const RawBoundaryParams& b, const GaugeChoice& g) {
    Mat2 w = gauge_matrix(b, g);
    Mat2 wi = w.inverse();
    Mat2 kp = w * k_scalar(1.0, b.zeta_p, b.kappa_p, b.tau_p) * wi;
    Mat2 km = w * k_scalar(1.0, b.zeta_m, b.kappa_m, b.tau_m) * wi;
    GaugedBoundaryParams out;
    out.zetabar_p = 1.0 / (kp(0, 0) - 1.0);
    out.zetabar_m = 1.0 / (km(0, 0) - 1.0);
    out.cbar_p = kp(1, 0) * out.zetabar_p;
    out.bbar_m = km(0, 1) * out.zetabar_m;
    return out;
}

inline GaugedBoundaryParams gauged_params(const RawBoundaryParams& b, const GaugeChoice& g) {
    b.validate();
    g.validate();
    if (std::abs(b.kappa_p) == 0.0 || std::abs(b.kappa_m) == 0.0) return gauged_params_via_w(b, g);
    double ep = g.eps_p, em = g.eps_m;
    cplx sp = std::sqrt(1.0 + 4.0 * b.kappa_p * b.kappa_p);
    cplx sm = std::sqrt(1.0 + 4.0 * b.kappa_m * b.kappa_m);
    cplx den = 4.0 * b.kappa_p * b.kappa_m * std::exp(b.tau_m - b.tau_p);
    GaugedBoundaryParams out;
    out.zetabar_p = ep * b.zeta_p / sp;
    out.zetabar_m = em * b.zeta_m / sm;
    out.cbar_p = ep * 2.0 * b.kappa_p * std::exp(-b.tau_p) / sp * (1.0 + (1.0 + ep * sp) * (1.0 - em * sm) / den);
    out.bbar_m = em * 2.0 * b.kappa_m * std::exp(b.tau_m) / sm * (1.0 + (1.0 - ep * sp) * (1.0 + em * sm) / den);
    return out;
}

inline Mat2 gauged_k_plus(cplx lambda, const GaugedBoundaryParams& g, cplx eta) {
    return Mat2::Identity() + ((lambda + eta / 2.0) / g.zetabar_p) * (pauli::z() + g.cbar_p * pauli::minus());
}

inline Mat2 gauged_k_minus(cplx lambda, const GaugedBoundaryParams& g, cplx eta) {
    return Mat2::Identity() + ((lambda - eta / 2.0) / g.zetabar_m) * (pauli::z() + g.bbar_m * pauli::plus());
}

// Entries of the gauged K_-.
inline cplx abar_minus(cplx lambda, const GaugedBoundaryParams& g, cplx eta) {
    return 1.0 + (lambda - eta / 2.0) / g.zetabar_m;
}
inline cplx dbar_minus(cplx lambda, const GaugedBoundaryParams& g, cplx eta) {
    return 1.0 - (lambda - eta / 2.0) / g.zetabar_m;
}
inline cplx bbar_minus(cplx lambda, const GaugedBoundaryParams& g, cplx eta) {
    return (lambda - eta / 2.0) * g.bbar_m / g.zetabar_m;
}

// det_q of the gauged K: +-2(lambda +- eta)(lambda^2/zetabar^2 - 1).
inline cplx qdet_gauged_k_minus_closed(cplx lambda, const GaugedBoundaryParams& g, cplx eta) {
    return -2.0 * (lambda - eta) * (lambda * lambda / (g.zetabar_m * g.zetabar_m) - 1.0);
}
inline cplx qdet_gauged_k_plus_closed(cplx lambda, const GaugedBoundaryParams& g, cplx eta) {
    return 2.0 * (lambda + eta) * (lambda * lambda / (g.zetabar_p * g.zetabar_p) - 1.0);
}

inline Mat gamma_w(const Mat2& w, int n_sites) {
    Mat out = Mat::Identity(1, 1);
    for (int n = 0; n < n_sites; ++n) out = kron(out, w);
    return out;
}

inline OperatorValued2x2 gauged_boundary_minus(cplx lambda, const ModelParams& m, const GaugedBoundaryParams& g) {
    return boundary_monodromy_minus(lambda, m, gauged_k_minus(lambda, g, m.eta));
}

inline Mat gauged_transfer(cplx lambda, const ModelParams& m, const GaugedBoundaryParams& g) {
    auto u = gauged_boundary_minus(lambda, m, g);
    return OperatorValued2x2{aux_embed(gauged_k_plus(lambda, g, m.eta), m.dim()) * u.full}.aux_trace();
}

// a+ A- + b+ C- + c+ B- + d+ D- with the entries of the gauged K_+.
inline Mat gauged_transfer_entries(cplx lambda, const ModelParams& m, const GaugedBoundaryParams& g) {
    auto u = gauged_boundary_minus(lambda, m, g);
    Mat2 k = gauged_k_plus(lambda, g, m.eta);
    return k(0, 0) * u.A() + k(0, 1) * u.C() + k(1, 0) * u.B() + k(1, 1) * u.D();
}

// B(lambda) = (-1)^N Bbar_-(lambda) / bbar_-(lambda).
inline Mat b_renormalized(cplx lambda, const ModelParams& m, const GaugedBoundaryParams& g) {
    cplx scalar = bbar_minus(lambda, g, m.eta);
    if (std::abs(scalar) < 1e-14 * (1.0 + std::abs(lambda)))
        throw PoleError("b_renormalized: bbar_-(lambda) vanishes");
    return (static_cast<double>(sign_pow(m.n_sites)) / scalar) * gauged_boundary_minus(lambda, m, g).B();
}

struct ConstrainedSample {
    RawBoundaryParams raw;
    GaugeChoice choice;
    GaugedBoundaryParams gauged;
};

// Random raw parameters on the constraint surface where cbar_+ vanishes for some
// gauge choice, with bbar_- != 0.
template <class Rng>
ConstrainedSample constrained_raw_params(Rng& rng, double tol = 1e-10, int max_tries = 200) {
    std::normal_distribution<double> nd(0.0, 1.0);
    auto draw = [&](double s) { return cplx(s * nd(rng), s * nd(rng)); };
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        RawBoundaryParams r;
        r.zeta_p = draw(1.0) + 1.5;
        r.zeta_m = draw(1.0) - 1.5;
        r.kappa_m = draw(0.6);
        r.tau_p = draw(0.4);
        r.tau_m = draw(0.4);
        // (1 + 4 kp km c)^2 = (1+4kp^2)(1+4km^2), c = cosh(tau_+ - tau_-):
        // kp^2 (4 - 16 km^2 (c^2 - 1)) - 8 km c kp + 4 km^2 = 0
        cplx c = std::cosh(r.tau_p - r.tau_m);
        cplx qa = 4.0 - 16.0 * r.kappa_m * r.kappa_m * (c * c - 1.0);
        cplx qb = -8.0 * r.kappa_m * c;
        cplx qc = 4.0 * r.kappa_m * r.kappa_m;
        cplx disc = std::sqrt(qb * qb - 4.0 * qa * qc);
        for (cplx kp : {(-qb + disc) / (2.0 * qa), (-qb - disc) / (2.0 * qa)}) {
            if (std::abs(kp) < 1e-3) continue;
            r.kappa_p = kp;
            for (int ep : {1, -1})
                for (int em : {1, -1}) {
                    GaugeChoice gc{ep, em};
                    GaugedBoundaryParams g;
                    try {
                        g = gauged_params(r, gc);
                    } catch (const InvalidInput&) {
                        continue;
                    }
                    if (std::abs(g.cbar_p) < tol && std::abs(g.bbar_m) > 1e-2) {
                        g.cbar_p = 0.0;
                        return {r, gc, g};
                    }
                }
        }
    }
    throw InvalidInput("constrained_raw_params: no admissible sample found");
}

}  // namespace sovxxx
