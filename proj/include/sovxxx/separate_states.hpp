#pragma once

#include "spectrum_tq.hpp"

namespace sovxxx {

enum class Side { Row, Column };

// Dense state; rows are bras, columns are kets.
struct StateVector {
    Side side = Side::Column;
    Vec entries;
};

enum class ReferenceState { Omega, OmegaL, OmegaUnder, OmegaUnderR };

enum class SeparateVariant { KetPlain, BraUnder, BraPlain, KetUnder };

// Separate state generated by beta(lambda) = prod_a (lambda^2 - roots[a]^2).
struct SeparateSpec {
    std::vector<cplx> roots;
    SeparateVariant variant = SeparateVariant::KetPlain;

    EvenPoly poly() const { return EvenPoly::from_roots(roots); }
    int degree() const { return static_cast<int>(roots.size()); }
};

enum class SeparateNormalization { Bethe, RawSum };

inline ReferenceState reference_of(SeparateVariant v) {
    switch (v) {
        case SeparateVariant::KetPlain: return ReferenceState::Omega;
        case SeparateVariant::BraPlain: return ReferenceState::OmegaL;
        case SeparateVariant::BraUnder: return ReferenceState::OmegaUnder;
        case SeparateVariant::KetUnder: return ReferenceState::OmegaUnderR;
    }
    return ReferenceState::Omega;
}

inline Side side_of(ReferenceState r) {
    return (r == ReferenceState::Omega || r == ReferenceState::OmegaUnderR) ? Side::Column : Side::Row;
}

namespace detail {
// Per-site weight for h_n = 1.
inline cplx site_weight(ReferenceState r, const ModelParams& m, const GaugedBoundaryParams& g, int n) {
    switch (r) {
        case ReferenceState::Omega: return 1.0;
        case ReferenceState::OmegaL: return f_factor(m, n) * g_factor(m, g, n);
        case ReferenceState::OmegaUnder: return f_factor(m, n);
        case ReferenceState::OmegaUnderR: {
            cplx gn = g_factor(m, g, n);
            if (std::abs(gn) < 1e-14) throw PoleError("g_n = 0 in Omega_under_R weights");
            return 1.0 / gn;
        }
    }
    return 1.0;
}

// sum_h prod_n [w_n^{h_n} beta(xi_n^(h_n))] V^(xi^(h)) <h| or |h>; magnitude, if given,
// receives sum_h |coefficient| |basis vector|.
inline StateVector sov_sum(ReferenceState r, const EvenPoly& beta, const ModelParams& m,
                           const GaugedBoundaryParams& g, const SovBasis& basis, double* magnitude = nullptr) {
    StateVector out{side_of(r), Vec::Zero(m.dim())};
    std::vector<cplx> w;
    for (int n = 0; n < m.n_sites; ++n) w.push_back(site_weight(r, m, g, n));
    if (magnitude) *magnitude = 0.0;
    for (unsigned mask = 0; mask < static_cast<unsigned>(m.dim()); ++mask) {
        cplx c = vandermonde_sq(shifted_xi_all(m, mask));
        for (int n = 0; n < m.n_sites; ++n) {
            int h = h_bit(mask, n);
            c *= beta(shifted_xi(m, n, h));
            if (h) c *= w[n];
        }
        if (out.side == Side::Column)
            out.entries += c * basis.right[mask];
        else
            out.entries += c * basis.left[mask].transpose();
        if (magnitude)
            *magnitude += std::abs(c) * (out.side == Side::Column ? basis.right[mask].norm() : basis.left[mask].norm());
    }
    return out;
}
}  // namespace detail

inline StateVector reference_state(const ModelParams& m, const GaugedBoundaryParams& g, const SovBasis& basis,
                                   ReferenceState which) {
    auto s = detail::sov_sum(which, EvenPoly(), m, g, basis);
    s.entries /= basis.norm_factor;
    return s;
}

inline StateVector build_separate_state_sov(const SeparateSpec& spec, const ModelParams& m,
                                            const GaugedBoundaryParams& g, const SovBasis& basis,
                                            SeparateNormalization norm = SeparateNormalization::Bethe) {
    auto s = detail::sov_sum(reference_of(spec.variant), spec.poly(), m, g, basis);
    if (norm == SeparateNormalization::Bethe) s.entries /= basis.norm_factor;
    return s;
}

// Size of the terms summed in build_separate_state_sov (Bethe normalization); the
// natural scale for rounding errors when the state or a pairing cancels.
inline double separate_state_magnitude(const SeparateSpec& spec, const ModelParams& m, const GaugedBoundaryParams& g,
                                       const SovBasis& basis) {
    double mag = 0.0;
    detail::sov_sum(reference_of(spec.variant), spec.poly(), m, g, basis, &mag);
    return mag / std::abs(basis.norm_factor);
}

// prod_a B(b_a) applied to the variant's reference state.
inline StateVector build_bethe_state(const SeparateSpec& spec, const ModelParams& m, const GaugedBoundaryParams& g,
                                     const SovBasis& basis) {
    auto s = reference_state(m, g, basis, reference_of(spec.variant));
    for (auto b : spec.roots) {
        Mat op = b_renormalized(b, m, g);
        if (s.side == Side::Column)
            s.entries = op * s.entries;
        else
            s.entries = (s.entries.transpose() * op).transpose();
    }
    return s;
}

// Canonical bilinear pairing, no complex conjugation.
inline cplx brute_pairing(const StateVector& bra, const StateVector& ket) {
    if (bra.entries.size() != ket.entries.size()) throw InvalidInput("brute_pairing: dimension mismatch");
    return (bra.entries.transpose() * ket.entries)(0, 0);
}

inline cplx brute_pairing(const RowVec& bra, const Vec& ket) {
    if (bra.size() != ket.size()) throw InvalidInput("brute_pairing: dimension mismatch");
    return (bra * ket)(0, 0);
}

inline double state_residual(const StateVector& a, const StateVector& b) {
    double scale = std::max({a.entries.norm(), b.entries.norm(), 1e-300});
    return (a.entries - b.entries).norm() / scale;
}

}  // namespace sovxxx
