#pragma once

#include "gauge.hpp"
#include "sov_basis.hpp"

#include <functional>
#include <random>

namespace sovxxx {

using Rng = std::mt19937_64;

inline cplx random_complex(Rng& rng, double scale = 1.0) {
    std::normal_distribution<double> nd(0.0, 1.0);
    double re = nd(rng);
    double im = nd(rng);
    return scale * cplx(re, im);
}

inline std::vector<cplx> random_complex_list(Rng& rng, int count, double scale = 1.0) {
    std::vector<cplx> out;
    for (int i = 0; i < count; ++i) out.push_back(random_complex(rng, scale));
    return out;
}

inline cplx random_eta(Rng& rng) {
    std::uniform_real_distribution<double> mod(0.6, 1.0), arg(-0.5, 0.5);
    double r = mod(rng);
    double a = arg(rng);
    return std::polar(r, a);
}

// Inhomogeneities drawn until the genericity conditions hold with a wide margin.
inline ModelParams random_model(Rng& rng, int n_sites, cplx eta, double margin = 0.1, int max_tries = 1000) {
    ModelParams m;
    m.n_sites = n_sites;
    m.eta = eta;
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        m.xi = random_complex_list(rng, n_sites, 0.8);
        try {
            m.validate_generic(margin * std::abs(eta));
            return m;
        } catch (const GenericityError&) {
        }
    }
    throw InvalidInput("random_model: no generic sample found");
}

inline RawBoundaryParams random_raw_params(Rng& rng) {
    RawBoundaryParams b;
    b.zeta_p = random_complex(rng);
    b.zeta_m = random_complex(rng);
    b.kappa_p = random_complex(rng, 0.5);
    b.kappa_m = random_complex(rng, 0.5);
    b.tau_p = random_complex(rng, 0.4);
    b.tau_m = random_complex(rng, 0.4);
    return b;
}

// Gauged parameters kept away from the poles of the SoV construction for model m.
inline GaugedBoundaryParams random_gauged_params(Rng& rng, const ModelParams& m, bool constrained,
                                                 double margin = 0.1, int max_tries = 1000) {
    double d = margin * std::abs(m.eta);
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        GaugedBoundaryParams g;
        g.zetabar_p = random_complex(rng);
        g.zetabar_m = random_complex(rng);
        g.bbar_m = random_complex(rng);
        g.cbar_p = random_complex(rng);
        if (constrained) g.cbar_p = 0.0;
        bool ok = std::abs(g.bbar_m) > 0.2 && std::abs(g.zetabar_p) > d && std::abs(g.zetabar_m) > d &&
                  std::abs(g.zetabar_p + g.zetabar_m) > d;
        for (auto x : m.xi)
            for (cplx z : {g.zetabar_p, g.zetabar_m})
                ok = ok && std::abs(x - z) > d && std::abs(x + z) > d;
        if (ok) return g;
    }
    throw InvalidInput("random_gauged_params: no admissible sample found");
}

// lambda -> c (lambda + a1)(lambda + a2) / ((lambda - p1)(lambda - p2)), poles kept clear of +-nodes.
inline std::function<cplx(cplx)> random_rational_fn(Rng& rng, const std::vector<cplx>& nodes, cplx eta,
                                                    int max_tries = 1000) {
    double d = 0.3 * std::abs(eta);
    cplx c = random_complex(rng), a1 = random_complex(rng), a2 = random_complex(rng);
    std::vector<cplx> poles;
    for (int attempt = 0; attempt < max_tries && poles.size() < 2; ++attempt) {
        cplx p = random_complex(rng, 1.5);
        bool ok = true;
        for (auto x : nodes) ok = ok && std::abs(p - x) > d && std::abs(p + x) > d;
        if (ok) poles.push_back(p);
    }
    if (poles.size() < 2) throw InvalidInput("random_rational_fn: no admissible poles");
    cplx p1 = poles[0], p2 = poles[1];
    return [=](cplx l) { return c * (l + a1) * (l + a2) / ((l - p1) * (l - p2)); };
}

}  // namespace sovxxx
