// Diagonalizes a small constrained chain, solves both T-Q equations for every
// eigenvalue and evaluates one on-shell scalar product three ways.
#include <sovxxx/sovxxx.hpp>

#include <cstdio>

using namespace sovxxx;

int main() {
    Rng rng(42);
    ModelParams m = random_model(rng, 3, cplx(0.7, 0.2));
    GaugedBoundaryParams g = random_gauged_params(rng, m, true);
    SovBasis basis = build_sov_basis(m, g);
    auto eigen = diagonalize_transfer(m, g, cplx(0.31, 0.17));

    std::printf("%-4s %-26s %-3s %-3s %-10s\n", "k", "t(xi_1)", "q", "p", "wronskian");
    for (std::size_t k = 0; k < eigen.size(); ++k) {
        auto q = solve_tq(eigen[k].t_poly, m, g, 1, 1e-8);
        auto p = solve_tq(eigen[k].t_poly, m, g, -1, 1e-8);
        if (!q || !p) {
            std::printf("%-4zu no polynomial T-Q solution\n", k);
            continue;
        }
        cplx t1 = eigen[k].t_values_at_xi[0];
        double w = wronskian_check(q->q_poly, p->q_poly, m, g).residual_a_minus;
        std::printf("%-4zu (%+.5f, %+.5f)       %-3d %-3d %.2e\n", k, t1.real(), t1.imag(), q->degree, p->degree, w);
    }

    auto q = solve_tq(eigen[0].t_poly, m, g, 1, 1e-8);
    if (!q) return 1;
    auto roots = q->q_poly.roots();
    auto beta = random_complex_list(rng, static_cast<int>(roots.size()) + 1);
    auto bra = build_separate_state_sov({beta, SeparateVariant::BraPlain}, m, g, basis);
    auto ket = build_separate_state_sov({roots, SeparateVariant::KetPlain}, m, g, basis);
    cplx brute = brute_pairing(bra, ket);
    cplx off = off_shell_sp(beta, roots, PairingVariant::Plain, m, g).slavnov_form;
    cplx on = on_shell_sp(beta, roots, OnShellSide::QSide, m, g).value;
    std::printf("\n<beta|Q_t>  brute   (%+.12e, %+.12e)\n", brute.real(), brute.imag());
    std::printf("            slavnov (%+.12e, %+.12e)\n", off.real(), off.imag());
    std::printf("            on-shell(%+.12e, %+.12e)\n", on.real(), on.imag());
    return 0;
}
