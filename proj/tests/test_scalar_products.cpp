#include "test_support.hpp"

using namespace sovxxx;
using namespace sovxxx::testing;

namespace {

const cplx kEta(0.8, 0.15);

ScalarFn test_fn() {
    return [](cplx l) { return (l + cplx(0.3, 0.2)) * (l - cplx(0.1, 0.7)) / (l - cplx(1.9, 0.4)); };
}

}  // namespace

TEST(GammaRatio, SmallCases) {
    cplx x(2.3, 0.4);
    EXPECT_EQ(gamma_ratio(x, 0), cplx(1.0));
    EXPECT_LT(std::abs(gamma_ratio(x, 2) - x * (x + 1.0)), 1e-14);
    EXPECT_LT(std::abs(gamma_ratio(3.0, -1) - 0.5), 1e-15);
    EXPECT_THROW(gamma_ratio(2.0, -2), PoleError);
}

TEST(AFunctional, SmallSizes) {
    auto f = test_fn();
    cplx x(0.4, 0.3);
    EXPECT_LT(relative_residual(a_functional({x}, f, kEta), f(x) + f(-x)), 1e-14);
    ScalarFn c = [](cplx) { return cplx(1.7, -0.2); };
    EXPECT_LT(relative_residual(a_functional({x}, c, kEta), 2.0 * cplx(1.7, -0.2)), 1e-14);
    std::vector<cplx> xs{cplx(0.4, 0.3), cplx(-0.9, 0.5)};
    Mat num(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            num(i, j) = f(xs[i]) * std::pow(xs[i] + kEta / 2.0, 2 * j) + f(-xs[i]) * std::pow(xs[i] - kEta / 2.0, 2 * j);
    cplx direct = num.determinant() / (xs[1] * xs[1] - xs[0] * xs[0]);
    EXPECT_LT(relative_residual(a_functional(xs, f, kEta), direct), 1e-13);
}

TEST(AFunctional, SumAndDeterminantAgree) {
    Rng rng(110);
    auto f = test_fn();
    for (int n = 1; n <= 8; ++n) {
        auto xs = random_complex_list(rng, n);
        EXPECT_LT(relative_residual(a_functional_sum(xs, f, kEta), a_functional_det(xs, f, kEta)), 1e-9);
    }
    EXPECT_THROW(a_functional({cplx(0.5), cplx(-0.5)}, f, kEta), InvalidInput);
}

TEST(Kernel, ValuesAndPoles) {
    cplx xp(0.3, 0.1), xm(-0.7, 0.4), l(0.55, -0.25);
    EXPECT_LT(relative_residual(f_kernel(xp, xm, {}, kEta)(l), (l + xp) * (l + xm) / l), 1e-15);
    cplx z(0.6, 0.2);
    EXPECT_LT(std::abs(f_kernel(xp, xm, {z}, kEta)(z)), 1e-15);
    EXPECT_THROW(f_kernel(xp, xm, {z}, kEta)(0.0), PoleError);
    cplx xi(0.45, 0.05);
    cplx sym = f_kernel(xi, -xi, {z}, kEta)(l);
    EXPECT_LT(relative_residual(sym, (l * l - xi * xi) / l * (l * l - z * z) / ((l + kEta / 2.0) * (l + kEta / 2.0) - z * z)),
              1e-14);
}

TEST(Izergin, SingleNode) {
    cplx xp(0.3, 0.1), xm(-0.7, 0.4), x(0.55, -0.25), z(0.2, 0.8);
    cplx s(0.0);
    for (double e : {1.0, -1.0})
        s += e * (x + e * xp) * (x + e * xm) / (x * ((x + e * kEta / 2.0) * (x + e * kEta / 2.0) - z * z));
    EXPECT_LT(relative_residual(izergin_like(xp, xm, {x}, {z}, kEta), (x * x - z * z) * s), 1e-14);
    EXPECT_THROW(izergin_like(xp, xm, {x}, {}, kEta), InvalidInput);
}

TEST(Identities, EqualSizes) {
    Rng rng(111);
    for (int n = 1; n <= 3; ++n) {
        auto xs = random_complex_list(rng, n), zs = random_complex_list(rng, n);
        cplx xp = random_complex(rng), xm = random_complex(rng);
        EXPECT_LT(identity1_check(xp, xm, xs, zs, kEta), 1e-9);
        EXPECT_LT(identity2_check(xp, xm, xs, zs, kEta), 1e-9);
    }
}

TEST(Identities, UnequalSizesAndCorollaries) {
    Rng rng(112);
    auto xs = random_complex_list(rng, 3), zs = random_complex_list(rng, 1);
    cplx xp = random_complex(rng), xm = random_complex(rng);
    EXPECT_LT(identity2_check(xp, xm, xs, zs, kEta), 1e-9);
    EXPECT_LT(corollary_gamma_check(xp, xm, xs, zs, kEta), 1e-9);
    EXPECT_LT(corollary_gamma_check(xp, xm, zs, xs, kEta), 1e-9);
    cplx ref = std::abs(a_functional(xs, f_kernel(xp, xm, zs, kEta), kEta));
    for (int j = 0; j < 2; ++j)
        EXPECT_LT(std::abs(corollary_zero_value(xp, j, xs, zs, kEta)) / std::abs(ref), 1e-9);
    EXPECT_THROW(corollary_zero_value(xp, 2, xs, zs, kEta), InvalidInput);
    EXPECT_THROW(identity2_check(xp, xm, zs, xs, kEta), InvalidInput);
}

TEST(Identities, SlavnovForm) {
    Rng rng(113);
    auto f = test_fn();
    std::vector<cplx> y2{cplx(0.4, 0.3), cplx(-0.9, 0.5)};
    EXPECT_LT(identity3_check({cplx(0.2, -0.6)}, y2, f, kEta), 1e-9);
    EXPECT_LT(identity3_check({cplx(0.2, -0.6)}, {cplx(0.7, 0.1)}, f, kEta), 1e-9);
    EXPECT_LT(relative_residual(slavnov_like({}, y2, f, kEta), a_functional(y2, f, kEta)), 1e-12);
    EXPECT_THROW(slavnov_matrix(y2, {cplx(0.1)}, f, kEta), InvalidInput);
}

TEST(TildeA, RelationToA) {
    auto s = make_sample(114, 2, false);
    const auto& m = s.model;
    const auto& g = s.gauged;
    cplx l(0.37, -0.52);
    for (int sign : {1, -1}) {
        cplx want = static_cast<double>(sign_pow(m.n_sites)) * (2.0 * l + m.eta) /
                    (2.0 * g.zetabar_p * g.zetabar_m) * tilde_a(-l, g, sign, m);
        EXPECT_LT(relative_residual(a_func(l, m, g, sign), want), 1e-13);
    }
    EXPECT_LT(std::abs(tilde_a(-(m.xi[0] - m.eta / 2.0), g, 1, m)), 1e-14);
    GaugedBoundaryParams flipped = g;
    flipped.zetabar_p = -g.zetabar_p;
    flipped.zetabar_m = -g.zetabar_m;
    EXPECT_EQ(tilde_a(l, g, -1, m), tilde_a(l, flipped, 1, m));
}

TEST(SovScalarProduct, MatchesBruteForce) {
    Rng rng(115);
    auto s = make_sample(116, 3, false);
    for (auto v : {PairingVariant::Plain, PairingVariant::Mixed, PairingVariant::DoubleUnder}) {
        auto al = random_complex_list(rng, 2), be = random_complex_list(rng, 2);
        SeparateVariant bv = v == PairingVariant::Plain ? SeparateVariant::BraPlain : SeparateVariant::BraUnder;
        SeparateVariant kv = v == PairingVariant::DoubleUnder ? SeparateVariant::KetUnder : SeparateVariant::KetPlain;
        auto bra = build_separate_state_sov({al, bv}, s.model, s.gauged, s.basis);
        auto ket = build_separate_state_sov({be, kv}, s.model, s.gauged, s.basis);
        cplx brute = brute_pairing(bra, ket);
        auto forms = sov_scalar_product_forms(EvenPoly::from_roots(al), EvenPoly::from_roots(be), v, s.model, s.gauged);
        EXPECT_LT(relative_residual(forms.value, brute), kTol);
        EXPECT_LT(relative_residual(forms.value_flip, brute), kTol);
        auto off = off_shell_sp(al, be, v, s.model, s.gauged);
        EXPECT_LT(relative_residual(off.a_form, brute), kTol);
        EXPECT_LT(relative_residual(off.slavnov_form, brute), kTol);
    }
}

TEST(SovScalarProduct, MixedVanishing) {
    auto s = make_sample(117, 3, false);
    Rng rng(118);
    auto al = random_complex_list(rng, 1), be = random_complex_list(rng, 1);
    auto bra = build_separate_state_sov({al, SeparateVariant::BraUnder}, s.model, s.gauged, s.basis);
    auto ket = build_separate_state_sov({be, SeparateVariant::KetPlain}, s.model, s.gauged, s.basis);
    double scale = bra.entries.norm() * ket.entries.norm();
    EXPECT_LT(std::abs(brute_pairing(bra, ket)) / scale, 1e-10);
    auto forms = sov_scalar_product_forms(EvenPoly::from_roots(al), EvenPoly::from_roots(be), PairingVariant::Mixed,
                                          s.model, s.gauged);
    EXPECT_LT(std::abs(forms.value) / scale, 1e-10);
    auto off = off_shell_sp(al, be, PairingVariant::Mixed, s.model, s.gauged);
    EXPECT_TRUE(off.vanishes_by_theorem);
    EXPECT_EQ(off.a_form, cplx(0.0));
}

TEST(OffShell, MixedFreeParameter) {
    auto s = make_sample(119, 2, true);
    Rng rng(120);
    auto al = random_complex_list(rng, 1), be = random_complex_list(rng, 1);
    cplx v0 = off_shell_sp(al, be, PairingVariant::Mixed, s.model, s.gauged, cplx(0.37, 0.21)).a_form;
    EXPECT_GT(std::abs(v0), 0.0);
    for (cplx z : {cplx(-0.8, 0.4), cplx(1.3, -0.2)}) {
        auto r = off_shell_sp(al, be, PairingVariant::Mixed, s.model, s.gauged, z);
        EXPECT_LT(relative_residual(r.a_form, v0), kTol);
        EXPECT_LT(relative_residual(r.slavnov_form, v0), kTol);
    }
}

TEST(OnShell, MatchesBruteAndOffShell) {
    auto s = make_sample(121, 3, true);
    const auto& m = s.model;
    const auto& g = s.gauged;
    auto eigen = diagonalize_transfer(m, g, cplx(0.37, 0.23), 1e-6);
    Rng rng(122);
    int compared = 0, vanishing = 0;
    for (const auto& e : eigen) {
        auto q = solve_tq(e.t_poly, m, g, 1, kTol);
        auto p = solve_tq(e.t_poly, m, g, -1, kTol);
        ASSERT_TRUE(q && p);
        auto lam = q->q_poly.roots(), mu = p->q_poly.roots();
        auto ket = build_separate_state_sov({lam, SeparateVariant::KetPlain}, m, g, s.basis);
        for (int nb = 0; nb <= 3; ++nb) {
            auto be = random_complex_list(rng, nb);
            auto bra = build_separate_state_sov({be, SeparateVariant::BraPlain}, m, g, s.basis);
            auto bra_u = build_separate_state_sov({be, SeparateVariant::BraUnder}, m, g, s.basis);
            auto on_q = on_shell_sp(be, lam, OnShellSide::QSide, m, g);
            auto on_p = on_shell_sp(be, mu, OnShellSide::PSide, m, g, lam);
            if (on_q.vanishes_by_theorem) {
                ++vanishing;
                EXPECT_LT(std::abs(brute_pairing(bra, ket)) / (bra.entries.norm() * ket.entries.norm()), 1e-10);
            } else {
                ++compared;
                EXPECT_LT(relative_residual(on_q.value, brute_pairing(bra, ket)), kTol);
                EXPECT_LT(relative_residual(on_q.value, off_shell_sp(be, lam, PairingVariant::Plain, m, g).a_form), kTol);
            }
            if (!on_p.vanishes_by_theorem)
                EXPECT_LT(relative_residual(on_p.value, brute_pairing(bra_u, ket)), kTol);
        }
    }
    EXPECT_GT(compared, 0);
    EXPECT_GT(vanishing, 0);
}

TEST(OnShell, DerivativeColumns) {
    auto s = make_sample(123, 2, true);
    auto eigen = diagonalize_transfer(s.model, s.gauged, cplx(0.37, 0.23), 1e-6);
    for (const auto& e : eigen) {
        auto q = solve_tq(e.t_poly, s.model, s.gauged, 1, kTol);
        ASSERT_TRUE(q.has_value());
        auto lam = q->q_poly.roots();
        cplx b(0.61, -0.33);
        for (int k = 0; k < static_cast<int>(lam.size()); ++k)
            EXPECT_LT(scaled_residual(t_root_derivative(b, q->q_poly, lam[k], 1, s.model, s.gauged),
                                      t_root_derivative_fd(b, lam, k, 1, s.model, s.gauged)),
                      1e-5);
    }
}

TEST(OnShell, RequiresConstrainedBoundary) {
    auto s = make_sample(124, 2, false);
    EXPECT_THROW(on_shell_sp({cplx(0.3)}, {cplx(0.4)}, OnShellSide::QSide, s.model, s.gauged), InvalidInput);
}
