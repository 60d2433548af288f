#include "test_support.hpp"

#include <algorithm>

using namespace sovxxx;
using namespace sovxxx::testing;

TEST(Factors, FgDecomposition) {
    auto s = make_sample(90, 3, false);
    const auto& m = s.model;
    for (int n = 0; n < 3; ++n) {
        cplx x = m.xi[n];
        cplx ratio = (x - m.eta) / (x + m.eta) * a_func(shifted_xi(m, n, 0), m, s.gauged, 1) /
                     a_func(-shifted_xi(m, n, 1), m, s.gauged, 1);
        EXPECT_LT(relative_residual(f_factor(m, n) * g_factor(m, s.gauged, n), ratio), 1e-12);
    }
}

TEST(Factors, TwoSiteProduct) {
    ModelParams m{2, cplx(0.7, 0.2), {cplx(0.3, 0.1), cplx(-0.4, 0.5)}};
    cplx e = m.eta, x1 = m.xi[0], x2 = m.xi[1];
    cplx f1 = -(x1 - x2 + e) * (x1 + x2 + e) / ((x1 - x2 - e) * (x1 + x2 - e));
    cplx f2 = -(x2 - x1 + e) * (x2 + x1 + e) / ((x2 - x1 - e) * (x2 + x1 - e));
    EXPECT_LT(relative_residual(f_factor(m, 0) * f_factor(m, 1), f1 * f2), 1e-14);
}

TEST(Factors, GFactorSpecialValues) {
    ModelParams m{1, cplx(0.7, 0.2), {cplx(0.3, 0.1)}};
    GaugedBoundaryParams g{cplx(0.0), cplx(0.0), cplx(0.5), cplx(0.0)};
    EXPECT_LT(std::abs(g_factor(m, g, 0) - 1.0), 1e-15);
    g.zetabar_p = -m.xi[0];
    g.zetabar_m = cplx(0.9, -0.3);
    EXPECT_LT(std::abs(g_factor(m, g, 0)), 1e-15);
}

TEST(References, SpinUpAndSpinDown) {
    auto s = make_sample(91, 3, false);
    int dim = s.model.dim();
    auto omega = reference_state(s.model, s.gauged, s.basis, ReferenceState::Omega);
    Vec up = Vec::Zero(dim);
    up(0) = 1.0;
    EXPECT_EQ(omega.side, Side::Column);
    EXPECT_LT((omega.entries - up).norm(), kTol);
    auto under = reference_state(s.model, s.gauged, s.basis, ReferenceState::OmegaUnder);
    Vec down = Vec::Zero(dim);
    down(dim - 1) = 1.0;
    EXPECT_EQ(under.side, Side::Row);
    EXPECT_LT((under.entries - down).norm(), kTol);
}

TEST(References, PairingSovVsBrute) {
    auto s = make_sample(92, 2, false);
    auto l = reference_state(s.model, s.gauged, s.basis, ReferenceState::OmegaL);
    auto r = reference_state(s.model, s.gauged, s.basis, ReferenceState::Omega);
    cplx sov = sov_scalar_product(EvenPoly(), EvenPoly(), PairingVariant::Plain, s.model, s.gauged);
    EXPECT_LT(relative_residual(brute_pairing(l, r), sov), kTol);
    auto raw_l = build_separate_state_sov({{}, SeparateVariant::BraPlain}, s.model, s.gauged, s.basis,
                                          SeparateNormalization::RawSum);
    auto raw_r = build_separate_state_sov({{}, SeparateVariant::KetPlain}, s.model, s.gauged, s.basis,
                                          SeparateNormalization::RawSum);
    cplx nf = s.basis.norm_factor;
    EXPECT_LT(relative_residual(brute_pairing(raw_l, raw_r), nf * nf * sov), kTol);
}

TEST(SeparateStates, EmptyProducts) {
    auto s = make_sample(93, 3, true);
    int dim = s.model.dim();
    auto ket = build_separate_state_sov({{}, SeparateVariant::KetPlain}, s.model, s.gauged, s.basis,
                                        SeparateNormalization::RawSum);
    Vec up = Vec::Zero(dim);
    up(0) = s.basis.norm_factor;
    EXPECT_LT((ket.entries - up).norm() / std::abs(s.basis.norm_factor), kTol);
    auto bra = build_separate_state_sov({{}, SeparateVariant::BraUnder}, s.model, s.gauged, s.basis,
                                        SeparateNormalization::RawSum);
    Vec down = Vec::Zero(dim);
    down(dim - 1) = s.basis.norm_factor;
    EXPECT_LT((bra.entries - down).norm() / std::abs(s.basis.norm_factor), kTol);
}

TEST(SeparateStates, SingleRootIsOneBOperator) {
    auto s = make_sample(94, 2, false);
    cplx b(0.43, -0.58);
    auto sov = build_separate_state_sov({{b}, SeparateVariant::KetPlain}, s.model, s.gauged, s.basis);
    Vec up = Vec::Zero(s.model.dim());
    up(0) = 1.0;
    Vec direct = b_renormalized(b, s.model, s.gauged) * up;
    EXPECT_LT((sov.entries - direct).norm() / direct.norm(), kTol);
}

TEST(SeparateStates, SovEqualsBetheAllVariants) {
    Rng rng(95);
    for (int n = 1; n <= 3; ++n) {
        auto s = make_sample(95 + n, n, n == 2);
        for (auto v : {SeparateVariant::KetPlain, SeparateVariant::BraPlain, SeparateVariant::BraUnder,
                       SeparateVariant::KetUnder}) {
            SeparateSpec spec{random_complex_list(rng, n), v};
            auto sov = build_separate_state_sov(spec, s.model, s.gauged, s.basis);
            auto bethe = build_bethe_state(spec, s.model, s.gauged, s.basis);
            EXPECT_EQ(sov.side, bethe.side);
            EXPECT_LT(state_residual(sov, bethe), kTol);
        }
    }
}

TEST(SeparateStates, BOperatorsCommute) {
    auto s = make_sample(99, 3, false);
    std::vector<cplx> roots{cplx(0.2, 0.5), cplx(-0.6, 0.1), cplx(0.9, -0.3)};
    auto a = build_bethe_state({roots, SeparateVariant::KetPlain}, s.model, s.gauged, s.basis);
    std::reverse(roots.begin(), roots.end());
    auto b = build_bethe_state({roots, SeparateVariant::KetPlain}, s.model, s.gauged, s.basis);
    EXPECT_LT(state_residual(a, b), 1e-12);
}

TEST(SeparateStates, EigenstateFromEitherReference) {
    auto s = make_sample(100, 3, true);
    auto eigen = diagonalize_transfer(s.model, s.gauged, cplx(0.37, 0.23), 1e-6);
    for (const auto& e : eigen) {
        auto q = solve_tq(e.t_poly, s.model, s.gauged, 1, kTol);
        auto p = solve_tq(e.t_poly, s.model, s.gauged, -1, kTol);
        ASSERT_TRUE(q && p);
        auto lam = q->q_poly.roots(), mu = p->q_poly.roots();
        cplx ratio(1.0);
        for (auto x : lam) ratio *= d_of(x, s.model) * d_of(-x, s.model);
        for (auto x : mu) ratio /= d_of(x, s.model) * d_of(-x, s.model);
        auto from_q = build_bethe_state({lam, SeparateVariant::KetPlain}, s.model, s.gauged, s.basis);
        auto from_p = build_bethe_state({mu, SeparateVariant::KetUnder}, s.model, s.gauged, s.basis);
        StateVector scaled{from_p.side, ratio * from_p.entries};
        EXPECT_LT(state_residual(from_q, scaled), kTol);
        Mat t = gauged_transfer(cplx(0.5, 0.2), s.model, s.gauged);
        cplx tv = e.t_poly(cplx(0.5, 0.2));
        EXPECT_LT((t * from_q.entries - tv * from_q.entries).norm() / (t.norm() * from_q.entries.norm()), kTol);
    }
}

TEST(Pairing, Bilinear) {
    auto s = make_sample(101, 2, false);
    Rng rng(102);
    auto bra = build_separate_state_sov({random_complex_list(rng, 1), SeparateVariant::BraPlain}, s.model, s.gauged,
                                        s.basis);
    auto x = build_separate_state_sov({random_complex_list(rng, 2), SeparateVariant::KetPlain}, s.model, s.gauged,
                                      s.basis);
    auto y = build_separate_state_sov({random_complex_list(rng, 1), SeparateVariant::KetPlain}, s.model, s.gauged,
                                      s.basis);
    StateVector sum{Side::Column, x.entries + y.entries};
    EXPECT_LT(scaled_residual(brute_pairing(bra, sum), brute_pairing(bra, x) + brute_pairing(bra, y)), 1e-12);
    RowVec e0 = RowVec::Zero(4);
    e0(0) = 1.0;
    EXPECT_EQ(brute_pairing(e0, e0.transpose()), cplx(1.0));
    EXPECT_THROW(brute_pairing(e0, Vec::Zero(2)), InvalidInput);
}
