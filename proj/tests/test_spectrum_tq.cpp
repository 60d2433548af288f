#include "test_support.hpp"

using namespace sovxxx;
using namespace sovxxx::testing;

namespace {

struct Spectral {
    Sample s;
    std::vector<Eigenpair> eigen;
};

Spectral spectral(std::uint64_t seed, int n, bool constrained) {
    Spectral out{make_sample(seed, n, constrained), {}};
    out.eigen = diagonalize_transfer(out.s.model, out.s.gauged, cplx(0.37, 0.23), 1e-6);
    return out;
}

}  // namespace

TEST(Diagonalize, SingleSite) {
    auto sp = spectral(50, 1, false);
    ASSERT_EQ(sp.eigen.size(), 2u);
    for (const auto& e : sp.eigen) EXPECT_EQ(e.t_poly.degree(), 2);
}

TEST(Diagonalize, EigenvaluesSumToTrace) {
    auto sp = spectral(51, 3, false);
    cplx l(0.52, -0.31);
    cplx sum(0.0);
    for (const auto& e : sp.eigen) sum += e.t_poly(l);
    EXPECT_LT(scaled_residual(sum, gauged_transfer(l, sp.s.model, sp.s.gauged).trace()), 1e-10);
}

TEST(Diagonalize, DegenerateSpectrumRejected) {
    ModelParams m{2, cplx(0.7, 0.2), {cplx(0.3, 0.1), cplx(-0.4, 0.5)}};
    GaugedBoundaryParams g{cplx(1.1, 0.3), cplx(-0.9, 0.2), cplx(0.6, -0.4), cplx(0.0)};
    EXPECT_THROW(diagonalize_transfer(m, g, cplx(0.37, 0.23), 1e3), GenericityError);
}

TEST(TFromValues, InterpolationProperties) {
    auto sp = spectral(52, 3, false);
    const auto& m = sp.s.model;
    const auto& g = sp.s.gauged;
    for (const auto& e : sp.eigen) {
        for (int a = 0; a < 3; ++a)
            EXPECT_LT(scaled_residual(t_from_values_at(m.xi[a], m, g, e.t_values_at_xi), e.t_values_at_xi[a]), 1e-12);
        for (auto l : sample_points(6, m.eta, 0.77))
            EXPECT_LT(scaled_residual(t_from_values_at(l, m, g, e.t_values_at_xi), e.t_poly(l)), kTol);
    }
    cplx at_half = t_from_values_at(m.eta / 2.0, m, g, sp.eigen[0].t_values_at_xi);
    EXPECT_LT(scaled_residual(at_half, 2.0 * static_cast<double>(sign_pow(3)) * qdet_bulk(0.0, m)), 1e-12);
    auto poly = t_from_values(m, g, sp.eigen[0].t_values_at_xi);
    EXPECT_LT(relative_residual(poly.leading(), leading_t_coefficient(g)), 1e-9);
    EXPECT_THROW(t_from_values_at(0.3, m, g, {1.0}), InvalidInput);
}

TEST(AFunction, ZerosSignFlipAndPole) {
    auto s = make_sample(53, 2, false);
    const auto& m = s.model;
    EXPECT_LT(std::abs(a_func(-shifted_xi(m, 0, 0), m, s.gauged, 1)), 1e-14);
    EXPECT_THROW(a_func(0.0, m, s.gauged, 1), PoleError);
    GaugedBoundaryParams flipped = s.gauged;
    flipped.zetabar_p = -flipped.zetabar_p;
    flipped.zetabar_m = -flipped.zetabar_m;
    cplx l(0.41, 0.27);
    EXPECT_LT(scaled_residual(a_func(l, m, s.gauged, -1), a_func(l, m, flipped, 1)), 1e-14);
}

TEST(AFunction, QuantumDeterminantRelation) {
    auto s = make_sample(54, 2, false);
    const auto& m = s.model;
    const auto& g = s.gauged;
    cplx e = m.eta;
    for (cplx l : {cplx(0.33, 0.61), cplx(-0.72, 0.18)}) {
        cplx qdet_u = qdet_bulk(l, m) * qdet_bulk(-l, m) * qdet_gauged_k_minus_closed(l, g, e);
        cplx lhs = qdet_gauged_k_plus_closed(l, g, e) * qdet_u / (e * e - 4.0 * l * l);
        cplx rhs = a_func(l + e / 2.0, m, g, 1) * a_func(-l + e / 2.0, m, g, 1);
        EXPECT_LT(relative_residual(lhs, rhs), 1e-12);
    }
}

TEST(DiscreteSystem, EigenvaluesPassPerturbedFails) {
    for (int n = 1; n <= 4; ++n) {
        auto sp = spectral(55 + n, n, n % 2 == 0);
        const auto& m = sp.s.model;
        const auto& g = sp.s.gauged;
        for (const auto& e : sp.eigen) EXPECT_LT(check_discrete_system(e.t_poly, m, g), kTol);
        auto vals = sp.eigen[0].t_values_at_xi;
        vals[0] *= 1.01;
        EXPECT_GT(check_discrete_system(t_from_values(m, g, vals), m, g), 1e-4);
    }
}

TEST(DiscreteSystem, SingleSiteQuadratic) {
    auto sp = spectral(60, 1, false);
    const auto& m = sp.s.model;
    const auto& g = sp.s.gauged;
    cplx x0 = shifted_xi(m, 0, 0), x1 = shifted_xi(m, 0, 1);
    // t(l) is affine in y = t(xi_1).
    auto at = [&](cplx l, cplx y) { return t_from_values_at(l, m, g, {y}); };
    cplx c0 = at(x0, 0.0), r0 = at(x0, 1.0) - c0;
    cplx c1 = at(x1, 0.0), r1 = at(x1, 1.0) - c1;
    cplx qa = r0 * r1, qb = c0 * r1 + c1 * r0, qc = c0 * c1 - a_func(x0, m, g, 1) * a_func(-x1, m, g, 1);
    cplx disc = std::sqrt(qb * qb - 4.0 * qa * qc);
    std::vector<cplx> roots{(-qb + disc) / (2.0 * qa), (-qb - disc) / (2.0 * qa)};
    for (const auto& e : sp.eigen) {
        double best = std::min(std::abs(roots[0] - e.t_values_at_xi[0]), std::abs(roots[1] - e.t_values_at_xi[0]));
        EXPECT_LT(best / (1.0 + std::abs(e.t_values_at_xi[0])), 1e-9);
    }
}

TEST(Inhomogeneity, RootsAndDegree) {
    auto s = make_sample(61, 2, false);
    const auto& m = s.model;
    const auto& g = s.gauged;
    EXPECT_EQ(f_inhom(m.eta / 2.0, m, g), cplx(0.0));
    for (int n = 0; n < 2; ++n)
        for (int h = 0; h < 2; ++h) {
            EXPECT_LT(std::abs(f_inhom(shifted_xi(m, n, h), m, g)), 1e-13);
            EXPECT_LT(std::abs(f_inhom(-shifted_xi(m, n, h), m, g)), 1e-13);
        }
    auto c = interpolate_even<cplx>([&](cplx l) { return f_inhom(l, m, g); }, 2 * 2 + 1, 1.5);
    EXPECT_LT(relative_residual(c.back(), g.bbar_m * g.cbar_p / (g.zetabar_m * g.zetabar_p)), 1e-9);
    auto sc = make_sample(62, 2, true);
    EXPECT_EQ(f_inhom(cplx(0.3, 0.2), sc.model, sc.gauged), cplx(0.0));
}

TEST(TQ, UnconstrainedDegreeN) {
    auto sp = spectral(63, 3, false);
    const auto& m = sp.s.model;
    const auto& g = sp.s.gauged;
    for (const auto& e : sp.eigen) {
        for (int sign : {1, -1}) {
            auto q = solve_tq(e.t_poly, m, g, sign, kTol);
            ASSERT_TRUE(q.has_value());
            EXPECT_EQ(q->degree, 3);
            EXPECT_LT(q->residual, kTol);
            EXPECT_EQ(q->q_poly.leading(), cplx(1.0));
            EXPECT_GT(verify_tq(e.t_poly, q->q_poly, m, g, -sign, true), 1e-6);
            EvenPoly bumped = q->q_poly;
            bumped.coeffs[0] += 1e-3 * (1.0 + std::abs(bumped.coeffs[0]));
            EXPECT_GT(verify_tq(e.t_poly, bumped, m, g, sign, true), 100.0 * q->residual);
        }
    }
}

TEST(TQ, ReferenceEigenvalueHasConstantQ) {
    auto sp = spectral(64, 3, true);
    int k = index_of_all_up(sp.eigen);
    auto q = solve_tq(sp.eigen[k].t_poly, sp.s.model, sp.s.gauged, 1, kTol);
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(q->degree, 0);
    cplx l(0.47, -0.2);
    cplx want = a_func(l, sp.s.model, sp.s.gauged, 1) + a_func(-l, sp.s.model, sp.s.gauged, 1);
    EXPECT_LT(scaled_residual(sp.eigen[k].t_poly(l), want), kTol);
}

TEST(TQ, ConstrainedPairAndWronskian) {
    for (int n = 1; n <= 4; ++n) {
        auto sp = spectral(70 + n, n, true);
        const auto& m = sp.s.model;
        const auto& g = sp.s.gauged;
        for (const auto& e : sp.eigen) {
            auto q = solve_tq(e.t_poly, m, g, 1, kTol);
            auto p = solve_tq(e.t_poly, m, g, -1, kTol);
            ASSERT_TRUE(q && p);
            EXPECT_EQ(q->degree + p->degree, n);
            auto w = wronskian_check(q->q_poly, p->q_poly, m, g);
            EXPECT_TRUE(w.degrees_sum_to_n);
            EXPECT_LT(w.residual_a_minus, kTol);
            EXPECT_EQ(w.passing_reading(), "a(-lambda)d(lambda)");
        }
    }
}

TEST(TQ, WronskianLeadingAsymptotics) {
    auto sp = spectral(75, 3, true);
    const auto& m = sp.s.model;
    const auto& g = sp.s.gauged;
    const auto& e = sp.eigen[1];
    auto q = solve_tq(e.t_poly, m, g, 1, kTol);
    auto p = solve_tq(e.t_poly, m, g, -1, kTol);
    ASSERT_TRUE(q && p);
    cplx l(1e4, 3e3);
    cplx w = wronskian(q->q_poly, p->q_poly, g, m.eta, l) / std::pow(l, 2 * 3 + 1);
    cplx want = 2.0 * (g.zetabar_p + g.zetabar_m + static_cast<double>(p->degree - q->degree) * m.eta);
    EXPECT_LT(relative_residual(w, want), 1e-2);
}

TEST(TQ, TFromQP) {
    auto sp = spectral(76, 3, true);
    const auto& m = sp.s.model;
    const auto& g = sp.s.gauged;
    for (const auto& e : sp.eigen) {
        auto q = solve_tq(e.t_poly, m, g, 1, kTol);
        auto p = solve_tq(e.t_poly, m, g, -1, kTol);
        ASSERT_TRUE(q && p);
        for (auto l : sample_points(6, m.eta, 0.3)) {
            cplx v = t_from_qp(q->q_poly, p->q_poly, m, g, l);
            EXPECT_LT(scaled_residual(v, e.t_poly(l)), kTol);
            EXPECT_LT(scaled_residual(v, t_from_qp(q->q_poly, p->q_poly, m, g, -l)), 1e-12);
        }
    }
}

TEST(Eigenstates, ResidualAndLeftForms) {
    for (int n = 1; n <= 4; ++n) {
        for (bool constrained : {false, true}) {
            auto sp = spectral(80 + n, n, constrained);
            const auto& m = sp.s.model;
            const auto& g = sp.s.gauged;
            std::vector<EigenstateForms> forms;
            for (const auto& e : sp.eigen) {
                auto q = solve_tq(e.t_poly, m, g, 1, kTol);
                ASSERT_TRUE(q.has_value());
                forms.push_back(eigenstate_from_q(q->q_poly, m, g, sp.s.basis));
                const auto& f = forms.back();
                EXPECT_LT(eigenstate_residual(e.t_poly, f.right, f.left, m, g), kTol);
                EXPECT_LT((f.left - f.left_flipped).norm() / f.left.norm(), kTol);
            }
            if (n > 3) continue;
            for (std::size_t i = 0; i < forms.size(); ++i)
                for (std::size_t j = 0; j < forms.size(); ++j) {
                    if (i == j) continue;
                    cplx ov = brute_pairing(forms[i].left, forms[j].right);
                    EXPECT_LT(std::abs(ov) / (forms[i].left.norm() * forms[j].right.norm()), 1e-9);
                }
        }
    }
}
