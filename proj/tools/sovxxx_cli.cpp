#include "config.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace sovxxx;
using namespace sovxxx::cli;

namespace {

const cplx kDiagonalizationPoint{0.37, 0.23};

json records_json(const std::vector<CheckRecord>& records) {
    json out = json::array();
    for (const auto& r : records)
        out.push_back({{"name", r.name},
                       {"property", r.property},
                       {"residual", r.residual},
                       {"tol", r.tol},
                       {"instances", r.instances},
                       {"pass", r.pass}});
    return out;
}

json cmd_spectrum(const RunConfig& c, CheckLog& log) {
    const auto& m = c.model;
    const auto& g = c.gauged;
    validate_sov_inputs(m, g);
    auto basis = build_sov_basis(m, g);
    auto eigen = diagonalize_transfer(m, g, kDiagonalizationPoint * std::abs(m.eta), 1e-9);
    bool homogeneous = std::abs(g.cbar_p) == 0.0;
    auto probes = sample_points(6, m.eta, 0.77);
    json table = json::array();
    for (const auto& e : eigen) {
        json row;
        std::vector<cplx> at_xi(e.t_values_at_xi);
        row["t_at_xi"] = complex_list_json(at_xi);
        log.add("discrete_system", "t(xi0) t(xi1) = A(xi0) A(-xi1)", check_discrete_system(e.t_poly, m, g), c.tol);
        double interp = 0.0;
        for (auto l : probes) interp = std::max(interp, scaled_residual(t_from_values_at(l, m, g, at_xi), e.t_poly(l)));
        log.add("t_interpolation", "t reconstructed from its values at xi", interp, c.tol);
        auto q = solve_tq(e.t_poly, m, g, 1, c.tol);
        auto p = solve_tq(e.t_poly, m, g, -1, c.tol);
        if (!q || !p) {
            log.fail("tq_solvable", "T-Q solutions exist", "no polynomial solution");
            row["q_roots"] = nullptr;
            row["p_roots"] = nullptr;
            table.push_back(row);
            continue;
        }
        row["q_roots"] = complex_list_json(q->q_poly.roots());
        row["p_roots"] = complex_list_json(p->q_poly.roots());
        row["q_degree"] = q->degree;
        row["p_degree"] = p->degree;
        log.add("tq_residual", "T-Q functional equation", std::max(q->residual, p->residual), c.tol);
        if (homogeneous) {
            log.add("tq_degree_sum", "p + q = N", q->degree + p->degree == m.n_sites ? 0.0 : 1.0, 0.5);
            auto w = wronskian_check(q->q_poly, p->q_poly, m, g);
            row["wronskian_reading"] = w.passing_reading();
            log.add("wronskian", "Wronskian with a(-l) d(l)", w.residual_a_minus, c.tol);
        } else {
            log.add("tq_degree", "Q and P have degree N", q->degree == m.n_sites && p->degree == m.n_sites ? 0.0 : 1.0,
                    0.5);
        }
        auto forms = eigenstate_from_q(q->q_poly, m, g, basis);
        log.add("eigenstate_residual", "SoV eigenstates from Q",
                eigenstate_residual(e.t_poly, forms.right, forms.left, m, g), c.tol);
        table.push_back(row);
    }
    return table;
}

json cmd_scalar_product(const RunConfig& c, CheckLog& log) {
    if (!c.scalar_product) throw InvalidInput("scalar-product: config has no scalar_product section");
    const auto& m = c.model;
    const auto& g = c.gauged;
    auto req = *c.scalar_product;
    auto basis = build_sov_basis(m, g);
    std::optional<std::vector<cplx>> lam, mu;
    if (req.on_shell_eigen) {
        if (std::abs(g.cbar_p) != 0.0) throw InvalidInput("on-shell scalar products need constrained: true");
        auto eigen = diagonalize_transfer(m, g, kDiagonalizationPoint * std::abs(m.eta), 1e-9);
        int k = *req.on_shell_eigen;
        if (k < 0 || k >= static_cast<int>(eigen.size())) throw InvalidInput("on_shell_eigen out of range");
        auto q = solve_tq(eigen[k].t_poly, m, g, 1, c.tol);
        auto p = solve_tq(eigen[k].t_poly, m, g, -1, c.tol);
        if (!q || !p) throw InconsistencyError("no T-Q solution for the selected eigenstate");
        lam = q->q_poly.roots();
        mu = p->q_poly.roots();
        req.beta = *lam;
        if (req.variant == PairingVariant::DoubleUnder)
            throw InvalidInput("on-shell rows exist for the plain and mixed variants only");
    }
    auto [bv, kv] = [&] {
        switch (req.variant) {
            case PairingVariant::Plain: return std::pair{SeparateVariant::BraPlain, SeparateVariant::KetPlain};
            case PairingVariant::Mixed: return std::pair{SeparateVariant::BraUnder, SeparateVariant::KetPlain};
            default: return std::pair{SeparateVariant::BraUnder, SeparateVariant::KetUnder};
        }
    }();
    auto bra = build_separate_state_sov({req.alpha, bv}, m, g, basis);
    auto ket = build_separate_state_sov({req.beta, kv}, m, g, basis);
    cplx brute = brute_pairing(bra, ket);
    double scale = std::max(separate_state_magnitude({req.alpha, bv}, m, g, basis) *
                                separate_state_magnitude({req.beta, kv}, m, g, basis),
                            1e-300);
    int n_total = static_cast<int>(req.alpha.size() + req.beta.size());
    bool vanishing = req.variant == PairingVariant::Mixed && n_total < m.n_sites;

    std::vector<std::pair<std::string, cplx>> rows;
    rows.emplace_back("brute_force", brute);
    auto sov = sov_scalar_product_forms(EvenPoly::from_roots(req.alpha), EvenPoly::from_roots(req.beta), req.variant, m, g);
    rows.emplace_back("sov_determinant", sov.value);
    rows.emplace_back("sov_flipped_determinant", sov.value_flip);
    auto off = off_shell_sp(req.alpha, req.beta, req.variant, m, g, req.free_zeta);
    if (!vanishing) {
        rows.emplace_back("a_functional", off.a_form);
        rows.emplace_back("slavnov", off.slavnov_form);
    } else {
        rows.emplace_back("vanishing_theorem", cplx(0.0));
    }
    if (lam) {
        if (req.variant == PairingVariant::Plain) {
            auto on = on_shell_sp(req.alpha, *lam, OnShellSide::QSide, m, g);
            rows.emplace_back("on_shell_q_side", on.value);
        } else {
            auto on = on_shell_sp(req.alpha, *mu, OnShellSide::PSide, m, g, *lam);
            rows.emplace_back("on_shell_p_side", on.value);
        }
    }
    json table = json::array();
    bool brute_zero = std::abs(brute) / scale < 1e-10;
    for (const auto& [method, value] : rows) {
        double res = method == "brute_force" ? 0.0
                     : brute_zero            ? std::abs(value - brute) / scale
                                             : relative_residual(value, brute);
        table.push_back({{"method", method}, {"value", complex_json(value)}, {"residual_vs_brute", res}});
        if (method != "brute_force")
            log.add(method, brute_zero ? "vanishes like the brute-force pairing" : "agrees with brute force", res,
                    c.tol);
    }
    json out;
    out["variant"] = variant_name(req.variant);
    out["alpha"] = complex_list_json(req.alpha);
    out["beta"] = complex_list_json(req.beta);
    if (vanishing) out["note"] = "mixed pairing vanishes for n_alpha + n_beta < N";
    out["rows"] = table;
    return out;
}

json cmd_verify(const RunConfig& c, const std::string& suite, CheckLog& log) {
    VerifyOptions o;
    o.seed = c.seed;
    o.tol = c.tol;
    o.n_max = c.n_max;
    if (o.n_max < 1 || o.n_max > 6) throw InvalidInput("verify: n_max must be in 1..6");
    json out = json::array();
    for (const auto& [name, sub] : run_suite(suite, o)) {
        out.push_back({{"suite", name}, {"pass", sub.pass()}, {"checks", records_json(sub.records())}});
        for (const auto& r : sub.records()) log.add(name + "." + r.name, r.property, r.pass ? 0.0 : 1.0, 0.5);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Open XXX chain: spectrum, SoV scalar products and verification suites"};
    app.require_subcommand(1);
    std::string config_path, out_path, suite = "all";
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<int> n_max;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--tol", tol, "check tolerance")->check(CLI::PositiveNumber);
    app.add_option("--out", out_path, "write the report here instead of stdout");
    app.fallthrough();
    auto* spectrum = app.add_subcommand("spectrum", "diagonalize, solve T-Q, check the spectrum");
    auto* scalar = app.add_subcommand("scalar-product", "compare scalar-product representations");
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite, "algebra|sov|spectrum|identities|scalar_products|all")
        ->check(CLI::IsMember({"algebra", "sov", "spectrum", "identities", "scalar_products", "all"}));
    verify->add_option("--n-max", n_max, "largest chain length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return static_cast<int>(ExitCode::InvalidInput);
    }

    json report;
    CheckLog log;
    try {
        json cfg = config_path.empty() ? json::object() : load_json_file(config_path);
        RunConfig c = parse_config(cfg);
        if (seed) c.seed = *seed;
        if (tol) c.tol = *tol;
        if (n_max) c.n_max = *n_max;
        if (!(c.tol > 0.0)) throw InvalidInput("tol must be positive");
        report["command"] = spectrum->parsed() ? "spectrum" : scalar->parsed() ? "scalar-product" : "verify";
        report["config"] = c.echo;
        report["seed"] = c.seed;
        report["tol"] = c.tol;
        if (!verify->parsed() && !cfg.contains("n_sites")) throw InvalidInput("config must define the model");
        try {
            if (spectrum->parsed()) report["spectrum"] = cmd_spectrum(c, log);
            if (scalar->parsed()) report["scalar_products"] = cmd_scalar_product(c, log);
            if (verify->parsed()) {
                report["suite"] = suite;
                report["suites"] = cmd_verify(c, suite, log);
            }
        } catch (const InconsistencyError& e) {
            log.fail("computation", "computation completed", e.what());
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return static_cast<int>(ExitCode::InvalidInput);
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return static_cast<int>(ExitCode::InvalidInput);
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return static_cast<int>(ExitCode::InvalidInput);
    }
    report["checks"] = records_json(log.records());
    report["status"] = log.pass() ? "pass" : "fail";

    if (out_path.empty()) {
        write_json(std::cout, report);
        std::cout << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "cannot write " << out_path << "\n";
            return static_cast<int>(ExitCode::InvalidInput);
        }
        write_json(out, report);
        out << "\n";
    }
    return static_cast<int>(log.pass() ? ExitCode::Pass : ExitCode::CheckFailure);
}
