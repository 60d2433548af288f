#pragma once

#include <sovxxx/sovxxx.hpp>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace sovxxx::cli {

using json = nlohmann::ordered_json;

enum class ExitCode { Pass = 0, CheckFailure = 1, InvalidInput = 2 };

struct ScalarProductRequest {
    std::vector<cplx> alpha;
    std::vector<cplx> beta;
    PairingVariant variant = PairingVariant::Plain;
    cplx free_zeta{0.37, 0.21};
    std::optional<int> on_shell_eigen;  // beta taken from Q_t of this eigenstate
};

struct RunConfig {
    ModelParams model;
    GaugedBoundaryParams gauged;
    std::optional<RawBoundaryParams> raw;
    std::optional<GaugeChoice> gauge;
    bool constrained = false;
    double tol = 1e-8;
    std::uint64_t seed = 1;
    int n_max = 3;
    std::optional<ScalarProductRequest> scalar_product;
    json echo;
};

inline cplx parse_complex(const json& j, const std::string& what) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return cplx(j[0].get<double>(), j[1].get<double>());
    throw InvalidInput(what + ": expected a number or [re, im]");
}

inline std::vector<cplx> parse_complex_list(const json& j, const std::string& what) {
    if (!j.is_array()) throw InvalidInput(what + ": expected an array");
    std::vector<cplx> out;
    for (const auto& e : j) out.push_back(parse_complex(e, what));
    return out;
}

inline json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline json complex_list_json(const std::vector<cplx>& zs) {
    json a = json::array();
    for (auto z : zs) a.push_back(complex_json(z));
    return a;
}

inline PairingVariant parse_variant(const std::string& s) {
    if (s == "plain") return PairingVariant::Plain;
    if (s == "mixed") return PairingVariant::Mixed;
    if (s == "double_under") return PairingVariant::DoubleUnder;
    throw InvalidInput("unknown pairing variant: " + s);
}

inline std::string variant_name(PairingVariant v) {
    switch (v) {
        case PairingVariant::Plain: return "plain";
        case PairingVariant::Mixed: return "mixed";
        case PairingVariant::DoubleUnder: return "double_under";
    }
    return "plain";
}

inline RawBoundaryParams parse_raw(const json& j) {
    RawBoundaryParams b;
    b.zeta_p = parse_complex(j.at("zeta_p"), "zeta_p");
    b.zeta_m = parse_complex(j.at("zeta_m"), "zeta_m");
    b.kappa_p = parse_complex(j.value("kappa_p", json(0.0)), "kappa_p");
    b.kappa_m = parse_complex(j.value("kappa_m", json(0.0)), "kappa_m");
    b.tau_p = parse_complex(j.value("tau_p", json(0.0)), "tau_p");
    b.tau_m = parse_complex(j.value("tau_m", json(0.0)), "tau_m");
    return b;
}

// Model and boundary section; the optional verify/scalar_product sections are read separately.
inline RunConfig parse_config(const json& j) {
    RunConfig c;
    c.echo = j;
    if (!j.is_object()) throw InvalidInput("config: expected an object");
    c.tol = j.value("tol", c.tol);
    c.seed = j.value("seed", c.seed);
    c.constrained = j.value("constrained", false);
    if (j.contains("verify")) c.n_max = j["verify"].value("n_max", c.n_max);
    if (!j.contains("n_sites")) return c;

    c.model.n_sites = j.at("n_sites").get<int>();
    c.model.eta = parse_complex(j.at("eta"), "eta");
    bool has_list = j.contains("xi"), has_sample = j.contains("xi_sample");
    if (has_list == has_sample) throw InvalidInput("config: give exactly one of xi, xi_sample");
    if (has_list) {
        c.model.xi = parse_complex_list(j["xi"], "xi");
    } else {
        const auto& s = j["xi_sample"];
        double r_min = s.value("r_min", 0.3), r_max = s.value("r_max", 1.0);
        if (!(r_min > 0.0 && r_max > r_min)) throw InvalidInput("xi_sample: need 0 < r_min < r_max");
        Rng rng(s.value("seed", std::uint64_t{1}));
        std::uniform_real_distribution<double> rad(r_min, r_max), arg(0.0, 2.0 * std::numbers::pi);
        for (int n = 0; n < c.model.n_sites; ++n) {
            double r = rad(rng);
            double a = arg(rng);
            c.model.xi.push_back(std::polar(r, a));
        }
    }
    c.model.validate_shape();

    const auto& b = j.at("boundary");
    bool has_raw = b.contains("raw"), has_gauged = b.contains("gauged");
    if (has_raw == has_gauged) throw InvalidInput("boundary: give exactly one of raw, gauged");
    if (has_raw) {
        c.raw = parse_raw(b["raw"]);
        auto signs = b.value("gauge", json::array({1, 1}));
        if (!signs.is_array() || signs.size() != 2) throw InvalidInput("boundary.gauge: expected [eps_p, eps_m]");
        c.gauge = GaugeChoice{signs[0].get<int>(), signs[1].get<int>()};
        c.gauged = gauged_params(*c.raw, *c.gauge);
    } else {
        const auto& g = b["gauged"];
        c.gauged.zetabar_p = parse_complex(g.at("zetabar_p"), "zetabar_p");
        c.gauged.zetabar_m = parse_complex(g.at("zetabar_m"), "zetabar_m");
        c.gauged.bbar_m = parse_complex(g.at("bbar_m"), "bbar_m");
        c.gauged.cbar_p = parse_complex(g.value("cbar_p", json(0.0)), "cbar_p");
    }
    c.gauged.validate();
    if (c.constrained) {
        if (std::abs(c.gauged.cbar_p) > c.tol)
            throw InvalidInput("constrained: boundary parameters give cbar_+ = " +
                               std::to_string(std::abs(c.gauged.cbar_p)));
        c.gauged.cbar_p = 0.0;
    }

    if (j.contains("scalar_product")) {
        const auto& s = j["scalar_product"];
        ScalarProductRequest r;
        r.alpha = parse_complex_list(s.value("alpha", json::array()), "alpha");
        r.beta = parse_complex_list(s.value("beta", json::array()), "beta");
        r.variant = parse_variant(s.value("variant", std::string("plain")));
        if (s.contains("free_zeta")) r.free_zeta = parse_complex(s["free_zeta"], "free_zeta");
        if (s.contains("on_shell_eigen")) r.on_shell_eigen = s["on_shell_eigen"].get<int>();
        c.scalar_product = r;
    }
    return c;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open config file: " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("config parse error: ") + e.what());
    }
}

// JSON text with every floating-point value written to 17 significant digits.
inline void write_json(std::ostream& os, const json& j, int indent = 0) {
    std::string pad(static_cast<std::size_t>(indent), ' ');
    std::string inner(static_cast<std::size_t>(indent + 2), ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) os << ",\n";
                first = false;
                os << inner << json(it.key()).dump() << ": ";
                write_json(os, it.value(), indent + 2);
            }
            os << "\n" << pad << "}";
            return;
        }
        case json::value_t::array: {
            bool flat = std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
            if (j.empty()) {
                os << "[]";
                return;
            }
            if (flat) {
                os << "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) os << ", ";
                    write_json(os, j[i], indent + 2);
                }
                os << "]";
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ",\n";
                os << inner;
                write_json(os, j[i], indent + 2);
            }
            os << "\n" << pad << "]";
            return;
        }
        case json::value_t::number_float: {
            double v = j.get<double>();
            if (!std::isfinite(v)) {
                os << (std::isnan(v) ? "\"nan\"" : (v > 0 ? "\"inf\"" : "\"-inf\""));
                return;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            std::string s(buf);
            if (s.find_first_of(".eE") == std::string::npos) s += ".0";
            os << s;
            return;
        }
        default:
            os << j.dump();
    }
}

}  // namespace sovxxx::cli
