#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace sovxxx {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RowVec = Eigen::RowVectorXcd;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;

// Bad user input: maps to CLI exit code 2.
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Inhomogeneities or boundary parameters too close to a forbidden set.
struct GenericityError : InvalidInput {
    using InvalidInput::InvalidInput;
};

// Evaluation at a pole of a rational function.
struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

// Two representations that must agree did not.
struct InconsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double scaled_residual(cplx lhs, cplx rhs) {
    return std::abs(lhs - rhs) / (1.0 + std::max(std::abs(lhs), std::abs(rhs)));
}

// Relative Frobenius residual of a matrix identity.
inline double matrix_residual(const Mat& lhs, const Mat& rhs) {
    double scale = std::max({lhs.norm(), rhs.norm(), 1e-300});
    return (lhs - rhs).norm() / scale;
}

inline int sign_pow(int n) { return (n % 2 == 0) ? 1 : -1; }

struct ModelParams {
    int n_sites = 1;
    cplx eta{1.0, 0.0};
    std::vector<cplx> xi;

    int dim() const { return 1 << n_sites; }

    // Default margin used for genericity checks.
    double default_delta() const { return 1e-2 * std::abs(eta); }

    void validate_shape() const {
        if (n_sites < 1) throw InvalidInput("n_sites must be positive");
        if (n_sites > 12) throw InvalidInput("n_sites too large for dense representation");
        if (std::abs(eta) == 0.0) throw InvalidInput("eta must be nonzero");
        if (static_cast<int>(xi.size()) != n_sites)
            throw InvalidInput("xi must have n_sites entries");
    }

    // xi_j, xi_j +- xi_k (j != k) must stay delta away from {0, eta, -eta}.
    void validate_generic(double delta) const {
        validate_shape();
        auto near_forbidden = [&](cplx v) {
            return std::abs(v) < delta || std::abs(v - eta) < delta || std::abs(v + eta) < delta;
        };
        for (int j = 0; j < n_sites; ++j) {
            if (near_forbidden(xi[j]))
                throw GenericityError("xi_" + std::to_string(j + 1) + " violates genericity");
            for (int k = 0; k < n_sites; ++k) {
                if (j == k) continue;
                if (near_forbidden(xi[j] + xi[k]) || near_forbidden(xi[j] - xi[k]))
                    throw GenericityError("xi_" + std::to_string(j + 1) + ", xi_" +
                                          std::to_string(k + 1) + " violate genericity");
            }
        }
    }
    void validate_generic() const { validate_generic(default_delta()); }
};

struct RawBoundaryParams {
    cplx zeta_p{1.0, 0.0}, zeta_m{1.0, 0.0};
    cplx kappa_p{0.0, 0.0}, kappa_m{0.0, 0.0};
    cplx tau_p{0.0, 0.0}, tau_m{0.0, 0.0};

    void validate() const {
        if (std::abs(zeta_p) == 0.0 || std::abs(zeta_m) == 0.0)
            throw InvalidInput("zeta_+ and zeta_- must be nonzero");
    }
};

struct GaugeChoice {
    int eps_p = 1;
    int eps_m = 1;

    void validate() const {
        if ((eps_p != 1 && eps_p != -1) || (eps_m != 1 && eps_m != -1))
            throw InvalidInput("gauge signs must be +1 or -1");
    }
};

struct GaugedBoundaryParams {
    cplx zetabar_p{1.0, 0.0}, zetabar_m{1.0, 0.0};
    cplx bbar_m{0.0, 0.0}, cbar_p{0.0, 0.0};

    bool sov_applicable(double tol = 1e-12) const { return std::abs(bbar_m) > tol; }

    void validate() const {
        if (std::abs(zetabar_p) == 0.0 || std::abs(zetabar_m) == 0.0)
            throw InvalidInput("gauged zeta must be nonzero");
    }
};

}  // namespace sovxxx
