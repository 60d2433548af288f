#pragma once

#include "types.hpp"

#include <Eigen/Eigenvalues>

#include <numbers>

namespace sovxxx {

// Polynomial in z = lambda^2, coefficients in ascending order.
struct EvenPoly {
    std::vector<cplx> coeffs{cplx(1.0)};

    EvenPoly() = default;
    explicit EvenPoly(std::vector<cplx> c) : coeffs(std::move(c)) {
        if (coeffs.empty()) coeffs.push_back(cplx(0.0));
    }

    // prod_b (lambda^2 - roots[b]^2)
    static EvenPoly from_roots(const std::vector<cplx>& roots) {
        std::vector<cplx> sq;
        sq.reserve(roots.size());
        for (auto r : roots) sq.push_back(r * r);
        return from_roots_sq(sq);
    }

    static EvenPoly from_roots_sq(const std::vector<cplx>& roots_sq) {
        std::vector<cplx> c{cplx(1.0)};
        for (auto r : roots_sq) {
            std::vector<cplx> next(c.size() + 1, cplx(0.0));
            for (std::size_t k = 0; k < c.size(); ++k) {
                next[k + 1] += c[k];
                next[k] -= r * c[k];
            }
            c = std::move(next);
        }
        return EvenPoly(std::move(c));
    }

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    cplx leading() const { return coeffs.back(); }

    cplx eval_sq(cplx z) const {
        cplx acc(0.0);
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    cplx operator()(cplx lambda) const { return eval_sq(lambda * lambda); }

    // Roots in z via companion-matrix eigenvalues.
    std::vector<cplx> roots_sq() const {
        int d = degree();
        std::vector<cplx> out;
        if (d <= 0) return out;
        Mat comp = Mat::Zero(d, d);
        for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
        for (int i = 0; i < d; ++i) comp(i, d - 1) = -coeffs[i] / coeffs[d];
        Eigen::ComplexEigenSolver<Mat> es(comp, false);
        for (int i = 0; i < d; ++i) out.push_back(es.eigenvalues()(i));
        std::sort(out.begin(), out.end(), [](cplx a, cplx b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        return out;
    }

    // Principal square roots of roots_sq().
    std::vector<cplx> roots() const {
        auto sq = roots_sq();
        for (auto& r : sq) r = std::sqrt(r);
        return sq;
    }
};

// Nodes z_j = radius * exp(2 pi i (j + 0.3) / count) in the lambda^2 plane.
inline std::vector<cplx> circle_nodes(int count, double radius) {
    std::vector<cplx> z;
    for (int j = 0; j < count; ++j)
        z.push_back(std::polar(radius, 2.0 * std::numbers::pi * (j + 0.3) / count));
    return z;
}

// Coefficients c_0..c_deg of an even function of lambda that is a polynomial of
// degree deg in lambda^2. Works for scalar or matrix-valued functions.
template <class Value, class Fn>
std::vector<Value> interpolate_even(Fn&& fn, int deg, double radius) {
    int count = deg + 1;
    auto z = circle_nodes(count, radius);
    Mat vander(count, count);
    for (int i = 0; i < count; ++i)
        for (int k = 0; k < count; ++k) vander(i, k) = std::pow(z[i], k);
    Mat inv = vander.partialPivLu().inverse();
    std::vector<Value> samples;
    samples.reserve(count);
    for (int i = 0; i < count; ++i) samples.push_back(fn(std::sqrt(z[i])));
    std::vector<Value> coeffs;
    for (int k = 0; k < count; ++k) {
        Value acc = inv(k, 0) * samples[0];
        for (int i = 1; i < count; ++i) acc = acc + inv(k, i) * samples[i];
        coeffs.push_back(acc);
    }
    return coeffs;
}

inline cplx det_or_one(const Mat& m) {
    if (m.rows() == 0) return cplx(1.0);
    return m.partialPivLu().determinant();
}

}  // namespace sovxxx
