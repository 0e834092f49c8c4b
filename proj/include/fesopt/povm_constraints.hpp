// Copyright 2026 The fesopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file    povm_constraints.hpp
 * @brief   Validity of single-qubit operation elements and their optimal scaling.
 *
 * A 2x2 matrix M is an element of a two-outcome POVM iff every eigenvalue of
 * M^dag M is at most one. With S = sum |a_i|^2 and D = |det M|^2 this reads
 *
 *     S <= 1 + D <= 2,
 *
 * and the largest admissible rescale |c|^2 = 1 / lambda_max(M^dag M) turns the
 * first inequality into an equality, which is the same as det(I - M^dag M) = 0.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "fesopt/error.hpp"

namespace fesopt {

using complex_t = std::complex<double>;

inline constexpr double kDefaultTol = 1e-10;

/// Row-major 2x2 complex matrix (a1 a2 / a3 a4).
class OperationElement {
   public:
    constexpr OperationElement() = default;
    constexpr OperationElement(complex_t a1, complex_t a2, complex_t a3, complex_t a4)
        : a_{a1, a2, a3, a4} {}

    static constexpr OperationElement identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr OperationElement zero() { return {}; }

    constexpr complex_t operator()(int row, int col) const { return a_[2 * row + col]; }
    constexpr complex_t &operator()(int row, int col) { return a_[2 * row + col]; }
    constexpr const std::array<complex_t, 4> &entries() const { return a_; }

    bool is_finite() const {
        return std::all_of(a_.begin(), a_.end(), [](complex_t z) {
            return std::isfinite(z.real()) && std::isfinite(z.imag());
        });
    }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](complex_t z) { return z == 0.0; });
    }

    complex_t det() const { return a_[0] * a_[3] - a_[1] * a_[2]; }

    /// Sum of squared moduli of the entries.
    double frobenius_sq() const {
        double s = 0.0;
        for (auto z : a_) s += std::norm(z);
        return s;
    }

    OperationElement adjoint() const {
        return {std::conj(a_[0]), std::conj(a_[2]), std::conj(a_[1]), std::conj(a_[3])};
    }

    friend OperationElement operator*(const OperationElement &x, const OperationElement &y) {
        return {x.a_[0] * y.a_[0] + x.a_[1] * y.a_[2], x.a_[0] * y.a_[1] + x.a_[1] * y.a_[3],
                x.a_[2] * y.a_[0] + x.a_[3] * y.a_[2], x.a_[2] * y.a_[1] + x.a_[3] * y.a_[3]};
    }
    friend OperationElement operator*(complex_t c, const OperationElement &m) {
        return {c * m.a_[0], c * m.a_[1], c * m.a_[2], c * m.a_[3]};
    }
    friend OperationElement operator+(const OperationElement &x, const OperationElement &y) {
        return {x.a_[0] + y.a_[0], x.a_[1] + y.a_[1], x.a_[2] + y.a_[2], x.a_[3] + y.a_[3]};
    }
    friend OperationElement operator-(const OperationElement &x, const OperationElement &y) {
        return {x.a_[0] - y.a_[0], x.a_[1] - y.a_[1], x.a_[2] - y.a_[2], x.a_[3] - y.a_[3]};
    }
    friend bool operator==(const OperationElement &, const OperationElement &) = default;

    /// Largest entrywise modulus of x - y.
    friend double max_abs_diff(const OperationElement &x, const OperationElement &y) {
        double d = 0.0;
        for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(x.a_[i] - y.a_[i]));
        return d;
    }

   private:
    std::array<complex_t, 4> a_{};
};

struct ElementReport {
    double frobenius_sq = 0.0;  // S
    double abs_det_sq = 0.0;    // |det|^2
    double lambda_min = 0.0;    // eigenvalues of M^dag M
    double lambda_max = 0.0;
    bool valid = false;
    bool saturated = false;
    double max_scale_sq = 0.0;  // 1 / lambda_max, +inf for the zero matrix
};

struct PovmPair {
    OperationElement m1;
    OperationElement m2;

    /// M1^dag M1 + M2^dag M2 - I, entrywise max modulus.
    double completeness_error() const {
        auto sum = m1.adjoint() * m1 + m2.adjoint() * m2;
        return max_abs_diff(sum, OperationElement::identity());
    }
};

namespace detail {

inline void require_finite(const OperationElement &m) {
    if (!m.is_finite()) throw Error(ErrorCode::NonFiniteEntry, "operation element has a NaN or infinite entry");
}

inline void require_nonzero(const OperationElement &m) {
    require_finite(m);
    if (m.is_zero()) throw Error(ErrorCode::ZeroMatrix, "operation element is the zero matrix");
}

// Eigenvalues of M^dag M from its trace S and determinant |det M|^2.
// The smaller one comes from the product to avoid cancellation.
struct GramSpectrum {
    double lo;
    double hi;
};

inline GramSpectrum gram_spectrum(double s, double d) {
    double disc = std::sqrt(std::max(0.0, s * s - 4.0 * d));
    double hi = 0.5 * (s + disc);
    double lo = hi > 0.0 ? d / hi : 0.0;
    return {lo, hi};
}

}  // namespace detail

/// Largest |c|^2 such that c*m is still a valid operation element.
///
/// Evaluated as 2 / (S + sqrt(S^2 - 4|det|^2)), the rationalised form of
/// (S - sqrt(S^2 - 4|det|^2)) / (2|det|^2); both equal 1 / lambda_max. When
/// |det|^2 / S^2 drops below 1e-14 the singular limit 1/S is returned.
inline double max_scale_sq(const OperationElement &m) {
    detail::require_nonzero(m);
    double s = m.frobenius_sq();
    double d = std::norm(m.det());
    if (d / (s * s) < 1e-14) return 1.0 / s;
    return 2.0 / (s + std::sqrt(std::max(0.0, s * s - 4.0 * d)));
}

inline ElementReport analyze_element(const OperationElement &m, double tol = kDefaultTol) {
    detail::require_finite(m);
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidSpec, "tolerance must be positive");
    ElementReport r;
    r.frobenius_sq = m.frobenius_sq();
    r.abs_det_sq = std::norm(m.det());
    auto spec = detail::gram_spectrum(r.frobenius_sq, r.abs_det_sq);
    r.lambda_min = spec.lo;
    r.lambda_max = spec.hi;
    r.valid = r.frobenius_sq <= 1.0 + r.abs_det_sq + tol && r.abs_det_sq <= 1.0 + tol;
    r.saturated = std::abs(r.frobenius_sq - 1.0 - r.abs_det_sq) <= tol;
    r.max_scale_sq = m.is_zero() ? INFINITY : max_scale_sq(m);
    return r;
}

/// c*m with c = sqrt(max_scale_sq(m)) taken positive real.
inline OperationElement rescale_optimal(const OperationElement &m) {
    double c = std::sqrt(max_scale_sq(m));
    return complex_t(c) * m;
}

/// det(I - M^dag M) = 1 - S + |det M|^2 vanishes within tol.
inline bool is_osbp_element(const OperationElement &m, double tol = kDefaultTol) {
    detail::require_finite(m);
    double residual = 1.0 - m.frobenius_sq() + std::norm(m.det());
    return std::abs(residual) <= tol;
}

namespace detail {

// Principal square root of a 2x2 Hermitian PSD matrix through its
// eigen-decomposition. Eigenvalues below zero (rounding) are clamped.
inline OperationElement hermitian_psd_sqrt(const OperationElement &h) {
    double h11 = h(0, 0).real();
    double h22 = h(1, 1).real();
    complex_t h12 = h(0, 1);
    double mean = 0.5 * (h11 + h22);
    double half_gap = std::hypot(0.5 * (h11 - h22), std::abs(h12));
    double mu_hi = std::max(0.0, mean + half_gap);
    double mu_lo = std::max(0.0, mean - half_gap);

    if (half_gap == 0.0) return complex_t(std::sqrt(mu_hi)) * OperationElement::identity();

    // Eigenvector of mu_hi: pick the better conditioned of the two row forms.
    complex_t v0 = h12;
    complex_t v1 = mean + half_gap - h11;
    complex_t w0 = mean + half_gap - h22;
    complex_t w1 = std::conj(h12);
    if (std::norm(w0) + std::norm(w1) > std::norm(v0) + std::norm(v1)) {
        v0 = w0;
        v1 = w1;
    }
    double nrm = std::sqrt(std::norm(v0) + std::norm(v1));
    v0 /= nrm;
    v1 /= nrm;
    OperationElement proj_hi{v0 * std::conj(v0), v0 * std::conj(v1), v1 * std::conj(v0), v1 * std::conj(v1)};
    OperationElement proj_lo = OperationElement::identity() - proj_hi;
    return complex_t(std::sqrt(mu_hi)) * proj_hi + complex_t(std::sqrt(mu_lo)) * proj_lo;
}

}  // namespace detail

/// Completes m1 to a two-outcome POVM with m2 = sqrt(I - m1^dag m1).
inline PovmPair complete_to_povm(const OperationElement &m1, double tol = kDefaultTol) {
    detail::require_finite(m1);
    auto rest = OperationElement::identity() - m1.adjoint() * m1;
    auto spec = detail::gram_spectrum(m1.frobenius_sq(), std::norm(m1.det()));
    if (spec.hi > 1.0 + tol) {
        throw Error(ErrorCode::InvalidElement,
                    "I - M^dag M is not positive semidefinite (lambda_max = " + std::to_string(spec.hi) + ")");
    }
    return {m1, detail::hermitian_psd_sqrt(rest)};
}

}  // namespace fesopt
