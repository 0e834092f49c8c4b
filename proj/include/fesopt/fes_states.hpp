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
 * @file    fes_states.hpp
 * @brief   Flip-and-exchange symmetric (FES) states of n qubits.
 *
 * The FES subspace is spanned by |psi_{p,q}>, q even, the equal-weight
 * symmetrisation of product states with p factors |+> and q factors |->.
 * FesVector stores amplitudes over that basis (index k <-> q = 2k);
 * StateVector stores the full 2^n computational amplitudes with qubit 0 as
 * the most significant bit of the basis index.
 *
 * In the computational basis every |psi_{p,q}> depends on a basis index x
 * only through its Hamming weight w:
 *
 *     <x|psi_{p,q}> = K_q(w; n) / sqrt(C(n,q) 2^n),
 *
 * with K_q the binary Krawtchouk polynomial.
 */

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

#include "fesopt/error.hpp"
#include "fesopt/povm_constraints.hpp"

namespace fesopt {

inline constexpr int kDefaultStateCap = 20;

/// Amplitudes over the FES eigenbasis {|psi_{n-2k, 2k}>}.
class FesVector {
   public:
    FesVector(int n, std::vector<complex_t> amps, bool normalized = true)
        : n_(n), amps_(std::move(amps)), normalized_(normalized) {
        if (n_ < 2) throw Error(ErrorCode::InvalidSpec, "FES states need at least two qubits");
        if (amps_.size() != dim_for(n_)) {
            throw Error(ErrorCode::DimensionMismatch, "FES vector of " + std::to_string(n_) + " qubits needs " +
                                                          std::to_string(dim_for(n_)) + " amplitudes");
        }
    }

    static std::size_t dim_for(int n) { return static_cast<std::size_t>(n / 2) + 1; }

    int qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    bool normalized() const { return normalized_; }
    std::span<const complex_t> amps() const { return amps_; }
    complex_t operator[](std::size_t k) const { return amps_[k]; }

    /// Amplitude of |psi_{n-q, q}>.
    complex_t coeff_q(int q) const { return amps_[static_cast<std::size_t>(q / 2)]; }

    double norm_sq() const {
        double s = 0.0;
        for (auto z : amps_) s += std::norm(z);
        return s;
    }

   private:
    int n_;
    std::vector<complex_t> amps_;
    bool normalized_;
};

/// Full computational-basis amplitudes, qubit 0 = most significant bit.
class StateVector {
   public:
    StateVector(int n, std::vector<complex_t> amps, bool normalized = true)
        : n_(n), amps_(std::move(amps)), normalized_(normalized) {
        if (n_ < 1 || n_ > 62) throw Error(ErrorCode::NTooLarge, "unsupported qubit count " + std::to_string(n_));
        if (amps_.size() != (std::size_t{1} << n_)) {
            throw Error(ErrorCode::DimensionMismatch, "state vector of " + std::to_string(n_) + " qubits needs 2^n amplitudes");
        }
    }

    int qubits() const { return n_; }
    std::size_t size() const { return amps_.size(); }
    bool normalized() const { return normalized_; }
    std::span<const complex_t> amps() const { return amps_; }
    std::span<complex_t> amps() { return amps_; }
    complex_t operator[](std::size_t i) const { return amps_[i]; }

    double norm_sq() const {
        double s = 0.0;
        for (auto z : amps_) s += std::norm(z);
        return s;
    }

   private:
    int n_;
    std::vector<complex_t> amps_;
    bool normalized_;
};

struct GAbcdParams {
    complex_t a, b, c, d;
};

struct SymmetryReport {
    bool exchange = false;
    bool flip = false;
};

// ----------------------------------------------------------------------------
// Combinatorics

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

/// K_q(w; n) = sum_j (-1)^j C(w, j) C(n - w, q - j); exact for n <= 50.
inline double krawtchouk(int n, int q, int w) {
    double s = 0.0;
    for (int j = 0; j <= q; ++j) {
        double term = binomial(w, j) * binomial(n - w, q - j);
        s += (j % 2 == 0) ? term : -term;
    }
    return s;
}

namespace detail {

inline void require_state_cap(int n, int cap) {
    if (n > cap) {
        throw Error(ErrorCode::NTooLarge,
                    std::to_string(n) + " qubits exceeds the expansion cap of " + std::to_string(cap));
    }
}

// table[k][w] = <x|psi_{n-2k,2k}> for any x of weight w.
inline std::vector<std::vector<double>> eigenbasis_profiles(int n) {
    std::size_t dim = FesVector::dim_for(n);
    double two_n = std::ldexp(1.0, n);
    std::vector<std::vector<double>> table(dim, std::vector<double>(static_cast<std::size_t>(n) + 1));
    for (std::size_t k = 0; k < dim; ++k) {
        int q = 2 * static_cast<int>(k);
        double scale = std::sqrt(binomial(n, q) * two_n);
        for (int w = 0; w <= n; ++w) table[k][static_cast<std::size_t>(w)] = krawtchouk(n, q, w) / scale;
    }
    return table;
}

}  // namespace detail

// ----------------------------------------------------------------------------
// Normalisation and phase

inline FesVector normalize(const FesVector &s) {
    double nrm = std::sqrt(s.norm_sq());
    if (nrm == 0.0) throw Error(ErrorCode::AllZero, "cannot normalise the zero vector");
    std::vector<complex_t> amps(s.amps().begin(), s.amps().end());
    for (auto &z : amps) z /= nrm;
    return {s.qubits(), std::move(amps), true};
}

inline StateVector normalize(const StateVector &v) {
    double nrm = std::sqrt(v.norm_sq());
    if (nrm == 0.0) throw Error(ErrorCode::AllZero, "cannot normalise the zero vector");
    std::vector<complex_t> amps(v.amps().begin(), v.amps().end());
    for (auto &z : amps) z /= nrm;
    return {v.qubits(), std::move(amps), true};
}

/// Rotates the global phase so the largest-magnitude amplitude (first one on
/// ties) is real and positive.
inline FesVector canonical_phase(const FesVector &s) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < s.dim(); ++k) {
        if (std::abs(s[k]) > std::abs(s[best])) best = k;
    }
    complex_t lead = s[best];
    if (lead == 0.0 || (lead.imag() == 0.0 && lead.real() > 0.0)) return s;
    complex_t rot = std::conj(lead) / std::abs(lead);
    std::vector<complex_t> amps(s.amps().begin(), s.amps().end());
    for (auto &z : amps) z *= rot;
    amps[best] = std::abs(lead);
    return {s.qubits(), std::move(amps), s.normalized()};
}

// ----------------------------------------------------------------------------
// Basis states and conversions

/// Unit vector |psi_{n-q, q}> in the FES eigenbasis.
inline FesVector psi_pq(int n, int q) {
    if (q % 2 != 0) throw Error(ErrorCode::OddQ, "q = " + std::to_string(q) + " is odd; only even q are flip symmetric");
    if (q < 0 || q > n) throw Error(ErrorCode::QOutOfRange, "q = " + std::to_string(q) + " outside [0, n]");
    std::vector<complex_t> amps(FesVector::dim_for(n), 0.0);
    amps[static_cast<std::size_t>(q / 2)] = 1.0;
    return {n, std::move(amps), true};
}

inline StateVector to_computational(const FesVector &s, int cap = kDefaultStateCap) {
    int n = s.qubits();
    detail::require_state_cap(n, cap);
    auto table = detail::eigenbasis_profiles(n);
    std::vector<complex_t> by_weight(static_cast<std::size_t>(n) + 1, 0.0);
    for (std::size_t w = 0; w <= static_cast<std::size_t>(n); ++w) {
        for (std::size_t k = 0; k < s.dim(); ++k) by_weight[w] += table[k][w] * s[k];
    }
    std::vector<complex_t> amps(std::size_t{1} << n);
    for (std::size_t x = 0; x < amps.size(); ++x) amps[x] = by_weight[static_cast<std::size_t>(std::popcount(x))];
    return {n, std::move(amps), s.normalized()};
}

/// Projects v onto the FES subspace; fails with NotFES if the discarded part
/// has norm above tol. The global phase of the result is canonicalised.
inline FesVector from_computational(const StateVector &v, double tol = kDefaultTol) {
    int n = v.qubits();
    if (n < 2) throw Error(ErrorCode::InvalidSpec, "FES states need at least two qubits");
    auto table = detail::eigenbasis_profiles(n);
    std::vector<complex_t> weight_sums(static_cast<std::size_t>(n) + 1, 0.0);
    for (std::size_t x = 0; x < v.size(); ++x) weight_sums[static_cast<std::size_t>(std::popcount(x))] += v[x];

    std::size_t dim = FesVector::dim_for(n);
    std::vector<complex_t> coeffs(dim, 0.0);
    for (std::size_t k = 0; k < dim; ++k) {
        for (std::size_t w = 0; w <= static_cast<std::size_t>(n); ++w) coeffs[k] += table[k][w] * weight_sums[w];
    }

    std::vector<complex_t> recon(static_cast<std::size_t>(n) + 1, 0.0);
    for (std::size_t w = 0; w <= static_cast<std::size_t>(n); ++w) {
        for (std::size_t k = 0; k < dim; ++k) recon[w] += table[k][w] * coeffs[k];
    }
    double residual_sq = 0.0;
    for (std::size_t x = 0; x < v.size(); ++x) {
        residual_sq += std::norm(v[x] - recon[static_cast<std::size_t>(std::popcount(x))]);
    }
    if (std::sqrt(residual_sq) > tol) {
        throw Error(ErrorCode::NotFES, "state is not flip-and-exchange symmetric (residual norm " +
                                           std::to_string(std::sqrt(residual_sq)) + ")");
    }
    return canonical_phase(FesVector(n, std::move(coeffs), v.normalized()));
}

// ----------------------------------------------------------------------------
// Named states and representative families

inline StateVector ghz_computational(int n, int cap = kDefaultStateCap) {
    if (n < 2) throw Error(ErrorCode::InvalidSpec, "GHZ needs at least two qubits");
    detail::require_state_cap(n, cap);
    std::vector<complex_t> amps(std::size_t{1} << n, 0.0);
    amps.front() = std::sqrt(0.5);
    amps.back() = std::sqrt(0.5);
    return {n, std::move(amps), true};
}

inline FesVector ghz(int n, int cap = kDefaultStateCap) {
    return from_computational(ghz_computational(n, cap), 1e-12);
}

/// cos(theta)|psi_12> + sin(theta)|psi_30>.
inline FesVector gamma_family(double theta) {
    return {3, {std::sin(theta), std::cos(theta)}, true};
}

/// (sin(theta)/sqrt2)(|psi_40> + |psi_04>) + cos(theta)|psi_22>.
inline FesVector theta_family(double theta) {
    double edge = std::sin(theta) * std::numbers::sqrt2 / 2.0;
    return {4, {edge, std::cos(theta), edge}, true};
}

/// (sin(theta)/sqrt2)(|psi_50> + |psi_14>) + cos(theta)|psi_32>.
inline FesVector phi_family(double theta) {
    double edge = std::sin(theta) * std::numbers::sqrt2 / 2.0;
    return {5, {edge, std::cos(theta), edge}, true};
}

enum class Family { gamma, theta, phi };

inline FesVector family_state(Family family, double theta) {
    switch (family) {
        case Family::gamma: return gamma_family(theta);
        case Family::theta: return theta_family(theta);
        case Family::phi: return phi_family(theta);
    }
    throw Error(ErrorCode::InvalidSpec, "unknown family");
}

enum class DomainStatus { interior, boundary, outside };

/// Where theta sits relative to the family's stated angular range:
/// (0, pi/2) for gamma, (0, pi/2] for theta and phi. Boundary points are
/// still constructed; callers decide whether to warn.
inline DomainStatus family_domain(Family family, double theta) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    if (theta < 0.0 || theta > half_pi) return DomainStatus::outside;
    if (theta == 0.0) return DomainStatus::boundary;
    if (theta == half_pi) return family == Family::gamma ? DomainStatus::boundary : DomainStatus::interior;
    return DomainStatus::interior;
}

/// Unnormalised four-qubit G_abcd state.
inline StateVector g_abcd(const GAbcdParams &p) {
    if (p.a == 0.0 && p.b == 0.0 && p.c == 0.0 && p.d == 0.0) {
        throw Error(ErrorCode::AllZero, "G_abcd needs at least one nonzero parameter");
    }
    std::vector<complex_t> amps(16, 0.0);
    auto pair = [&](unsigned x, complex_t value) {
        amps[x] = value;
        amps[x ^ 0xFu] = value;
    };
    pair(0b0000, (p.a + p.d) / 2.0);
    pair(0b0011, (p.a - p.d) / 2.0);
    pair(0b0101, (p.b + p.c) / 2.0);
    pair(0b0110, (p.b - p.c) / 2.0);
    return {4, std::move(amps), false};
}

inline SymmetryReport check_symmetries(const StateVector &v, double tol = kDefaultTol) {
    int n = v.qubits();
    std::size_t mask = v.size() - 1;
    // First index seen for each Hamming weight.
    std::vector<std::size_t> first(static_cast<std::size_t>(n) + 1, v.size());
    SymmetryReport r{true, true};
    for (std::size_t x = 0; x < v.size(); ++x) {
        auto w = static_cast<std::size_t>(std::popcount(x));
        if (first[w] == v.size()) {
            first[w] = x;
        } else if (std::abs(v[x] - v[first[w]]) > tol) {
            r.exchange = false;
        }
        if (std::abs(v[x] - v[~x & mask]) > tol) r.flip = false;
    }
    return r;
}

// ----------------------------------------------------------------------------
// Overlaps

inline complex_t inner(const FesVector &x, const FesVector &y) {
    if (x.qubits() != y.qubits()) throw Error(ErrorCode::DimensionMismatch, "qubit counts differ");
    complex_t s = 0.0;
    for (std::size_t k = 0; k < x.dim(); ++k) s += std::conj(x[k]) * y[k];
    return s;
}

/// Compensated (Neumaier) summation over the 2^n terms.
inline complex_t inner(const StateVector &x, const StateVector &y) {
    if (x.qubits() != y.qubits()) throw Error(ErrorCode::DimensionMismatch, "qubit counts differ");
    double re = 0.0, im = 0.0, re_c = 0.0, im_c = 0.0;
    auto add = [](double &sum, double &comp, double v) {
        double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    };
    for (std::size_t i = 0; i < x.size(); ++i) {
        complex_t term = std::conj(x[i]) * y[i];
        add(re, re_c, term.real());
        add(im, im_c, term.imag());
    }
    return {re + re_c, im + im_c};
}

/// |<x|y>|^2.
inline double fidelity(const FesVector &x, const FesVector &y) { return std::norm(inner(x, y)); }
inline double fidelity(const StateVector &x, const StateVector &y) { return std::norm(inner(x, y)); }

}  // namespace fesopt
