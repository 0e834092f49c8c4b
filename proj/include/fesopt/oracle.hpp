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
 * @file    oracle.hpp
 * @brief   Brute-force reference paths over the full 2^n computational basis.
 *
 * Nothing here uses the FES eigenbasis: operators are applied qubit by qubit
 * to a dense state vector and eigenvalues of M^dag M come from an explicit
 * Hermitian eigen-solve. The fast paths in fes_transform.hpp and
 * povm_constraints.hpp are validated against these.
 *
 * Random instances are drawn from std::mt19937_64 (bit-exact across standard
 * libraries) with normals produced by the Box-Muller transform written out
 * here, since std::normal_distribution is implementation-defined.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "fesopt/error.hpp"
#include "fesopt/fes_states.hpp"
#include "fesopt/povm_constraints.hpp"

namespace fesopt {

inline constexpr int kDefaultOracleCap = 14;

struct RandomSpec {
    std::uint64_t seed = 0;
    int n = 3;
    int count = 1;
};

/// Portable seeded generator: mt19937_64 plus Box-Muller.
class SeededRng {
   public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform();  // (0, 1]
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double phi = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(phi);
        has_spare_ = true;
        return r * std::cos(phi);
    }

    complex_t complex_normal() {
        double re = normal();
        double im = normal();
        return {re, im};
    }

    /// Uniform in the complex disc of the given radius.
    complex_t disc(double radius) {
        double r = radius * std::sqrt(uniform());
        double phi = 2.0 * std::numbers::pi * uniform();
        return std::polar(r, phi);
    }

   private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

namespace detail {

inline void require_oracle_cap(int n, int cap) {
    if (n > cap) {
        throw Error(ErrorCode::NTooLarge,
                    std::to_string(n) + " qubits exceeds the oracle cap of " + std::to_string(cap));
    }
}

}  // namespace detail

/// m applied to every qubit in turn; O(n 2^n), no 2^n x 2^n matrix.
inline StateVector kron_apply(const OperationElement &m, const StateVector &v, int cap = kDefaultOracleCap) {
    int n = v.qubits();
    detail::require_oracle_cap(n, cap);
    std::vector<complex_t> amps(v.amps().begin(), v.amps().end());
    for (int qubit = 0; qubit < n; ++qubit) {
        std::size_t bit = std::size_t{1} << (n - 1 - qubit);
        for (std::size_t x = 0; x < amps.size(); ++x) {
            if (x & bit) continue;
            complex_t lo = amps[x];
            complex_t hi = amps[x | bit];
            amps[x] = m(0, 0) * lo + m(0, 1) * hi;
            amps[x | bit] = m(1, 0) * lo + m(1, 1) * hi;
        }
    }
    return {n, std::move(amps), false};
}

inline double brute_success_probability(const StateVector &v, const OperationElement &m,
                                        int cap = kDefaultOracleCap) {
    return kron_apply(m, v, cap).norm_sq();
}

/// 1 / lambda_max(M^dag M) from the explicit Hermitian matrix M^dag M.
inline double brute_max_scale(const OperationElement &m) {
    detail::require_nonzero(m);
    auto h = m.adjoint() * m;
    double h11 = h(0, 0).real();
    double h22 = h(1, 1).real();
    double top = 0.5 * (h11 + h22) + std::hypot(0.5 * (h11 - h22), std::abs(h(0, 1)));
    return 1.0 / top;
}

/// count random unit FES vectors: complex standard-normal amplitudes,
/// normalised, global phase canonicalised.
inline std::vector<FesVector> random_fes_states(const RandomSpec &spec) {
    if (spec.n < 2 || spec.count < 1) throw Error(ErrorCode::InvalidSpec, "need n >= 2 and count >= 1");
    SeededRng rng(spec.seed);
    std::vector<FesVector> out;
    out.reserve(static_cast<std::size_t>(spec.count));
    for (int i = 0; i < spec.count; ++i) {
        std::vector<complex_t> amps(FesVector::dim_for(spec.n));
        for (auto &z : amps) z = rng.complex_normal();
        out.push_back(canonical_phase(normalize(FesVector(spec.n, std::move(amps), false))));
    }
    return out;
}

inline FesVector random_fes_state(const RandomSpec &spec) {
    return random_fes_states({spec.seed, spec.n, 1}).front();
}

}  // namespace fesopt
