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
 * @file    fes_transform.hpp
 * @brief   Optimally scaled FES operators acting on FES states.
 *
 * M(t) = f [[1, t], [t, 1]] is diagonal in the |+>, |-> basis with entries
 * f(1+t) and f(1-t), so M(t)^{(x)n} multiplies the |psi_{p,q}> amplitude by
 *
 *     lambda_pq = f^n (1+t)^p (1-t)^q.
 *
 * The largest scale keeping M(t) a valid operation element is
 * f = 1/(1+|t|), which makes the dominant factor exactly one.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "fesopt/error.hpp"
#include "fesopt/fes_states.hpp"
#include "fesopt/povm_constraints.hpp"

namespace fesopt {

inline constexpr double kDegenerateFloor = 1e-300;

class FesOperator {
   public:
    /// Operator with an explicit scale f > 0.
    FesOperator(double t, double f) : t_(t), f_(f), canonical_(false) { validate(); }

    /// Optimal scale f = 1/(1+|t|); requires |t| < 1.
    static FesOperator optimal(double t) {
        if (!(std::abs(t) < 1.0)) {
            throw Error(ErrorCode::TOutOfRange, "optimal scaling needs |t| < 1, got t = " + std::to_string(t));
        }
        FesOperator op(t, 1.0 / (1.0 + std::abs(t)));
        op.canonical_ = true;
        return op;
    }

    double t() const { return t_; }
    double f() const { return f_; }
    bool canonical() const { return canonical_; }

    /// Eigenvalue of M on |+>.
    double plus_factor() const { return canonical_ ? (1.0 + t_) / (1.0 + std::abs(t_)) : f_ * (1.0 + t_); }
    /// Eigenvalue of M on |->.
    double minus_factor() const { return canonical_ ? (1.0 - t_) / (1.0 + std::abs(t_)) : f_ * (1.0 - t_); }

    OperationElement matrix() const { return complex_t(f_) * OperationElement(1.0, t_, t_, 1.0); }

   private:
    void validate() const {
        if (!std::isfinite(t_)) throw Error(ErrorCode::TOutOfRange, "t must be finite");
        if (t_ == 1.0 || t_ == -1.0) throw Error(ErrorCode::PoleAtT, "M(t) is singular at t = +-1");
        if (!(f_ > 0.0) || !std::isfinite(f_)) throw Error(ErrorCode::InvalidSpec, "scale f must be positive");
    }

    double t_;
    double f_;
    bool canonical_;
};

struct TransformOutcome {
    FesVector final_state;
    double success_prob;
};

inline FesOperator optimal_operator(double t) { return FesOperator::optimal(t); }

namespace detail {

inline void require_even_q(int n, int q) {
    if (q % 2 != 0) throw Error(ErrorCode::QOutOfRange, "q = " + std::to_string(q) + " is not even");
    if (q < 0 || q > n) throw Error(ErrorCode::QOutOfRange, "q = " + std::to_string(q) + " outside [0, n]");
}

inline std::vector<double> eigenvalues(const FesOperator &op, int n) {
    std::vector<double> lambda(FesVector::dim_for(n));
    double plus = op.plus_factor();
    double minus = op.minus_factor();
    for (std::size_t k = 0; k < lambda.size(); ++k) {
        int q = 2 * static_cast<int>(k);
        lambda[k] = std::pow(plus, n - q) * std::pow(minus, q);
    }
    return lambda;
}

// sum |lambda_k c_k|^2 / sum |c_k|^2
inline double weighted_norm_ratio(const FesVector &s, const std::vector<double> &lambda) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < s.dim(); ++k) {
        double w = std::norm(s[k]);
        num += w * lambda[k] * lambda[k];
        den += w;
    }
    if (den == 0.0) throw Error(ErrorCode::AllZero, "input state is the zero vector");
    return num / den;
}

}  // namespace detail

/// lambda_pq = f^n (1+t)^p (1-t)^q with p = n - q.
inline double eigenvalue(const FesOperator &op, int n, int q) {
    detail::require_even_q(n, q);
    return std::pow(op.plus_factor(), n - q) * std::pow(op.minus_factor(), q);
}

/// Applies M^{(x)n} to s. The success probability is the squared norm of the
/// image (with the norm of s divided out, so inputs a few ulps off unit norm
/// give exactly 1 at t = 0).
inline TransformOutcome apply(const FesOperator &op, const FesVector &s) {
    auto lambda = detail::eigenvalues(op, s.qubits());
    double p = detail::weighted_norm_ratio(s, lambda);
    if (p < kDegenerateFloor) {
        throw Error(ErrorCode::DegenerateOutcome, "initial state has no weight on the surviving eigenspace");
    }
    std::vector<complex_t> amps(s.dim());
    for (std::size_t k = 0; k < s.dim(); ++k) amps[k] = lambda[k] * s[k];
    return {normalize(FesVector(s.qubits(), std::move(amps), false)), p};
}

/// Success probability of the optimal one-shot FES transformation with
/// parameter t, |t| < 1. Underflowed outcomes are reported as 0.
inline double success_probability(const FesVector &s, double t) {
    auto op = optimal_operator(t);
    return detail::weighted_norm_ratio(s, detail::eigenvalues(op, s.qubits()));
}

/// Normalised point at parameter t on the curve through s, for any real
/// t != +-1. Amplitudes are multiplied by |1+t|^p |1-t|^q (a positive factor
/// per component) so the phase of s is carried along unchanged.
inline FesVector trajectory(const FesVector &s, double t) {
    if (!std::isfinite(t)) throw Error(ErrorCode::TOutOfRange, "t must be finite");
    if (t == 1.0 || t == -1.0) throw Error(ErrorCode::PoleAtT, "trajectory has a pole at t = +-1");
    if (t == 0.0) return s;
    double scale = 1.0 + std::abs(t);
    double plus = std::abs(1.0 + t) / scale;
    double minus = std::abs(1.0 - t) / scale;
    int n = s.qubits();
    std::vector<complex_t> amps(s.dim());
    double peak = 0.0;
    for (std::size_t k = 0; k < s.dim(); ++k) {
        int q = 2 * static_cast<int>(k);
        amps[k] = std::pow(plus, n - q) * std::pow(minus, q) * s[k];
        peak = std::max(peak, std::abs(amps[k]));
    }
    if (peak == 0.0) {
        throw Error(ErrorCode::DegenerateOutcome, "trajectory point vanishes at t = " + std::to_string(t));
    }
    for (auto &z : amps) z /= peak;
    return normalize(FesVector(n, std::move(amps), false));
}

/// lim success_probability(s, t) as t -> direction * 1.
inline double limit_probability(const FesVector &s, int direction) {
    if (direction != 1 && direction != -1) throw Error(ErrorCode::InvalidSpec, "direction must be +1 or -1");
    double den = s.norm_sq();
    if (den == 0.0) throw Error(ErrorCode::AllZero, "input state is the zero vector");
    int n = s.qubits();
    if (direction == 1) return std::norm(s.coeff_q(0)) / den;
    return n % 2 == 0 ? std::norm(s.coeff_q(n)) / den : 0.0;
}

/// Parameter of M(t1) M(t2) up to scale: (t1 + t2) / (1 + t1 t2).
inline double compose_t(double t1, double t2) {
    if (std::abs(t1) == 1.0 || std::abs(t2) == 1.0) {
        throw Error(ErrorCode::PoleAtComposition, "composition with a singular operator");
    }
    double den = 1.0 + t1 * t2;
    if (den == 0.0) throw Error(ErrorCode::PoleAtComposition, "1 + t1 t2 = 0");
    return (t1 + t2) / den;
}

/// Best optimal success probability over trajectory points whose fidelity
/// with target is at least 1 - epsilon. Points are sampled on an open grid in
/// (-1, 1) (plus t = 0); each feasibility boundary between neighbouring
/// samples is bisected to 1e-10 in t. Returns 0 if no sample is feasible.
inline double vicinity_probability(const FesVector &s, const FesVector &target, double epsilon, int grid_size) {
    if (s.qubits() != target.qubits()) throw Error(ErrorCode::DimensionMismatch, "qubit counts differ");
    if (!(epsilon > 0.0 && epsilon < 1.0) || grid_size < 1) {
        throw Error(ErrorCode::InvalidSpec, "need epsilon in (0,1) and a positive grid size");
    }
    auto feasible = [&](double t) {
        try {
            return fidelity(trajectory(s, t), target) >= 1.0 - epsilon;
        } catch (const Error &e) {
            if (e.code() == ErrorCode::DegenerateOutcome) return false;
            throw;
        }
    };

    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(grid_size) + 1);
    for (int i = 0; i < grid_size; ++i) grid.push_back(-1.0 + 2.0 * (i + 1) / (grid_size + 1));
    grid.push_back(0.0);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<char> ok(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) ok[i] = feasible(grid[i]);

    double best = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (ok[i]) best = std::max(best, success_probability(s, grid[i]));
    }
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (ok[i] == ok[i + 1]) continue;
        double good = ok[i] ? grid[i] : grid[i + 1];
        double bad = ok[i] ? grid[i + 1] : grid[i];
        while (std::abs(good - bad) > 1e-10) {
            double mid = 0.5 * (good + bad);
            (feasible(mid) ? good : bad) = mid;
        }
        best = std::max(best, success_probability(s, good));
    }
    return best;
}

}  // namespace fesopt
