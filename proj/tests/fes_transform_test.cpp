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

#include "fesopt/fes_transform.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "fesopt/oracle.hpp"

using namespace fesopt;

namespace {

constexpr double pi = std::numbers::pi;

double max_diff(const FesVector &a, const FesVector &b) {
    double d = 0.0;
    for (std::size_t k = 0; k < a.dim(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
    return d;
}

std::vector<FesVector> family_states() {
    std::vector<FesVector> out{ghz(3), ghz(4), ghz(5)};
    for (double th : {pi / 100, pi / 10, pi / 6, pi / 4, pi / 3, pi / 2 - 0.01}) {
        out.push_back(gamma_family(th));
        out.push_back(theta_family(th));
        out.push_back(phi_family(th));
    }
    out.push_back(theta_family(pi / 2));
    out.push_back(phi_family(pi / 2));
    return out;
}

}  // namespace

TEST(fes_transform, optimal_operator_examples) {
    auto id = optimal_operator(0.0);
    EXPECT_EQ(id.f(), 1.0);
    EXPECT_LT(max_abs_diff(id.matrix(), OperationElement::identity()), 1e-16);

    auto half = optimal_operator(0.5);
    EXPECT_NEAR(half.f(), 2.0 / 3.0, 1e-16);
    EXPECT_NEAR(max_scale_sq(OperationElement{1.0, 0.5, 0.5, 1.0}), 4.0 / 9.0, 1e-15);
    EXPECT_NEAR(optimal_operator(-0.5).f(), 2.0 / 3.0, 1e-16);

    for (double t = -0.99; t < 1.0; t += 0.03) {
        auto r = analyze_element(optimal_operator(t).matrix());
        EXPECT_TRUE(r.valid);
        EXPECT_TRUE(r.saturated) << t;
    }
}

TEST(fes_transform, optimal_operator_rejects_out_of_range) {
    for (double t : {1.0, -1.0, 1.5, -3.0}) {
        try {
            optimal_operator(t);
            FAIL() << t;
        } catch (const Error &e) {
            EXPECT_EQ(e.code(), ErrorCode::TOutOfRange);
        }
    }
    EXPECT_THROW(FesOperator(1.0, 0.5), Error);
}

TEST(fes_transform, eigenvalue_examples) {
    EXPECT_EQ(eigenvalue(optimal_operator(0.0), 7, 4), 1.0);
    auto op = optimal_operator(0.5);
    // (2/3)^3 (3/2)^3 and (2/3)^3 (3/2) (1/2)^2.
    EXPECT_NEAR(eigenvalue(op, 3, 0), 1.0, 1e-15);
    EXPECT_NEAR(eigenvalue(op, 3, 2), 1.0 / 9.0, 1e-15);
    // Explicit scale, not the canonical shortcut.
    EXPECT_NEAR(eigenvalue(FesOperator(0.5, 2.0 / 3.0), 3, 2), 1.0 / 9.0, 1e-15);
    EXPECT_THROW(eigenvalue(op, 3, 4), Error);
    EXPECT_THROW(eigenvalue(op, 4, 1), Error);
}

TEST(fes_transform, apply_examples) {
    auto s = random_fes_state({3, 6, 1});
    auto out = apply(optimal_operator(0.0), s);
    EXPECT_EQ(out.success_prob, 1.0);
    EXPECT_LT(max_diff(out.final_state, s), 1e-15);

    auto up = apply(optimal_operator(1 - 1e-8), ghz(3));
    EXPECT_NEAR(up.success_prob, 0.25, 1e-6);
    auto down = apply(optimal_operator(-1 + 1e-8), ghz(3));
    EXPECT_LE(down.success_prob, 1e-6);
    EXPECT_NEAR(down.final_state.norm_sq(), 1.0, 1e-12);
}

TEST(fes_transform, apply_reports_degenerate_outcome) {
    // lambda underflows to zero on |psi_{0,40}> when t is close to 1.
    try {
        apply(optimal_operator(1 - 1e-9), psi_pq(40, 40));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::DegenerateOutcome);
    }
}

TEST(fes_transform, success_probability_examples) {
    EXPECT_EQ(success_probability(ghz(3), 0.0), 1.0);
    EXPECT_NEAR(success_probability(gamma_family(pi / 4), 1 - 1e-8), 0.5, 1e-6);
    EXPECT_LE(success_probability(phi_family(pi / 4), -1 + 1e-8), 1e-6);
    EXPECT_THROW(success_probability(ghz(3), 1.0), Error);
}

TEST(fes_transform, success_probability_closed_form_ghz3) {
    // t >= 0: 1/4 + 3/4 ((1-t)/(1+t))^4;  t < 0: 1/4 r^6 + 3/4 r^2, r = (1+t)/(1-t).
    for (double t = -0.95; t < 0.96; t += 0.05) {
        double r = t >= 0 ? (1 - t) / (1 + t) : (1 + t) / (1 - t);
        double expect = t >= 0 ? 0.25 + 0.75 * std::pow(r, 4) : 0.25 * std::pow(r, 6) + 0.75 * r * r;
        EXPECT_NEAR(success_probability(ghz(3), t), expect, 1e-14) << t;
    }
}

TEST(fes_transform, identity_at_zero) {
    for (int n = 2; n <= 10; ++n) {
        for (const auto &s : random_fes_states({static_cast<std::uint64_t>(40 + n), n, 5})) {
            EXPECT_EQ(success_probability(s, 0.0), 1.0);
            auto same = trajectory(s, 0.0);
            for (std::size_t k = 0; k < s.dim(); ++k) EXPECT_EQ(same[k], s[k]);
        }
    }
}

TEST(fes_transform, trajectory_limits) {
    EXPECT_GT(fidelity(trajectory(ghz(3), 1 - 1e-8), psi_pq(3, 0)), 1 - 1e-12);
    EXPECT_GT(fidelity(trajectory(ghz(3), -1 + 1e-8), psi_pq(3, 2)), 1 - 1e-12);
    try {
        trajectory(ghz(3), -1.0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::PoleAtT);
    }
}

TEST(fes_transform, trajectory_stays_normalised_for_large_t) {
    for (double t : {1.5, 10.0, 1e6, -4.0, -1e8}) {
        EXPECT_NEAR(trajectory(ghz(6), t).norm_sq(), 1.0, 1e-14);
    }
}

TEST(fes_transform, limit_probability_examples) {
    EXPECT_NEAR(limit_probability(ghz(3), 1), 0.25, 1e-15);
    EXPECT_EQ(limit_probability(ghz(3), -1), 0.0);
    for (double th = 0.05; th < pi / 2; th += 0.1) {
        EXPECT_NEAR(limit_probability(gamma_family(th), 1), std::pow(std::sin(th), 2), 1e-15);
        EXPECT_NEAR(limit_probability(theta_family(th), 1), std::pow(std::sin(th), 2) / 2, 1e-15);
        EXPECT_NEAR(limit_probability(theta_family(th), -1), std::pow(std::sin(th), 2) / 2, 1e-15);
        EXPECT_EQ(limit_probability(phi_family(th), -1), 0.0);
    }
    EXPECT_THROW(limit_probability(ghz(3), 0), Error);
}

TEST(fes_transform, limit_consistency_for_family_states) {
    for (const auto &s : family_states()) {
        EXPECT_NEAR(success_probability(s, 1 - 1e-8), limit_probability(s, 1), 1e-6);
        EXPECT_NEAR(success_probability(s, -1 + 1e-8), limit_probability(s, -1), 1e-6);
    }
}

TEST(fes_transform, compose_t_examples) {
    EXPECT_EQ(compose_t(0.3, 0.0), 0.3);
    EXPECT_NEAR(compose_t(0.5, 0.5), 0.8, 1e-16);
    EXPECT_EQ(compose_t(0.7, -0.7), 0.0);
    // [[1,.5],[.5,1]]^2 = 1.25 [[1,.8],[.8,1]]
    auto sq = OperationElement{1.0, 0.5, 0.5, 1.0} * OperationElement{1.0, 0.5, 0.5, 1.0};
    EXPECT_LT(max_abs_diff(sq, complex_t(1.25) * OperationElement{1.0, 0.8, 0.8, 1.0}), 1e-15);
    try {
        compose_t(2.0, -0.5);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::PoleAtComposition);
    }
    EXPECT_THROW(compose_t(1.0, 0.2), Error);
}

TEST(fes_transform, trajectory_composition) {
    SeededRng rng(71);
    for (int i = 0; i < 200; ++i) {
        int n = 2 + i % 9;
        auto s = random_fes_state({static_cast<std::uint64_t>(1000 + i), n, 1});
        double t1 = rng.uniform(-0.95, 0.95);
        double t2 = rng.uniform(-0.95, 0.95);
        auto lhs = trajectory(trajectory(s, t1), t2);
        auto rhs = trajectory(s, compose_t(t1, t2));
        EXPECT_LT(max_diff(lhs, rhs), 1e-12) << t1 << " " << t2;
    }
}

TEST(fes_transform, same_sign_sequential_factorisation) {
    SeededRng rng(72);
    for (int i = 0; i < 200; ++i) {
        int n = 2 + i % 9;
        auto s = random_fes_state({static_cast<std::uint64_t>(2000 + i), n, 1});
        double sign = i % 2 ? 1.0 : -1.0;
        double t1 = sign * rng.uniform(0.0, 0.95);
        double t2 = sign * rng.uniform(0.0, 0.95);
        double joint = success_probability(s, compose_t(t1, t2));
        double stepwise = success_probability(s, t1) * success_probability(trajectory(s, t1), t2);
        EXPECT_NEAR(joint, stepwise, 1e-12);
    }
}

TEST(fes_transform, mixed_sign_sequence_is_suboptimal) {
    // With opposite signs the two-step protocol loses probability.
    auto s = ghz(3);
    double t1 = 0.6, t2 = -0.3;
    double joint = success_probability(s, compose_t(t1, t2));
    double stepwise = success_probability(s, t1) * success_probability(trajectory(s, t1), t2);
    EXPECT_LT(stepwise, joint);
}

TEST(fes_transform, double_cover) {
    SeededRng rng(73);
    for (int i = 0; i < 100; ++i) {
        int n = 2 + i % 9;
        auto s = random_fes_state({static_cast<std::uint64_t>(3000 + i), n, 1});
        double t = rng.uniform(1.0, 10.0) * (i % 2 ? 1.0 : -1.0);
        if (std::abs(t) == 1.0) continue;
        EXPECT_LT(max_diff(trajectory(s, t), trajectory(s, 1.0 / t)), 1e-12) << t;
    }
}

TEST(fes_transform, success_probability_is_bounded) {
    for (int n = 2; n <= 12; ++n) {
        for (const auto &s : random_fes_states({static_cast<std::uint64_t>(500 + n), n, 10})) {
            for (double t = -0.999; t < 1.0; t += 0.037) {
                double p = success_probability(s, t);
                EXPECT_GE(p, 0.0);
                EXPECT_LE(p, 1.0 + 1e-12);
            }
        }
    }
}

TEST(fes_transform, apply_agrees_with_success_probability) {
    for (const auto &s : family_states()) {
        for (double t : {-0.9, -0.2, 0.4, 0.95}) {
            EXPECT_NEAR(apply(optimal_operator(t), s).success_prob, success_probability(s, t), 1e-15);
            EXPECT_GT(fidelity(apply(optimal_operator(t), s).final_state, trajectory(s, t)), 1 - 1e-14);
        }
    }
}

TEST(fes_transform, vicinity_of_self_is_certain) {
    auto s = theta_family(pi / 5);
    EXPECT_EQ(vicinity_probability(s, s, 1e-4, 200), 1.0);
}

TEST(fes_transform, vicinity_of_separable_state_tends_to_quarter) {
    // Feasibility near psi30 means 1/4 / p >= 1 - eps, so the best p is 1/4 / (1 - eps).
    double previous = 1.0;
    for (double eps : {1e-2, 1e-3, 1e-4, 1e-6}) {
        double p = vicinity_probability(ghz(3), psi_pq(3, 0), eps, 999);
        EXPECT_NEAR(p, 0.25 / (1 - eps), 1e-8) << eps;
        EXPECT_LT(p, previous);
        previous = p;
    }
}

TEST(fes_transform, vicinity_of_entangled_state_decays) {
    // Near psi12 (t < 0, r = (1+t)/(1-t)): fidelity 1/(1 + r^4/3), p = r^6/4 + 3r^2/4.
    auto closed = [](double eps) {
        double r4 = 3 * eps / (1 - eps);
        double r2 = std::sqrt(r4);
        return 0.25 * r2 * r4 + 0.75 * r2;
    };
    double p4 = vicinity_probability(ghz(3), psi_pq(3, 2), 1e-4, 999);
    EXPECT_NEAR(p4, closed(1e-4), 1e-8);
    double p8 = vicinity_probability(ghz(3), psi_pq(3, 2), 1e-8, 999);
    EXPECT_NEAR(p8, closed(1e-8), 1e-8);
    EXPECT_LT(p8, 2e-4);
}

TEST(fes_transform, vicinity_with_no_feasible_point_is_zero) {
    // psi_{1,4} is never reached from Phi(pi/2) on the sampled grid at this precision.
    EXPECT_EQ(vicinity_probability(phi_family(pi / 2), psi_pq(5, 4), 1e-12, 10), 0.0);
}
