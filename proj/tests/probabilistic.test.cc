// Copyright 2026 The locc-forge Authors
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

#include "locc/probabilistic.h"

#include <chrono>
#include <cmath>

#include "gtest/gtest.h"

#include "locc/errors.h"
#include "test_util.h"

using namespace locc;

TEST(pmax, majorized_is_one) {
    auto r = pmax(ProbVector({0.5, 0.5}), ProbVector({0.75, 0.25}));
    EXPECT_EQ(r.p, 1.0);
    ProbVector v({0.6, 0.3, 0.1});
    EXPECT_EQ(pmax(v, v).p, 1.0);
}

TEST(pmax, qubit_example) {
    auto r = pmax(ProbVector({0.9, 0.1}), ProbVector({0.6, 0.4}));
    EXPECT_NEAR(r.p, 0.25, 1e-12);
    EXPECT_EQ(r.l_star, 1u);
}

TEST(pmax, four_level_example) {
    auto r = pmax(ProbVector({0.70, 0.10, 0.10, 0.10}), ProbVector({0.30, 0.28, 0.28, 0.14}));
    EXPECT_NEAR(r.p, 3.0 / 7.0, 1e-12);
    EXPECT_EQ(r.l_star, 1u);
    auto o = locc_test::oracle_pmax({0.70, 0.10, 0.10, 0.10}, {0.30, 0.28, 0.28, 0.14});
    EXPECT_NEAR(r.p, o.first, 1e-12);
}

TEST(pmax, rank_increase_is_impossible) {
    auto r = pmax(ProbVector({1.0, 0.0}), ProbVector({0.5, 0.5}));
    EXPECT_EQ(r.p, 0.0);
}

TEST(intermediate_state, deterministic_regime) {
    ProbVector lam({0.5, 0.5});
    ProbVector mu({0.75, 0.25});
    auto plan = intermediate_state(lam, mu);
    EXPECT_EQ(plan.p_max, 1.0);
    EXPECT_EQ(plan.gamma, mu);
    EXPECT_FALSE(plan.failure_coeffs.has_value());
}

TEST(intermediate_state, qubit_example) {
    auto plan = intermediate_state(ProbVector({0.9, 0.1}), ProbVector({0.6, 0.4}));
    EXPECT_NEAR(plan.p_max, 0.25, 1e-12);
    EXPECT_EQ(plan.l_star, 1u);
    EXPECT_NEAR(plan.gamma[0], 0.9, 1e-12);
    EXPECT_NEAR(plan.gamma[1], 0.1, 1e-12);
    EXPECT_NEAR(plan.success_op[0], std::sqrt(0.15 / 0.9), 1e-12);
    EXPECT_NEAR(plan.success_op[1], 1.0, 1e-12);
    ASSERT_TRUE(plan.failure_coeffs.has_value());
    EXPECT_NEAR((*plan.failure_coeffs)[0], 1.0, 1e-12);
    EXPECT_NEAR((*plan.failure_coeffs)[1], 0.0, 1e-12);
    for (std::size_t k = 0; k < 2; ++k) {
        const double s = plan.success_op[k];
        const double f = plan.failure_op[k];
        EXPECT_NEAR(s * s + f * f, 1.0, 1e-12);
    }
}

TEST(intermediate_state, qutrit_example) {
    ProbVector lam({0.55, 0.25, 0.20});
    ProbVector mu({0.50, 0.45, 0.05});
    auto plan = intermediate_state(lam, mu);
    EXPECT_NEAR(plan.p_max, 0.9, 1e-12);
    EXPECT_EQ(plan.l_star, 1u);
    EXPECT_NEAR(plan.gamma[0], 0.55, 1e-12);
    EXPECT_NEAR(plan.gamma[1], 0.405, 1e-12);
    EXPECT_NEAR(plan.gamma[2], 0.045, 1e-12);
    ASSERT_TRUE(plan.failure_coeffs.has_value());
    EXPECT_NEAR((*plan.failure_coeffs)[0], 1.0, 1e-9);
    EXPECT_TRUE(locc_test::oracle_majorized({0.55, 0.25, 0.20}, {0.55, 0.405, 0.045}));
}

TEST(intermediate_state, split_prefix_would_break_the_tail_bound) {
    // Here keeping the λ prefix verbatim would leave γ_0 < p·μ_0; the block
    // construction must still satisfy γ ≥ p·μ and λ ≺ γ.
    std::vector<double> lam{0.4, 0.4, 0.2};
    std::vector<double> mu{9.0 / 19, 6.0 / 19, 4.0 / 19};
    auto plan = intermediate_state(ProbVector(lam), ProbVector(mu));
    auto o = locc_test::oracle_pmax(lam, mu);
    EXPECT_NEAR(plan.p_max, o.first, 1e-12);
    std::vector<double> g(plan.gamma.entries().begin(), plan.gamma.entries().end());
    EXPECT_TRUE(locc_test::oracle_majorized(lam, g));
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_GE(g[k] + 1e-12, plan.p_max * mu[k]);
    }
}

TEST(intermediate_state, rejects_zero_probability) {
    EXPECT_THROW(intermediate_state(ProbVector({1.0, 0.0}), ProbVector({0.5, 0.5})), ConversionImpossible);
}

TEST(run_conclusive, examples) {
    {
        ProbVector lam({0.5, 0.5});
        ProbVector mu({0.75, 0.25});
        auto t = run_conclusive(GeneralizedSchmidtState::computational(lam, 2),
                                GeneralizedSchmidtState::computational(mu, 2));
        EXPECT_NEAR(t.success_probability, 1.0, 1e-9);
        EXPECT_TRUE(t.passed);
    }
    {
        ProbVector lam({0.9, 0.1});
        ProbVector mu({0.6, 0.4});
        auto t = run_conclusive(GeneralizedSchmidtState::computational(lam, 3),
                                GeneralizedSchmidtState::computational(mu, 3));
        EXPECT_NEAR(t.success_probability, 0.25, 1e-9);
        EXPECT_GE(t.min_success_fidelity, 1 - 1e-9);
        EXPECT_TRUE(t.passed);
    }
    {
        ProbVector lam({0.55, 0.25, 0.20});
        ProbVector mu({0.50, 0.45, 0.05});
        auto t = run_conclusive(GeneralizedSchmidtState::computational(lam, 2),
                                GeneralizedSchmidtState::computational(mu, 2));
        EXPECT_NEAR(t.success_probability, 0.9, 1e-9);
        EXPECT_NEAR(t.failure_probability, 0.1, 1e-9);
        EXPECT_GE(t.min_failure_fidelity, 1 - 1e-9);
        EXPECT_TRUE(t.passed);
    }
}

TEST(run_conclusive, random_bases) {
    std::mt19937_64 rng(23);
    std::vector<double> lam{0.6, 0.25, 0.15};
    std::vector<double> mu{0.4, 0.35, 0.25};
    GeneralizedSchmidtState psi(lam, locc_test::random_bases(3, 3, rng));
    GeneralizedSchmidtState phi(mu, locc_test::random_bases(3, 3, rng));
    auto t = run_conclusive(psi, phi);
    EXPECT_NEAR(t.success_probability, locc_test::oracle_pmax(lam, mu).first, 1e-9);
    EXPECT_TRUE(t.passed);
}

TEST(multicopy, examples) {
    ProbVector lam({0.4, 0.4, 0.1, 0.1});
    ProbVector mu({0.5, 0.25, 0.25, 0.0});
    EXPECT_EQ(multicopy_check(lam, mu, 1), is_majorized(lam, mu));
    EXPECT_FALSE(multicopy_check(lam, mu, 2));
    EXPECT_TRUE(multicopy_check(lam, mu, 3));
    ProbVector a({0.5, 0.5});
    ProbVector b({0.75, 0.25});
    for (std::size_t k = 1; k <= 5; ++k) {
        EXPECT_TRUE(multicopy_check(a, b, k));
    }
}

TEST(multicopy, cap) {
    EXPECT_THROW(tensor_power(ProbVector::uniform(4), 11), ResourceCapExceeded);
    EXPECT_THROW(multicopy_check(ProbVector::uniform(2), ProbVector::uniform(2), 0), InvalidInput);
    EXPECT_EQ(tensor_power(ProbVector::uniform(2), 3).size(), 8u);
}

TEST(catalysis, classic_pair) {
    ProbVector lam({0.4, 0.4, 0.1, 0.1});
    ProbVector mu({0.5, 0.25, 0.25, 0.0});
    EXPECT_FALSE(is_majorized(lam, mu));
    EXPECT_TRUE(catalyzes(lam, mu, ProbVector({0.6, 0.4})));
    EXPECT_TRUE(locc_test::oracle_majorized(locc_test::oracle_kron({0.4, 0.4, 0.1, 0.1}, {0.6, 0.4}),
                                            locc_test::oracle_kron({0.5, 0.25, 0.25, 0.0}, {0.6, 0.4})));

    const auto start = std::chrono::steady_clock::now();
    auto r = catalysis_search(lam, mu, 2, 0.01);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    EXPECT_LT(elapsed.count(), 10.0);
    ASSERT_TRUE(r.found);
    ASSERT_TRUE(r.catalyst.has_value());
    std::vector<double> c(r.catalyst->entries().begin(), r.catalyst->entries().end());
    EXPECT_TRUE(locc_test::oracle_majorized(locc_test::oracle_kron({0.4, 0.4, 0.1, 0.1}, c),
                                            locc_test::oracle_kron({0.5, 0.25, 0.25, 0.0}, c)));
    EXPECT_EQ(r.plain_violation, std::optional<std::size_t>(1));
}

TEST(catalysis, trivial_when_majorized) {
    auto r = catalysis_search(ProbVector({0.5, 0.5}), ProbVector({0.75, 0.25}), 3, 0.1);
    ASSERT_TRUE(r.found);
    EXPECT_EQ(r.catalyst->size(), 1u);
}

TEST(catalysis, not_found_is_reported) {
    // Rank increase can never be catalyzed.
    auto r = catalysis_search(ProbVector({1.0, 0.0}), ProbVector({0.5, 0.5}), 3, 0.1);
    EXPECT_FALSE(r.found);
    EXPECT_GT(r.candidates_tested, 0u);
}

TEST(catalysis, bad_resolution) {
    ProbVector lam({0.4, 0.4, 0.1, 0.1});
    ProbVector mu({0.5, 0.25, 0.25, 0.0});
    EXPECT_THROW(catalysis_search(lam, mu, 2, 0.0), InvalidInput);
    EXPECT_THROW(catalysis_search(lam, mu, 2, 0.9), InvalidInput);
}

TEST(catalysis, candidate_cap) {
    EXPECT_THROW(catalysis_search(ProbVector({1.0, 0.0}), ProbVector({0.5, 0.5}), 40, 0.01), ResourceCapExceeded);
}
