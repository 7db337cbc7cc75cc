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

#include "locc/majorization.h"

#include "gtest/gtest.h"

#include "locc/errors.h"
#include "test_util.h"

using namespace locc;

namespace {

void expect_doubly_stochastic(const Eigen::MatrixXd &d) {
    for (Eigen::Index i = 0; i < d.rows(); ++i) {
        EXPECT_NEAR(d.row(i).sum(), 1.0, 1e-9);
        EXPECT_NEAR(d.col(i).sum(), 1.0, 1e-9);
        for (Eigen::Index j = 0; j < d.cols(); ++j) {
            EXPECT_GE(d(i, j), -1e-12);
        }
    }
}

}  // namespace

TEST(prob_vector, sorts_and_remembers_order) {
    ProbVector v({0.2, 0.5, 0.3});
    EXPECT_EQ(v.size(), 3u);
    EXPECT_DOUBLE_EQ(v[0], 0.5);
    EXPECT_DOUBLE_EQ(v[1], 0.3);
    EXPECT_DOUBLE_EQ(v[2], 0.2);
    EXPECT_EQ(v.sort_order(), (std::vector<std::size_t>{1, 2, 0}));
}

TEST(prob_vector, clamps_tiny_negatives) {
    ProbVector v({1.0 + 1e-13, -1e-13});
    EXPECT_EQ(v[1], 0.0);
}

TEST(prob_vector, rejects_bad_input) {
    EXPECT_THROW(ProbVector({}), InvalidInput);
    EXPECT_THROW(ProbVector({0.5, 0.6}), InvalidInput);
    EXPECT_THROW(ProbVector({1.1, -0.1}), InvalidInput);
    EXPECT_THROW(ProbVector({NAN, 1.0}), InvalidInput);
}

TEST(prob_vector, uniform) {
    auto u = ProbVector::uniform(4);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_DOUBLE_EQ(u[k], 0.25);
    }
}

TEST(permutation, inverse_compose_permute) {
    Permutation p({2, 0, 1});
    EXPECT_TRUE(p.compose(p.inverse()).is_identity());
    EXPECT_TRUE(p.inverse().compose(p).is_identity());
    std::vector<double> v{10, 20, 30};
    auto out = p.permute(v);
    EXPECT_EQ(out, (std::vector<double>{20, 30, 10}));
    Eigen::VectorXd ev = Eigen::Map<Eigen::VectorXd>(v.data(), 3);
    Eigen::VectorXd mv = p.matrix() * ev;
    for (int k = 0; k < 3; ++k) {
        EXPECT_DOUBLE_EQ(mv(k), out[static_cast<std::size_t>(k)]);
    }
}

TEST(permutation, rejects_non_bijection) {
    EXPECT_THROW(Permutation({0, 0}), InvalidInput);
    EXPECT_THROW(Permutation({0, 2}), InvalidInput);
}

TEST(doubly_stochastic, validates) {
    Eigen::MatrixXd ok(2, 2);
    ok << 0.3, 0.7, 0.7, 0.3;
    EXPECT_NO_THROW(DoublyStochasticMatrix{ok});
    Eigen::MatrixXd bad(2, 2);
    bad << 0.5, 0.6, 0.5, 0.4;
    EXPECT_THROW(DoublyStochasticMatrix{bad}, InvalidInput);
}

TEST(is_majorized, examples) {
    EXPECT_TRUE(is_majorized(ProbVector({0.5, 0.5}), ProbVector({0.75, 0.25})));
    EXPECT_FALSE(is_majorized(ProbVector({0.75, 0.25}), ProbVector({0.5, 0.5})));
    ProbVector a({0.4, 0.4, 0.1, 0.1});
    ProbVector b({0.5, 0.25, 0.25, 0.0});
    EXPECT_FALSE(is_majorized(a, b));
    EXPECT_EQ(first_violation(a, b), std::optional<std::size_t>(1));
    EXPECT_TRUE(is_majorized(a, a));
    EXPECT_TRUE(is_majorized(ProbVector::uniform(3), ProbVector({1, 0, 0})));
}

TEST(is_majorized, tolerance) {
    ProbVector lam({0.5 + 5e-11, 0.5 - 5e-11});
    ProbVector mu({0.5, 0.5});
    EXPECT_TRUE(is_majorized(lam, mu));
    EXPECT_FALSE(is_majorized(lam, mu, 1e-12));
}

TEST(tail_sum, basic) {
    ProbVector v({0.5, 0.3, 0.2});
    EXPECT_NEAR(tail_sum(v, 0), 1.0, 1e-15);
    EXPECT_NEAR(tail_sum(v, 1), 0.5, 1e-15);
    EXPECT_NEAR(tail_sum(v, 2), 0.2, 1e-15);
}

TEST(hlp_matrix, identity_when_equal) {
    ProbVector v({0.6, 0.3, 0.1});
    auto d = hlp_matrix(v, v);
    EXPECT_TRUE(d.entries().isApprox(Eigen::MatrixXd::Identity(3, 3)));
}

TEST(hlp_matrix, qubit_is_unique) {
    auto d = hlp_matrix(ProbVector({0.5, 0.5}), ProbVector({0.75, 0.25}));
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            EXPECT_NEAR(d.entries()(i, j), 0.5, 1e-12);
        }
    }
}

TEST(hlp_matrix, qutrit_maps_mu_to_lam) {
    ProbVector lam({0.5, 0.3, 0.2});
    ProbVector mu({0.6, 0.3, 0.1});
    auto d = hlp_matrix(lam, mu);
    expect_doubly_stochastic(d.entries());
    auto out = d.apply(mu.entries());
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_NEAR(out[k], lam[k], 1e-9);
    }
    EXPECT_LE(t_transform_chain(lam, mu).size(), 2u);
}

TEST(hlp_matrix, rejects_non_majorized) {
    EXPECT_THROW(hlp_matrix(ProbVector({0.75, 0.25}), ProbVector({0.5, 0.5})), ConversionImpossible);
}

TEST(birkhoff_decompose, permutation_matrix_is_single_term) {
    Permutation p({1, 2, 0});
    auto mix = birkhoff_decompose(DoublyStochasticMatrix(p.matrix()));
    ASSERT_EQ(mix.terms.size(), 1u);
    EXPECT_NEAR(mix.terms[0].weight, 1.0, 1e-12);
    EXPECT_EQ(mix.terms[0].perm, p);
}

TEST(birkhoff_decompose, uniform_two_by_two) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Constant(2, 2, 0.5);
    auto mix = birkhoff_decompose(DoublyStochasticMatrix(d));
    ASSERT_EQ(mix.terms.size(), 2u);
    EXPECT_NEAR(mix.terms[0].weight, 0.5, 1e-12);
    EXPECT_NEAR(mix.terms[1].weight, 0.5, 1e-12);
    EXPECT_TRUE((mix.matrix() - d).cwiseAbs().maxCoeff() < 1e-12);
}

TEST(birkhoff_decompose, uniform_matrices) {
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto e = static_cast<Eigen::Index>(n);
        Eigen::MatrixXd d = Eigen::MatrixXd::Constant(e, e, 1.0 / static_cast<double>(n));
        auto mix = birkhoff_decompose(DoublyStochasticMatrix(d));
        EXPECT_LE(mix.terms.size(), PermutationMixture::max_terms(n));
        EXPECT_LT((mix.matrix() - d).cwiseAbs().maxCoeff(), 1e-9);
    }
}

TEST(mixture_for, examples) {
    ProbVector v({0.7, 0.3});
    auto trivial = mixture_for(v, v);
    ASSERT_EQ(trivial.terms.size(), 1u);
    EXPECT_TRUE(trivial.terms[0].perm.is_identity());
    EXPECT_EQ(trivial.terms[0].weight, 1.0);

    auto mix = mixture_for(ProbVector({0.5, 0.5}), ProbVector({0.75, 0.25}));
    ASSERT_EQ(mix.terms.size(), 2u);
    int swaps = 0;
    for (const auto &t : mix.terms) {
        EXPECT_NEAR(t.weight, 0.5, 1e-12);
        swaps += t.perm.is_identity() ? 0 : 1;
    }
    EXPECT_EQ(swaps, 1);

    ProbVector lam({0.5, 0.3, 0.2});
    ProbVector mu({0.6, 0.3, 0.1});
    auto m3 = mixture_for(lam, mu);
    // Independent reconstruction: Σ_j p_j μ_{σ_j^{-1}(k)}.
    std::vector<double> rebuilt(3, 0.0);
    for (const auto &t : m3.terms) {
        auto inv = t.perm.inverse();
        for (std::size_t k = 0; k < 3; ++k) {
            rebuilt[k] += t.weight * mu[inv(k)];
        }
    }
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_NEAR(rebuilt[k], lam[k], 1e-9);
    }
    EXPECT_LE(m3.terms.size(), PermutationMixture::max_terms(3));
}

TEST(mixture_for, zero_padding) {
    auto mix = mixture_for(ProbVector({0.5, 0.5, 0.0}), ProbVector({1.0, 0.0, 0.0}));
    auto rebuilt = mix.reconstruct(ProbVector({1.0, 0.0, 0.0}).entries());
    EXPECT_NEAR(rebuilt[0], 0.5, 1e-12);
    EXPECT_NEAR(rebuilt[1], 0.5, 1e-12);
    EXPECT_NEAR(rebuilt[2], 0.0, 1e-12);
}

TEST(pad_to, appends_zeros) {
    auto v = pad_to(ProbVector({0.6, 0.4}), 4);
    EXPECT_EQ(v.size(), 4u);
    EXPECT_EQ(v[3], 0.0);
}

TEST(tensor_product, matches_oracle) {
    ProbVector a({0.4, 0.4, 0.1, 0.1});
    ProbVector c({0.6, 0.4});
    auto t = tensor_product(a, c);
    auto want = locc_test::oracle_kron({0.4, 0.4, 0.1, 0.1}, {0.6, 0.4});
    ASSERT_EQ(t.size(), want.size());
    for (std::size_t k = 0; k < want.size(); ++k) {
        EXPECT_NEAR(t[k], want[k], 1e-15);
    }
}
