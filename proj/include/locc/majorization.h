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

#ifndef LOCC_MAJORIZATION_H
#define LOCC_MAJORIZATION_H

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace locc {

/// Entries in (-kEntryClampTol, 0) are clamped to zero; anything more negative is rejected.
inline constexpr double kEntryClampTol = 1e-12;
/// Tolerance on probability sums and doubly stochastic row/column sums.
inline constexpr double kSumTol = 1e-9;
/// Default slack for the prefix-sum comparisons of the majorization predicate.
inline constexpr double kMajorizationTol = 1e-10;
/// Matrix entries at or below this are treated as structural zeros during peeling.
inline constexpr double kZeroEntry = 1e-12;

/// A probability vector stored in nonincreasing order.
///
/// Construction sorts the raw entries and remembers where each sorted entry
/// came from: `entries()[i] == raw[sort_order()[i]]`. The sort order is what
/// lets callers carry per-index data (such as basis columns) along with the
/// coefficients.
class ProbVector {
   public:
    explicit ProbVector(std::vector<double> raw);

    static ProbVector uniform(std::size_t n);

    std::size_t size() const noexcept {
        return entries_.size();
    }
    double operator[](std::size_t i) const {
        return entries_[i];
    }
    std::span<const double> entries() const noexcept {
        return entries_;
    }
    const std::vector<std::size_t> &sort_order() const noexcept {
        return sort_order_;
    }

    bool operator==(const ProbVector &other) const {
        return entries_ == other.entries_;
    }

   private:
    std::vector<double> entries_;
    std::vector<std::size_t> sort_order_;
};

/// A bijection on {0, ..., n-1}; `image()[i]` is where `i` is sent.
class Permutation {
   public:
    explicit Permutation(std::vector<std::size_t> image);

    static Permutation identity(std::size_t n);

    std::size_t size() const noexcept {
        return image_.size();
    }
    std::size_t operator()(std::size_t i) const {
        return image_[i];
    }
    const std::vector<std::size_t> &image() const noexcept {
        return image_;
    }
    bool is_identity() const;

    Permutation inverse() const;
    /// (this ∘ other)(i) = this(other(i)).
    Permutation compose(const Permutation &other) const;

    /// Moves entry i to slot image(i), i.e. result[k] = v[inverse(k)].
    std::vector<double> permute(std::span<const double> v) const;

    /// Permutation matrix P with P e_i = e_{image(i)}.
    Eigen::MatrixXd matrix() const;

    bool operator==(const Permutation &other) const = default;

   private:
    std::vector<std::size_t> image_;
};

/// A square nonnegative matrix whose rows and columns each sum to 1.
class DoublyStochasticMatrix {
   public:
    explicit DoublyStochasticMatrix(Eigen::MatrixXd entries);

    std::size_t size() const noexcept {
        return static_cast<std::size_t>(entries_.rows());
    }
    const Eigen::MatrixXd &entries() const noexcept {
        return entries_;
    }
    std::vector<double> apply(std::span<const double> v) const;

   private:
    Eigen::MatrixXd entries_;
};

/// Convex combination of permutations: λ = Σ_j p_j σ_j μ.
struct PermutationMixture {
    struct Term {
        double weight;
        Permutation perm;
    };

    std::size_t n = 0;
    std::vector<Term> terms;

    /// Σ_j p_j (σ_j μ), where (σ μ)_k = μ_{σ^{-1}(k)}.
    std::vector<double> reconstruct(std::span<const double> mu) const;
    Eigen::MatrixXd matrix() const;
    /// Largest term count allowed by the Birkhoff polytope dimension, (n-1)^2 + 1.
    static std::size_t max_terms(std::size_t n) {
        return n == 0 ? 0 : (n - 1) * (n - 1) + 1;
    }
};

/// One elementary step t·I + (1-t)·Π_{first,second}.
struct TTransform {
    std::size_t first;
    std::size_t second;
    double t;

    Eigen::MatrixXd matrix(std::size_t n) const;
};

/// Returns the first prefix index l (0 <= l <= n-2) whose prefix sum of lam
/// exceeds that of mu by more than tol, or nullopt when lam ≺ mu.
std::optional<std::size_t> first_violation(const ProbVector &lam, const ProbVector &mu, double tol = kMajorizationTol);

bool is_majorized(const ProbVector &lam, const ProbVector &mu, double tol = kMajorizationTol);

/// E_l(v) = Σ_{k >= l} v_k.
double tail_sum(const ProbVector &v, std::size_t l);

ProbVector pad_to(const ProbVector &v, std::size_t n);

/// T-transform chain (at most n-1 steps) carrying mu to lam; apply in order.
std::vector<TTransform> t_transform_chain(const ProbVector &lam, const ProbVector &mu);

/// Doubly stochastic D with D·mu = lam, built as a product of T-transforms.
DoublyStochasticMatrix hlp_matrix(const ProbVector &lam, const ProbVector &mu);

/// Birkhoff-von Neumann decomposition by repeated perfect-matching peeling.
PermutationMixture birkhoff_decompose(const DoublyStochasticMatrix &d);

/// Mixture realizing lam from mu; short-circuits to the identity when lam == mu.
PermutationMixture mixture_for(const ProbVector &lam, const ProbVector &mu);

/// Sorted elementwise outer product a ⊗ b.
ProbVector tensor_product(const ProbVector &a, const ProbVector &b);

}  // namespace locc

#endif
