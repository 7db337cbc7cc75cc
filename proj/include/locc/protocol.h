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

#ifndef LOCC_PROTOCOL_H
#define LOCC_PROTOCOL_H

#include <cstddef>
#include <vector>

#include "locc/majorization.h"

namespace locc {

/// Completeness and outcome-weight tolerance for measurement plans.
inline constexpr double kPlanTol = 1e-10;
/// Tolerance on per-branch coefficient vectors.
inline constexpr double kBranchCoeffTol = 1e-9;

/// Σ_k diag_k |k⟩⟨k| in the source Schmidt basis of the measuring party.
class DiagonalOperator {
   public:
    DiagonalOperator() = default;
    explicit DiagonalOperator(std::vector<double> diag);

    std::size_t size() const noexcept {
        return diag_.size();
    }
    double operator[](std::size_t k) const {
        return diag_[k];
    }
    const std::vector<double> &diag() const noexcept {
        return diag_;
    }

   private:
    std::vector<double> diag_;
};

/// Alice's complete diagonal measurement plus, per outcome, the basis
/// relabeling that every party applies after the outcome is broadcast.
struct MeasurementPlan {
    struct Outcome {
        double weight;
        DiagonalOperator op;
        /// σ_j^{-1}: source Schmidt index k is sent to target index unitary_perm(k).
        Permutation unitary_perm;
    };

    std::size_t n = 0;
    std::size_t parties = 2;
    std::vector<Outcome> outcomes;

    /// One-outcome identity plan.
    static MeasurementPlan trivial(std::size_t n, std::size_t parties = 2);
};

struct ValidationReport {
    /// max_k |Σ_j diag_{j,k}^2 - 1| over the support of λ.
    double completeness_residual = 0;
    /// Σ_k λ_k diag_{j,k}^2 per outcome.
    std::vector<double> outcome_probabilities;
    /// max_j |outcome_probabilities[j] - weight_j|.
    double weight_residual = 0;
    double probability_sum = 0;
    bool complete = false;
    bool weights_match = false;
    bool passed = false;
};

/// Builds M_j = √p_j Σ_k √(μ_{σ_j^{-1}(k)}/λ_k) |k⟩⟨k| for every mixture term,
/// with 0/0 read as 0 where λ_k vanishes.
MeasurementPlan synthesize(const ProbVector &lam, const ProbVector &mu, const PermutationMixture &mix,
                           std::size_t parties = 2);

/// mixture_for followed by synthesize; the short-circuit for λ == μ yields the trivial plan.
MeasurementPlan plan_for(const ProbVector &lam, const ProbVector &mu, std::size_t parties = 2);

/// Closed-form two-level protocol.
struct QubitPlan {
    /// Weight of the identity outcome, (λ_max - μ_min)/(μ_max - μ_min).
    double identity_weight;
    /// Weight of the swap outcome, (λ_min - μ_min)/(μ_max - μ_min).
    double swap_weight;
    MeasurementPlan plan;
};

QubitPlan qubit_fast_path(const ProbVector &lam, const ProbVector &mu, std::size_t parties = 2);

/// Never throws on a well-formed plan; sizes that do not match lam mark the report failed.
ValidationReport validate(const MeasurementPlan &plan, const ProbVector &lam);

/// Coefficients λ_k diag_{j,k}^2 / p_j left on the source Schmidt basis after outcome j.
std::vector<double> branch_coefficients(const MeasurementPlan::Outcome &outcome, const ProbVector &lam);

}  // namespace locc

#endif
