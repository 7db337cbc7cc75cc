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

#ifndef LOCC_PROBABILISTIC_H
#define LOCC_PROBABILISTIC_H

#include <cstddef>
#include <optional>
#include <vector>

#include "locc/majorization.h"
#include "locc/protocol.h"
#include "locc/state_sim.h"

namespace locc {

struct PmaxResult {
    double p;
    /// Largest index attaining the minimum tail ratio.
    std::size_t l_star;
};

/// min_l E_l(lam)/E_l(mu), skipping l with E_l(mu) = 0.
PmaxResult pmax(const ProbVector &lam, const ProbVector &mu);

/// Optimal conclusive conversion: convert to an intermediate state with
/// coefficients gamma deterministically, then run a two-outcome filter.
struct ConclusivePlan {
    double p_max = 0;
    std::size_t l_star = 0;
    ProbVector gamma{std::vector<double>{1.0}};
    MeasurementPlan deterministic_stage;
    DiagonalOperator success_op;
    DiagonalOperator failure_op;
    /// Absent when p_max == 1.
    std::optional<ProbVector> failure_coeffs;
    /// Tail indices where gamma switches proportionality constant, innermost last.
    std::vector<std::size_t> block_starts;
};

/// Requires p_max > 0. Throws ConstructionInvalid when the result fails its
/// own validation.
ConclusivePlan intermediate_state(const ProbVector &lam, const ProbVector &mu);

struct ConclusiveTranscript {
    ConclusivePlan plan;
    Transcript stage;
    double success_probability = 0;
    double failure_probability = 0;
    double min_success_fidelity = 1;
    double min_failure_fidelity = 1;
    /// Single-party actions of the filtering step (party, stage outcome).
    std::vector<LocalEvent> filter_events;
    bool passed = false;
};

ConclusiveTranscript run_conclusive(const GeneralizedSchmidtState &psi, const GeneralizedSchmidtState &phi);

/// Sorted lam^{⊗copies}; throws ResourceCapExceeded beyond 2^20 entries.
ProbVector tensor_power(const ProbVector &v, std::size_t copies);

bool multicopy_check(const ProbVector &lam, const ProbVector &mu, std::size_t copies);

struct CatalysisResult {
    bool found = false;
    std::optional<ProbVector> catalyst;
    /// Prefix index where lam fails to be majorized by mu without help, if it does.
    std::optional<std::size_t> plain_violation;
    /// min_l (prefix(mu ⊗ c) - prefix(lam ⊗ c)) for the accepted catalyst.
    double certificate_slack = 0;
    std::size_t candidates_tested = 0;
};

/// Upper bound on catalyst candidates examined by one search.
inline constexpr std::size_t kMaxCatalystCandidates = 2'000'000;

/// Grid search over sorted catalysts of dimension 2..d_max. Incomplete: a
/// miss does not prove that no catalyst exists. Throws ResourceCapExceeded
/// past kMaxCatalystCandidates.
CatalysisResult catalysis_search(const ProbVector &lam, const ProbVector &mu, std::size_t d_max, double resolution);

/// True when sorted(lam ⊗ c) ≺ sorted(mu ⊗ c).
bool catalyzes(const ProbVector &lam, const ProbVector &mu, const ProbVector &catalyst);

}  // namespace locc

#endif
