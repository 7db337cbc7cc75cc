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

#ifndef LOCC_STATE_SIM_H
#define LOCC_STATE_SIM_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "locc/majorization.h"
#include "locc/protocol.h"

namespace locc {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr std::size_t kMaxParties = 6;
inline constexpr std::size_t kMaxAmplitudes = std::size_t{1} << 20;
inline constexpr double kNormTol = 1e-9;
inline constexpr double kUnitaryTol = 1e-9;
inline constexpr double kFidelityTol = 1e-9;
/// Outcomes with probability at or below this cannot occur.
inline constexpr double kBranchTol = 1e-12;
inline constexpr double kProbabilityTol = 1e-9;

/// Throws ResourceCapExceeded unless 2 <= dims.size() <= kMaxParties and
/// the amplitude count stays within kMaxAmplitudes.
std::size_t checked_amplitude_count(const std::vector<std::size_t> &dims);

/// Normalized pure state on ⊗_i C^{dims[i]}, flattened row-major (party 0 is
/// the slowest-varying index).
class DenseState {
   public:
    DenseState(std::vector<std::size_t> dims, ComplexVector amplitudes);

    const std::vector<std::size_t> &dims() const noexcept {
        return dims_;
    }
    std::size_t parties() const noexcept {
        return dims_.size();
    }
    const ComplexVector &amplitudes() const noexcept {
        return amplitudes_;
    }

   private:
    std::vector<std::size_t> dims_;
    ComplexVector amplitudes_;
};

/// Σ_k √λ_k |k⟩_1 ⊗ ... ⊗ |k⟩_m, with |k⟩_i the k-th column of bases[i].
///
/// The coefficients are stored sorted; when the raw coefficients are not in
/// nonincreasing order the basis columns are reordered along with them, so
/// the described state never changes.
class GeneralizedSchmidtState {
   public:
    GeneralizedSchmidtState(std::vector<double> coefficients, std::vector<ComplexMatrix> bases);

    /// Computational bases on every party.
    static GeneralizedSchmidtState computational(const ProbVector &coeffs, std::size_t parties,
                                                 std::vector<std::size_t> dims = {});

    std::size_t parties() const noexcept {
        return bases_.size();
    }
    std::size_t n() const noexcept {
        return coeffs_.size();
    }
    const ProbVector &coeffs() const noexcept {
        return coeffs_;
    }
    const std::vector<ComplexMatrix> &bases() const noexcept {
        return bases_;
    }
    std::vector<std::size_t> dims() const;

    /// Same bases, different coefficients (raw order follows the current basis columns).
    GeneralizedSchmidtState with_coefficients(std::vector<double> coefficients) const;

   private:
    ProbVector coeffs_;
    std::vector<ComplexMatrix> bases_;
};

DenseState assemble(const GeneralizedSchmidtState &s);

/// Applies op to one party's tensor factor without renormalizing.
ComplexVector apply_local_unnormalized(const DenseState &state, std::size_t party, const ComplexMatrix &op);

struct LocalResult {
    double probability;
    DenseState post;
};

/// Throws ZeroBranch when the outcome probability is at or below kBranchTol.
LocalResult apply_local(const DenseState &state, std::size_t party, const ComplexMatrix &op);

double fidelity(const DenseState &a, const DenseState &b);

/// Haar-random unitary from the QR decomposition of a complex Gaussian matrix.
ComplexMatrix random_unitary(std::size_t d, std::mt19937_64 &rng);

/// B_target · P(perm) · B_source^†, where P acts as the identity on indices >= perm.size().
ComplexMatrix relabeling_unitary(const ComplexMatrix &source_basis, const ComplexMatrix &target_basis,
                                 const Permutation &perm);

/// Materializes a plan operator in a party's basis. Basis directions that the
/// plan leaves undefined (outside the first n, or where λ vanishes) receive
/// √weight so the materialized outcome set stays complete on the full space.
ComplexMatrix materialize_measurement(const MeasurementPlan::Outcome &outcome, const ProbVector &lam,
                                      const ComplexMatrix &basis);

/// One single-party action in a protocol run.
struct LocalEvent {
    enum class Kind { Measure, Broadcast, Unitary };
    Kind kind;
    std::size_t party;
    std::size_t outcome;
};

struct BranchRecord {
    std::size_t outcome = 0;
    double analytic_probability = 0;
    double simulated_probability = 0;
    bool realizable = false;
    /// Fidelity of the post-measurement state to Σ_k √μ_{σ^{-1}(k)} |k...k⟩ in the source bases.
    double measurement_fidelity = 0;
    /// Fidelity of the final branch state to the target.
    double fidelity = 0;
    std::optional<DenseState> post_measurement;
    std::optional<DenseState> final_state;
    std::vector<ComplexMatrix> unitaries;
};

struct Transcript {
    std::vector<BranchRecord> branches;
    std::vector<LocalEvent> events;
    std::size_t parties = 0;
    double probability_sum = 0;
    double max_probability_error = 0;
    double min_fidelity = 1;
    double min_measurement_fidelity = 1;
    bool sampled = false;
    bool passed = false;

    /// True when every recorded event names exactly one valid party.
    bool is_local() const;
};

struct RunOptions {
    /// Keep per-branch dense states in the transcript.
    bool keep_states = true;
    /// When set, draw a single outcome from the simulated distribution
    /// instead of enumerating every branch.
    std::optional<std::uint64_t> sample_seed;
};

Transcript run_protocol(const GeneralizedSchmidtState &psi, const GeneralizedSchmidtState &phi,
                        const MeasurementPlan &plan, const RunOptions &options = {});

struct GsdWitness {
    /// "entangled-cofactor", "non-orthogonal-factors" or "reconstruction".
    std::string kind;
    /// Schmidt index of the failing cofactor, or the party whose local vectors overlap.
    std::size_t index = 0;
    double residual = 0;
};

struct GsdExtraction {
    enum class Verdict { Admits, Rejects, RejectsDegenerate };
    Verdict verdict = Verdict::Rejects;
    std::optional<GeneralizedSchmidtState> state;
    std::optional<GsdWitness> witness;
    /// Fidelity of assemble(state) to the input when admitted.
    double fidelity = 0;
    bool degenerate = false;
};

inline constexpr double kGsdTol = 1e-9;

GsdExtraction extract_gsd(const DenseState &state, double tol = kGsdTol);

const char *verdict_name(GsdExtraction::Verdict v);

}  // namespace locc

#endif
