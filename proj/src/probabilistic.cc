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

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "locc/errors.h"

namespace locc {

namespace {

// Ratios within this of the minimum count as ties when picking l*.
constexpr double kRatioTie = 1e-14;
constexpr double kConclusiveTol = 1e-10;

// Σ_{k=l}^{upper-1} lam_k / Σ_{k=l}^{upper-1} mu_k for l < upper; +inf where the
// mu segment is empty.
std::vector<double> segment_ratios(const ProbVector &lam, const ProbVector &mu, std::size_t upper) {
    std::vector<double> ratios(upper, INFINITY);
    double lam_tail = 0;
    double mu_tail = 0;
    for (std::size_t l = upper; l-- > 0;) {
        lam_tail += lam[l];
        mu_tail += mu[l];
        if (mu_tail > 0) {
            ratios[l] = lam_tail / mu_tail;
        }
    }
    return ratios;
}

std::size_t largest_index_at_most(const std::vector<double> &ratios, double bound) {
    for (std::size_t l = ratios.size(); l-- > 0;) {
        if (ratios[l] <= bound + kRatioTie) {
            return l;
        }
    }
    return 0;
}

// Largest l in [0, upper) minimizing the segment ratio, with the minimum.
std::pair<double, std::size_t> min_segment_ratio(const ProbVector &lam, const ProbVector &mu, std::size_t upper) {
    const auto ratios = segment_ratios(lam, mu, upper);
    const double best = *std::min_element(ratios.begin(), ratios.end());
    return {best, largest_index_at_most(ratios, best)};
}

void require_same_size(const ProbVector &a, const ProbVector &b) {
    if (a.size() != b.size()) {
        throw InvalidInput("dimension mismatch; pad_to a common length first");
    }
}

// Nonincreasing positive compositions of total into parts, in descending
// lexicographic order. Throws once more than limit would be produced.
std::vector<std::vector<std::size_t>> compositions(std::size_t total, std::size_t parts, std::size_t limit) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> current;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t remaining, std::size_t cap) {
        const std::size_t slots = parts - current.size();
        if (slots == 0) {
            if (remaining == 0) {
                if (out.size() >= limit) {
                    throw ResourceCapExceeded("catalyst grid exceeds " + std::to_string(kMaxCatalystCandidates) +
                                              " candidates; lower --dmax or coarsen --resolution");
                }
                out.push_back(current);
            }
            return;
        }
        if (remaining < slots) {
            return;
        }
        const std::size_t hi = std::min(cap, remaining - (slots - 1));
        const std::size_t lo = (remaining + slots - 1) / slots;
        for (std::size_t first = hi; first >= lo && first >= 1; --first) {
            current.push_back(first);
            rec(remaining - first, first);
            current.pop_back();
        }
    };
    rec(total, total);
    return out;
}

double majorization_slack(const ProbVector &lo, const ProbVector &hi) {
    double slack = INFINITY;
    double a = 0;
    double b = 0;
    for (std::size_t l = 0; l + 1 < lo.size(); ++l) {
        a += lo[l];
        b += hi[l];
        slack = std::min(slack, b - a);
    }
    return lo.size() > 1 ? slack : 0.0;
}

}  // namespace

PmaxResult pmax(const ProbVector &lam, const ProbVector &mu) {
    require_same_size(lam, mu);
    const auto ratios = segment_ratios(lam, mu, lam.size());
    // The l = 0 ratio is 1 by normalization; summation rounding must not push
    // p below 1 for majorized pairs.
    if (is_majorized(lam, mu)) {
        return {1.0, largest_index_at_most(ratios, 1.0)};
    }
    const double best = *std::min_element(ratios.begin(), ratios.end());
    return {std::clamp(best, 0.0, 1.0), largest_index_at_most(ratios, best)};
}

ConclusivePlan intermediate_state(const ProbVector &lam, const ProbVector &mu) {
    require_same_size(lam, mu);
    const std::size_t n = lam.size();
    const PmaxResult best = pmax(lam, mu);
    if (best.p <= 0) {
        throw ConversionImpossible("conversion probability is zero: the target has larger Schmidt rank");
    }

    ConclusivePlan plan;
    plan.p_max = best.p;
    plan.l_star = best.l_star;

    // Tail block [l*, n) scales mu by p; each earlier block [l', upper) scales
    // mu by its own minimal segment ratio, which never falls below p.
    std::vector<double> gamma(n, 0.0);
    for (std::size_t k = best.l_star; k < n; ++k) {
        gamma[k] = best.p * mu[k];
    }
    plan.block_starts.push_back(best.l_star);
    std::size_t upper = best.l_star;
    if (best.p == 1.0) {
        gamma.assign(mu.entries().begin(), mu.entries().end());
        upper = 0;
    }
    while (upper > 0) {
        auto [ratio, start] = min_segment_ratio(lam, mu, upper);
        if (!std::isfinite(ratio)) {
            throw ConstructionInvalid("target prefix has zero mass above the tail block");
        }
        for (std::size_t k = start; k < upper; ++k) {
            gamma[k] = ratio * mu[k];
        }
        plan.block_starts.push_back(start);
        upper = start;
    }
    plan.gamma = ProbVector(gamma);
    const ProbVector &g = plan.gamma;
    const double p = plan.p_max;

    std::ostringstream problems;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (gamma[k + 1] > gamma[k] + kEntryClampTol) {
            problems << "gamma is not sorted at index " << k << "; ";
            break;
        }
    }
    if (auto bad = first_violation(lam, g)) {
        problems << "lam is not majorized by gamma (prefix " << *bad << "); ";
    }
    std::vector<double> success(n, 0.0);
    std::vector<double> failure(n, 1.0);
    double success_mass = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (p * mu[k] > gamma[k] + kEntryClampTol) {
            problems << "p*mu exceeds gamma at index " << k << "; ";
        }
        if (gamma[k] > 0) {
            const double q = std::min(p * mu[k] / gamma[k], 1.0);
            success[k] = std::sqrt(q);
            failure[k] = std::sqrt(1.0 - q);
            success_mass += gamma[k] * q;
        } else if (mu[k] > 0) {
            problems << "gamma vanishes where mu does not (index " << k << "); ";
        }
    }
    double completeness = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (gamma[k] > 0) {
            completeness = std::max(completeness, std::abs(success[k] * success[k] + failure[k] * failure[k] - 1.0));
        }
    }
    if (completeness > kConclusiveTol) {
        problems << "filter is not complete (residual " << completeness << "); ";
    }
    if (std::abs(success_mass - p) > kConclusiveTol) {
        problems << "filter success mass " << success_mass << " differs from p_max " << p << "; ";
    }
    const std::string issues = problems.str();
    if (!issues.empty()) {
        throw ConstructionInvalid("intermediate state failed validation: " + issues);
    }

    plan.success_op = DiagonalOperator(std::move(success));
    plan.failure_op = DiagonalOperator(std::move(failure));
    if (p < 1.0) {
        std::vector<double> rest(n);
        for (std::size_t k = 0; k < n; ++k) {
            rest[k] = std::max(gamma[k] - p * mu[k], 0.0) / (1.0 - p);
        }
        // Normalize away rounding in the (1-p) division when p is close to 1.
        double total = 0;
        for (double r : rest) {
            total += r;
        }
        for (double &r : rest) {
            r /= total;
        }
        plan.failure_coeffs = ProbVector(std::move(rest));
    }
    plan.deterministic_stage = plan_for(lam, g);
    return plan;
}

ConclusiveTranscript run_conclusive(const GeneralizedSchmidtState &psi, const GeneralizedSchmidtState &phi) {
    if (psi.dims() != phi.dims() || psi.n() != phi.n()) {
        throw InvalidInput("source and target states are incompatible");
    }
    ConclusiveTranscript out;
    out.plan = intermediate_state(psi.coeffs(), phi.coeffs());
    const auto &plan = out.plan;
    const std::size_t n = psi.n();
    const std::size_t m = psi.parties();

    const auto omega = psi.with_coefficients({plan.gamma.entries().begin(), plan.gamma.entries().end()});
    RunOptions opts;
    opts.keep_states = true;
    out.stage = run_protocol(psi, omega, plan.deterministic_stage, opts);

    const ComplexMatrix &basis_a = psi.bases()[0];
    const Eigen::Index d = basis_a.rows();
    Eigen::VectorXcd success_diag = Eigen::VectorXcd::Zero(d);
    Eigen::VectorXcd failure_diag = Eigen::VectorXcd::Ones(d);
    for (std::size_t k = 0; k < n; ++k) {
        success_diag(static_cast<Eigen::Index>(k)) = plan.success_op[k];
        failure_diag(static_cast<Eigen::Index>(k)) = plan.failure_op[k];
    }
    const ComplexMatrix success_m = basis_a * success_diag.asDiagonal() * basis_a.adjoint();
    const ComplexMatrix failure_m = basis_a * failure_diag.asDiagonal() * basis_a.adjoint();
    const DenseState target = assemble(phi);
    std::optional<DenseState> failure_target;
    if (plan.failure_coeffs) {
        failure_target = assemble(
            psi.with_coefficients({plan.failure_coeffs->entries().begin(), plan.failure_coeffs->entries().end()}));
    }

    bool ok = out.stage.passed;
    for (const auto &branch : out.stage.branches) {
        if (!branch.realizable || !branch.final_state) {
            continue;
        }
        const double weight = branch.simulated_probability;
        out.filter_events.push_back({LocalEvent::Kind::Measure, 0, branch.outcome});
        out.filter_events.push_back({LocalEvent::Kind::Broadcast, 0, branch.outcome});
        ComplexVector hit = apply_local_unnormalized(*branch.final_state, 0, success_m);
        const double q = hit.squaredNorm();
        out.success_probability += weight * q;
        if (q > kBranchTol) {
            DenseState current(branch.final_state->dims(), hit / std::sqrt(q));
            for (std::size_t party = 0; party < m; ++party) {
                const ComplexMatrix u =
                    relabeling_unitary(psi.bases()[party], phi.bases()[party], Permutation::identity(n));
                current = apply_local(current, party, u).post;
                out.filter_events.push_back({LocalEvent::Kind::Unitary, party, branch.outcome});
            }
            out.min_success_fidelity = std::min(out.min_success_fidelity, fidelity(current, target));
        }
        ComplexVector miss = apply_local_unnormalized(*branch.final_state, 0, failure_m);
        const double f = miss.squaredNorm();
        out.failure_probability += weight * f;
        if (failure_target && f > kBranchTol) {
            DenseState failed(branch.final_state->dims(), miss / std::sqrt(f));
            out.min_failure_fidelity = std::min(out.min_failure_fidelity, fidelity(failed, *failure_target));
        }
    }
    ok = ok && std::abs(out.success_probability - plan.p_max) <= kProbabilityTol;
    ok = ok && out.min_success_fidelity >= 1.0 - kFidelityTol;
    ok = ok && out.min_failure_fidelity >= 1.0 - kFidelityTol;
    ok = ok && std::abs(out.success_probability + out.failure_probability - 1.0) <= kProbabilityTol;
    out.passed = ok;
    return out;
}

ProbVector tensor_power(const ProbVector &v, std::size_t copies) {
    if (copies == 0) {
        throw InvalidInput("copies must be at least 1");
    }
    std::size_t total = 1;
    for (std::size_t c = 0; c < copies; ++c) {
        if (total > kMaxAmplitudes / v.size()) {
            throw ResourceCapExceeded("n^copies exceeds the cap of 2^20 entries");
        }
        total *= v.size();
    }
    ProbVector out = v;
    for (std::size_t c = 1; c < copies; ++c) {
        out = tensor_product(out, v);
    }
    return out;
}

bool multicopy_check(const ProbVector &lam, const ProbVector &mu, std::size_t copies) {
    require_same_size(lam, mu);
    return is_majorized(tensor_power(lam, copies), tensor_power(mu, copies));
}

bool catalyzes(const ProbVector &lam, const ProbVector &mu, const ProbVector &catalyst) {
    require_same_size(lam, mu);
    return is_majorized(tensor_product(lam, catalyst), tensor_product(mu, catalyst));
}

CatalysisResult catalysis_search(const ProbVector &lam, const ProbVector &mu, std::size_t d_max, double resolution) {
    require_same_size(lam, mu);
    CatalysisResult result;
    result.plain_violation = first_violation(lam, mu);
    if (!result.plain_violation) {
        result.found = true;
        result.catalyst = ProbVector(std::vector<double>{1.0});
        result.certificate_slack = majorization_slack(lam, mu);
        return result;
    }
    if (!(resolution > 0 && resolution <= 0.5)) {
        throw InvalidInput("resolution must lie in (0, 0.5]");
    }
    const auto steps = static_cast<std::size_t>(std::llround(1.0 / resolution));
    std::vector<std::size_t> levels;
    for (std::size_t k = 4; k < steps; k *= 2) {
        levels.push_back(k);
    }
    levels.push_back(steps);

    for (std::size_t d = 2; d <= d_max; ++d) {
        for (std::size_t level : levels) {
            if (level < d) {
                continue;
            }
            for (const auto &parts : compositions(level, d, kMaxCatalystCandidates - result.candidates_tested)) {
                std::vector<double> c;
                for (std::size_t part : parts) {
                    c.push_back(static_cast<double>(part) / static_cast<double>(level));
                }
                ProbVector candidate(std::move(c));
                ++result.candidates_tested;
                const ProbVector lo = tensor_product(lam, candidate);
                const ProbVector hi = tensor_product(mu, candidate);
                if (is_majorized(lo, hi)) {
                    result.found = true;
                    result.certificate_slack = majorization_slack(lo, hi);
                    result.catalyst = std::move(candidate);
                    return result;
                }
            }
        }
    }
    return result;
}

}  // namespace locc
