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

#include "locc/protocol.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "locc/errors.h"

namespace locc {

namespace {

bool nearly_equal(const ProbVector &a, const ProbVector &b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (std::abs(a[k] - b[k]) > kZeroEntry) {
            return false;
        }
    }
    return true;
}

// √(num/den) with 0/0 -> 0.
double ratio_root(double num, double den) {
    if (den <= 0) {
        return 0;
    }
    return std::sqrt(std::max(num, 0.0) / den);
}

}  // namespace

DiagonalOperator::DiagonalOperator(std::vector<double> diag) : diag_(std::move(diag)) {
    for (double d : diag_) {
        if (!std::isfinite(d) || d < 0) {
            throw InvalidInput("diagonal operator entries must be finite and nonnegative");
        }
    }
}

MeasurementPlan MeasurementPlan::trivial(std::size_t n, std::size_t parties) {
    MeasurementPlan plan;
    plan.n = n;
    plan.parties = parties;
    plan.outcomes.push_back({1.0, DiagonalOperator(std::vector<double>(n, 1.0)), Permutation::identity(n)});
    return plan;
}

MeasurementPlan synthesize(const ProbVector &lam, const ProbVector &mu, const PermutationMixture &mix,
                           std::size_t parties) {
    if (lam.size() != mu.size() || mix.n != lam.size()) {
        throw InvalidInput("synthesize: dimension mismatch between lam, mu and mixture");
    }
    if (auto bad = first_violation(lam, mu)) {
        throw ConversionImpossible("source is not majorized by target (prefix " + std::to_string(*bad) + ")");
    }
    const std::size_t n = lam.size();
    auto rebuilt = mix.reconstruct(mu.entries());
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(rebuilt[k] - lam[k]) > kSumTol) {
            std::ostringstream ss;
            ss << "mixture does not reproduce lam at index " << k << " (" << rebuilt[k] << " vs " << lam[k] << ")";
            throw InternalContradiction(ss.str());
        }
    }

    MeasurementPlan plan;
    plan.n = n;
    plan.parties = parties;
    for (const auto &term : mix.terms) {
        const Permutation inv = term.perm.inverse();
        std::vector<double> diag(n);
        for (std::size_t k = 0; k < n; ++k) {
            const double target = mu[inv(k)];
            if (lam[k] <= 0) {
                if (term.weight > 0 && target > kEntryClampTol) {
                    std::ostringstream ss;
                    ss << "lam[" << k << "] is zero but the mixture routes mu[" << inv(k) << "] = " << target
                       << " onto it";
                    throw InternalContradiction(ss.str());
                }
                diag[k] = 0;
            } else {
                diag[k] = ratio_root(term.weight * target, lam[k]);
            }
        }
        plan.outcomes.push_back({term.weight, DiagonalOperator(std::move(diag)), inv});
    }
    return plan;
}

MeasurementPlan plan_for(const ProbVector &lam, const ProbVector &mu, std::size_t parties) {
    if (lam.size() == mu.size() && nearly_equal(lam, mu)) {
        return MeasurementPlan::trivial(lam.size(), parties);
    }
    return synthesize(lam, mu, mixture_for(lam, mu), parties);
}

QubitPlan qubit_fast_path(const ProbVector &lam, const ProbVector &mu, std::size_t parties) {
    if (lam.size() != 2 || mu.size() != 2) {
        throw InvalidInput("qubit_fast_path requires n = 2");
    }
    if (nearly_equal(lam, mu)) {
        return {1.0, 0.0, MeasurementPlan::trivial(2, parties)};
    }
    if (!is_majorized(lam, mu)) {
        throw ConversionImpossible("lam_max exceeds mu_max; no LOCC conversion exists");
    }
    const double lam_max = lam[0];
    const double lam_min = lam[1];
    const double mu_max = mu[0];
    const double mu_min = mu[1];
    const double spread = mu_max - mu_min;
    if (spread <= 0) {
        throw ConversionImpossible("uniform target only converts from itself");
    }
    const double p_id = (lam_max - mu_min) / spread;
    const double p_swap = (lam_min - mu_min) / spread;

    MeasurementPlan plan;
    plan.n = 2;
    plan.parties = parties;
    plan.outcomes.push_back({p_id,
                             DiagonalOperator({ratio_root(p_id * mu_max, lam_max), ratio_root(p_id * mu_min, lam_min)}),
                             Permutation::identity(2)});
    plan.outcomes.push_back(
        {p_swap, DiagonalOperator({ratio_root(p_swap * mu_min, lam_max), ratio_root(p_swap * mu_max, lam_min)}),
         Permutation({1, 0})});
    return {p_id, p_swap, std::move(plan)};
}

ValidationReport validate(const MeasurementPlan &plan, const ProbVector &lam) {
    ValidationReport report;
    const std::size_t n = lam.size();
    bool shapes_ok = plan.n == n;
    for (const auto &o : plan.outcomes) {
        shapes_ok = shapes_ok && o.op.size() == n && o.unitary_perm.size() == n;
    }
    if (!shapes_ok || plan.outcomes.empty()) {
        report.completeness_residual = INFINITY;
        report.weight_residual = INFINITY;
        return report;
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (lam[k] <= 0) {
            continue;
        }
        double total = 0;
        for (const auto &o : plan.outcomes) {
            total += o.op[k] * o.op[k];
        }
        report.completeness_residual = std::max(report.completeness_residual, std::abs(total - 1.0));
    }
    for (const auto &o : plan.outcomes) {
        double p = 0;
        for (std::size_t k = 0; k < n; ++k) {
            p += lam[k] * o.op[k] * o.op[k];
        }
        report.outcome_probabilities.push_back(p);
        report.probability_sum += p;
        report.weight_residual = std::max(report.weight_residual, std::abs(p - o.weight));
    }
    report.complete = report.completeness_residual <= kPlanTol;
    report.weights_match = report.weight_residual <= kPlanTol;
    report.passed = report.complete && report.weights_match && std::abs(report.probability_sum - 1.0) <= kPlanTol;
    return report;
}

std::vector<double> branch_coefficients(const MeasurementPlan::Outcome &outcome, const ProbVector &lam) {
    std::vector<double> out(lam.size(), 0.0);
    if (outcome.weight <= 0) {
        return out;
    }
    for (std::size_t k = 0; k < lam.size(); ++k) {
        out[k] = lam[k] * outcome.op[k] * outcome.op[k] / outcome.weight;
    }
    return out;
}

}  // namespace locc
