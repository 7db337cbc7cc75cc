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

#include "locc/state_sim.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "locc/errors.h"

namespace locc {

namespace {

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Index as_index(std::size_t i) {
    return static_cast<Eigen::Index>(i);
}

std::size_t product(const std::vector<std::size_t> &dims, std::size_t begin, std::size_t end) {
    std::size_t p = 1;
    for (std::size_t i = begin; i < end; ++i) {
        p *= dims[i];
    }
    return p;
}

// Gram-Schmidt completion of orthonormal columns to a full unitary. The given
// columns are re-orthonormalized in place and then extended with whichever
// computational basis vectors are most independent.
ComplexMatrix complete_to_unitary(const std::vector<ComplexVector> &columns, std::size_t d) {
    ComplexMatrix basis(as_index(d), as_index(d));
    std::size_t filled = 0;
    auto push = [&](ComplexVector v) {
        for (std::size_t c = 0; c < filled; ++c) {
            v -= basis.col(as_index(c)).dot(v) * basis.col(as_index(c));
        }
        const double norm = v.norm();
        if (norm < 1e-6 || filled == d) {
            return false;
        }
        basis.col(as_index(filled++)) = v / norm;
        return true;
    };
    for (const auto &col : columns) {
        if (!push(col)) {
            throw InternalContradiction("basis columns are not linearly independent");
        }
    }
    for (std::size_t e = 0; e < d && filled < d; ++e) {
        push(ComplexVector::Unit(as_index(d), as_index(e)));
    }
    return basis;
}

// Splits w (on dims[begin..]) into a product of local unit vectors. Returns
// the residual 1 - σ_max^2 of the first cut that is not a product.
struct FactorResult {
    std::vector<ComplexVector> factors;
    double residual = 0;
    bool ok = true;
};

FactorResult factor_product(const ComplexVector &w, const std::vector<std::size_t> &dims, std::size_t begin,
                            double tol) {
    FactorResult result;
    if (begin + 1 == dims.size()) {
        result.factors.push_back(w.normalized());
        return result;
    }
    const std::size_t d = dims[begin];
    const std::size_t rest = product(dims, begin + 1, dims.size());
    Eigen::Map<const RowMajorMatrix> a(w.data(), as_index(d), as_index(rest));
    Eigen::JacobiSVD<ComplexMatrix> svd(ComplexMatrix(a), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double top = svd.singularValues()(0);
    const double total = w.squaredNorm();
    result.residual = std::max(0.0, 1.0 - top * top / total);
    if (result.residual > tol) {
        result.ok = false;
        return result;
    }
    result.factors.push_back(svd.matrixU().col(0));
    ComplexVector tail = svd.matrixV().col(0).conjugate();
    auto inner = factor_product(tail, dims, begin + 1, tol);
    if (!inner.ok) {
        return inner;
    }
    result.residual = std::max(result.residual, inner.residual);
    for (auto &f : inner.factors) {
        result.factors.push_back(std::move(f));
    }
    return result;
}

ComplexVector kron_all(const std::vector<ComplexVector> &factors) {
    ComplexVector out = ComplexVector::Ones(1);
    for (const auto &f : factors) {
        ComplexVector next(out.size() * f.size());
        for (Eigen::Index i = 0; i < out.size(); ++i) {
            next.segment(i * f.size(), f.size()) = out(i) * f;
        }
        out = std::move(next);
    }
    return out;
}

}  // namespace

std::size_t checked_amplitude_count(const std::vector<std::size_t> &dims) {
    if (dims.size() < 2) {
        throw InvalidInput("a multipartite state needs at least 2 parties");
    }
    if (dims.size() > kMaxParties) {
        throw ResourceCapExceeded("party count " + std::to_string(dims.size()) + " exceeds the cap of " +
                                  std::to_string(kMaxParties));
    }
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (d == 0) {
            throw InvalidInput("local dimensions must be positive");
        }
        if (total > kMaxAmplitudes / d) {
            throw ResourceCapExceeded("amplitude count exceeds the cap of 2^20");
        }
        total *= d;
    }
    return total;
}

DenseState::DenseState(std::vector<std::size_t> dims, ComplexVector amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
    const std::size_t expected = checked_amplitude_count(dims_);
    if (static_cast<std::size_t>(amplitudes_.size()) != expected) {
        throw InvalidInput("amplitude count " + std::to_string(amplitudes_.size()) + " does not match dims product " +
                           std::to_string(expected));
    }
    if (!amplitudes_.allFinite()) {
        throw InvalidInput("state amplitudes must be finite");
    }
    const double norm2 = amplitudes_.squaredNorm();
    if (std::abs(norm2 - 1.0) > kNormTol) {
        std::ostringstream ss;
        ss << "state is not normalized (squared norm " << norm2 << ")";
        throw InvalidInput(ss.str());
    }
}

GeneralizedSchmidtState::GeneralizedSchmidtState(std::vector<double> coefficients, std::vector<ComplexMatrix> bases)
    : coeffs_(std::move(coefficients)), bases_(std::move(bases)) {
    const std::size_t n = coeffs_.size();
    std::vector<std::size_t> local_dims;
    for (std::size_t i = 0; i < bases_.size(); ++i) {
        const auto &b = bases_[i];
        if (b.rows() != b.cols()) {
            throw InvalidInput("basis of party " + std::to_string(i) + " is not square");
        }
        if (static_cast<std::size_t>(b.rows()) < n) {
            throw InvalidInput("local dimension of party " + std::to_string(i) + " is smaller than the Schmidt rank " +
                               std::to_string(n));
        }
        const double err =
            (b.adjoint() * b - ComplexMatrix::Identity(b.rows(), b.cols())).cwiseAbs().maxCoeff();
        if (err > kUnitaryTol) {
            std::ostringstream ss;
            ss << "basis of party " << i << " is not unitary (error " << err << ")";
            throw InvalidInput(ss.str());
        }
        local_dims.push_back(static_cast<std::size_t>(b.rows()));
    }
    checked_amplitude_count(local_dims);
    const auto &order = coeffs_.sort_order();
    if (!std::is_sorted(order.begin(), order.end())) {
        for (auto &b : bases_) {
            ComplexMatrix reordered = b;
            for (std::size_t k = 0; k < n; ++k) {
                reordered.col(as_index(k)) = b.col(as_index(order[k]));
            }
            b = std::move(reordered);
        }
    }
}

GeneralizedSchmidtState GeneralizedSchmidtState::computational(const ProbVector &coeffs, std::size_t parties,
                                                               std::vector<std::size_t> dims) {
    if (dims.empty()) {
        dims.assign(parties, coeffs.size());
    }
    if (dims.size() != parties) {
        throw InvalidInput("dims length does not match party count");
    }
    std::vector<ComplexMatrix> bases;
    for (std::size_t d : dims) {
        bases.push_back(ComplexMatrix::Identity(as_index(d), as_index(d)));
    }
    return GeneralizedSchmidtState(std::vector<double>(coeffs.entries().begin(), coeffs.entries().end()),
                                   std::move(bases));
}

std::vector<std::size_t> GeneralizedSchmidtState::dims() const {
    std::vector<std::size_t> out;
    for (const auto &b : bases_) {
        out.push_back(static_cast<std::size_t>(b.rows()));
    }
    return out;
}

GeneralizedSchmidtState GeneralizedSchmidtState::with_coefficients(std::vector<double> coefficients) const {
    if (coefficients.size() != n()) {
        throw InvalidInput("with_coefficients: length mismatch");
    }
    return GeneralizedSchmidtState(std::move(coefficients), bases_);
}

DenseState assemble(const GeneralizedSchmidtState &s) {
    const auto dims = s.dims();
    ComplexVector amplitudes = ComplexVector::Zero(as_index(checked_amplitude_count(dims)));
    for (std::size_t k = 0; k < s.n(); ++k) {
        const double c = s.coeffs()[k];
        if (c <= 0) {
            continue;
        }
        std::vector<ComplexVector> cols;
        for (const auto &b : s.bases()) {
            cols.push_back(b.col(as_index(k)));
        }
        amplitudes += std::sqrt(c) * kron_all(cols);
    }
    // Renormalize away rounding from sums within the ProbVector tolerance.
    amplitudes /= amplitudes.norm();
    return DenseState(dims, std::move(amplitudes));
}

ComplexVector apply_local_unnormalized(const DenseState &state, std::size_t party, const ComplexMatrix &op) {
    const auto &dims = state.dims();
    if (party >= dims.size()) {
        throw InvalidInput("party index " + std::to_string(party) + " out of range");
    }
    const std::size_t d = dims[party];
    if (static_cast<std::size_t>(op.rows()) != d || static_cast<std::size_t>(op.cols()) != d) {
        throw InvalidInput("local operator shape does not match the party's dimension");
    }
    const std::size_t left = product(dims, 0, party);
    const std::size_t right = product(dims, party + 1, dims.size());
    ComplexVector out(state.amplitudes().size());
    const std::size_t block = d * right;
    for (std::size_t l = 0; l < left; ++l) {
        Eigen::Map<const RowMajorMatrix> in(state.amplitudes().data() + l * block, as_index(d), as_index(right));
        Eigen::Map<RowMajorMatrix> dst(out.data() + l * block, as_index(d), as_index(right));
        dst.noalias() = op * in;
    }
    return out;
}

LocalResult apply_local(const DenseState &state, std::size_t party, const ComplexMatrix &op) {
    ComplexVector out = apply_local_unnormalized(state, party, op);
    const double prob = out.squaredNorm();
    if (prob <= kBranchTol) {
        std::ostringstream ss;
        ss << "outcome probability " << prob << " is below the branch tolerance";
        throw ZeroBranch(ss.str());
    }
    out /= std::sqrt(prob);
    return {prob, DenseState(state.dims(), std::move(out))};
}

double fidelity(const DenseState &a, const DenseState &b) {
    if (a.dims() != b.dims()) {
        throw InvalidInput("fidelity: dimension mismatch");
    }
    return std::norm(a.amplitudes().dot(b.amplitudes()));
}

ComplexMatrix random_unitary(std::size_t d, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    ComplexMatrix z(as_index(d), as_index(d));
    for (Eigen::Index c = 0; c < z.cols(); ++c) {
        for (Eigen::Index r = 0; r < z.rows(); ++r) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            z(r, c) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix &r = qr.matrixQR();
    for (Eigen::Index i = 0; i < q.cols(); ++i) {
        const Complex diag = r(i, i);
        const double mag = std::abs(diag);
        if (mag > 0) {
            q.col(i) *= diag / mag;
        }
    }
    return q;
}

ComplexMatrix relabeling_unitary(const ComplexMatrix &source_basis, const ComplexMatrix &target_basis,
                                 const Permutation &perm) {
    const Eigen::Index d = source_basis.rows();
    ComplexMatrix p = ComplexMatrix::Identity(d, d);
    for (std::size_t k = 0; k < perm.size(); ++k) {
        p(as_index(k), as_index(k)) = 0;
    }
    for (std::size_t k = 0; k < perm.size(); ++k) {
        p(as_index(perm(k)), as_index(k)) = 1;
    }
    return target_basis * p * source_basis.adjoint();
}

ComplexMatrix materialize_measurement(const MeasurementPlan::Outcome &outcome, const ProbVector &lam,
                                      const ComplexMatrix &basis) {
    const Eigen::Index d = basis.rows();
    Eigen::VectorXcd diag = Eigen::VectorXcd::Constant(d, Complex(std::sqrt(std::max(outcome.weight, 0.0)), 0));
    for (std::size_t k = 0; k < outcome.op.size(); ++k) {
        if (lam[k] > 0) {
            diag(as_index(k)) = outcome.op[k];
        }
    }
    return basis * diag.asDiagonal() * basis.adjoint();
}

bool Transcript::is_local() const {
    return std::all_of(events.begin(), events.end(), [this](const LocalEvent &e) { return e.party < parties; });
}

Transcript run_protocol(const GeneralizedSchmidtState &psi, const GeneralizedSchmidtState &phi,
                        const MeasurementPlan &plan, const RunOptions &options) {
    if (psi.dims() != phi.dims()) {
        throw InvalidInput("source and target states live on different spaces");
    }
    if (psi.n() != phi.n() || plan.n != psi.n()) {
        throw InvalidInput("plan dimension does not match the Schmidt rank of the states");
    }
    for (const auto &o : plan.outcomes) {
        if (o.op.size() != plan.n || o.unitary_perm.size() != plan.n) {
            throw InvalidInput("plan outcome has the wrong dimension");
        }
    }
    const std::size_t m = psi.parties();
    const DenseState source = assemble(psi);
    const DenseState target = assemble(phi);
    const ProbVector &lam = psi.coeffs();
    const ProbVector &mu = phi.coeffs();

    Transcript transcript;
    transcript.parties = m;
    std::vector<std::size_t> selected(plan.outcomes.size());
    std::iota(selected.begin(), selected.end(), std::size_t{0});
    if (options.sample_seed) {
        std::mt19937_64 rng(*options.sample_seed);
        std::vector<double> probs;
        for (const auto &o : plan.outcomes) {
            probs.push_back(
                apply_local_unnormalized(source, 0, materialize_measurement(o, lam, psi.bases()[0])).squaredNorm());
        }
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        double acc = 0;
        std::size_t pick = probs.size() - 1;
        for (std::size_t j = 0; j < probs.size(); ++j) {
            acc += probs[j];
            if (u < acc) {
                pick = j;
                break;
            }
        }
        selected = {pick};
        transcript.sampled = true;
    }

    bool ok = true;
    for (std::size_t j : selected) {
        const auto &outcome = plan.outcomes[j];
        BranchRecord rec;
        rec.outcome = j;
        rec.analytic_probability = outcome.weight;
        const ComplexMatrix measurement = materialize_measurement(outcome, lam, psi.bases()[0]);
        transcript.events.push_back({LocalEvent::Kind::Measure, 0, j});
        std::optional<LocalResult> measured;
        try {
            measured = apply_local(source, 0, measurement);
        } catch (const ZeroBranch &) {
            rec.simulated_probability = apply_local_unnormalized(source, 0, measurement).squaredNorm();
            rec.realizable = false;
            if (outcome.weight > kBranchTol) {
                ok = false;
            }
        }
        if (measured) {
            rec.realizable = true;
            rec.simulated_probability = measured->probability;
            transcript.events.push_back({LocalEvent::Kind::Broadcast, 0, j});

            std::vector<double> expected(plan.n);
            for (std::size_t k = 0; k < plan.n; ++k) {
                expected[k] = mu[outcome.unitary_perm(k)];
            }
            rec.measurement_fidelity = fidelity(measured->post, assemble(psi.with_coefficients(expected)));

            DenseState current = measured->post;
            for (std::size_t party = 0; party < m; ++party) {
                ComplexMatrix u =
                    relabeling_unitary(psi.bases()[party], phi.bases()[party], outcome.unitary_perm);
                current = apply_local(current, party, u).post;
                transcript.events.push_back({LocalEvent::Kind::Unitary, party, j});
                if (options.keep_states) {
                    rec.unitaries.push_back(std::move(u));
                }
            }
            rec.fidelity = fidelity(current, target);
            transcript.min_fidelity = std::min(transcript.min_fidelity, rec.fidelity);
            transcript.min_measurement_fidelity = std::min(transcript.min_measurement_fidelity, rec.measurement_fidelity);
            if (rec.fidelity < 1.0 - kFidelityTol || rec.measurement_fidelity < 1.0 - kFidelityTol) {
                ok = false;
            }
            if (options.keep_states) {
                rec.post_measurement = std::move(measured->post);
                rec.final_state = std::move(current);
            }
        }
        transcript.probability_sum += rec.simulated_probability;
        const double err = std::abs(rec.simulated_probability - rec.analytic_probability);
        transcript.max_probability_error = std::max(transcript.max_probability_error, err);
        if (err > kProbabilityTol) {
            ok = false;
        }
        transcript.branches.push_back(std::move(rec));
    }
    if (!transcript.sampled && std::abs(transcript.probability_sum - 1.0) > kProbabilityTol) {
        ok = false;
    }
    transcript.passed = ok;
    return transcript;
}

const char *verdict_name(GsdExtraction::Verdict v) {
    switch (v) {
        case GsdExtraction::Verdict::Admits:
            return "admits";
        case GsdExtraction::Verdict::Rejects:
            return "rejects";
        case GsdExtraction::Verdict::RejectsDegenerate:
            return "rejects (degenerate; inconclusive)";
    }
    return "unknown";
}

GsdExtraction extract_gsd(const DenseState &state, double tol) {
    const auto &dims = state.dims();
    const std::size_t m = dims.size();
    const std::size_t d0 = dims[0];
    const std::size_t rest = product(dims, 1, m);

    GsdExtraction result;
    auto reject = [&](GsdWitness w) {
        result.verdict = result.degenerate ? GsdExtraction::Verdict::RejectsDegenerate : GsdExtraction::Verdict::Rejects;
        result.witness = std::move(w);
        return result;
    };

    Eigen::Map<const RowMajorMatrix> a(state.amplitudes().data(), as_index(d0), as_index(rest));
    Eigen::JacobiSVD<ComplexMatrix> svd(ComplexMatrix(a), Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto &sv = svd.singularValues();
    std::vector<double> coeffs;
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        const double c = sv(k) * sv(k);
        if (c > kBranchTol) {
            coeffs.push_back(c);
        }
    }
    const std::size_t rank = coeffs.size();
    for (std::size_t k = 0; k + 1 < rank; ++k) {
        if (coeffs[k] - coeffs[k + 1] < 1e-8) {
            result.degenerate = true;
        }
    }

    // Local vectors per party, one per Schmidt term.
    std::vector<std::vector<ComplexVector>> local(m);
    for (std::size_t k = 0; k < rank; ++k) {
        ComplexVector cofactor = svd.matrixV().col(as_index(k)).conjugate();
        auto factored = factor_product(cofactor, dims, 1, tol);
        if (!factored.ok) {
            return reject({"entangled-cofactor", k, factored.residual});
        }
        const Complex overlap = kron_all(factored.factors).dot(cofactor);
        const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1, 0);
        local[0].push_back(svd.matrixU().col(as_index(k)) * phase);
        for (std::size_t i = 1; i < m; ++i) {
            local[i].push_back(factored.factors[i - 1]);
        }
    }

    for (std::size_t i = 1; i < m; ++i) {
        double worst = 0;
        for (std::size_t a_idx = 0; a_idx < rank; ++a_idx) {
            for (std::size_t b_idx = a_idx + 1; b_idx < rank; ++b_idx) {
                worst = std::max(worst, std::abs(local[i][a_idx].dot(local[i][b_idx])));
            }
        }
        if (worst * worst > tol) {
            return reject({"non-orthogonal-factors", i, worst});
        }
    }

    std::vector<ComplexMatrix> bases;
    try {
        for (std::size_t i = 0; i < m; ++i) {
            bases.push_back(complete_to_unitary(local[i], dims[i]));
        }
    } catch (const InternalContradiction &) {
        return reject({"non-orthogonal-factors", 0, 1.0});
    }
    const double total = std::accumulate(coeffs.begin(), coeffs.end(), 0.0);
    for (double &c : coeffs) {
        c /= total;
    }
    GeneralizedSchmidtState extracted(std::move(coeffs), std::move(bases));
    result.fidelity = fidelity(assemble(extracted), state);
    if (result.fidelity < 1.0 - kFidelityTol) {
        return reject({"reconstruction", 0, 1.0 - result.fidelity});
    }
    result.verdict = GsdExtraction::Verdict::Admits;
    result.state = std::move(extracted);
    return result;
}

}  // namespace locc
