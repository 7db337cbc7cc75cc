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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "locc/bipartite_matching.h"
#include "locc/errors.h"

namespace locc {

namespace {

// Threshold for "already equal" in the T-transform chain.
constexpr double kChainEps = 1e-14;

void require_same_size(const ProbVector &a, const ProbVector &b, const char *op) {
    if (a.size() != b.size()) {
        std::ostringstream ss;
        ss << op << ": dimension mismatch (" << a.size() << " vs " << b.size() << "); pad_to a common length first";
        throw InvalidInput(ss.str());
    }
}

}  // namespace

ProbVector::ProbVector(std::vector<double> raw) {
    if (raw.empty()) {
        throw InvalidInput("probability vector must have at least one entry");
    }
    double total = 0;
    for (double &x : raw) {
        if (!std::isfinite(x)) {
            throw InvalidInput("probability vector entry is not finite");
        }
        if (x < -kEntryClampTol) {
            std::ostringstream ss;
            ss << "probability vector entry " << x << " is negative";
            throw InvalidInput(ss.str());
        }
        x = std::max(x, 0.0);
        total += x;
    }
    if (std::abs(total - 1.0) > kSumTol) {
        std::ostringstream ss;
        ss.precision(17);
        ss << "probability vector sums to " << total << ", expected 1";
        throw InvalidInput(ss.str());
    }
    sort_order_.resize(raw.size());
    std::iota(sort_order_.begin(), sort_order_.end(), std::size_t{0});
    std::stable_sort(sort_order_.begin(), sort_order_.end(),
                     [&](std::size_t a, std::size_t b) { return raw[a] > raw[b]; });
    entries_.reserve(raw.size());
    for (std::size_t i : sort_order_) {
        entries_.push_back(raw[i]);
    }
}

ProbVector ProbVector::uniform(std::size_t n) {
    return ProbVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Permutation::Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (std::size_t v : image_) {
        if (v >= image_.size() || seen[v]) {
            throw InvalidInput("permutation image is not a bijection");
        }
        seen[v] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> image(n);
    std::iota(image.begin(), image.end(), std::size_t{0});
    return Permutation(std::move(image));
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < image_.size(); ++i) {
        if (image_[i] != i) {
            return false;
        }
    }
    return true;
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) {
        inv[image_[i]] = i;
    }
    return Permutation(std::move(inv));
}

Permutation Permutation::compose(const Permutation &other) const {
    if (other.size() != size()) {
        throw InvalidInput("cannot compose permutations of different sizes");
    }
    std::vector<std::size_t> out(size());
    for (std::size_t i = 0; i < size(); ++i) {
        out[i] = image_[other.image_[i]];
    }
    return Permutation(std::move(out));
}

std::vector<double> Permutation::permute(std::span<const double> v) const {
    if (v.size() != size()) {
        throw InvalidInput("permute: size mismatch");
    }
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[image_[i]] = v[i];
    }
    return out;
}

Eigen::MatrixXd Permutation::matrix() const {
    const auto n = static_cast<Eigen::Index>(size());
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < size(); ++i) {
        p(static_cast<Eigen::Index>(image_[i]), static_cast<Eigen::Index>(i)) = 1.0;
    }
    return p;
}

DoublyStochasticMatrix::DoublyStochasticMatrix(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw InvalidInput("doubly stochastic matrix must be square and nonempty");
    }
    if (!entries_.allFinite()) {
        throw InvalidInput("doubly stochastic matrix has non-finite entries");
    }
    if (entries_.minCoeff() < -kEntryClampTol) {
        throw InvalidInput("doubly stochastic matrix has a negative entry");
    }
    entries_ = entries_.cwiseMax(0.0);
    double row_err = (entries_.rowwise().sum().array() - 1.0).abs().maxCoeff();
    double col_err = (entries_.colwise().sum().array() - 1.0).abs().maxCoeff();
    if (row_err > kSumTol || col_err > kSumTol) {
        std::ostringstream ss;
        ss << "matrix is not doubly stochastic (row error " << row_err << ", column error " << col_err << ")";
        throw InvalidInput(ss.str());
    }
}

std::vector<double> DoublyStochasticMatrix::apply(std::span<const double> v) const {
    if (v.size() != size()) {
        throw InvalidInput("apply: size mismatch");
    }
    Eigen::Map<const Eigen::VectorXd> x(v.data(), static_cast<Eigen::Index>(v.size()));
    Eigen::VectorXd y = entries_ * x;
    return {y.data(), y.data() + y.size()};
}

std::vector<double> PermutationMixture::reconstruct(std::span<const double> mu) const {
    std::vector<double> out(mu.size(), 0.0);
    for (const auto &term : terms) {
        auto moved = term.perm.permute(mu);
        for (std::size_t k = 0; k < out.size(); ++k) {
            out[k] += term.weight * moved[k];
        }
    }
    return out;
}

Eigen::MatrixXd PermutationMixture::matrix() const {
    const auto size = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size, size);
    for (const auto &term : terms) {
        m += term.weight * term.perm.matrix();
    }
    return m;
}

Eigen::MatrixXd TTransform::matrix(std::size_t n) const {
    const auto size = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(size, size);
    const auto a = static_cast<Eigen::Index>(first);
    const auto b = static_cast<Eigen::Index>(second);
    m(a, a) = t;
    m(b, b) = t;
    m(a, b) = 1 - t;
    m(b, a) = 1 - t;
    return m;
}

std::optional<std::size_t> first_violation(const ProbVector &lam, const ProbVector &mu, double tol) {
    require_same_size(lam, mu, "is_majorized");
    double lam_prefix = 0;
    double mu_prefix = 0;
    for (std::size_t l = 0; l + 1 < lam.size(); ++l) {
        lam_prefix += lam[l];
        mu_prefix += mu[l];
        if (lam_prefix > mu_prefix + tol) {
            return l;
        }
    }
    return std::nullopt;
}

bool is_majorized(const ProbVector &lam, const ProbVector &mu, double tol) {
    return !first_violation(lam, mu, tol).has_value();
}

double tail_sum(const ProbVector &v, std::size_t l) {
    if (l >= v.size()) {
        throw InvalidInput("tail_sum: index " + std::to_string(l) + " out of range for length " +
                           std::to_string(v.size()));
    }
    double total = 0;
    for (std::size_t k = v.size(); k-- > l;) {
        total += v[k];
    }
    return total;
}

ProbVector pad_to(const ProbVector &v, std::size_t n) {
    if (n < v.size()) {
        throw InvalidInput("pad_to: target length " + std::to_string(n) + " is shorter than " +
                           std::to_string(v.size()));
    }
    std::vector<double> raw(v.entries().begin(), v.entries().end());
    raw.resize(n, 0.0);
    return ProbVector(std::move(raw));
}

std::vector<TTransform> t_transform_chain(const ProbVector &lam, const ProbVector &mu) {
    require_same_size(lam, mu, "t_transform_chain");
    if (auto bad = first_violation(lam, mu)) {
        throw ConversionImpossible("source is not majorized by target (prefix " + std::to_string(*bad) + ")");
    }
    const std::size_t n = lam.size();
    std::vector<double> x(mu.entries().begin(), mu.entries().end());
    std::vector<TTransform> chain;
    // Every step pins one coordinate to its final value, so n-1 steps suffice;
    // the extra slack absorbs rounding near the tolerance.
    for (std::size_t step = 0; step < 2 * n; ++step) {
        std::size_t j = n;
        for (std::size_t i = n; i-- > 0;) {
            if (x[i] > lam[i] + kChainEps) {
                j = i;
                break;
            }
        }
        if (j == n) {
            break;
        }
        std::size_t k = n;
        for (std::size_t i = j + 1; i < n; ++i) {
            if (x[i] < lam[i] - kChainEps) {
                k = i;
                break;
            }
        }
        if (k == n) {
            break;
        }
        const double excess = x[j] - lam[j];
        const double deficit = lam[k] - x[k];
        const double delta = std::min(excess, deficit);
        const double gap = x[j] - x[k];
        const double s = delta / gap;
        chain.push_back(TTransform{j, k, 1.0 - s});
        if (excess <= deficit) {
            x[j] = lam[j];
            x[k] += delta;
        } else {
            x[k] = lam[k];
            x[j] -= delta;
        }
    }
    return chain;
}

DoublyStochasticMatrix hlp_matrix(const ProbVector &lam, const ProbVector &mu) {
    const auto chain = t_transform_chain(lam, mu);
    const auto n = static_cast<Eigen::Index>(lam.size());
    Eigen::MatrixXd d = Eigen::MatrixXd::Identity(n, n);
    for (const auto &t : chain) {
        d = t.matrix(lam.size()) * d;
    }
    return DoublyStochasticMatrix(std::move(d));
}

PermutationMixture birkhoff_decompose(const DoublyStochasticMatrix &d) {
    const std::size_t n = d.size();
    const auto idx = [](std::size_t i) { return static_cast<Eigen::Index>(i); };
    Eigen::MatrixXd residual = d.entries();
    PermutationMixture mixture;
    mixture.n = n;
    double placed = 0;
    while (1.0 - placed > kZeroEntry) {
        std::vector<std::vector<std::size_t>> adjacency(n);
        for (std::size_t row = 0; row < n; ++row) {
            for (std::size_t col = 0; col < n; ++col) {
                if (residual(idx(row), idx(col)) > kZeroEntry) {
                    adjacency[row].push_back(col);
                }
            }
        }
        auto matching = perfect_matching(adjacency);
        if (!matching) {
            if (1.0 - placed <= kSumTol && !mixture.terms.empty()) {
                break;
            }
            std::ostringstream ss;
            ss << "no perfect matching in support with remaining mass " << (1.0 - placed);
            throw DecompositionFailed(ss.str());
        }
        // Row k matched to column c means the term sends source index c to k.
        std::vector<std::size_t> image(n);
        double weight = 1.0;
        for (std::size_t row = 0; row < n; ++row) {
            image[(*matching)[row]] = row;
            weight = std::min(weight, residual(idx(row), idx((*matching)[row])));
        }
        for (std::size_t row = 0; row < n; ++row) {
            double &cell = residual(idx(row), idx((*matching)[row]));
            cell -= weight;
            if (cell <= kZeroEntry) {
                cell = 0;
            }
        }
        mixture.terms.push_back({weight, Permutation(std::move(image))});
        placed += weight;
        if (mixture.terms.size() > PermutationMixture::max_terms(n)) {
            throw DecompositionFailed("Birkhoff peeling exceeded the (n-1)^2+1 term bound");
        }
    }
    for (auto &term : mixture.terms) {
        term.weight /= placed;
    }
    return mixture;
}

PermutationMixture mixture_for(const ProbVector &lam, const ProbVector &mu) {
    require_same_size(lam, mu, "mixture_for");
    bool equal = true;
    for (std::size_t k = 0; k < lam.size(); ++k) {
        if (std::abs(lam[k] - mu[k]) > kZeroEntry) {
            equal = false;
            break;
        }
    }
    if (equal) {
        PermutationMixture trivial;
        trivial.n = lam.size();
        trivial.terms.push_back({1.0, Permutation::identity(lam.size())});
        return trivial;
    }
    return birkhoff_decompose(hlp_matrix(lam, mu));
}

ProbVector tensor_product(const ProbVector &a, const ProbVector &b) {
    std::vector<double> out;
    out.reserve(a.size() * b.size());
    for (double x : a.entries()) {
        for (double y : b.entries()) {
            out.push_back(x * y);
        }
    }
    const double total = std::accumulate(out.begin(), out.end(), 0.0);
    for (double &x : out) {
        x /= total;
    }
    return ProbVector(std::move(out));
}

}  // namespace locc
