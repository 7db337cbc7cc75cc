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

// Independent oracles and random generators shared by the tests. Nothing here
// calls into the library except to wrap results in library types, so the
// oracles can be used to check the library.

#ifndef LOCC_TESTS_TEST_UTIL_H
#define LOCC_TESTS_TEST_UTIL_H

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "locc/majorization.h"
#include "locc/state_sim.h"

namespace locc_test {

inline std::vector<double> sorted_desc(std::vector<double> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
}

/// Brute-force prefix sums on sorted copies, with an explicit tolerance.
inline bool oracle_majorized(std::vector<double> lam, std::vector<double> mu, double tol = 1e-10) {
    lam = sorted_desc(lam);
    mu = sorted_desc(mu);
    long double a = 0;
    long double b = 0;
    for (std::size_t l = 0; l + 1 < lam.size(); ++l) {
        a += lam[l];
        b += mu[l];
        if (a > b + tol) {
            return false;
        }
    }
    return true;
}

/// Direct evaluation of min_l E_l(lam)/E_l(mu), smallest ratio, largest index.
inline std::pair<double, std::size_t> oracle_pmax(std::vector<double> lam, std::vector<double> mu) {
    lam = sorted_desc(lam);
    mu = sorted_desc(mu);
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t l = 0; l < lam.size(); ++l) {
        long double el = 0;
        long double em = 0;
        for (std::size_t k = l; k < lam.size(); ++k) {
            el += lam[k];
            em += mu[k];
        }
        if (em <= 0) {
            continue;
        }
        const double r = static_cast<double>(el / em);
        if (r < best - 1e-14) {
            best = r;
            arg = l;
        } else if (r <= best + 1e-14) {
            arg = l;
        }
    }
    return {std::clamp(best, 0.0, 1.0), arg};
}

/// Sorted outer product, computed naively.
inline std::vector<double> oracle_kron(const std::vector<double> &a, const std::vector<double> &b) {
    std::vector<double> out;
    for (double x : a) {
        for (double y : b) {
            out.push_back(x * y);
        }
    }
    return sorted_desc(out);
}

/// Dirichlet(1, ..., 1) sample; optionally zeroes a few trailing entries.
inline std::vector<double> random_prob(std::size_t n, std::mt19937_64 &rng, std::size_t zeros = 0) {
    std::exponential_distribution<double> e(1.0);
    std::vector<double> v(n);
    for (std::size_t k = 0; k + zeros < n; ++k) {
        v[k] = e(rng) + 1e-6;
    }
    const double s = std::accumulate(v.begin(), v.end(), 0.0);
    for (double &x : v) {
        x /= s;
    }
    return sorted_desc(v);
}

/// lam = (random chain of T-transforms) · mu, which is majorized by mu.
inline std::vector<double> random_majorized_by(const std::vector<double> &mu, std::mt19937_64 &rng,
                                               std::size_t steps = 0) {
    const std::size_t n = mu.size();
    std::vector<double> v = mu;
    if (n < 2) {
        return v;
    }
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (steps == 0) {
        steps = 1 + pick(rng) % 4;
    }
    for (std::size_t s = 0; s < steps; ++s) {
        std::size_t i = pick(rng);
        std::size_t j = pick(rng);
        if (i == j) {
            j = (i + 1) % n;
        }
        const double t = unit(rng);
        const double a = v[i];
        const double b = v[j];
        v[i] = t * a + (1 - t) * b;
        v[j] = t * b + (1 - t) * a;
    }
    const double sum = std::accumulate(v.begin(), v.end(), 0.0);
    for (double &x : v) {
        x /= sum;
    }
    return sorted_desc(v);
}

/// A pair that fails the prefix-sum test by a clear margin.
inline std::pair<std::vector<double>, std::vector<double>> random_non_majorized_pair(std::size_t n,
                                                                                     std::mt19937_64 &rng) {
    while (true) {
        auto lam = random_prob(n, rng);
        auto mu = random_prob(n, rng);
        if (!oracle_majorized(lam, mu, 1e-6)) {
            return {lam, mu};
        }
    }
}

inline locc::ComplexMatrix random_unitary_oracle(std::size_t d, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    locc::ComplexMatrix a(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            a(r, c) = locc::Complex(g(rng), g(rng));
        }
    }
    Eigen::HouseholderQR<locc::ComplexMatrix> qr(a);
    return qr.householderQ() * locc::ComplexMatrix::Identity(a.rows(), a.cols());
}

inline std::vector<locc::ComplexMatrix> random_bases(std::size_t parties, std::size_t d, std::mt19937_64 &rng) {
    std::vector<locc::ComplexMatrix> out;
    for (std::size_t i = 0; i < parties; ++i) {
        out.push_back(random_unitary_oracle(d, rng));
    }
    return out;
}

/// Σ_k √c_k ⊗_i (column k of bases[i]), built by explicit Kronecker products.
inline locc::ComplexVector oracle_assemble(const std::vector<double> &coeffs,
                                           const std::vector<locc::ComplexMatrix> &bases) {
    locc::ComplexVector total;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        locc::ComplexVector term = bases[0].col(static_cast<Eigen::Index>(k));
        for (std::size_t i = 1; i < bases.size(); ++i) {
            const locc::ComplexVector f = bases[i].col(static_cast<Eigen::Index>(k));
            locc::ComplexVector next(term.size() * f.size());
            for (Eigen::Index a = 0; a < term.size(); ++a) {
                for (Eigen::Index b = 0; b < f.size(); ++b) {
                    next(a * f.size() + b) = term(a) * f(b);
                }
            }
            term = next;
        }
        term *= std::sqrt(coeffs[k]);
        total = k == 0 ? term : locc::ComplexVector(total + term);
    }
    return total;
}

inline double oracle_fidelity(const locc::ComplexVector &a, const locc::ComplexVector &b) {
    return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

}  // namespace locc_test

#endif
