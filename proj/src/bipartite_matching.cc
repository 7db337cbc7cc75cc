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

#include "locc/bipartite_matching.h"

#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace locc {

namespace {
constexpr std::size_t kInfLevel = std::numeric_limits<std::size_t>::max();
}

BipartiteMatcher::BipartiteMatcher(std::size_t left, std::size_t right)
    : left_(left), right_(right), adjacency_(left), pair_left_(left, kUnmatched), pair_right_(right, kUnmatched),
      level_(left, kInfLevel) {
}

void BipartiteMatcher::add_edge(std::size_t u, std::size_t v) {
    if (u >= left_ || v >= right_) {
        throw std::out_of_range("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") out of bounds");
    }
    adjacency_[u].push_back(v);
}

// Layers free left vertices at 0 and reports whether some free right vertex
// is reachable by an alternating path.
bool BipartiteMatcher::bfs() {
    std::queue<std::size_t> queue;
    for (std::size_t u = 0; u < left_; ++u) {
        if (pair_left_[u] == kUnmatched) {
            level_[u] = 0;
            queue.push(u);
        } else {
            level_[u] = kInfLevel;
        }
    }
    bool found_free = false;
    while (!queue.empty()) {
        std::size_t u = queue.front();
        queue.pop();
        for (std::size_t v : adjacency_[u]) {
            std::size_t w = pair_right_[v];
            if (w == kUnmatched) {
                found_free = true;
            } else if (level_[w] == kInfLevel) {
                level_[w] = level_[u] + 1;
                queue.push(w);
            }
        }
    }
    return found_free;
}

bool BipartiteMatcher::dfs(std::size_t u) {
    for (std::size_t v : adjacency_[u]) {
        std::size_t w = pair_right_[v];
        if (w == kUnmatched || (level_[w] == level_[u] + 1 && dfs(w))) {
            pair_left_[u] = v;
            pair_right_[v] = u;
            return true;
        }
    }
    level_[u] = kInfLevel;
    return false;
}

std::size_t BipartiteMatcher::solve() {
    pair_left_.assign(left_, kUnmatched);
    pair_right_.assign(right_, kUnmatched);
    std::size_t size = 0;
    while (bfs()) {
        for (std::size_t u = 0; u < left_; ++u) {
            if (pair_left_[u] == kUnmatched && dfs(u)) {
                ++size;
            }
        }
    }
    return size;
}

std::optional<std::vector<std::size_t>> perfect_matching(const std::vector<std::vector<std::size_t>> &adjacency) {
    const std::size_t n = adjacency.size();
    BipartiteMatcher matcher(n, n);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v : adjacency[u]) {
            matcher.add_edge(u, v);
        }
    }
    if (matcher.solve() != n) {
        return std::nullopt;
    }
    std::vector<std::size_t> result(n);
    for (std::size_t u = 0; u < n; ++u) {
        result[u] = matcher.partner_of_left(u);
    }
    return result;
}

}  // namespace locc
