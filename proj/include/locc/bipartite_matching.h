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

#ifndef LOCC_BIPARTITE_MATCHING_H
#define LOCC_BIPARTITE_MATCHING_H

#include <cstddef>
#include <optional>
#include <vector>

namespace locc {

/// Hopcroft-Karp maximum matching on a bipartite graph with `left` vertices
/// on one side and `right` on the other. `adjacency[u]` lists the right
/// vertices adjacent to left vertex u, and is scanned in order, so the result
/// is deterministic.
class BipartiteMatcher {
   public:
    static constexpr std::size_t kUnmatched = static_cast<std::size_t>(-1);

    BipartiteMatcher(std::size_t left, std::size_t right);

    void add_edge(std::size_t u, std::size_t v);

    /// Runs the algorithm and returns the matching size.
    std::size_t solve();

    /// Right partner of left vertex u after solve(), or kUnmatched.
    std::size_t partner_of_left(std::size_t u) const {
        return pair_left_[u];
    }

   private:
    bool bfs();
    bool dfs(std::size_t u);

    std::size_t left_;
    std::size_t right_;
    std::vector<std::vector<std::size_t>> adjacency_;
    std::vector<std::size_t> pair_left_;
    std::vector<std::size_t> pair_right_;
    std::vector<std::size_t> level_;
};

/// Perfect matching of an n x n bipartite graph given as adjacency lists.
/// Returns left -> right assignment, or nullopt when none exists.
std::optional<std::vector<std::size_t>> perfect_matching(const std::vector<std::vector<std::size_t>> &adjacency);

}  // namespace locc

#endif
