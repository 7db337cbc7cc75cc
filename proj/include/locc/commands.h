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

#ifndef LOCC_COMMANDS_H
#define LOCC_COMMANDS_H

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "locc/majorization.h"
#include "locc/state_sim.h"

namespace locc::cli {

inline constexpr const char *kSchemaVersion = "1";

/// A parsed instance file. Coefficient vectors are zero-padded to a common
/// length; the raw vectors keep the file's order so user-supplied basis
/// columns stay attached to their coefficients.
struct Instance {
    nlohmann::json raw;
    std::optional<ProbVector> lam;
    std::optional<ProbVector> mu;
    std::vector<double> lam_raw;
    std::vector<double> mu_raw;
    std::size_t parties = 2;
    std::vector<std::size_t> dims;
    std::optional<std::vector<ComplexMatrix>> psi_bases;
    std::optional<std::vector<ComplexMatrix>> phi_bases;
    bool random_bases = false;
    bool sample = false;
    std::optional<std::uint64_t> seed;
    std::optional<DenseState> state;
    std::optional<std::size_t> copies;
    std::optional<std::size_t> d_max;
    std::optional<double> resolution;
};

Instance parse_instance(const nlohmann::json &j);
Instance parse_instance_text(const std::string &text);

struct CommandOptions {
    std::optional<double> tol;
    std::optional<std::size_t> copies;
    std::optional<std::size_t> d_max;
    std::optional<double> resolution;
    std::optional<std::string> plan_json;
    std::optional<std::uint64_t> seed;
};

struct Report {
    nlohmann::json body;
    int exit_code = 0;
    std::string summary;
};

const std::vector<std::string> &command_names();

/// Never throws for library errors: they become a report with the matching exit code.
Report run_command(const std::string &command, const Instance &instance, const CommandOptions &options);

/// Source and target states described by an instance (defaults: computational bases, dims = n).
std::pair<GeneralizedSchmidtState, GeneralizedSchmidtState> build_states(const Instance &instance,
                                                                         std::optional<std::uint64_t> seed = {});

}  // namespace locc::cli

#endif
