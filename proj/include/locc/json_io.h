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

#ifndef LOCC_JSON_IO_H
#define LOCC_JSON_IO_H

#include <nlohmann/json.hpp>

#include "locc/majorization.h"
#include "locc/probabilistic.h"
#include "locc/protocol.h"
#include "locc/state_sim.h"

namespace locc::json_io {

using nlohmann::json;

json to_json(const ProbVector &v);
json to_json(const Permutation &p);
json to_json(const PermutationMixture &mix);
/// {"n": int, "outcomes": [{"p": real, "diag": [real], "perm": [int]}]}
json to_json(const MeasurementPlan &plan);
json to_json(const ValidationReport &report);
/// {"dims": [int], "re": [real], "im": [real]}
json to_json(const DenseState &state);
/// {"re": [[real]], "im": [[real]]}, row-major rows.
json to_json(const ComplexMatrix &m);
json to_json(const Transcript &t);
json to_json(const ConclusivePlan &plan);
json to_json(const CatalysisResult &result);
json to_json(const GsdExtraction &result);

/// Accepts either a bare plan object or any object carrying it under "plan".
MeasurementPlan plan_from_json(const json &j, std::size_t parties);
DenseState dense_state_from_json(const json &j);
ComplexMatrix matrix_from_json(const json &j);
std::vector<double> real_array(const json &j, const char *what);

}  // namespace locc::json_io

#endif
