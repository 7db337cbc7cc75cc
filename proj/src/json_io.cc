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

#include "locc/json_io.h"

#include "locc/errors.h"

namespace locc::json_io {

namespace {

json entries(std::span<const double> v) {
    return json(std::vector<double>(v.begin(), v.end()));
}

const char *event_kind(LocalEvent::Kind kind) {
    switch (kind) {
        case LocalEvent::Kind::Measure:
            return "measure";
        case LocalEvent::Kind::Broadcast:
            return "broadcast";
        case LocalEvent::Kind::Unitary:
            return "unitary";
    }
    return "unknown";
}

std::size_t index_value(const json &j, const char *what) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw InvalidInput(std::string(what) + " must be a nonnegative integer");
    }
    return j.get<std::size_t>();
}

}  // namespace

std::vector<double> real_array(const json &j, const char *what) {
    if (!j.is_array()) {
        throw InvalidInput(std::string(what) + " must be an array of numbers");
    }
    std::vector<double> out;
    for (const auto &x : j) {
        if (!x.is_number()) {
            throw InvalidInput(std::string(what) + " must contain only numbers");
        }
        out.push_back(x.get<double>());
    }
    return out;
}

json to_json(const ProbVector &v) {
    return entries(v.entries());
}

json to_json(const Permutation &p) {
    return json(p.image());
}

json to_json(const PermutationMixture &mix) {
    json terms = json::array();
    for (const auto &t : mix.terms) {
        terms.push_back({{"p", t.weight}, {"perm", to_json(t.perm)}});
    }
    return {{"n", mix.n}, {"terms", terms}};
}

json to_json(const MeasurementPlan &plan) {
    json outcomes = json::array();
    for (const auto &o : plan.outcomes) {
        outcomes.push_back({{"p", o.weight}, {"diag", o.op.diag()}, {"perm", to_json(o.unitary_perm)}});
    }
    return {{"n", plan.n}, {"outcomes", outcomes}};
}

json to_json(const ValidationReport &r) {
    return {{"completeness_residual", r.completeness_residual},
            {"weight_residual", r.weight_residual},
            {"outcome_probabilities", r.outcome_probabilities},
            {"probability_sum", r.probability_sum},
            {"complete", r.complete},
            {"weights_match", r.weights_match},
            {"passed", r.passed}};
}

json to_json(const DenseState &state) {
    const auto &a = state.amplitudes();
    std::vector<double> re(static_cast<std::size_t>(a.size()));
    std::vector<double> im(re.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        re[static_cast<std::size_t>(i)] = a(i).real();
        im[static_cast<std::size_t>(i)] = a(i).imag();
    }
    return {{"dims", state.dims()}, {"re", re}, {"im", im}};
}

json to_json(const ComplexMatrix &m) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        std::vector<double> row_re;
        std::vector<double> row_im;
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row_re.push_back(m(r, c).real());
            row_im.push_back(m(r, c).imag());
        }
        re.push_back(row_re);
        im.push_back(row_im);
    }
    return {{"re", re}, {"im", im}};
}

json to_json(const Transcript &t) {
    json branches = json::array();
    for (const auto &b : t.branches) {
        branches.push_back({{"outcome", b.outcome},
                            {"analytic_probability", b.analytic_probability},
                            {"simulated_probability", b.simulated_probability},
                            {"realizable", b.realizable},
                            {"measurement_fidelity", b.measurement_fidelity},
                            {"fidelity", b.fidelity}});
    }
    json events = json::array();
    for (const auto &e : t.events) {
        events.push_back({{"kind", event_kind(e.kind)}, {"party", e.party}, {"outcome", e.outcome}});
    }
    return {{"branches", branches},
            {"events", events},
            {"parties", t.parties},
            {"probability_sum", t.probability_sum},
            {"max_probability_error", t.max_probability_error},
            {"min_fidelity", t.min_fidelity},
            {"min_measurement_fidelity", t.min_measurement_fidelity},
            {"local", t.is_local()},
            {"sampled", t.sampled},
            {"passed", t.passed}};
}

json to_json(const ConclusivePlan &plan) {
    json j = {{"p_max", plan.p_max},
              {"l_star", plan.l_star},
              {"gamma", to_json(plan.gamma)},
              {"block_starts", plan.block_starts},
              {"deterministic_stage", to_json(plan.deterministic_stage)},
              {"success_diag", plan.success_op.diag()},
              {"failure_diag", plan.failure_op.diag()}};
    j["failure_coeffs"] = plan.failure_coeffs ? to_json(*plan.failure_coeffs) : json(nullptr);
    return j;
}

json to_json(const CatalysisResult &r) {
    json j = {{"found", r.found}, {"candidates_tested", r.candidates_tested}};
    j["catalyst"] = r.catalyst ? to_json(*r.catalyst) : json(nullptr);
    j["plain_violation_prefix"] = r.plain_violation ? json(*r.plain_violation) : json(nullptr);
    j["certificate_slack"] = r.found ? json(r.certificate_slack) : json(nullptr);
    return j;
}

json to_json(const GsdExtraction &r) {
    json j = {{"verdict", verdict_name(r.verdict)}, {"degenerate", r.degenerate}};
    if (r.state) {
        j["coeffs"] = to_json(r.state->coeffs());
        json bases = json::array();
        for (const auto &b : r.state->bases()) {
            bases.push_back(to_json(b));
        }
        j["bases"] = bases;
        j["fidelity"] = r.fidelity;
    }
    if (r.witness) {
        j["witness"] = {{"kind", r.witness->kind}, {"index", r.witness->index}, {"residual", r.witness->residual}};
    }
    return j;
}

MeasurementPlan plan_from_json(const json &j, std::size_t parties) {
    if (j.is_object() && j.contains("plan") && !j.contains("outcomes")) {
        return plan_from_json(j.at("plan"), parties);
    }
    if (!j.is_object() || !j.contains("n") || !j.contains("outcomes") || !j.at("outcomes").is_array()) {
        throw InvalidInput("plan JSON must be an object with \"n\" and \"outcomes\"");
    }
    MeasurementPlan plan;
    plan.n = index_value(j.at("n"), "plan n");
    plan.parties = parties;
    for (const auto &o : j.at("outcomes")) {
        if (!o.is_object() || !o.contains("p") || !o.contains("diag") || !o.contains("perm")) {
            throw InvalidInput("plan outcome needs \"p\", \"diag\" and \"perm\"");
        }
        if (!o.at("p").is_number()) {
            throw InvalidInput("plan outcome weight must be a number");
        }
        std::vector<std::size_t> image;
        if (!o.at("perm").is_array()) {
            throw InvalidInput("plan outcome perm must be an array");
        }
        for (const auto &x : o.at("perm")) {
            image.push_back(index_value(x, "perm entry"));
        }
        auto diag = real_array(o.at("diag"), "plan outcome diag");
        if (diag.size() != plan.n || image.size() != plan.n) {
            throw InvalidInput("plan outcome has the wrong length");
        }
        plan.outcomes.push_back({o.at("p").get<double>(), DiagonalOperator(std::move(diag)), Permutation(std::move(image))});
    }
    if (plan.outcomes.empty()) {
        throw InvalidInput("plan has no outcomes");
    }
    return plan;
}

DenseState dense_state_from_json(const json &j) {
    if (!j.is_object() || !j.contains("dims") || !j.contains("re")) {
        throw InvalidInput("state JSON must carry \"dims\" and \"re\"");
    }
    std::vector<std::size_t> dims;
    if (!j.at("dims").is_array()) {
        throw InvalidInput("state dims must be an array");
    }
    for (const auto &d : j.at("dims")) {
        dims.push_back(index_value(d, "state dim"));
    }
    auto re = real_array(j.at("re"), "state re");
    std::vector<double> im = j.contains("im") ? real_array(j.at("im"), "state im") : std::vector<double>(re.size(), 0.0);
    if (im.size() != re.size()) {
        throw InvalidInput("state re and im lengths differ");
    }
    ComplexVector amps(static_cast<Eigen::Index>(re.size()));
    for (std::size_t i = 0; i < re.size(); ++i) {
        amps(static_cast<Eigen::Index>(i)) = Complex(re[i], im[i]);
    }
    return DenseState(std::move(dims), std::move(amps));
}

ComplexMatrix matrix_from_json(const json &j) {
    if (!j.is_object() || !j.contains("re") || !j.at("re").is_array()) {
        throw InvalidInput("matrix JSON must be {\"re\": [[...]], \"im\": [[...]]}");
    }
    const auto &re = j.at("re");
    const std::size_t rows = re.size();
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
        auto row = real_array(re.at(r), "matrix row");
        if (row.size() != rows) {
            throw InvalidInput("basis matrices must be square");
        }
        for (std::size_t c = 0; c < rows; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)).real(row[c]);
        }
    }
    if (j.contains("im")) {
        const auto &im = j.at("im");
        if (!im.is_array() || im.size() != rows) {
            throw InvalidInput("matrix im part has the wrong shape");
        }
        for (std::size_t r = 0; r < rows; ++r) {
            auto row = real_array(im.at(r), "matrix row");
            if (row.size() != rows) {
                throw InvalidInput("matrix im part has the wrong shape");
            }
            for (std::size_t c = 0; c < rows; ++c) {
                m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)).imag(row[c]);
            }
        }
    }
    return m;
}

}  // namespace locc::json_io
