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

#include "locc/commands.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "locc/errors.h"
#include "locc/json_io.h"
#include "locc/probabilistic.h"
#include "locc/protocol.h"

namespace locc::cli {

namespace {

using nlohmann::json;
using json_io::to_json;

constexpr std::size_t kDefaultCopies = 2;
constexpr std::size_t kDefaultDMax = 2;
constexpr double kDefaultResolution = 0.01;

std::optional<std::size_t> optional_index(const json &j, const char *key) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return std::nullopt;
    }
    const auto &v = j.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
        throw InvalidInput(std::string(key) + " must be a nonnegative integer");
    }
    return v.get<std::size_t>();
}

std::vector<ComplexMatrix> basis_list(const json &j, const char *what) {
    if (!j.is_array()) {
        throw InvalidInput(std::string(what) + " must be an array of per-party matrices");
    }
    std::vector<ComplexMatrix> out;
    for (const auto &m : j) {
        out.push_back(json_io::matrix_from_json(m));
    }
    return out;
}

// Records one pass/fail together with the number and the tolerance behind it.
struct Checks {
    json list = json::array();
    bool all = true;

    void add(const std::string &name, double value, double tolerance, bool passed) {
        list.push_back({{"name", name}, {"value", value}, {"tolerance", tolerance}, {"passed", passed}});
        all = all && passed;
    }
    // value <= tolerance
    void at_most(const std::string &name, double value, double tolerance) {
        add(name, value, tolerance, value <= tolerance);
    }
    // value >= 1 - tolerance
    void near_one(const std::string &name, double value, double tolerance) {
        add(name, value, tolerance, value >= 1.0 - tolerance);
    }
};

const ProbVector &require_vector(const std::optional<ProbVector> &v, const char *name) {
    if (!v) {
        throw InvalidInput(std::string("instance is missing \"") + name + "\"");
    }
    return *v;
}

json prefix_sums(const ProbVector &v) {
    std::vector<double> out;
    double acc = 0;
    for (double x : v.entries()) {
        acc += x;
        out.push_back(acc);
    }
    return out;
}

double max_prefix_excess(const ProbVector &lam, const ProbVector &mu) {
    double worst = -INFINITY;
    double a = 0;
    double b = 0;
    for (std::size_t l = 0; l + 1 < lam.size(); ++l) {
        a += lam[l];
        b += mu[l];
        worst = std::max(worst, a - b);
    }
    return lam.size() > 1 ? worst : 0.0;
}

json impossible_body(std::size_t prefix) {
    return {{"verdict", "not convertible"},
            {"witness_prefix", prefix},
            {"error", {{"kind", "ConversionImpossible"}, {"message", "source is not majorized by target"}}}};
}

std::string fmt(double x) {
    std::ostringstream ss;
    ss.precision(12);
    ss << x;
    return ss.str();
}

Report cmd_check(const Instance &inst, const CommandOptions &opts) {
    const auto &lam = require_vector(inst.lam, "lam");
    const auto &mu = require_vector(inst.mu, "mu");
    const double tol = opts.tol.value_or(kMajorizationTol);
    const auto bad = first_violation(lam, mu, tol);
    Report r;
    Checks checks;
    checks.at_most("max_prefix_excess", max_prefix_excess(lam, mu), tol);
    r.body["verdict"] = bad ? "not convertible" : "convertible";
    r.body["witness_prefix"] = bad ? json(*bad) : json(nullptr);
    r.body["lam_prefix_sums"] = prefix_sums(lam);
    r.body["mu_prefix_sums"] = prefix_sums(mu);
    r.body["checks"] = checks.list;
    r.summary = bad ? "not convertible: prefix " + std::to_string(*bad) + " of lam exceeds mu" : "convertible";
    return r;
}

Report cmd_plan(const Instance &inst, const CommandOptions &) {
    const auto &lam = require_vector(inst.lam, "lam");
    const auto &mu = require_vector(inst.mu, "mu");
    Report r;
    if (auto bad = first_violation(lam, mu)) {
        r.body = impossible_body(*bad);
        r.exit_code = static_cast<int>(ErrorKind::ConversionImpossible);
        r.summary = "not convertible: no LOCC protocol exists (prefix " + std::to_string(*bad) + ")";
        return r;
    }
    const PermutationMixture mix = mixture_for(lam, mu);
    const MeasurementPlan plan = synthesize(lam, mu, mix, inst.parties);
    const ValidationReport validation = validate(plan, lam);
    const auto rebuilt = mix.reconstruct(mu.entries());
    double recon = 0;
    for (std::size_t k = 0; k < lam.size(); ++k) {
        recon = std::max(recon, std::abs(rebuilt[k] - lam[k]));
    }
    Checks checks;
    checks.at_most("mixture_reconstruction", recon, kSumTol);
    checks.add("mixture_terms", static_cast<double>(mix.terms.size()),
               static_cast<double>(PermutationMixture::max_terms(lam.size())),
               mix.terms.size() <= PermutationMixture::max_terms(lam.size()));
    checks.at_most("completeness_residual", validation.completeness_residual, kPlanTol);
    checks.at_most("weight_residual", validation.weight_residual, kPlanTol);

    r.body["verdict"] = "convertible";
    r.body["mixture"] = to_json(mix);
    r.body["plan"] = to_json(plan);
    r.body["validation"] = to_json(validation);
    if (lam.size() == 2) {
        const QubitPlan qubit = qubit_fast_path(lam, mu, inst.parties);
        r.body["qubit_fast_path"] = {{"identity_weight", qubit.identity_weight},
                                     {"swap_weight", qubit.swap_weight},
                                     {"plan", to_json(qubit.plan)}};
    }
    r.body["checks"] = checks.list;
    r.body["passed"] = checks.all;
    r.exit_code = checks.all ? 0 : static_cast<int>(ErrorKind::Internal);
    r.summary = "plan: " + std::to_string(plan.outcomes.size()) + " outcome(s), completeness residual " +
                fmt(validation.completeness_residual);
    return r;
}

Report cmd_simulate(const Instance &inst, const CommandOptions &opts) {
    const auto &lam = require_vector(inst.lam, "lam");
    const auto &mu = require_vector(inst.mu, "mu");
    Report r;
    std::optional<MeasurementPlan> plan;
    if (opts.plan_json) {
        json pj;
        try {
            pj = json::parse(*opts.plan_json);
        } catch (const json::exception &e) {
            throw InvalidInput(std::string("plan is not valid JSON: ") + e.what());
        }
        plan = json_io::plan_from_json(pj, inst.parties);
        r.body["plan_source"] = "supplied";
    } else {
        if (auto bad = first_violation(lam, mu)) {
            r.body = impossible_body(*bad);
            r.exit_code = static_cast<int>(ErrorKind::ConversionImpossible);
            r.summary = "not convertible: nothing to simulate (prefix " + std::to_string(*bad) + ")";
            return r;
        }
        plan = plan_for(lam, mu, inst.parties);
        r.body["plan_source"] = "computed";
    }
    const auto seed = opts.seed ? opts.seed : inst.seed;
    auto [psi, phi] = build_states(inst, seed);
    RunOptions run;
    run.keep_states = false;
    if (inst.sample) {
        run.sample_seed = seed.value_or(0);
    }
    const Transcript t = run_protocol(psi, phi, *plan, run);
    const ValidationReport validation = validate(*plan, psi.coeffs());

    Checks checks;
    checks.at_most("completeness_residual", validation.completeness_residual, kPlanTol);
    checks.near_one("min_branch_fidelity", t.min_fidelity, kFidelityTol);
    checks.near_one("min_measurement_fidelity", t.min_measurement_fidelity, kFidelityTol);
    checks.at_most("max_probability_error", t.max_probability_error, kProbabilityTol);
    if (!t.sampled) {
        checks.at_most("probability_sum_error", std::abs(t.probability_sum - 1.0), kProbabilityTol);
    }
    checks.add("locality", t.is_local() ? 1.0 : 0.0, 0.0, t.is_local());
    const bool ok = checks.all && t.passed;

    r.body["plan"] = to_json(*plan);
    r.body["transcript"] = to_json(t);
    r.body["checks"] = checks.list;
    r.body["passed"] = ok;
    r.exit_code = ok ? 0 : static_cast<int>(ErrorKind::Internal);
    std::ostringstream ss;
    ss << "simulate: " << (ok ? "pass" : "FAIL") << ", " << t.branches.size() << " branch(es), probabilities";
    for (const auto &b : t.branches) {
        ss << " " << fmt(b.simulated_probability);
    }
    ss << ", min fidelity " << fmt(t.min_fidelity);
    r.summary = ss.str();
    return r;
}

Report cmd_pmax(const Instance &inst, const CommandOptions &) {
    const auto &lam = require_vector(inst.lam, "lam");
    const auto &mu = require_vector(inst.mu, "mu");
    const PmaxResult res = pmax(lam, mu);
    json ratios = json::array();
    for (std::size_t l = 0; l < lam.size(); ++l) {
        const double den = tail_sum(mu, l);
        ratios.push_back(den > 0 ? json(tail_sum(lam, l) / den) : json(nullptr));
    }
    Report r;
    r.body["p_max"] = res.p;
    r.body["l_star"] = res.l_star;
    r.body["tail_ratios"] = ratios;
    r.body["majorized"] = is_majorized(lam, mu);
    r.summary = "p_max = " + fmt(res.p) + " (l* = " + std::to_string(res.l_star) + ")";
    return r;
}

Report cmd_conclusive(const Instance &inst, const CommandOptions &opts) {
    const auto &lam = require_vector(inst.lam, "lam");
    const auto &mu = require_vector(inst.mu, "mu");
    Report r;
    const PmaxResult best = pmax(lam, mu);
    if (best.p <= 0) {
        r.body = {{"p_max", 0.0},
                  {"error", {{"kind", "ConversionImpossible"}, {"message", "target has larger Schmidt rank"}}}};
        r.exit_code = static_cast<int>(ErrorKind::ConversionImpossible);
        r.summary = "p_max = 0: conversion impossible";
        return r;
    }
    auto [psi, phi] = build_states(inst, opts.seed ? opts.seed : inst.seed);
    const ConclusiveTranscript t = run_conclusive(psi, phi);
    Checks checks;
    checks.at_most("success_probability_error", std::abs(t.success_probability - t.plan.p_max), kProbabilityTol);
    checks.near_one("min_success_fidelity", t.min_success_fidelity, kFidelityTol);
    checks.near_one("min_failure_fidelity", t.min_failure_fidelity, kFidelityTol);
    checks.near_one("min_stage_fidelity", t.stage.min_fidelity, kFidelityTol);
    const bool ok = checks.all && t.passed;
    r.body["conclusive_plan"] = to_json(t.plan);
    r.body["stage_transcript"] = to_json(t.stage);
    r.body["predicted_probability"] = t.plan.p_max;
    r.body["achieved_probability"] = t.success_probability;
    r.body["failure_probability"] = t.failure_probability;
    r.body["checks"] = checks.list;
    r.body["passed"] = ok;
    r.exit_code = ok ? 0 : static_cast<int>(ErrorKind::Internal);
    r.summary = "conclusive: predicted " + fmt(t.plan.p_max) + ", achieved " + fmt(t.success_probability) +
                (ok ? " (pass)" : " (FAIL)");
    return r;
}

Report cmd_multicopy(const Instance &inst, const CommandOptions &opts) {
    const auto &lam = require_vector(inst.lam, "lam");
    const auto &mu = require_vector(inst.mu, "mu");
    const std::size_t copies = opts.copies.value_or(inst.copies.value_or(kDefaultCopies));
    if (copies == 0) {
        throw InvalidInput("copies must be at least 1");
    }
    json table = json::array();
    bool last = false;
    for (std::size_t k = 1; k <= copies; ++k) {
        last = multicopy_check(lam, mu, k);
        table.push_back({{"copies", k}, {"majorized", last}});
    }
    Report r;
    r.body["copies"] = copies;
    r.body["convertible"] = last;
    r.body["by_copies"] = table;
    r.summary = std::string("multicopy: ") + (last ? "convertible" : "not convertible") + " with " +
                std::to_string(copies) + " copies";
    return r;
}

Report cmd_catalyst(const Instance &inst, const CommandOptions &opts) {
    const auto &lam = require_vector(inst.lam, "lam");
    const auto &mu = require_vector(inst.mu, "mu");
    const std::size_t d_max = opts.d_max.value_or(inst.d_max.value_or(kDefaultDMax));
    const double resolution = opts.resolution.value_or(inst.resolution.value_or(kDefaultResolution));
    const CatalysisResult res = catalysis_search(lam, mu, d_max, resolution);
    Report r;
    Checks checks;
    if (res.found && res.catalyst) {
        const bool verified = catalyzes(lam, mu, *res.catalyst);
        checks.add("catalyst_reverified", res.certificate_slack, -kMajorizationTol, verified);
    }
    r.body["d_max"] = d_max;
    r.body["resolution"] = resolution;
    r.body["convertible_without_catalyst"] = !res.plain_violation.has_value();
    r.body["result"] = to_json(res);
    r.body["checks"] = checks.list;
    r.exit_code = checks.all ? 0 : static_cast<int>(ErrorKind::Internal);
    std::ostringstream ss;
    ss << "catalyst: ";
    if (res.found && res.catalyst) {
        ss << "found (";
        for (std::size_t i = 0; i < res.catalyst->size(); ++i) {
            ss << (i ? ", " : "") << fmt((*res.catalyst)[i]);
        }
        ss << ")";
    } else {
        ss << "none found after " << res.candidates_tested << " candidates";
    }
    r.summary = ss.str();
    return r;
}

Report cmd_extract_gsd(const Instance &inst, const CommandOptions &opts) {
    if (!inst.state) {
        throw InvalidInput("extract-gsd needs a \"state\" object in the instance");
    }
    const GsdExtraction res = extract_gsd(*inst.state, opts.tol.value_or(kGsdTol));
    Report r;
    r.body["result"] = to_json(res);
    r.summary = std::string("extract-gsd: ") + verdict_name(res.verdict);
    if (res.witness) {
        r.summary += " (" + res.witness->kind + " at index " + std::to_string(res.witness->index) + ", residual " +
                     fmt(res.witness->residual) + ")";
    }
    return r;
}

}  // namespace

Instance parse_instance(const json &j) {
    if (!j.is_object()) {
        throw InvalidInput("instance must be a JSON object");
    }
    if (!j.contains("schema_version")) {
        throw InvalidInput("instance is missing schema_version");
    }
    const auto &version = j.at("schema_version");
    if (!version.is_string() || version.get<std::string>() != kSchemaVersion) {
        throw InvalidInput("unsupported schema_version (expected \"1\")");
    }
    Instance inst;
    inst.raw = j;
    if (j.contains("lam") != j.contains("mu")) {
        throw InvalidInput("instance must provide both lam and mu, or neither");
    }
    if (j.contains("lam")) {
        inst.lam_raw = json_io::real_array(j.at("lam"), "lam");
        inst.mu_raw = json_io::real_array(j.at("mu"), "mu");
        const std::size_t n = std::max(inst.lam_raw.size(), inst.mu_raw.size());
        inst.lam_raw.resize(n, 0.0);
        inst.mu_raw.resize(n, 0.0);
        inst.lam = ProbVector(inst.lam_raw);
        inst.mu = ProbVector(inst.mu_raw);
    }
    if (auto m = optional_index(j, "parties")) {
        inst.parties = *m;
    }
    if (inst.parties < 2) {
        throw InvalidInput("parties must be at least 2");
    }
    if (inst.parties > kMaxParties) {
        throw ResourceCapExceeded("parties exceeds the cap of " + std::to_string(kMaxParties));
    }
    if (j.contains("dims")) {
        if (!j.at("dims").is_array()) {
            throw InvalidInput("dims must be an array");
        }
        for (const auto &d : j.at("dims")) {
            if (!d.is_number_integer() || d.get<long long>() <= 0) {
                throw InvalidInput("dims entries must be positive integers");
            }
            inst.dims.push_back(d.get<std::size_t>());
        }
        if (inst.dims.size() != inst.parties) {
            throw InvalidInput("dims must list one dimension per party");
        }
    }
    if (j.contains("bases")) {
        const auto &b = j.at("bases");
        if (!b.is_object() || !b.contains("psi") || !b.contains("phi")) {
            throw InvalidInput("bases must be {\"psi\": [...], \"phi\": [...]}");
        }
        inst.psi_bases = basis_list(b.at("psi"), "bases.psi");
        inst.phi_bases = basis_list(b.at("phi"), "bases.phi");
        if (inst.psi_bases->size() != inst.parties || inst.phi_bases->size() != inst.parties) {
            throw InvalidInput("bases must list one matrix per party");
        }
    }
    if (j.contains("random_bases")) {
        if (!j.at("random_bases").is_boolean()) {
            throw InvalidInput("random_bases must be a boolean");
        }
        inst.random_bases = j.at("random_bases").get<bool>();
    }
    if (j.contains("sample")) {
        if (!j.at("sample").is_boolean()) {
            throw InvalidInput("sample must be a boolean");
        }
        inst.sample = j.at("sample").get<bool>();
    }
    if (j.contains("seed")) {
        const auto &seed = j.at("seed");
        if (!seed.is_number_integer() || (!seed.is_number_unsigned() && seed.get<long long>() < 0)) {
            throw InvalidInput("seed must be a nonnegative integer");
        }
        inst.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("state")) {
        inst.state = json_io::dense_state_from_json(j.at("state"));
    }
    inst.copies = optional_index(j, "copies");
    inst.d_max = optional_index(j, "d_max");
    if (j.contains("resolution")) {
        if (!j.at("resolution").is_number()) {
            throw InvalidInput("resolution must be a number");
        }
        inst.resolution = j.at("resolution").get<double>();
    }
    return inst;
}

Instance parse_instance_text(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception &e) {
        throw InvalidInput(std::string("instance is not valid JSON: ") + e.what());
    }
    return parse_instance(j);
}

std::pair<GeneralizedSchmidtState, GeneralizedSchmidtState> build_states(const Instance &inst,
                                                                         std::optional<std::uint64_t> seed) {
    const std::size_t n = inst.lam_raw.size();
    if (n == 0) {
        throw InvalidInput("instance has no coefficient vectors");
    }
    std::vector<std::size_t> dims = inst.dims.empty() ? std::vector<std::size_t>(inst.parties, n) : inst.dims;
    checked_amplitude_count(dims);
    std::vector<ComplexMatrix> psi_bases;
    std::vector<ComplexMatrix> phi_bases;
    if (inst.psi_bases) {
        psi_bases = *inst.psi_bases;
        phi_bases = *inst.phi_bases;
        for (std::size_t i = 0; i < inst.parties; ++i) {
            if (static_cast<std::size_t>(psi_bases[i].rows()) != dims[i] ||
                static_cast<std::size_t>(phi_bases[i].rows()) != dims[i]) {
                if (!inst.dims.empty()) {
                    throw InvalidInput("basis size does not match dims for party " + std::to_string(i));
                }
            }
        }
    } else if (inst.random_bases) {
        std::mt19937_64 rng(seed.value_or(0));
        for (std::size_t d : dims) {
            psi_bases.push_back(random_unitary(d, rng));
        }
        for (std::size_t d : dims) {
            phi_bases.push_back(random_unitary(d, rng));
        }
    } else {
        for (std::size_t d : dims) {
            const auto e = static_cast<Eigen::Index>(d);
            psi_bases.push_back(ComplexMatrix::Identity(e, e));
            phi_bases.push_back(ComplexMatrix::Identity(e, e));
        }
    }
    GeneralizedSchmidtState psi(inst.lam_raw, std::move(psi_bases));
    GeneralizedSchmidtState phi(inst.mu_raw, std::move(phi_bases));
    if (psi.dims() != phi.dims()) {
        throw InvalidInput("psi and phi bases have different local dimensions");
    }
    return {std::move(psi), std::move(phi)};
}

const std::vector<std::string> &command_names() {
    static const std::vector<std::string> names = {"check",      "plan",      "simulate", "pmax",
                                                   "conclusive", "multicopy", "catalyst", "extract-gsd"};
    return names;
}

Report run_command(const std::string &command, const Instance &instance, const CommandOptions &options) {
    Report r;
    try {
        if (command == "check") {
            r = cmd_check(instance, options);
        } else if (command == "plan") {
            r = cmd_plan(instance, options);
        } else if (command == "simulate") {
            r = cmd_simulate(instance, options);
        } else if (command == "pmax") {
            r = cmd_pmax(instance, options);
        } else if (command == "conclusive") {
            r = cmd_conclusive(instance, options);
        } else if (command == "multicopy") {
            r = cmd_multicopy(instance, options);
        } else if (command == "catalyst") {
            r = cmd_catalyst(instance, options);
        } else if (command == "extract-gsd") {
            r = cmd_extract_gsd(instance, options);
        } else {
            throw InvalidInput("unknown command \"" + command + "\"");
        }
    } catch (const LoccError &e) {
        r = Report{};
        r.exit_code = static_cast<int>(e.kind());
        r.body["error"] = {{"kind", r.exit_code}, {"message", e.what()}};
        r.summary = std::string("error: ") + e.what();
    } catch (const std::exception &e) {
        r = Report{};
        r.exit_code = static_cast<int>(ErrorKind::Internal);
        r.body["error"] = {{"kind", r.exit_code}, {"message", e.what()}};
        r.summary = std::string("internal error: ") + e.what();
    }
    json full = {{"schema_version", kSchemaVersion}, {"command", command}, {"inputs", instance.raw}};
    full.update(r.body);
    full["exit_code"] = r.exit_code;
    r.body = std::move(full);
    return r;
}

}  // namespace locc::cli
