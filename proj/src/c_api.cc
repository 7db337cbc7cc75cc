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

#include "locc_forge/locc_forge.h"

#include <chrono>
#include <new>
#include <string>

#include "locc/commands.h"
#include "locc/errors.h"
#include "locc/probabilistic.h"

struct locc_instance {
    locc::cli::Instance inst;
};

struct locc_report {
    std::string json;
    std::string summary;
    int exit_code;
};

namespace {

thread_local std::string last_error;

locc_status fail(locc_status status, std::string message) {
    last_error = std::move(message);
    return status;
}

// Runs f, turning exceptions into status codes.
template <typename F>
locc_status guarded(F &&f) {
    try {
        last_error.clear();
        f();
        return LOCC_OK;
    } catch (const locc::LoccError &e) {
        return fail(static_cast<locc_status>(e.kind()), e.what());
    } catch (const std::bad_alloc &) {
        return fail(LOCC_RESOURCE_CAP, "out of memory");
    } catch (const std::exception &e) {
        return fail(LOCC_INTERNAL, e.what());
    }
}

std::pair<locc::ProbVector, locc::ProbVector> padded_pair(const double *lam, size_t lam_len, const double *mu,
                                                         size_t mu_len) {
    if ((lam == nullptr && lam_len) || (mu == nullptr && mu_len)) {
        throw locc::InvalidInput("null vector");
    }
    const size_t n = std::max(lam_len, mu_len);
    std::vector<double> a(n, 0.0);
    std::vector<double> b(n, 0.0);
    std::copy(lam, lam + lam_len, a.begin());
    std::copy(mu, mu + mu_len, b.begin());
    return {locc::ProbVector(a), locc::ProbVector(b)};
}

}  // namespace

extern "C" {

void locc_options_init(locc_options *options) {
    if (options != nullptr) {
        *options = locc_options{};
    }
}

const char *locc_version(void) {
    return "0.1.0";
}

const char *locc_last_error(void) {
    return last_error.c_str();
}

locc_status locc_instance_parse(const char *json_text, locc_instance **out) {
    if (json_text == nullptr || out == nullptr) {
        return fail(LOCC_INPUT_ERROR, "null argument");
    }
    *out = nullptr;
    return guarded([&] { *out = new locc_instance{locc::cli::parse_instance_text(json_text)}; });
}

void locc_instance_free(locc_instance *instance) {
    delete instance;
}

locc_status locc_run(const char *command, const locc_instance *instance, const locc_options *options,
                     locc_report **out) {
    if (command == nullptr || instance == nullptr || out == nullptr) {
        return fail(LOCC_INPUT_ERROR, "null argument");
    }
    *out = nullptr;
    locc::cli::CommandOptions opts;
    if (options != nullptr) {
        if (options->has_tol) opts.tol = options->tol;
        if (options->has_copies) opts.copies = options->copies;
        if (options->has_d_max) opts.d_max = options->d_max;
        if (options->has_resolution) opts.resolution = options->resolution;
        if (options->has_seed) opts.seed = options->seed;
        if (options->plan_json != nullptr) opts.plan_json = std::string(options->plan_json);
    }
    return guarded([&] {
        const auto start = std::chrono::steady_clock::now();
        locc::cli::Report r = locc::cli::run_command(command, instance->inst, opts);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        r.body["wall_time_s"] = elapsed.count();
        *out = new locc_report{r.body.dump(2), r.summary, r.exit_code};
        if (r.exit_code != 0) {
            last_error = r.summary;
        }
    });
}

const char *locc_report_json(const locc_report *report) {
    return report ? report->json.c_str() : "";
}

const char *locc_report_summary(const locc_report *report) {
    return report ? report->summary.c_str() : "";
}

int locc_report_exit_code(const locc_report *report) {
    return report ? report->exit_code : LOCC_INTERNAL;
}

void locc_report_free(locc_report *report) {
    delete report;
}

locc_status locc_is_majorized(const double *lam, size_t lam_len, const double *mu, size_t mu_len, int *out) {
    if (out == nullptr) {
        return fail(LOCC_INPUT_ERROR, "null argument");
    }
    return guarded([&] {
        auto [a, b] = padded_pair(lam, lam_len, mu, mu_len);
        *out = locc::is_majorized(a, b) ? 1 : 0;
    });
}

locc_status locc_pmax(const double *lam, size_t lam_len, const double *mu, size_t mu_len, double *out) {
    if (out == nullptr) {
        return fail(LOCC_INPUT_ERROR, "null argument");
    }
    return guarded([&] {
        auto [a, b] = padded_pair(lam, lam_len, mu, mu_len);
        *out = locc::pmax(a, b).p;
    });
}

}  // extern "C"
