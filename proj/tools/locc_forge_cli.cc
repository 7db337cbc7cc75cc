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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "locc_forge/locc_forge.h"

namespace {

bool slurp(const std::string &path, std::string *out) {
    if (path == "-") {
        out->assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
        return true;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return false;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    *out = ss.str();
    return true;
}

int input_error(const std::string &message) {
    std::cerr << "locc-forge: " << message << "\n";
    return LOCC_INPUT_ERROR;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"locc-forge: LOCC conversion planner and simulator for Schmidt-form states"};
    app.set_version_flag("--version", std::string(locc_version()));

    std::string command;
    std::string in_path;
    std::string out_path;
    std::string plan_path;
    std::optional<double> tol;
    std::optional<size_t> copies;
    std::optional<size_t> d_max;
    std::optional<double> resolution;
    std::optional<uint64_t> seed;

    app.add_option("command", command, "Subcommand")
        ->required()
        ->check(CLI::IsMember(
            {"check", "plan", "simulate", "pmax", "conclusive", "multicopy", "catalyst", "extract-gsd"}));
    app.add_option("--in", in_path, "Instance JSON file ('-' for stdin)")->required();
    app.add_option("--out", out_path, "Write the JSON report here instead of stdout");
    app.add_option("--tol", tol, "Tolerance override");
    app.add_option("--copies", copies, "Number of copies for multicopy");
    app.add_option("--dmax", d_max, "Largest catalyst dimension");
    app.add_option("--resolution", resolution, "Catalyst grid resolution");
    app.add_option("--plan", plan_path, "Plan JSON for simulate ('-' for stdin)");
    app.add_option("--seed", seed, "Seed for random bases and sampling");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return LOCC_INPUT_ERROR;
    }

    if (in_path == "-" && plan_path == "-") {
        return input_error("--in and --plan cannot both read stdin");
    }
    std::string instance_text;
    if (!slurp(in_path, &instance_text)) {
        return input_error("cannot read " + in_path);
    }
    std::string plan_text;
    if (!plan_path.empty() && !slurp(plan_path, &plan_text)) {
        return input_error("cannot read " + plan_path);
    }

    locc_options opts;
    locc_options_init(&opts);
    if (tol) {
        opts.has_tol = 1;
        opts.tol = *tol;
    }
    if (copies) {
        opts.has_copies = 1;
        opts.copies = *copies;
    }
    if (d_max) {
        opts.has_d_max = 1;
        opts.d_max = *d_max;
    }
    if (resolution) {
        opts.has_resolution = 1;
        opts.resolution = *resolution;
    }
    if (seed) {
        opts.has_seed = 1;
        opts.seed = *seed;
    }
    if (!plan_path.empty()) {
        opts.plan_json = plan_text.c_str();
    }

    locc_instance *raw_instance = nullptr;
    locc_status status = locc_instance_parse(instance_text.c_str(), &raw_instance);
    if (status != LOCC_OK) {
        std::cerr << "locc-forge: " << locc_last_error() << "\n";
        return status;
    }
    std::unique_ptr<locc_instance, decltype(&locc_instance_free)> instance(raw_instance, locc_instance_free);

    locc_report *raw_report = nullptr;
    status = locc_run(command.c_str(), instance.get(), &opts, &raw_report);
    if (raw_report == nullptr) {
        std::cerr << "locc-forge: " << locc_last_error() << "\n";
        return status == LOCC_OK ? LOCC_INTERNAL : status;
    }
    std::unique_ptr<locc_report, decltype(&locc_report_free)> report(raw_report, locc_report_free);

    if (out_path.empty()) {
        std::cout << locc_report_json(report.get()) << "\n";
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            return input_error("cannot write " + out_path);
        }
        out << locc_report_json(report.get()) << "\n";
    }
    std::cerr << locc_report_summary(report.get()) << "\n";
    return locc_report_exit_code(report.get());
}
