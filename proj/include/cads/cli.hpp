// Copyright 2026 The cads Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file cli.hpp
/// Subcommand bodies for the cads tool, separated from argument parsing so
/// tests can drive them directly. Every command is a deterministic function
/// of its options: reports are assembled fully in memory and written in one
/// shot, and reruns on identical inputs produce byte-identical files.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cads/csv.hpp"
#include "cads/scenario.hpp"
#include "cads/sim.hpp"
#include "cads/traces.hpp"

namespace cads {

struct GenerateOptions {
    std::string out_dir;
    int hours = 24;
    double carbon_base = 300.0;
    double carbon_amplitude = 100.0;
    double workload_base = 20000.0;
    double workload_amplitude = 10000.0;
    std::uint64_t seed = 1;
};

struct SimulateOptions {
    std::optional<std::string> scenario_path;
    std::optional<std::string> app_path;
    std::optional<std::string> carbon_path;
    std::optional<std::string> workload_path;
    std::optional<double> budget_g;
    std::optional<std::string> alloc;
    std::vector<std::string> strategies;
    std::optional<double> alpha;
    std::optional<double> beta;
    std::optional<std::uint64_t> seed;
    bool carryover = false;
    std::string out_dir;
};

struct CompareOptions {
    std::string hourly_path;
    std::optional<std::string> out_path;
};

namespace detail {

inline std::string ensure_out_dir(const std::string& out_dir) {
    if (out_dir.empty()) {
        throw ValidationError("--out directory must not be empty");
    }
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
        throw ValidationError("cannot create output directory \"" + out_dir +
                              "\": " + ec.message());
    }
    return out_dir;
}

}  // namespace detail

/// Writes carbon.csv and workload.csv under the output directory. The
/// workload generator is seeded with seed + 1 so the two noise streams
/// differ while staying reproducible from the one echoed seed.
inline void cmd_generate(const GenerateOptions& opt, std::ostream& log) {
    const std::filesystem::path out = detail::ensure_out_dir(opt.out_dir);
    const CarbonTrace carbon =
        gen_synthetic_carbon(opt.hours, opt.carbon_base, opt.carbon_amplitude, opt.seed);
    const WorkloadTrace workload =
        gen_synthetic_workload(opt.hours, opt.workload_base, opt.workload_amplitude, opt.seed + 1);
    const std::string carbon_path = (out / "carbon.csv").string();
    const std::string workload_path = (out / "workload.csv").string();
    write_carbon_trace(carbon_path, carbon);
    write_workload_trace(workload_path, workload);
    log << "seed: " << opt.seed << '\n';
    log << "wrote " << carbon_path << " (" << carbon.size() << " rows)\n";
    log << "wrote " << workload_path << " (" << workload.size() << " rows)\n";
}

namespace detail {

inline Scenario scenario_from_options(const SimulateOptions& opt) {
    if (opt.scenario_path) {
        if (opt.app_path || opt.carbon_path || opt.workload_path || opt.budget_g || opt.alloc) {
            throw ValidationError(
                "--scenario replaces --app/--carbon/--workload/--budget/--alloc; "
                "give one or the other");
        }
        Scenario scenario = load_scenario(*opt.scenario_path);
        if (!opt.strategies.empty()) {
            scenario.strategies = opt.strategies;
        }
        if (opt.alpha) {
            scenario.alpha = opt.alpha;
        }
        if (opt.beta) {
            scenario.beta = opt.beta;
        }
        if (opt.carryover) {
            scenario.carryover = true;
        }
        return scenario;
    }
    Scenario scenario;
    if (!opt.app_path) {
        throw ValidationError("missing --app (or use --scenario)");
    }
    if (!opt.carbon_path) {
        throw ValidationError("missing --carbon (or use --scenario)");
    }
    if (!opt.workload_path) {
        throw ValidationError("missing --workload (or use --scenario)");
    }
    if (!opt.budget_g) {
        throw ValidationError("missing --budget (or use --scenario)");
    }
    scenario.app_path = *opt.app_path;
    scenario.carbon.path = opt.carbon_path;
    scenario.workload.path = opt.workload_path;
    scenario.budget_total_g = opt.budget_g;
    if (opt.alloc) {
        scenario.alloc = allocation_mode_from_string(*opt.alloc);
    }
    scenario.strategies = opt.strategies.empty() ? std::vector<std::string>{"os"}
                                                 : opt.strategies;
    scenario.alpha = opt.alpha;
    scenario.beta = opt.beta;
    scenario.carryover = opt.carryover;
    return scenario;
}

}  // namespace detail

/// Runs the scenario and writes hourly.csv and summary.csv under --out.
inline void cmd_simulate(const SimulateOptions& opt, std::ostream& log) {
    const Scenario scenario = detail::scenario_from_options(opt);
    const ResolvedScenario resolved = resolve_scenario(scenario, opt.seed);
    const SimulationReport report =
        run_simulation(resolved.app, resolved.carbon, resolved.workload, resolved.schedule,
                       resolved.strategies, resolved.carryover);
    const std::filesystem::path out = detail::ensure_out_dir(opt.out_dir);
    const std::string hourly_path = (out / "hourly.csv").string();
    const std::string summary_path = (out / "summary.csv").string();
    write_hourly_csv(hourly_path, resolved.app, report);
    write_summary_csv(summary_path, report);
    log << "wrote " << hourly_path << " (" << report.records.size() << " rows)\n";
    log << "wrote " << summary_path << " (" << report.aggregates.size() << " rows)\n";
}

/// Reads a per-hour report and emits the pairwise strategy comparison, to
/// --out when given and to the log stream otherwise.
inline void cmd_compare(const CompareOptions& opt, std::ostream& log) {
    const std::vector<StrategyAggregate> aggregates = aggregates_from_hourly_csv(opt.hourly_path);
    const std::vector<ComparisonRow> rows = compare(aggregates);
    if (opt.out_path) {
        write_comparison_csv(*opt.out_path, rows);
        log << "wrote " << *opt.out_path << " (" << rows.size() << " rows)\n";
    } else {
        log << format_comparison_csv(rows);
    }
}

}  // namespace cads
