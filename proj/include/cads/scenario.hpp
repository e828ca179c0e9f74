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

/// @file scenario.hpp
/// Scenario files bundle one simulation's inputs: the application document,
/// carbon and workload traces (on disk or synthesized), the budget, and the
/// strategy roster. Relative paths inside a scenario resolve against the
/// scenario file's own directory, so a scenario and its data files can move
/// around together.

#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cads/model.hpp"
#include "cads/strategies.hpp"
#include "cads/traces.hpp"

namespace cads {

/// Parameters for one synthesized diurnal series.
struct SyntheticSpec {
    std::size_t hours = 0;
    double base = 0.0;
    double amplitude = 0.0;
    std::uint64_t seed = 0;
};

/// Either a CSV file on disk or a generator block, never both.
struct TraceSource {
    std::optional<std::string> path;
    std::optional<SyntheticSpec> generate;
};

inline constexpr const char* kBudgetRuleHpLowMidpoint = "hp_low_midpoint";

struct Scenario {
    std::string app_path;
    TraceSource carbon;
    TraceSource workload;
    std::optional<double> budget_total_g;
    std::optional<std::string> budget_rule;
    AllocationMode alloc = AllocationMode::proportional;
    std::vector<std::string> strategies;
    std::optional<double> alpha;
    std::optional<double> beta;
    bool carryover = false;
    std::optional<std::vector<std::vector<std::string>>> ca_candidates;
};

/// Scenario inputs loaded, generated, and cross-checked, ready to hand to
/// run_simulation.
struct ResolvedScenario {
    ApplicationModel app;
    CarbonTrace carbon;
    WorkloadTrace workload;
    BudgetSchedule schedule;
    std::vector<Strategy> strategies;
    bool carryover = false;
};

namespace detail {

inline SyntheticSpec parse_synthetic_spec(const nlohmann::json& obj, const std::string& context) {
    if (!obj.is_object()) {
        throw ParseError(context + ": must be an object");
    }
    reject_unknown_fields(obj, {"hours", "base", "amplitude", "seed"}, context);
    SyntheticSpec spec;
    const double hours = require_number(obj, "hours", context);
    if (hours < 1.0 || hours > 1e7 || hours != std::floor(hours)) {
        throw ParseError(context + ": \"hours\" must be a positive integer");
    }
    spec.hours = static_cast<std::size_t>(hours);
    spec.base = require_number(obj, "base", context);
    if (obj.contains("amplitude")) {
        spec.amplitude = require_number(obj, "amplitude", context);
    }
    if (obj.contains("seed")) {
        const double seed = require_number(obj, "seed", context);
        if (seed < 0.0 || seed != std::floor(seed)) {
            throw ParseError(context + ": \"seed\" must be a non-negative integer");
        }
        spec.seed = static_cast<std::uint64_t>(seed);
    }
    return spec;
}

inline TraceSource parse_trace_source(const nlohmann::json& obj, const std::string& context,
                                      const std::filesystem::path& base_dir) {
    if (!obj.is_object()) {
        throw ParseError(context + ": must be an object");
    }
    reject_unknown_fields(obj, {"path", "generate"}, context);
    TraceSource source;
    if (obj.contains("path") && obj.contains("generate")) {
        throw ParseError(context + ": give either \"path\" or \"generate\", not both");
    }
    if (obj.contains("path")) {
        std::filesystem::path p = require_string(obj, "path", context);
        if (p.is_relative()) {
            p = base_dir / p;
        }
        source.path = p.string();
    } else if (obj.contains("generate")) {
        source.generate = parse_synthetic_spec(obj.at("generate"), context + ".generate");
    } else {
        throw ParseError(context + ": missing field \"path\" or \"generate\"");
    }
    return source;
}

}  // namespace detail

inline Scenario parse_scenario(const nlohmann::json& doc, const std::string& context,
                               const std::filesystem::path& base_dir) {
    if (!doc.is_object()) {
        throw ParseError(context + ": scenario must be a JSON object");
    }
    detail::reject_unknown_fields(doc,
                                  {"app", "carbon", "workload", "budget", "alloc", "strategies",
                                   "alpha", "beta", "carryover", "ca_candidates"},
                                  context);

    Scenario scenario;
    std::filesystem::path app_path = detail::require_string(doc, "app", context);
    if (app_path.is_relative()) {
        app_path = base_dir / app_path;
    }
    scenario.app_path = app_path.string();

    if (!doc.contains("carbon")) {
        throw ParseError(context + ": missing field \"carbon\"");
    }
    scenario.carbon = detail::parse_trace_source(doc.at("carbon"), context + ".carbon", base_dir);
    if (!doc.contains("workload")) {
        throw ParseError(context + ": missing field \"workload\"");
    }
    scenario.workload =
        detail::parse_trace_source(doc.at("workload"), context + ".workload", base_dir);

    if (!doc.contains("budget")) {
        throw ParseError(context + ": missing field \"budget\"");
    }
    const nlohmann::json& budget = doc.at("budget");
    if (!budget.is_object()) {
        throw ParseError(context + ".budget: must be an object");
    }
    detail::reject_unknown_fields(budget, {"total_g", "rule"}, context + ".budget");
    if (budget.contains("total_g") == budget.contains("rule")) {
        throw ParseError(context + ".budget: give either \"total_g\" or \"rule\", not both");
    }
    if (budget.contains("total_g")) {
        scenario.budget_total_g = detail::require_number(budget, "total_g", context + ".budget");
    } else {
        const std::string rule = detail::require_string(budget, "rule", context + ".budget");
        if (rule != kBudgetRuleHpLowMidpoint) {
            throw ParseError(context + ".budget: unknown rule \"" + rule + "\" (expected \"" +
                             kBudgetRuleHpLowMidpoint + "\")");
        }
        scenario.budget_rule = rule;
    }

    if (doc.contains("alloc")) {
        scenario.alloc =
            allocation_mode_from_string(detail::require_string(doc, "alloc", context));
    }

    if (!doc.contains("strategies")) {
        throw ParseError(context + ": missing field \"strategies\"");
    }
    const nlohmann::json& strategies = doc.at("strategies");
    if (!strategies.is_array() || strategies.empty()) {
        throw ParseError(context + ": \"strategies\" must be a non-empty array");
    }
    for (const nlohmann::json& id : strategies) {
        if (!id.is_string()) {
            throw ParseError(context + ": \"strategies\" entries must be strings");
        }
        scenario.strategies.push_back(id.get<std::string>());
    }

    if (doc.contains("alpha")) {
        scenario.alpha = detail::require_number(doc, "alpha", context);
    }
    if (doc.contains("beta")) {
        scenario.beta = detail::require_number(doc, "beta", context);
    }
    if (doc.contains("carryover")) {
        const nlohmann::json& flag = doc.at("carryover");
        if (!flag.is_boolean()) {
            throw ParseError(context + ": \"carryover\" must be a boolean");
        }
        scenario.carryover = flag.get<bool>();
    }

    if (doc.contains("ca_candidates")) {
        const nlohmann::json& cands = doc.at("ca_candidates");
        if (!cands.is_array() || cands.size() != 3) {
            throw ParseError(context +
                             ": \"ca_candidates\" must be an array of exactly 3 configurations");
        }
        std::vector<std::vector<std::string>> lists;
        for (const nlohmann::json& cand : cands) {
            if (!cand.is_array()) {
                throw ParseError(context +
                                 ": each ca_candidates entry must be an array of version names");
            }
            std::vector<std::string> names;
            for (const nlohmann::json& name : cand) {
                if (!name.is_string()) {
                    throw ParseError(context + ": ca_candidates version names must be strings");
                }
                names.push_back(name.get<std::string>());
            }
            lists.push_back(std::move(names));
        }
        scenario.ca_candidates = std::move(lists);
    }
    return scenario;
}

inline Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open scenario file \"" + path + "\"");
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& err) {
        throw ParseError(path + ": " + err.what());
    }
    return parse_scenario(doc, path, std::filesystem::path(path).parent_path());
}

namespace detail {

inline Configuration config_from_names(const ApplicationModel& app,
                                       const std::vector<std::string>& names,
                                       const std::string& context) {
    if (names.size() != app.size()) {
        throw ValidationError(context + ": expected " + std::to_string(app.size()) +
                              " version names, got " + std::to_string(names.size()));
    }
    Configuration config;
    config.chosen.resize(app.size());
    for (std::size_t i = 0; i < app.size(); ++i) {
        const Microservice& ms = app.microservices[i];
        bool found = false;
        for (std::size_t v = 0; v < ms.versions.size(); ++v) {
            if (ms.versions[v].name == names[i]) {
                config.chosen[i] = static_cast<int>(v);
                found = true;
                break;
            }
        }
        if (!found) {
            throw ValidationError(context + ": microservice \"" + ms.name + "\" has no version \"" +
                                  names[i] + "\"");
        }
    }
    return config;
}

}  // namespace detail

/// Hourly budget equal to the midpoint between the all-max-ED plan's
/// emissions and the least-emitting plan's emissions for that hour's inputs.
inline BudgetSchedule midpoint_budget_schedule(const ApplicationModel& app,
                                               const CarbonTrace& carbon,
                                               const WorkloadTrace& workload) {
    constexpr double kNoLimit = std::numeric_limits<double>::infinity();
    BudgetSchedule schedule;
    schedule.hourly_g.reserve(carbon.size());
    for (std::size_t h = 0; h < carbon.size(); ++h) {
        const double hp = hp_select(app, workload.users[h], carbon.ci[h], kNoLimit).plan.emissions_g;
        const double low = min_emission_plan(app, workload.users[h], carbon.ci[h], kNoLimit).emissions_g;
        const double hourly = (hp + low) / 2.0;
        schedule.hourly_g.push_back(hourly);
        schedule.total_g += hourly;
    }
    return schedule;
}

/// Loads or generates every input a scenario names. A seed override replaces
/// the seed of every generator block, leaving on-disk traces untouched.
inline ResolvedScenario resolve_scenario(const Scenario& scenario,
                                         std::optional<std::uint64_t> seed_override =
                                             std::nullopt) {
    ResolvedScenario resolved;
    resolved.app = load_application(scenario.app_path);
    if (scenario.alpha) {
        resolved.app.alpha = *scenario.alpha;
    }
    if (scenario.beta) {
        resolved.app.beta = *scenario.beta;
    }
    validate_application(resolved.app);

    const auto make_series = [&](const TraceSource& source, bool carbon) {
        if (source.path) {
            return carbon ? load_carbon_trace(*source.path).ci
                          : load_workload_trace(*source.path).users;
        }
        const SyntheticSpec& spec = *source.generate;
        const std::uint64_t seed = seed_override ? *seed_override : spec.seed;
        const int hours = static_cast<int>(spec.hours);
        return carbon ? gen_synthetic_carbon(hours, spec.base, spec.amplitude, seed).ci
                      : gen_synthetic_workload(hours, spec.base, spec.amplitude, seed).users;
    };
    resolved.carbon.ci = make_series(scenario.carbon, true);
    resolved.workload.users = make_series(scenario.workload, false);
    if (resolved.carbon.size() != resolved.workload.size()) {
        throw ValidationError("carbon trace has " + std::to_string(resolved.carbon.size()) +
                              " hours but workload trace has " +
                              std::to_string(resolved.workload.size()));
    }

    if (scenario.budget_total_g) {
        resolved.schedule =
            allocate_budget(*scenario.budget_total_g, resolved.workload, scenario.alloc);
    } else {
        resolved.schedule =
            midpoint_budget_schedule(resolved.app, resolved.carbon, resolved.workload);
    }

    std::optional<CaCandidates> ca_candidates;
    if (scenario.ca_candidates) {
        CaCandidates candidates;
        for (std::size_t i = 0; i < 3; ++i) {
            candidates[i] = detail::config_from_names(resolved.app, (*scenario.ca_candidates)[i],
                                                      "ca_candidates[" + std::to_string(i) + "]");
        }
        ca_candidates = std::move(candidates);
    }
    resolved.strategies = make_strategies(scenario.strategies, resolved.app, ca_candidates);
    resolved.carryover = scenario.carryover;
    return resolved;
}

}  // namespace cads
