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

#pragma once

#include <limits>
#include <string>
#include <vector>

#include "cads/engine.hpp"
#include "cads/strategies.hpp"
#include "cads/traces.hpp"

namespace cads {

/// Budget utilization with totalized edge cases: +inf when emitting against a
/// zero budget, 0 when idle against a zero budget.
inline double budget_utilization(double emissions_g, double budget_g) {
    if (budget_g > 0.0) {
        return emissions_g / budget_g;
    }
    return emissions_g > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

/// One simulated (hour, strategy) cell. budget_g is the budget the strategy
/// was given for the hour (the scheduled allowance plus any carried-over
/// grams in carryover mode).
struct HourRecord {
    std::size_t hour = 0;
    std::string strategy;
    Configuration config;
    std::vector<int> replicas;
    double energy_wh = 0.0;
    double emissions_g = 0.0;
    double budget_g = 0.0;
    double utilization = 0.0;
    double qoe_term = 0.0;
    double rev_term = 0.0;
    double rev_sum = 0.0;  ///< raw summed revenue of the chosen versions
    double objective = 0.0;
    double users0 = 0.0;
    double completers = 0.0;
    bool violated = false;

    friend bool operator==(const HourRecord&, const HourRecord&) = default;
};

struct StrategyAggregate {
    std::string strategy;
    std::size_t hours = 0;
    double total_emissions_g = 0.0;
    double total_budget_g = 0.0;
    double mean_utilization = 0.0;
    std::size_t violations = 0;
    double mean_qoe = 0.0;
    double total_revenue = 0.0;
    double mean_objective = 0.0;
};

/// Records ordered by (hour, strategy list order) plus per-strategy
/// aggregates recomputable from the records.
struct SimulationReport {
    std::vector<std::string> strategy_ids;
    std::vector<HourRecord> records;
    std::vector<StrategyAggregate> aggregates;
};

namespace detail {

inline std::vector<StrategyAggregate> aggregate_records(
    const std::vector<std::string>& strategy_ids, const std::vector<HourRecord>& records) {
    std::vector<StrategyAggregate> aggregates;
    for (const std::string& id : strategy_ids) {
        StrategyAggregate agg;
        agg.strategy = id;
        double utilization_sum = 0.0, qoe_sum = 0.0, objective_sum = 0.0;
        for (const HourRecord& rec : records) {
            if (rec.strategy != id) {
                continue;
            }
            ++agg.hours;
            agg.total_emissions_g += rec.emissions_g;
            agg.total_budget_g += rec.budget_g;
            utilization_sum += rec.utilization;
            qoe_sum += rec.qoe_term;
            agg.total_revenue += rec.rev_sum;
            objective_sum += rec.objective;
            if (rec.violated) {
                ++agg.violations;
            }
        }
        if (agg.hours > 0) {
            const double hours = static_cast<double>(agg.hours);
            agg.mean_utilization = utilization_sum / hours;
            agg.mean_qoe = qoe_sum / hours;
            agg.mean_objective = objective_sum / hours;
        }
        aggregates.push_back(agg);
    }
    return aggregates;
}

}  // namespace detail

/// Runs every strategy over every hour of the traces. In the default mode
/// each hour is independent; with carryover, each strategy's unused budget
/// rolls into its next hour (hours then run sequentially per strategy).
inline SimulationReport run_simulation(const ApplicationModel& app, const CarbonTrace& carbon,
                                       const WorkloadTrace& workload,
                                       const BudgetSchedule& schedule,
                                       const std::vector<Strategy>& strategies,
                                       bool carryover = false) {
    const std::size_t hours = carbon.size();
    if (hours == 0) {
        throw ValidationError("simulation needs at least one hour");
    }
    if (workload.size() != hours || schedule.size() != hours) {
        throw ValidationError("trace length mismatch: carbon has " + std::to_string(hours) +
                              " hours, workload " + std::to_string(workload.size()) +
                              ", budget schedule " + std::to_string(schedule.size()));
    }
    if (strategies.empty()) {
        throw ValidationError("simulation needs at least one strategy");
    }

    SimulationReport report;
    for (const Strategy& strategy : strategies) {
        report.strategy_ids.push_back(strategy.id);
    }
    report.records.resize(hours * strategies.size());

    for (std::size_t s = 0; s < strategies.size(); ++s) {
        const Strategy& strategy = strategies[s];
        double carry_g = 0.0;
        for (std::size_t h = 0; h < hours; ++h) {
            const double users0 = workload.users[h];
            const double ci = carbon.ci[h];
            const double budget_g = carryover ? schedule.hourly_g[h] + carry_g
                                              : schedule.hourly_g[h];
            StrategyOutcome outcome = strategy.select(app, users0, ci, budget_g);

            HourRecord rec;
            rec.hour = h;
            rec.strategy = strategy.id;
            rec.replicas = outcome.plan.replicas;
            rec.energy_wh = outcome.plan.energy_wh;
            rec.emissions_g = outcome.plan.emissions_g;
            rec.budget_g = budget_g;
            rec.utilization = budget_utilization(rec.emissions_g, budget_g);
            rec.qoe_term = outcome.plan.qoe_term;
            rec.rev_term = outcome.plan.rev_term;
            rec.rev_sum = config_rev_sum(app, outcome.plan.config);
            rec.objective = outcome.plan.objective;
            rec.users0 = users0;
            rec.completers = completers(app, outcome.plan.config, outcome.plan.users_in);
            rec.violated = outcome.violated;
            rec.config = std::move(outcome.plan.config);
            report.records[h * strategies.size() + s] = std::move(rec);

            if (carryover) {
                carry_g = std::max(budget_g - report.records[h * strategies.size() + s].emissions_g,
                                   0.0);
            }
        }
    }
    report.aggregates = detail::aggregate_records(report.strategy_ids, report.records);
    return report;
}

/// One pairwise comparison: percentage change of strategy a's aggregate over
/// strategy b's, with the +inf sentinel when b's figure is zero and a's is
/// not.
struct ComparisonRow {
    std::string strategy_a;
    std::string strategy_b;
    double qoe_delta_pct = 0.0;
    double revenue_delta_pct = 0.0;
    double objective_delta_pct = 0.0;
    std::size_t violations_a = 0;
    std::size_t violations_b = 0;
};

namespace detail {

inline double percent_delta(double a, double b) {
    if (b == 0.0) {
        if (a == 0.0) {
            return 0.0;
        }
        return a > 0.0 ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
    }
    return (a - b) / b * 100.0;
}

}  // namespace detail

/// All ordered strategy pairs, in aggregate order.
inline std::vector<ComparisonRow> compare(const std::vector<StrategyAggregate>& aggregates) {
    std::vector<ComparisonRow> rows;
    for (const StrategyAggregate& a : aggregates) {
        for (const StrategyAggregate& b : aggregates) {
            if (a.strategy == b.strategy) {
                continue;
            }
            ComparisonRow row;
            row.strategy_a = a.strategy;
            row.strategy_b = b.strategy;
            row.qoe_delta_pct = detail::percent_delta(a.mean_qoe, b.mean_qoe);
            row.revenue_delta_pct = detail::percent_delta(a.total_revenue, b.total_revenue);
            row.objective_delta_pct = detail::percent_delta(a.mean_objective, b.mean_objective);
            row.violations_a = a.violations;
            row.violations_b = b.violations;
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

inline std::vector<ComparisonRow> compare(const SimulationReport& report) {
    return compare(report.aggregates);
}

}  // namespace cads
