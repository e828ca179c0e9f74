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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "cads/model.hpp"
#include "cads/sim.hpp"
#include "cads/traces.hpp"

namespace cads {

inline constexpr const char* kHourlyCsvHeader =
    "hour,strategy,config,replicas,energy_wh,emissions_g,budget_g,utilization,qoe,revenue,"
    "objective,violated";
inline constexpr const char* kSummaryCsvHeader =
    "strategy,hours,total_emissions_g,total_budget_g,mean_utilization,violations,mean_qoe,"
    "total_revenue,mean_objective";
inline constexpr const char* kComparisonCsvHeader =
    "strategy_a,strategy_b,qoe_delta_pct,revenue_delta_pct,objective_delta_pct,violations_a,"
    "violations_b";

/// Fixed 6-fractional-digit rendering; infinities become "inf"/"-inf".
inline std::string format_fixed6(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0.0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

inline std::string format_replicas(const std::vector<int>& replicas) {
    std::string out;
    for (std::size_t i = 0; i < replicas.size(); ++i) {
        if (i > 0) {
            out += ';';
        }
        out += std::to_string(replicas[i]);
    }
    return out;
}

inline std::string format_hourly_csv(const ApplicationModel& app, const SimulationReport& report) {
    std::string out = std::string(kHourlyCsvHeader) + "\n";
    for (const HourRecord& rec : report.records) {
        out += std::to_string(rec.hour);
        out += ',';
        out += rec.strategy;
        out += ',';
        out += format_configuration(app, rec.config);
        out += ',';
        out += format_replicas(rec.replicas);
        out += ',';
        out += format_fixed6(rec.energy_wh);
        out += ',';
        out += format_fixed6(rec.emissions_g);
        out += ',';
        out += format_fixed6(rec.budget_g);
        out += ',';
        out += format_fixed6(rec.utilization);
        out += ',';
        out += format_fixed6(rec.qoe_term);
        out += ',';
        out += format_fixed6(rec.rev_sum);
        out += ',';
        out += format_fixed6(rec.objective);
        out += ',';
        out += rec.violated ? "true" : "false";
        out += '\n';
    }
    return out;
}

inline std::string format_summary_csv(const SimulationReport& report) {
    std::string out = std::string(kSummaryCsvHeader) + "\n";
    for (const StrategyAggregate& agg : report.aggregates) {
        out += agg.strategy;
        out += ',';
        out += std::to_string(agg.hours);
        out += ',';
        out += format_fixed6(agg.total_emissions_g);
        out += ',';
        out += format_fixed6(agg.total_budget_g);
        out += ',';
        out += format_fixed6(agg.mean_utilization);
        out += ',';
        out += std::to_string(agg.violations);
        out += ',';
        out += format_fixed6(agg.mean_qoe);
        out += ',';
        out += format_fixed6(agg.total_revenue);
        out += ',';
        out += format_fixed6(agg.mean_objective);
        out += '\n';
    }
    return out;
}

inline std::string format_comparison_csv(const std::vector<ComparisonRow>& rows) {
    std::string out = std::string(kComparisonCsvHeader) + "\n";
    for (const ComparisonRow& row : rows) {
        out += row.strategy_a;
        out += ',';
        out += row.strategy_b;
        out += ',';
        out += format_fixed6(row.qoe_delta_pct);
        out += ',';
        out += format_fixed6(row.revenue_delta_pct);
        out += ',';
        out += format_fixed6(row.objective_delta_pct);
        out += ',';
        out += std::to_string(row.violations_a);
        out += ',';
        out += std::to_string(row.violations_b);
        out += '\n';
    }
    return out;
}

// Files are assembled in memory first and written in one shot, so a crashed
// run never leaves a half-written report behind.
inline void write_hourly_csv(const std::string& path, const ApplicationModel& app,
                             const SimulationReport& report) {
    detail::write_file(path, format_hourly_csv(app, report));
}

inline void write_summary_csv(const std::string& path, const SimulationReport& report) {
    detail::write_file(path, format_summary_csv(report));
}

inline void write_comparison_csv(const std::string& path, const std::vector<ComparisonRow>& rows) {
    detail::write_file(path, format_comparison_csv(rows));
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace detail

/// Rebuilds per-strategy aggregates from a per-hour CSV written by this
/// library, preserving the strategies' first-appearance order.
inline std::vector<StrategyAggregate> aggregates_from_hourly_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open hourly report \"" + path + "\"");
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw ParseError(path + ": empty file");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != kHourlyCsvHeader) {
        throw ParseError(path + ":1: not a per-hour report (unexpected header)");
    }

    std::vector<std::string> order;
    std::vector<HourRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const std::vector<std::string> fields = detail::split_csv_line(line);
        if (fields.size() != 12) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected 12 columns, got " +
                             std::to_string(fields.size()));
        }
        HourRecord rec;
        rec.hour = static_cast<std::size_t>(
            detail::parse_csv_number(fields[0], path, line_no));
        rec.strategy = fields[1];
        rec.energy_wh = detail::parse_csv_number(fields[4], path, line_no);
        rec.emissions_g = detail::parse_csv_number(fields[5], path, line_no);
        rec.budget_g = detail::parse_csv_number(fields[6], path, line_no);
        rec.utilization = detail::parse_csv_number(fields[7], path, line_no);
        rec.qoe_term = detail::parse_csv_number(fields[8], path, line_no);
        rec.rev_sum = detail::parse_csv_number(fields[9], path, line_no);
        rec.objective = detail::parse_csv_number(fields[10], path, line_no);
        if (fields[11] == "true") {
            rec.violated = true;
        } else if (fields[11] == "false") {
            rec.violated = false;
        } else {
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": violated must be \"true\" or \"false\"");
        }
        if (std::find(order.begin(), order.end(), rec.strategy) == order.end()) {
            order.push_back(rec.strategy);
        }
        records.push_back(std::move(rec));
    }
    if (records.empty()) {
        throw ParseError(path + ": no data rows");
    }
    return detail::aggregate_records(order, records);
}

}  // namespace cads
