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

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "cads/error.hpp"

namespace cads {

/// Hourly grid carbon intensity, gCO2e per kWh. Hour indices are implicit:
/// entry h covers hour h, starting at 0.
struct CarbonTrace {
    std::vector<double> ci;  ///< strictly positive

    std::size_t size() const { return ci.size(); }
};

/// Hourly user requests entering the application.
struct WorkloadTrace {
    std::vector<double> users;  ///< non-negative

    std::size_t size() const { return users.size(); }
};

/// A yearly (or any-horizon) carbon budget split into hourly allowances.
/// Invariant: the hourly grams sum back to total_g within 1e-9 relative.
struct BudgetSchedule {
    double total_g = 0.0;
    std::vector<double> hourly_g;

    std::size_t size() const { return hourly_g.size(); }
};

enum class AllocationMode { proportional, uniform };

inline AllocationMode allocation_mode_from_string(const std::string& s) {
    if (s == "proportional") return AllocationMode::proportional;
    if (s == "uniform") return AllocationMode::uniform;
    throw ValidationError("allocation mode must be \"proportional\" or \"uniform\", got \"" + s +
                          "\"");
}

inline const char* to_string(AllocationMode mode) {
    return mode == AllocationMode::proportional ? "proportional" : "uniform";
}

/// Splits a horizon budget into hourly allowances. Proportional mode follows
/// the expected workload share of each hour; uniform mode splits evenly.
inline BudgetSchedule allocate_budget(double total_g, const WorkloadTrace& workload,
                                      AllocationMode mode) {
    if (total_g <= 0.0) {
        throw ValidationError("budget total_g must be positive");
    }
    if (workload.users.empty()) {
        throw ValidationError("cannot allocate a budget over an empty workload trace");
    }
    BudgetSchedule schedule;
    schedule.total_g = total_g;
    schedule.hourly_g.reserve(workload.users.size());
    if (mode == AllocationMode::uniform) {
        const double share = total_g / static_cast<double>(workload.users.size());
        schedule.hourly_g.assign(workload.users.size(), share);
        return schedule;
    }
    const double total_users =
        std::accumulate(workload.users.begin(), workload.users.end(), 0.0);
    if (total_users <= 0.0) {
        throw ValidationError("proportional allocation requires a workload with at least one "
                              "non-zero hour");
    }
    for (double users : workload.users) {
        schedule.hourly_g.push_back(total_g * (users / total_users));
    }
    return schedule;
}

namespace detail {

// 53-bit uniform in [0,1); fully specified by the mt19937_64 contract, so the
// same seed reproduces the same stream on every platform.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline void check_synth_args(int hours, double base, double amplitude) {
    if (hours < 1) {
        throw ValidationError("synthetic trace needs hours >= 1");
    }
    if (amplitude < 0.0) {
        throw ValidationError("synthetic trace amplitude must be non-negative");
    }
    if (amplitude >= base) {
        throw ValidationError("synthetic trace requires base > amplitude");
    }
}

// Diurnal sinusoid (24 h period) around base. When amplitude > 0, seeded
// uniform noise of +-5% of base is added; amplitude 0 yields an exactly
// constant series.
inline std::vector<double> synth_series(int hours, double base, double amplitude,
                                        std::uint64_t seed, double floor) {
    check_synth_args(hours, base, amplitude);
    std::mt19937_64 rng(seed);
    std::vector<double> series;
    series.reserve(static_cast<std::size_t>(hours));
    constexpr double two_pi = 6.283185307179586476925286766559;
    for (int h = 0; h < hours; ++h) {
        double value = base + amplitude * std::sin(two_pi * static_cast<double>(h % 24) / 24.0);
        if (amplitude > 0.0) {
            value += (2.0 * uniform01(rng) - 1.0) * 0.05 * base;
        }
        series.push_back(std::max(value, floor));
    }
    return series;
}

}  // namespace detail

inline CarbonTrace gen_synthetic_carbon(int hours, double base, double amplitude,
                                        std::uint64_t seed) {
    // ci must stay strictly positive
    return CarbonTrace{detail::synth_series(hours, base, amplitude, seed, 1e-6 * base)};
}

inline WorkloadTrace gen_synthetic_workload(int hours, double base, double amplitude,
                                            std::uint64_t seed) {
    return WorkloadTrace{detail::synth_series(hours, base, amplitude, seed, 0.0)};
}

namespace detail {

inline double parse_csv_number(const std::string& field, const std::string& path,
                               std::size_t line_no) {
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(field, &consumed);
    } catch (const std::exception&) {
        throw ParseError(path + ":" + std::to_string(line_no) + ": \"" + field +
                         "\" is not a number");
    }
    if (consumed != field.size()) {
        throw ParseError(path + ":" + std::to_string(line_no) + ": trailing characters after \"" +
                         field + "\"");
    }
    return value;
}

// Two-column hourly CSV: "hour,<value_header>" with hours contiguous from 0.
inline std::vector<double> load_hourly_csv(const std::string& path, const char* value_header) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open trace file \"" + path + "\"");
    }
    std::string line;
    std::size_t line_no = 1;
    if (!std::getline(in, line)) {
        throw ParseError(path + ": empty file");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    const std::string expected_header = std::string("hour,") + value_header;
    if (line != expected_header) {
        throw ParseError(path + ":1: expected header \"" + expected_header + "\", got \"" + line +
                         "\"");
    }
    std::vector<double> values;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": expected exactly two comma-separated columns");
        }
        const double hour = parse_csv_number(line.substr(0, comma), path, line_no);
        const double expected_hour = static_cast<double>(values.size());
        if (hour != expected_hour) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected hour " +
                             std::to_string(static_cast<long long>(expected_hour)) + ", got \"" +
                             line.substr(0, comma) + "\" (hours must be contiguous from 0)");
        }
        values.push_back(parse_csv_number(line.substr(comma + 1), path, line_no));
    }
    if (values.empty()) {
        throw ParseError(path + ": no data rows");
    }
    return values;
}

inline std::string format_hourly_csv(const std::vector<double>& values,
                                     const char* value_header) {
    std::string out = std::string("hour,") + value_header + "\n";
    char buf[64];
    for (std::size_t h = 0; h < values.size(); ++h) {
        std::snprintf(buf, sizeof(buf), "%zu,%.6f\n", h, values[h]);
        out += buf;
    }
    return out;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ParseError("cannot write file \"" + path + "\"");
    }
    out << content;
    if (!out) {
        throw ParseError("failed while writing \"" + path + "\"");
    }
}

}  // namespace detail

inline CarbonTrace load_carbon_trace(const std::string& path) {
    CarbonTrace trace{detail::load_hourly_csv(path, "ci_g_per_kwh")};
    for (std::size_t h = 0; h < trace.ci.size(); ++h) {
        if (!(trace.ci[h] > 0.0)) {
            throw ValidationError(path + ": carbon intensity at hour " + std::to_string(h) +
                                  " must be positive");
        }
    }
    return trace;
}

inline WorkloadTrace load_workload_trace(const std::string& path) {
    WorkloadTrace trace{detail::load_hourly_csv(path, "users")};
    for (std::size_t h = 0; h < trace.users.size(); ++h) {
        if (trace.users[h] < 0.0) {
            throw ValidationError(path + ": users at hour " + std::to_string(h) +
                                  " must be non-negative");
        }
    }
    return trace;
}

// Values are written with 6 fractional digits, the round-trip precision this
// library guarantees for traces.
inline void write_carbon_trace(const std::string& path, const CarbonTrace& trace) {
    detail::write_file(path, detail::format_hourly_csv(trace.ci, "ci_g_per_kwh"));
}

inline void write_workload_trace(const std::string& path, const WorkloadTrace& trace) {
    detail::write_file(path, detail::format_hourly_csv(trace.users, "users"));
}

}  // namespace cads
