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
#include <array>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cads/engine.hpp"
#include "cads/model.hpp"

namespace cads {

/// A strategy's answer for one hour. violated is set when the returned plan
/// exceeds the hourly budget, either because the strategy ignores the budget
/// or because no configuration fits it (degraded mode).
struct StrategyOutcome {
    DeploymentPlan plan;
    bool violated = false;

    friend bool operator==(const StrategyOutcome&, const StrategyOutcome&) = default;
};

namespace detail {

// Total order for the constrained argmax: higher objective, then lower
// emissions, then lexicographically smaller configuration.
inline bool better_feasible(const DeploymentPlan& a, const DeploymentPlan& b) {
    if (a.objective != b.objective) return a.objective > b.objective;
    if (a.emissions_g != b.emissions_g) return a.emissions_g < b.emissions_g;
    return a.config < b.config;
}

// Total order for degraded mode: lower emissions, then lexicographically
// smaller configuration.
inline bool better_min_emission(const DeploymentPlan& a, const DeploymentPlan& b) {
    if (a.emissions_g != b.emissions_g) return a.emissions_g < b.emissions_g;
    return a.config < b.config;
}

}  // namespace detail

/// Exhaustive optimal selection: among all configurations whose emissions fit
/// the hourly budget, the one maximizing the objective (ties: lower emissions,
/// then lexicographically smaller configuration). With an empty feasible set,
/// falls back to the minimum-emission configuration and flags the violation.
inline StrategyOutcome optimal_select(const ApplicationModel& app, double users0, double ci,
                                      double budget_g) {
    std::optional<DeploymentPlan> best_feasible;
    std::optional<DeploymentPlan> least_emitting;
    for_each_configuration(app, [&](const Configuration& config) {
        DeploymentPlan plan = evaluate_config(app, config, users0, ci, budget_g);
        if (!least_emitting || detail::better_min_emission(plan, *least_emitting)) {
            least_emitting = plan;
        }
        if (plan.feasible &&
            (!best_feasible || detail::better_feasible(plan, *best_feasible))) {
            best_feasible = std::move(plan);
        }
    });
    if (best_feasible) {
        return StrategyOutcome{std::move(*best_feasible), false};
    }
    return StrategyOutcome{std::move(*least_emitting), true};
}

namespace detail {

// Per-application bound tables for the branch-and-bound search. suffix[i]
// aggregates microservices i..n-1; suffix[n] = 0.
struct BnbTables {
    std::vector<double> suffix_max_qoe;
    std::vector<double> suffix_max_rev;
    std::vector<double> suffix_min_ed;  // off versions contribute 0, powered ones >= 1 replica
    double rev_norm = 0.0;
};

inline BnbTables make_bnb_tables(const ApplicationModel& app) {
    const std::size_t n = app.size();
    BnbTables t;
    t.suffix_max_qoe.assign(n + 1, 0.0);
    t.suffix_max_rev.assign(n + 1, 0.0);
    t.suffix_min_ed.assign(n + 1, 0.0);
    t.rev_norm = rev_max(app);
    for (std::size_t i = n; i-- > 0;) {
        double max_qoe = 0.0, max_rev = 0.0;
        double min_ed = app.microservices[i].versions.front().is_off()
                            ? 0.0
                            : app.microservices[i].versions.front().ed_watts;
        for (const VersionSpec& ver : app.microservices[i].versions) {
            max_qoe = std::max(max_qoe, ver.qoe);
            max_rev = std::max(max_rev, ver.rev);
            min_ed = std::min(min_ed, ver.is_off() ? 0.0 : ver.ed_watts);
        }
        t.suffix_max_qoe[i] = t.suffix_max_qoe[i + 1] + max_qoe;
        t.suffix_max_rev[i] = t.suffix_max_rev[i + 1] + max_rev;
        t.suffix_min_ed[i] = t.suffix_min_ed[i + 1] + min_ed;
    }
    return t;
}

// Pruning compares a computed bound against the incumbent. The slack absorbs
// the floating-point spread between the bound arithmetic and the leaf
// evaluation, so a pruned subtree can never hide the true optimum; candidates
// inside the slack are explored and decided by exact leaf values.
inline double emission_slack(double a, double b) { return 1e-9 * (1.0 + std::abs(a) + std::abs(b)); }
constexpr double kObjectiveSlack = 1e-9;

struct BnbSearch {
    const ApplicationModel& app;
    const BnbTables& tables;
    double users0, ci, budget_g;
    Configuration config;
    std::optional<DeploymentPlan> incumbent;

    BnbSearch(const ApplicationModel& a, const BnbTables& t, double u, double c, double b)
        : app(a), tables(t), users0(u), ci(c), budget_g(b) {
        config.chosen.assign(app.size(), 0);
    }

    // Depth-first in lexicographic order, so the first leaf reaching an
    // (objective, emissions) value is the lexicographically smallest with it.
    void maximize(std::size_t depth, double users, double energy_wh, double qoe_sum,
                  double rev_sum) {
        const double em_lb = (energy_wh + tables.suffix_min_ed[depth]) * ci / 1000.0;
        if (em_lb > budget_g + emission_slack(em_lb, budget_g)) {
            return;  // no completion fits the budget
        }
        if (depth == app.size()) {
            DeploymentPlan plan = evaluate_config(app, config, users0, ci, budget_g);
            if (plan.feasible && (!incumbent || better_feasible(plan, *incumbent))) {
                incumbent = std::move(plan);
            }
            return;
        }
        if (incumbent) {
            const double qoe_ub =
                (qoe_sum + tables.suffix_max_qoe[depth]) / static_cast<double>(app.size());
            const double rev_ub = tables.rev_norm > 0.0
                                      ? (rev_sum + tables.suffix_max_rev[depth]) / tables.rev_norm
                                      : 0.0;
            const double obj_ub = app.alpha * qoe_ub + app.beta * rev_ub;
            if (obj_ub < incumbent->objective - kObjectiveSlack) {
                return;  // cannot beat the incumbent
            }
        }
        const Microservice& ms = app.microservices[depth];
        for (std::size_t v = 0; v < ms.versions.size(); ++v) {
            const VersionSpec& ver = ms.versions[v];
            config.chosen[depth] = static_cast<int>(v);
            const double replicas = static_cast<double>(replicas_for(ver, users));
            maximize(depth + 1, users * ver.q, energy_wh + replicas * ver.ed_watts,
                     qoe_sum + ver.qoe, rev_sum + ver.rev);
        }
        config.chosen[depth] = 0;
    }

    void minimize_emissions(std::size_t depth, double users, double energy_wh) {
        const double em_lb = (energy_wh + tables.suffix_min_ed[depth]) * ci / 1000.0;
        if (incumbent && em_lb > incumbent->emissions_g + emission_slack(em_lb, incumbent->emissions_g)) {
            return;
        }
        if (depth == app.size()) {
            DeploymentPlan plan = evaluate_config(app, config, users0, ci, budget_g);
            if (!incumbent || better_min_emission(plan, *incumbent)) {
                incumbent = std::move(plan);
            }
            return;
        }
        const Microservice& ms = app.microservices[depth];
        for (std::size_t v = 0; v < ms.versions.size(); ++v) {
            const VersionSpec& ver = ms.versions[v];
            config.chosen[depth] = static_cast<int>(v);
            const double replicas = static_cast<double>(replicas_for(ver, users));
            minimize_emissions(depth + 1, users * ver.q, energy_wh + replicas * ver.ed_watts);
        }
        config.chosen[depth] = 0;
    }
};

}  // namespace detail

/// The minimum-emission deployment for the hour, with the same tie-breaking
/// as the degraded mode of optimal_select. budget_g only sets the plan's
/// feasible flag.
inline DeploymentPlan min_emission_plan(const ApplicationModel& app, double users0, double ci,
                                        double budget_g) {
    const detail::BnbTables tables = detail::make_bnb_tables(app);
    detail::BnbSearch search(app, tables, users0, ci, budget_g);
    search.minimize_emissions(0, users0, 0.0);
    return std::move(*search.incumbent);
}

/// Branch-and-bound optimal selection. Outcome-equivalent to optimal_select
/// on every input, including tie-breaking; prunes subtrees whose optimistic
/// objective cannot beat the incumbent and subtrees whose emissions cannot
/// fit the budget.
inline StrategyOutcome branch_and_bound_select(const ApplicationModel& app, double users0,
                                               double ci, double budget_g) {
    const detail::BnbTables tables = detail::make_bnb_tables(app);
    detail::BnbSearch search(app, tables, users0, ci, budget_g);
    search.maximize(0, users0, 0.0, 0.0, 0.0);
    if (search.incumbent) {
        return StrategyOutcome{std::move(*search.incumbent), false};
    }
    detail::BnbSearch fallback(app, tables, users0, ci, budget_g);
    fallback.minimize_emissions(0, users0, 0.0);
    return StrategyOutcome{std::move(*fallback.incumbent), true};
}

/// High-performance baseline: per microservice the maximum-ed_watts version
/// (ties: last in version order), optionals effectively on. Never consults
/// the budget.
inline StrategyOutcome hp_select(const ApplicationModel& app, double users0, double ci,
                                 double budget_g) {
    Configuration config;
    config.chosen.reserve(app.size());
    for (const Microservice& ms : app.microservices) {
        std::size_t pick = 0;
        for (std::size_t v = 1; v < ms.versions.size(); ++v) {
            if (ms.versions[v].ed_watts >= ms.versions[pick].ed_watts) {
                pick = v;
            }
        }
        config.chosen.push_back(static_cast<int>(pick));
    }
    DeploymentPlan plan = evaluate_config(app, config, users0, ci, budget_g);
    const bool violated = !plan.feasible;
    return StrategyOutcome{std::move(plan), violated};
}

/// The three fixed configurations of the sequential carbon-aware baseline,
/// ordered per microservice by ed_watts: ed(low) <= ed(mid) <= ed(high).
struct SequentialConfigs {
    Configuration low;
    Configuration mid;
    Configuration high;
};

namespace detail {

// Version indices sorted by ed_watts ascending, stable in version order.
inline std::vector<std::size_t> ed_order(const Microservice& ms) {
    std::vector<std::size_t> order(ms.versions.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return ms.versions[a].ed_watts < ms.versions[b].ed_watts;
    });
    return order;
}

}  // namespace detail

/// Derives the SCA triple from the model: per microservice, the versions
/// sorted by ed_watts give low = rank 0, high = rank k-1, mid = rank
/// ceil((k-1)/2).
inline SequentialConfigs sca_configs(const ApplicationModel& app) {
    SequentialConfigs configs;
    for (const Microservice& ms : app.microservices) {
        const std::vector<std::size_t> order = detail::ed_order(ms);
        const std::size_t k = order.size();
        configs.low.chosen.push_back(static_cast<int>(order.front()));
        configs.mid.chosen.push_back(static_cast<int>(order[k / 2]));
        configs.high.chosen.push_back(static_cast<int>(order.back()));
    }
    return configs;
}

/// Sequential carbon-aware baseline: tries high, then mid, then low, and
/// deploys the first that fits the budget; with none feasible, deploys low
/// and flags the violation.
inline StrategyOutcome sca_select(const ApplicationModel& app, double users0, double ci,
                                  double budget_g) {
    const SequentialConfigs configs = sca_configs(app);
    for (const Configuration* candidate : {&configs.high, &configs.mid, &configs.low}) {
        DeploymentPlan plan = evaluate_config(app, *candidate, users0, ci, budget_g);
        if (plan.feasible) {
            return StrategyOutcome{std::move(plan), false};
        }
    }
    DeploymentPlan plan = evaluate_config(app, configs.low, users0, ci, budget_g);
    return StrategyOutcome{std::move(plan), true};
}

using CaCandidates = std::array<Configuration, 3>;

/// Default candidate triple for the simple carbon-aware baseline: mandatory
/// microservices at their mid / lowest / highest ed_watts version, optionals
/// off / at their lowest powered version / off.
inline CaCandidates default_ca_candidates(const ApplicationModel& app) {
    CaCandidates candidates;
    for (const Microservice& ms : app.microservices) {
        const std::vector<std::size_t> order = detail::ed_order(ms);
        const std::size_t k = order.size();
        if (ms.optional) {
            std::size_t off = 0;
            for (std::size_t v = 0; v < ms.versions.size(); ++v) {
                if (ms.versions[v].is_off()) {
                    off = v;
                }
            }
            std::size_t lowest_on = off;
            for (std::size_t rank : order) {
                if (!ms.versions[rank].is_off()) {
                    lowest_on = rank;
                    break;
                }
            }
            candidates[0].chosen.push_back(static_cast<int>(off));
            candidates[1].chosen.push_back(static_cast<int>(lowest_on));
            candidates[2].chosen.push_back(static_cast<int>(off));
        } else {
            candidates[0].chosen.push_back(static_cast<int>(order[k / 2]));
            candidates[1].chosen.push_back(static_cast<int>(order.front()));
            candidates[2].chosen.push_back(static_cast<int>(order.back()));
        }
    }
    return candidates;
}

/// Simple carbon-aware baseline over three arbitrary candidates: among the
/// feasible ones, the maximum objective (ties: lower emissions, then earlier
/// candidate); with none feasible, the minimum-emission candidate, flagged.
inline StrategyOutcome ca_select(const ApplicationModel& app, double users0, double ci,
                                 double budget_g, const CaCandidates& candidates) {
    for (const Configuration& candidate : candidates) {
        validate_configuration(app, candidate);
    }
    std::optional<DeploymentPlan> best_feasible;
    std::optional<DeploymentPlan> least_emitting;
    for (const Configuration& candidate : candidates) {
        DeploymentPlan plan = evaluate_config(app, candidate, users0, ci, budget_g);
        if (!least_emitting || plan.emissions_g < least_emitting->emissions_g) {
            least_emitting = plan;
        }
        if (plan.feasible) {
            const bool better =
                !best_feasible || plan.objective > best_feasible->objective ||
                (plan.objective == best_feasible->objective &&
                 plan.emissions_g < best_feasible->emissions_g);
            if (better) {
                best_feasible = std::move(plan);
            }
        }
    }
    if (best_feasible) {
        return StrategyOutcome{std::move(*best_feasible), false};
    }
    return StrategyOutcome{std::move(*least_emitting), true};
}

/// A named per-hour selection policy.
struct Strategy {
    std::string id;
    std::function<StrategyOutcome(const ApplicationModel&, double, double, double)> select;
};

inline const std::vector<std::string>& strategy_names() {
    static const std::vector<std::string> names{"os", "bnb", "hp", "sca", "ca"};
    return names;
}

/// Builds the strategy list from ids in {os, bnb, hp, sca, ca}. The ca
/// baseline uses the given candidates, or the default triple when absent.
inline std::vector<Strategy> make_strategies(const std::vector<std::string>& ids,
                                             const ApplicationModel& app,
                                             const std::optional<CaCandidates>& ca_candidates =
                                                 std::nullopt) {
    if (ids.empty()) {
        throw ValidationError("strategy list must not be empty");
    }
    std::vector<Strategy> strategies;
    for (const std::string& id : ids) {
        for (const Strategy& existing : strategies) {
            if (existing.id == id) {
                throw ValidationError("strategy \"" + id + "\" listed more than once");
            }
        }
        if (id == "os") {
            strategies.push_back({id, optimal_select});
        } else if (id == "bnb") {
            strategies.push_back({id, branch_and_bound_select});
        } else if (id == "hp") {
            strategies.push_back({id, hp_select});
        } else if (id == "sca") {
            strategies.push_back({id, sca_select});
        } else if (id == "ca") {
            CaCandidates candidates = ca_candidates ? *ca_candidates : default_ca_candidates(app);
            for (const Configuration& candidate : candidates) {
                validate_configuration(app, candidate);
            }
            strategies.push_back(
                {id, [candidates](const ApplicationModel& a, double users0, double ci,
                                  double budget_g) {
                     return ca_select(a, users0, ci, budget_g, candidates);
                 }});
        } else {
            throw ValidationError("unknown strategy \"" + id +
                                  "\" (expected one of os, bnb, hp, sca, ca)");
        }
    }
    return strategies;
}

}  // namespace cads
