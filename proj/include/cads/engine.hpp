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
#include <vector>

#include "cads/model.hpp"

namespace cads {

/// One hour's deployment: the chosen versions, how many replicas of each, and
/// the evaluated energy, emissions and objective terms. feasible means the
/// hour's emissions fit the hourly budget.
struct DeploymentPlan {
    Configuration config;
    std::vector<int> replicas;     ///< 0 exactly on off versions
    std::vector<double> users_in;  ///< inbound users per chain stage, fractional
    double energy_wh = 0.0;
    double emissions_g = 0.0;
    double qoe_term = 0.0;  ///< mean version QoE over the chain, in [0,1]
    double rev_term = 0.0;  ///< summed version revenue over rev_max, in [0,1]
    double objective = 0.0; ///< alpha * qoe_term + beta * rev_term
    bool feasible = false;

    friend bool operator==(const DeploymentPlan&, const DeploymentPlan&) = default;
};

/// Users flowing into each chain stage: stage 0 sees users0, stage i+1 sees
/// stage i's inflow scaled by the chosen version's pass-through q. Values are
/// expected-value fractional and never rounded between stages.
inline std::vector<double> propagate_users(const ApplicationModel& app,
                                           const Configuration& config, double users0) {
    std::vector<double> users_in;
    users_in.reserve(app.size());
    double users = users0;
    for (std::size_t i = 0; i < app.size(); ++i) {
        users_in.push_back(users);
        users *= app.microservices[i].versions[static_cast<std::size_t>(config.chosen[i])].q;
    }
    return users_in;
}

/// Replica count serving the given inflow: off versions run zero instances;
/// powered versions run ceil(users_in / uc) but never fewer than one, since
/// the service must stay reachable even with no users.
inline int replicas_for(const VersionSpec& version, double users_in) {
    if (version.is_off()) {
        return 0;
    }
    const double per_instance = static_cast<double>(*version.uc);
    const int needed = static_cast<int>(std::ceil(users_in / per_instance));
    return needed > 1 ? needed : 1;
}

/// The revenue normalizer: the largest total revenue any configuration can
/// attain, regardless of feasibility or workload. Constant per application so
/// objectives stay comparable across hours.
inline double rev_max(const ApplicationModel& app) {
    double total = 0.0;
    for (const Microservice& ms : app.microservices) {
        double best = 0.0;
        for (const VersionSpec& ver : ms.versions) {
            if (ver.rev > best) {
                best = ver.rev;
            }
        }
        total += best;
    }
    return total;
}

/// Evaluates one configuration for one hour. Pure and total: identical inputs
/// give bit-identical plans, and emissions_g is linear in ci.
inline DeploymentPlan evaluate_config(const ApplicationModel& app, const Configuration& config,
                                      double users0, double ci, double budget_g) {
    DeploymentPlan plan;
    plan.config = config;
    plan.users_in = propagate_users(app, config, users0);
    plan.replicas.reserve(app.size());
    double qoe_sum = 0.0;
    double rev_sum = 0.0;
    for (std::size_t i = 0; i < app.size(); ++i) {
        const VersionSpec& ver =
            app.microservices[i].versions[static_cast<std::size_t>(config.chosen[i])];
        const int replicas = replicas_for(ver, plan.users_in[i]);
        plan.replicas.push_back(replicas);
        plan.energy_wh += static_cast<double>(replicas) * ver.ed_watts;
        qoe_sum += ver.qoe;
        rev_sum += ver.rev;
    }
    plan.emissions_g = plan.energy_wh * ci / 1000.0;
    plan.qoe_term = qoe_sum / static_cast<double>(app.size());
    const double normalizer = rev_max(app);
    plan.rev_term = normalizer > 0.0 ? rev_sum / normalizer : 0.0;
    plan.objective = app.alpha * plan.qoe_term + app.beta * plan.rev_term;
    plan.feasible = plan.emissions_g <= budget_g;
    return plan;
}

/// Raw summed revenue of the chosen versions (unnormalized).
inline double config_rev_sum(const ApplicationModel& app, const Configuration& config) {
    double rev_sum = 0.0;
    for (std::size_t i = 0; i < app.size(); ++i) {
        rev_sum += app.microservices[i].versions[static_cast<std::size_t>(config.chosen[i])].rev;
    }
    return rev_sum;
}

/// Users exiting the last chain stage.
inline double completers(const ApplicationModel& app, const Configuration& config,
                         const std::vector<double>& users_in) {
    const std::size_t last = app.size() - 1;
    return users_in[last] *
           app.microservices[last].versions[static_cast<std::size_t>(config.chosen[last])].q;
}

}  // namespace cads
