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

#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cads/cads.hpp"

namespace {

int run(int argc, char** argv) {
    CLI::App app{"Carbon-budget-aware microservice deployment simulator"};
    app.require_subcommand(1);
    app.failure_message([](const CLI::App* a, const CLI::Error& e) {
        return "error: " + CLI::FailureMessage::simple(a, e);
    });

    cads::GenerateOptions gen;
    CLI::App* generate =
        app.add_subcommand("generate", "Write synthetic carbon and workload trace CSVs");
    generate->add_option("--out", gen.out_dir, "Output directory")->required();
    generate->add_option("--hours", gen.hours, "Trace length in hours")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    generate->add_option("--carbon-base", gen.carbon_base, "Carbon intensity baseline, gCO2e/kWh")
        ->capture_default_str();
    generate->add_option("--carbon-amplitude", gen.carbon_amplitude,
                         "Carbon intensity diurnal swing")
        ->capture_default_str();
    generate->add_option("--workload-base", gen.workload_base, "Workload baseline, users/hour")
        ->capture_default_str();
    generate->add_option("--workload-amplitude", gen.workload_amplitude,
                         "Workload diurnal swing")
        ->capture_default_str();
    generate->add_option("--seed", gen.seed, "Noise seed (workload stream uses seed + 1)")
        ->capture_default_str();
    generate->callback([&gen] { cads::cmd_generate(gen, std::cout); });

    cads::SimulateOptions sim;
    CLI::App* simulate =
        app.add_subcommand("simulate", "Run strategies over traces and write CSV reports");
    simulate->add_option("--scenario", sim.scenario_path,
                         "Scenario JSON bundling all inputs (replaces the flags below)");
    simulate->add_option("--app", sim.app_path, "Application JSON document");
    simulate->add_option("--carbon", sim.carbon_path, "Carbon intensity trace CSV");
    simulate->add_option("--workload", sim.workload_path, "Workload trace CSV");
    simulate->add_option("--budget", sim.budget_g, "Total carbon budget, gCO2e");
    simulate->add_option("--alloc", sim.alloc, "Budget allocation: proportional or uniform");
    simulate->add_option("--strategies", sim.strategies,
                         "Comma-separated strategy ids from os,bnb,hp,sca,ca")
        ->delimiter(',');
    simulate->add_option("--alpha", sim.alpha, "QoE weight override");
    simulate->add_option("--beta", sim.beta, "Revenue weight override");
    simulate->add_option("--seed", sim.seed, "Override every generator seed in the scenario");
    simulate->add_flag("--carryover", sim.carryover, "Roll unused hourly budget forward");
    simulate->add_option("--out", sim.out_dir, "Output directory for hourly.csv and summary.csv")
        ->required();
    simulate->callback([&sim] { cads::cmd_simulate(sim, std::cout); });

    cads::CompareOptions cmp;
    CLI::App* compare =
        app.add_subcommand("compare", "Pairwise strategy comparison from a per-hour report");
    compare->add_option("--hourly", cmp.hourly_path, "hourly.csv produced by simulate")
        ->required();
    compare->add_option("--out", cmp.out_path,
                        "Comparison CSV path (prints to stdout when omitted)");
    compare->callback([&cmp] { cads::cmd_compare(cmp, std::cout); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const cads::Error& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 1;
    }
}
