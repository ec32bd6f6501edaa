// SPDX-License-Identifier: Apache-2.0
//
// beamsim C++ library for beam domain massive MIMO channel modelling,
// per-beam synchronization and beam scheduling simulation
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "beamsim/experiments.hpp"
#include "beamsim/serialize.hpp"

using namespace beamsim;

namespace
{

struct CommonOpts
{
    std::string config_path;
    std::string out_dir = ".";
    std::string preset;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::vector<std::string> overrides;
};

void add_common(CLI::App *cmd, CommonOpts &opts)
{
    cmd->add_option("--config", opts.config_path, "scenario config file (key = value lines)");
    cmd->add_option("--preset", opts.preset, "config preset: 30ghz or 300ghz");
    cmd->add_option("--out", opts.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--seed", opts.seed, "master seed override")->each([&opts](const std::string &)
                                                                       { opts.seed_set = true; });
    cmd->add_option("--set", opts.overrides, "extra key=value overrides (repeatable)");
}

ScenarioConfig load_config(const CommonOpts &opts)
{
    ScenarioConfig c;
    if (!opts.preset.empty())
        c = ScenarioConfig::preset(opts.preset);
    if (!opts.config_path.empty())
        c = ScenarioConfig::from_file(opts.config_path);
    for (const std::string &kv : opts.overrides)
    {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
        c.apply_override(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (opts.seed_set)
        c.master_seed = opts.seed;
    return c;
}

void write_file(const std::string &dir, const std::string &name, const std::string &content)
{
    std::filesystem::create_directories(dir);
    std::ofstream out(dir + "/" + name, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + dir + "/" + name);
    out << content;
}

void write_tables(const ExperimentResult &res, const std::string &dir)
{
    for (const auto &t : res.tables)
        write_file(dir, t.name + ".csv", table_to_csv(t, res.config_hash, res.seed));
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"beam domain massive MIMO simulator"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto *verify = app.add_subcommand("verify-props", "run the channel-statistics property suite");
    auto *spreads_cmd = app.add_subcommand("spreads", "emit per-beam vs joint spread table");
    auto *schedule_cmd = app.add_subcommand("schedule", "greedy beam scheduling, assignment + rates");
    auto *sumrate_cmd = app.add_subcommand("sumrate", "greedy sum rate vs interference-free sweep");
    auto *linksim_cmd = app.add_subcommand("linksim", "OFDM link simulation, PBS vs joint sync");
    for (auto *cmd : {verify, spreads_cmd, schedule_cmd, sumrate_cmd, linksim_cmd})
        add_common(cmd, opts);

    CLI11_PARSE(app, argc, argv);

    try
    {
        ScenarioConfig config = load_config(opts);

        if (verify->parsed())
        {
            ExperimentResult res = run_prop_suite(config);
            write_tables(res, opts.out_dir);
            for (const auto &row : res.tables[0].rows)
                std::cout << (row[3] == "1" ? "PASS " : "FAIL ") << row[0]
                          << " value=" << row[1] << " threshold=" << row[2] << "\n";
            std::cout << (res.all_pass ? "all checks passed\n" : "some checks FAILED\n");
            return res.all_pass ? 0 : 1;
        }
        if (spreads_cmd->parsed())
        {
            ExperimentResult res = run_spread_table(config);
            write_tables(res, opts.out_dir);

            RaySet rays = generate_cluster_rays(config, 0, config.master_seed);
            UtProfile profile = scenario_profile(config);
            OffsetBounds b = offset_bounds(rays, profile, config.num_ut_antennas, config.link_bound_mode());
            nlohmann::json plans = {{"per_beam", sync_plan_to_json(make_sync_plan(b, SyncMode::per_beam))},
                                    {"joint", sync_plan_to_json(make_sync_plan(b, SyncMode::joint))}};
            write_file(opts.out_dir, "sync_plan.json", plans.dump(2) + "\n");
            std::cout << "wrote spreads.csv and sync_plan.json\n";
            return 0;
        }
        if (schedule_cmd->parsed())
        {
            BeamAssignment a;
            ExperimentResult res = run_schedule(config, &a);
            write_tables(res, opts.out_dir);
            write_file(opts.out_dir, "assignment.json", assignment_to_json(a).dump(2) + "\n");
            std::cout << "wrote schedule.csv and assignment.json\n";
            return res.all_pass ? 0 : 1;
        }
        if (sumrate_cmd->parsed())
        {
            ExperimentResult res = run_sumrate_sweep(config);
            write_tables(res, opts.out_dir);
            std::cout << "wrote sumrate.csv\n";
            return res.all_pass ? 0 : 1;
        }
        if (linksim_cmd->parsed())
        {
            ExperimentResult res = run_linksim_sweep(config);
            write_tables(res, opts.out_dir);
            std::cout << "wrote linksim.csv\n";
            return res.all_pass ? 0 : 1;
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
