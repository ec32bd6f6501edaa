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

#ifndef beamsim_experiments_H
#define beamsim_experiments_H

#include <string>
#include <vector>

#include "beamsim/bdma_sched.hpp"
#include "beamsim/scenario.hpp"

namespace beamsim
{

// One named metric table. Cells are preformatted so emitted CSVs are
// byte-identical across re-runs with the same config and seed.
struct MetricTable
{
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct ExperimentResult
{
    std::vector<MetricTable> tables;
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
    bool all_pass = true;

    const MetricTable *find(const std::string &name) const;
};

// Deterministic "%.10g" float formatting for table cells.
std::string fmt_cell(double v);

// CSV text: a comment line with config hash and seed, a header row, rows.
std::string table_to_csv(const MetricTable &table, std::uint64_t config_hash, std::uint64_t seed);

// Channel-statistics checks: beam decorrelation, variance match
// against Omega, the envelope-constancy trend over an (M, K) ladder, the
// per-beam/joint spread ratios, and the one-ring delay laws. Emits one
// pass/fail row per check; all_pass reflects every row.
ExperimentResult run_prop_suite(const ScenarioConfig &config);

// Per-UT clustered drops, greedy DL scheduling per SNR point, greedy rate and
// interference-free benchmark: rows (snr_db, greedy_rate, ifree_rate, ratio).
ExperimentResult run_sumrate_sweep(const ScenarioConfig &config);

// run_link over the SNR grid for both sync modes with paired frame seeds:
// rows (snr_db, sync_mode, evm_rms, ber, mean_sinr_db).
ExperimentResult run_linksim_sweep(const ScenarioConfig &config);

// Spread table for the configured K list on a clustered drop plus the
// one-ring analytic reference: rows (K, mode, bound_mode, delay_spread_ns,
// doppler_spread_hz).
ExperimentResult run_spread_table(const ScenarioConfig &config);

// Greedy assignment at the first grid SNR evaluated across the grid:
// rows (snr_db, sum_rate, interference_free_rate). The assignment itself is
// returned through *assignment when non-null.
ExperimentResult run_schedule(const ScenarioConfig &config, BeamAssignment *assignment);

} // namespace beamsim

#endif
