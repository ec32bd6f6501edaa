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

#ifndef beamsim_scenario_H
#define beamsim_scenario_H

#include <cstdint>
#include <string>
#include <vector>

#include "beamsim/pbs_sync.hpp"

namespace beamsim
{

// Full experiment description. The file format is a flat key = value list
// ('#' starts a comment); unknown keys are errors. Values mirror the field
// names below.
struct ScenarioConfig
{
    double carrier_freq_hz = 30e9;
    arma::uword num_bs_antennas = 32;  // M
    arma::uword num_ut_antennas = 8;   // K
    arma::uword num_uts = 4;           // U
    arma::uword num_subcarriers = 256; // N_us
    arma::uword cp_samples = 32;       // N_cp
    double sample_interval_s = 6.51e-9;
    arma::uword num_clusters = 4;
    arma::uword subpaths_per_cluster = 20;
    double delay_spread_s = 40e-9;
    double angle_spread_rad = 0.034906585039886591; // 2 degrees
    double aod_sector_rad = 2.0943951023931953;     // 120 degree sector
    double cluster_decay_db = 3.0;
    double velocity_mps = 10.0;
    std::vector<double> snr_grid_db = {0.0, 5.0, 10.0, 15.0, 20.0};
    arma::uword eval_trials = 200;    // in-loop scheduler evaluations
    arma::uword report_trials = 2000; // final rate reports
    arma::uword decorr_trials = 10000;
    arma::uword link_frames = 9;
    arma::uword max_bs_beams_per_ut = 16;
    arma::uword max_ut_beams_per_ut = 16;
    arma::uword max_total_bs_beams = 32;
    std::vector<arma::uword> spread_k_list = {2, 8, 32, 128};
    double one_ring_radius_m = 50.0;
    std::string bound_mode = "empirical"; // link-sim sync midpoints
    std::uint64_t master_seed = 1;

    ArrayConfig array() const { return ArrayConfig{num_bs_antennas, num_ut_antennas}; }
    OfdmConfig ofdm() const { return OfdmConfig{num_subcarriers, cp_samples, sample_interval_s}; }
    BoundMode link_bound_mode() const;

    // Bundled large-array presets: "30ghz" (M=128, K=32) or "300ghz" (M=256, K=128),
    // 100 MHz bandwidth, T_s = 6.51 ns, 75 kHz spacing, N_us = 2048,
    // N_cp = 144, delay spread 1388.4 ns, 4 clusters of 20 subpaths, U = 20.
    static ScenarioConfig preset(const std::string &name);

    // Parse a config file / apply one "key=value" override. Unknown keys and
    // malformed values raise std::invalid_argument.
    static ScenarioConfig from_file(const std::string &path);
    void apply_override(const std::string &key, const std::string &value);

    // Canonical text form (sorted keys) and its FNV-1a hash; both are part of
    // every emitted CSV so results stay attributable to their inputs.
    std::string canonical_string() const;
    std::uint64_t hash64() const;
};

// WINNER-II style clustered rays for one UT: per-cluster exponential delays
// rescaled so the power-weighted RMS delay spread matches the configured
// target, cluster mean AoD uniform in the sector, mean AoA uniform in
// [-pi/2, pi/2], Laplacian per-subpath angle offsets (clipped), equal subpath
// powers within a cluster, per-cluster exponentially decaying powers
// normalized to unit total, independent uniform DL/UL phases.
RaySet generate_cluster_rays(const ScenarioConfig &config, arma::uword ut_index,
                             std::uint64_t rng_seed);

// UT mobility profile consistent with the config (rays not embedded).
UtProfile scenario_profile(const ScenarioConfig &config);

} // namespace beamsim

#endif
