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

#ifndef beamsim_pbs_sync_H
#define beamsim_pbs_sync_H

#include <armadillo>
#include <cstdint>
#include <vector>

#include "beamsim/array_channel.hpp"

namespace beamsim
{

enum class SyncMode
{
    joint,
    per_beam
};

enum class BoundMode
{
    analytic, // closed-form cell bounds for frequency offsets
    empirical // ray-support extrema per receive beam
};

// OFDM numerology. Useful symbol length T_us = N_us * T_s, CP length
// T_cp = N_cp * T_s, subcarrier spacing 1 / T_us.
struct OfdmConfig
{
    arma::uword num_subcarriers = 1; // N_us
    arma::uword cp_samples = 0;      // N_cp
    double sample_interval_s = 1.0;  // T_s

    double useful_duration_s() const { return (double)num_subcarriers * sample_interval_s; }
    double cp_duration_s() const { return (double)cp_samples * sample_interval_s; }
    double subcarrier_spacing_hz() const { return 1.0 / useful_duration_s(); }
    arma::uword samples_per_symbol() const { return num_subcarriers + cp_samples; }
};

// Per-receive-beam time and frequency offset extrema, plus all-beam aggregates.
// Beams without any ray are flagged unoccupied; their delay entries are zero
// and they are excluded from the spread maxima.
struct OffsetBounds
{
    BoundMode bound_mode = BoundMode::analytic;
    arma::vec tau_min_s, tau_max_s; // length K
    arma::vec nu_min_hz, nu_max_hz; // length K
    std::vector<bool> occupied;     // length K
    double tau_min_all_s = 0.0, tau_max_all_s = 0.0;
    double nu_min_all_hz = 0.0, nu_max_all_hz = 0.0;
    bool any_occupied = false;

    arma::uword num_beams() const { return tau_min_s.n_elem; }
};

// Synchronization adjustments. Per-beam mode holds length-K arrays with
// tau_syn[k] = tau_min[k] and nu_syn[k] = (nu_min[k] + nu_max[k]) / 2;
// joint mode holds one scalar pair computed from the all-beam aggregates.
struct SyncPlan
{
    SyncMode mode = SyncMode::joint;
    arma::vec tau_syn_s;
    arma::vec nu_syn_hz;

    double tau_for(arma::uword beam) const { return mode == SyncMode::joint ? tau_syn_s(0) : tau_syn_s(beam); }
    double nu_for(arma::uword beam) const { return mode == SyncMode::joint ? nu_syn_hz(0) : nu_syn_hz(beam); }
};

struct SpreadReport
{
    double delay_spread_s = 0.0;
    double doppler_spread_hz = 0.0;
    SyncMode mode = SyncMode::joint;
    BoundMode bound_mode = BoundMode::analytic;
};

// Offset extrema per receive beam. Frequency bounds follow the closed cell
// forms (2k/K - 1) nu_u and (2(k+1)/K - 1) nu_u in analytic mode, or the ray
// support in empirical mode. Delay bounds are ray-support extrema in both
// modes. Throws std::domain_error for K = 0.
OffsetBounds offset_bounds(const RaySet &rays, const UtProfile &profile,
                           arma::uword num_ut_beams, BoundMode mode);

// Closed-form bounds for a ring of scatterers of the given radius around the
// UT, where the path delay is (r/c) (1 + sin(aoa)). Per-beam delay bounds are
// the images of the cell edges under that law; frequency bounds are analytic.
OffsetBounds one_ring_offset_bounds(double radius_m, const UtProfile &profile,
                                    arma::uword num_ut_beams);

// Build the joint or per-beam adjustment from the bounds. Empty beams get
// zero adjustments.
SyncPlan make_sync_plan(const OffsetBounds &bounds, SyncMode mode);

// Effective delay and Doppler spreads after synchronization:
// joint   : delta_tau = tau_max - tau_min over all beams, delta_nu = (nu_max - nu_min) / 2
// per-beam: delta_tau = max_k (tau_max[k] - tau_min[k]), delta_nu = max_k (nu_max[k] - nu_min[k]) / 2
SpreadReport spreads(const OffsetBounds &bounds, SyncMode mode);

// Ring-of-scatterers ray set: AoA uniform over [-pi/2, pi/2], delay
// (r/c) (1 + sin(aoa)), AoD uniform within aod_spread around aod_center,
// equal powers summing to one, independent uniform DL/UL phases.
// Throws std::domain_error for a nonpositive radius.
RaySet one_ring_rays(double radius_m, arma::uword num_rays, double aod_center,
                     double aod_spread, std::uint64_t rng_seed);

// Frequency response of the effective DL beam domain channel with PBS at
// subcarrier n: entry (k, m) sums sqrt(p) e^{j zeta_dl}
// e^{j 2 pi tau_syn[k] (nu(aoa) - nu_syn[k])} e^{-j 2 pi (n/T_us)(delay - tau_syn[k])}
// over the rays in cell (k, m). Requires a per-beam plan.
BeamChannel effective_channel_dl(const RaySet &rays, const UtProfile &profile,
                                 const SyncPlan &plan, arma::uword subcarrier,
                                 const OfdmConfig &ofdm, const ArrayConfig &cfg);

// UL analogue with the UL phases and (m, k) orientation; the adjustment is
// indexed by the UT-side beam k (PBS applied at the transmitter).
BeamChannel effective_channel_ul(const RaySet &rays, const UtProfile &profile,
                                 const SyncPlan &plan, arma::uword subcarrier,
                                 const OfdmConfig &ofdm, const ArrayConfig &cfg);

namespace detail
{
// Effective per-subcarrier channel for any plan mode (joint or per-beam);
// used by the link simulator as the ideal per-subcarrier reference.
arma::cx_mat effective_subcarrier_channel(const RaySet &rays, const UtProfile &profile,
                                          const SyncPlan &plan, arma::uword subcarrier,
                                          const OfdmConfig &ofdm, const ArrayConfig &cfg,
                                          bool uplink);
} // namespace detail

} // namespace beamsim

#endif
