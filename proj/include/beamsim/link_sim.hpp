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

#ifndef beamsim_link_sim_H
#define beamsim_link_sim_H

#include <armadillo>
#include <cstdint>
#include <vector>

#include "beamsim/bdma_sched.hpp"
#include "beamsim/pbs_sync.hpp"

namespace beamsim
{

// One transmission frame in the beam domain: symbol 0 is the pilot OFDM
// symbol, the rest carry QPSK data. symbols is N_us x num_symbols x B where
// B = number of scheduled transmit beams; beam_ids names the BS beam behind
// each slice. Pilots occupy disjoint subcarrier combs across beams (beam
// slice b uses subcarriers b, b+B, b+2B, ...) with unit magnitude.
struct OfdmFrame
{
    arma::cx_cube symbols;
    std::vector<arma::uword> beam_ids;

    arma::uword num_symbols() const { return symbols.n_cols; }
    arma::uword num_beams() const { return symbols.n_slices; }
};

// Sample stream per beam, one column per beam. Each OFDM symbol occupies
// N_cp + N_us samples (cyclic prefix first). The block clock places t = 0 at
// the first sample of the first useful part, i.e. t_i = (i - N_cp) T_s.
struct Waveform
{
    arma::cx_mat samples;

    arma::uword length() const { return samples.n_rows; }
    arma::uword num_beams() const { return samples.n_cols; }
};

struct LinkMetrics
{
    double evm_rms = 0.0;
    arma::vec sinr_db;
    double ber = 0.0;
    SyncMode sync_mode = SyncMode::joint;
    arma::uword bits_total = 0;
    arma::uword bit_errors = 0;
};

// Frame with one unit-magnitude comb pilot symbol and num_data_symbols QPSK
// data symbols per scheduled beam, drawn from the rng.
OfdmFrame make_qpsk_frame(const std::vector<arma::uword> &tx_beam_ids, const OfdmConfig &ofdm,
                          arma::uword num_data_symbols, std::mt19937_64 &rng);

// Per symbol, samples at t = i T_s for t in [-T_cp, T_us):
// x(t) = sum_n X_n e^{j 2 pi n t / T_us}; the CP is the cyclic extension.
Waveform ofdm_modulate(const OfdmFrame &frame, const OfdmConfig &ofdm);

// Beam domain ray channel: receive beam k collects the rays with AoA in cell
// k, each contributing sqrt(p) e^{j zeta_dl} e^{j 2 pi nu(aoa) t} times the
// transmit waveform of the ray's AoD-cell beam delayed by the ray delay
// (nearest-sample shift). Output columns follow the UT beam index 0..K-1 and
// carry max-delay padding beyond the transmit length.
Waveform channel_apply_dl(const Waveform &transmit, const std::vector<arma::uword> &tx_beam_ids,
                          const RaySet &rays, const UtProfile &profile, const OfdmConfig &ofdm,
                          const ArrayConfig &cfg);

// Time and frequency adjustment per receive beam:
// out_k(t) = in_k(t + tau_syn[k]) e^{-j 2 pi (t + tau_syn[k]) nu_syn[k]},
// nearest-sample time shift. A joint plan applies one scalar pair to every
// beam.
Waveform apply_sync(const Waveform &received, const SyncPlan &plan, const OfdmConfig &ofdm);

// Demodulate one OFDM symbol segment (N_cp + N_us samples, CP discarded):
// Y_n = (1/T_us) integral of y(t) e^{-j 2 pi n t / T_us}, realized as the
// length-N_us discrete transform of the useful part.
arma::cx_vec ofdm_demodulate_symbol(const arma::cx_vec &symbol_samples, const OfdmConfig &ofdm);

// All symbols of a waveform: N_us x num_symbols x num_beams.
arma::cx_cube ofdm_demodulate(const Waveform &waveform, const OfdmConfig &ofdm,
                              arma::uword num_symbols);

// One frame through the ray channel for UT 0 of the assignment: modulate one
// pilot and six QPSK data symbols, apply the channel and the chosen
// synchronization mode, least-squares per-subcarrier channel estimation from
// the pilot comb, single-tap equalization, hard QPSK decisions. Reports EVM,
// per-subcarrier SINR against the ideal per-subcarrier model, and uncoded
// BER. Deterministic for a fixed seed. Throws std::invalid_argument when the
// assignment schedules no beams.
LinkMetrics run_link(const RaySet &rays, const UtProfile &profile, SyncMode plan_mode,
                     const BeamAssignment &assignment, const OfdmConfig &ofdm,
                     const ArrayConfig &cfg, double noise_power, std::uint64_t rng_seed,
                     BoundMode bound_mode = BoundMode::empirical);

} // namespace beamsim

#endif
