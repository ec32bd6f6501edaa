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

#ifndef beamsim_bdma_sched_H
#define beamsim_bdma_sched_H

#include <armadillo>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "beamsim/array_channel.hpp"

namespace beamsim
{

// Beam sets per UT. The BS-side sets must be pairwise disjoint across UTs
// (DL: transmit beams, UL: receive beams); the UT-side sets are per UT
// (DL: receive beams, UL: transmit beams). Sets are kept sorted ascending.
struct BeamAssignment
{
    std::vector<std::vector<arma::uword>> bs_beams;
    std::vector<std::vector<arma::uword>> ut_beams;

    arma::uword num_uts() const { return (arma::uword)bs_beams.size(); }
    arma::uword total_bs_beams() const;
};

// Maximum cardinalities: per-UT BS-side, per-UT UT-side, and the global
// BS-side budget summed over UTs.
struct SchedulingLimits
{
    arma::uword max_bs_beams_per_ut = 0;
    arma::uword max_ut_beams_per_ut = 0;
    arma::uword max_total_bs_beams = 0;
};

// Throws std::invalid_argument when the assignment violates disjointness,
// a per-UT limit, the global budget, or a beam index range.
void validate_assignment(const BeamAssignment &a, const SchedulingLimits &limits,
                         arma::uword num_bs_beams, arma::uword num_ut_beams);

// SNR rho = P / sigma with noise power sigma.
struct LinkBudget
{
    double snr_linear = 1.0;
    double noise_power = 1.0;

    double power() const { return snr_linear * noise_power; }
};

struct RateEstimate
{
    double sum_rate_bps_hz = 0.0;
    arma::vec per_ut_rates;
    arma::uword num_trials = 0;
    double std_error = 0.0;
};

// Yields one independent channel realization per UT per call. DL realizations
// are K x M, UL realizations are M x K.
using ChannelSampler = std::function<std::vector<arma::cx_mat>(std::mt19937_64 &)>;

// Evaluates the scheduling objective for a candidate assignment. Evaluators
// built by the factories below use common random numbers so that greedy
// accept/reject comparisons are low-variance and deterministic.
using RateEvaluator = std::function<double(const BeamAssignment &)>;

// DL ergodic sum rate with equal power allocation: Monte Carlo average of
// sum_u [ log2 det(I + c sum_{u''} H_{u,u''} H_{u,u''}^H)
//       - log2 det(I + c sum_{u'' != u} H_{u,u''} H_{u,u''}^H) ],
// H_{u,u''} = G_u[rx_u, tx_{u''}] and c = rho / sum_u' |tx_u'|.
// Deterministic for a fixed seed; trial substreams derive from the seed.
RateEstimate sum_rate_dl(const ChannelSampler &sampler, const BeamAssignment &assignment,
                         const LinkBudget &budget, arma::uword num_trials, std::uint64_t rng_seed);

// UL analogue: per-UT power split over that UT's transmit beams
// (rho_u / |tx_u|), receive submatrices on the UT's allocated BS beam set,
// interference entering through the interferer's channel.
RateEstimate sum_rate_ul(const ChannelSampler &sampler, const BeamAssignment &assignment,
                         const std::vector<LinkBudget> &budgets, arma::uword num_trials,
                         std::uint64_t rng_seed);

// Genie-aided benchmark: the DL expression with every cross-UT interference
// term deleted from both determinants.
RateEstimate interference_free_rate(const ChannelSampler &sampler, const BeamAssignment &assignment,
                                    const LinkBudget &budget, arma::uword num_trials,
                                    std::uint64_t rng_seed);

// Two-phase norm-based greedy beam scheduling. Phase 1 grows the disjoint
// BS-side sets in decreasing omega^bs order with all UT-side beams
// temporarily active, keeping a candidate iff the evaluated rate strictly
// increases. Phase 2 grows the UT-side sets per UT in decreasing omega^ut
// order under the same acceptance rule. Ties in the norm ordering break
// toward the smallest (ut, beam) pair.
BeamAssignment greedy_schedule_dl(const std::vector<PowerMatrix> &omegas,
                                  const SchedulingLimits &limits,
                                  const RateEvaluator &evaluate);

// Same two-phase structure with the BS-side sets now being the UL receive
// beams and the per-UT sets the UL transmit beams.
BeamAssignment greedy_schedule_ul(const std::vector<PowerMatrix> &omegas,
                                  const SchedulingLimits &limits,
                                  const RateEvaluator &evaluate);

// Enumerates every constraint-satisfying assignment and returns one that
// maximizes the evaluated rate; ties break toward the lexicographically
// smallest assignment encoding. Throws std::length_error when the candidate
// count exceeds the guard (1e6).
BeamAssignment exhaustive_schedule(const std::vector<PowerMatrix> &omegas,
                                   const SchedulingLimits &limits,
                                   const RateEvaluator &evaluate);

// Common-random-number evaluator factories. Channel realizations are drawn
// once from per-trial substreams of the seed and shared across every
// candidate evaluation.
RateEvaluator make_dl_rate_evaluator(const ChannelSampler &sampler, const LinkBudget &budget,
                                     arma::uword num_trials, std::uint64_t rng_seed);
RateEvaluator make_ul_rate_evaluator(const ChannelSampler &sampler, const std::vector<LinkBudget> &budgets,
                                     arma::uword num_trials, std::uint64_t rng_seed);

// Approximation-model samplers: fixed ray geometry, fresh uniform phases per
// trial, evaluated at (t, f) = (0, 0).
ChannelSampler make_phase_redraw_sampler_dl(std::vector<RaySet> raysets,
                                            std::vector<UtProfile> profiles, ArrayConfig cfg);
ChannelSampler make_phase_redraw_sampler_ul(std::vector<RaySet> raysets,
                                            std::vector<UtProfile> profiles, ArrayConfig cfg);

namespace detail
{
double dl_rate_for_trial(const std::vector<arma::cx_mat> &channels, const BeamAssignment &a,
                         double snr_linear, bool interference_free, arma::vec *per_ut);
double ul_rate_for_trial(const std::vector<arma::cx_mat> &channels, const BeamAssignment &a,
                         const std::vector<double> &snr_linear, arma::vec *per_ut);
} // namespace detail

} // namespace beamsim

#endif
