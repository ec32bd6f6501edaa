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

#include "beamsim/pbs_sync.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace beamsim
{

static constexpr double pi = 3.14159265358979323846;

OffsetBounds offset_bounds(const RaySet &rays, const UtProfile &profile,
                           arma::uword num_ut_beams, BoundMode mode)
{
    if (num_ut_beams == 0)
        throw std::domain_error("offset_bounds requires at least one beam");

    const arma::uword K = num_ut_beams;
    OffsetBounds b;
    b.bound_mode = mode;
    b.tau_min_s.zeros(K);
    b.tau_max_s.zeros(K);
    b.nu_min_hz.zeros(K);
    b.nu_max_hz.zeros(K);
    b.occupied.assign(K, false);

    constexpr double inf = std::numeric_limits<double>::infinity();
    arma::vec tlo(K, arma::fill::value(inf)), thi(K, arma::fill::value(-inf));
    arma::vec nlo(K, arma::fill::value(inf)), nhi(K, arma::fill::value(-inf));

    for (const Ray &r : rays)
    {
        arma::uword k = beam_index_of(r.aoa, K);
        b.occupied[k] = true;
        tlo(k) = std::min(tlo(k), r.delay_s);
        thi(k) = std::max(thi(k), r.delay_s);
        double nu = doppler_of(r.aoa, profile);
        nlo(k) = std::min(nlo(k), nu);
        nhi(k) = std::max(nhi(k), nu);
    }

    b.tau_min_all_s = inf;
    b.tau_max_all_s = -inf;
    double nu_lo_emp = inf, nu_hi_emp = -inf;
    for (arma::uword k = 0; k < K; ++k)
    {
        if (b.occupied[k])
        {
            b.any_occupied = true;
            b.tau_min_s(k) = tlo(k);
            b.tau_max_s(k) = thi(k);
            b.tau_min_all_s = std::min(b.tau_min_all_s, tlo(k));
            b.tau_max_all_s = std::max(b.tau_max_all_s, thi(k));
            nu_lo_emp = std::min(nu_lo_emp, nlo(k));
            nu_hi_emp = std::max(nu_hi_emp, nhi(k));
        }
        if (mode == BoundMode::analytic)
        {
            b.nu_min_hz(k) = (2.0 * (double)k / (double)K - 1.0) * profile.max_doppler_hz;
            b.nu_max_hz(k) = (2.0 * (double)(k + 1) / (double)K - 1.0) * profile.max_doppler_hz;
        }
        else if (b.occupied[k])
        {
            b.nu_min_hz(k) = nlo(k);
            b.nu_max_hz(k) = nhi(k);
        }
    }
    if (!b.any_occupied)
    {
        b.tau_min_all_s = 0.0;
        b.tau_max_all_s = 0.0;
    }
    if (mode == BoundMode::analytic)
    {
        b.nu_min_all_hz = -profile.max_doppler_hz;
        b.nu_max_all_hz = profile.max_doppler_hz;
    }
    else
    {
        b.nu_min_all_hz = b.any_occupied ? nu_lo_emp : 0.0;
        b.nu_max_all_hz = b.any_occupied ? nu_hi_emp : 0.0;
    }
    return b;
}

OffsetBounds one_ring_offset_bounds(double radius_m, const UtProfile &profile,
                                    arma::uword num_ut_beams)
{
    if (radius_m <= 0.0)
        throw std::domain_error("one_ring_offset_bounds requires a positive radius");
    if (num_ut_beams == 0)
        throw std::domain_error("one_ring_offset_bounds requires at least one beam");

    const arma::uword K = num_ut_beams;
    OffsetBounds b;
    b.bound_mode = BoundMode::analytic;
    b.tau_min_s.set_size(K);
    b.tau_max_s.set_size(K);
    b.nu_min_hz.set_size(K);
    b.nu_max_hz.set_size(K);
    b.occupied.assign(K, true);
    b.any_occupied = true;

    // delay law (r/c)(1 + sin(aoa)); cell k spans sin in [2k/K - 1, 2(k+1)/K - 1],
    // so the delay image of cell k is (r/c) [2k/K, 2(k+1)/K]
    const double a = radius_m / speed_of_light;
    for (arma::uword k = 0; k < K; ++k)
    {
        b.tau_min_s(k) = a * (2.0 * (double)k / (double)K);
        b.tau_max_s(k) = a * (2.0 * (double)(k + 1) / (double)K);
        b.nu_min_hz(k) = (2.0 * (double)k / (double)K - 1.0) * profile.max_doppler_hz;
        b.nu_max_hz(k) = (2.0 * (double)(k + 1) / (double)K - 1.0) * profile.max_doppler_hz;
    }
    b.tau_min_all_s = 0.0;
    b.tau_max_all_s = 2.0 * a;
    b.nu_min_all_hz = -profile.max_doppler_hz;
    b.nu_max_all_hz = profile.max_doppler_hz;
    return b;
}

SyncPlan make_sync_plan(const OffsetBounds &bounds, SyncMode mode)
{
    SyncPlan plan;
    plan.mode = mode;
    if (mode == SyncMode::joint)
    {
        plan.tau_syn_s = arma::vec{bounds.tau_min_all_s};
        plan.nu_syn_hz = arma::vec{(bounds.nu_min_all_hz + bounds.nu_max_all_hz) / 2.0};
        return plan;
    }
    const arma::uword K = bounds.num_beams();
    plan.tau_syn_s.zeros(K);
    plan.nu_syn_hz.zeros(K);
    for (arma::uword k = 0; k < K; ++k)
    {
        bool have_nu = bounds.bound_mode == BoundMode::analytic || bounds.occupied[k];
        if (bounds.occupied[k])
            plan.tau_syn_s(k) = bounds.tau_min_s(k);
        if (have_nu)
            plan.nu_syn_hz(k) = (bounds.nu_min_hz(k) + bounds.nu_max_hz(k)) / 2.0;
    }
    return plan;
}

SpreadReport spreads(const OffsetBounds &bounds, SyncMode mode)
{
    SpreadReport rep;
    rep.mode = mode;
    rep.bound_mode = bounds.bound_mode;
    if (mode == SyncMode::joint)
    {
        rep.delay_spread_s = bounds.tau_max_all_s - bounds.tau_min_all_s;
        rep.doppler_spread_hz = (bounds.nu_max_all_hz - bounds.nu_min_all_hz) / 2.0;
        return rep;
    }
    double dt = 0.0, dv = 0.0;
    for (arma::uword k = 0; k < bounds.num_beams(); ++k)
    {
        if (bounds.occupied[k])
            dt = std::max(dt, bounds.tau_max_s(k) - bounds.tau_min_s(k));
        if (bounds.bound_mode == BoundMode::analytic || bounds.occupied[k])
            dv = std::max(dv, (bounds.nu_max_hz(k) - bounds.nu_min_hz(k)) / 2.0);
    }
    rep.delay_spread_s = dt;
    rep.doppler_spread_hz = dv;
    return rep;
}

RaySet one_ring_rays(double radius_m, arma::uword num_rays, double aod_center,
                     double aod_spread, std::uint64_t rng_seed)
{
    if (radius_m <= 0.0)
        throw std::domain_error("one_ring_rays requires a positive radius");
    if (num_rays == 0)
        throw std::domain_error("one_ring_rays requires at least one ray");

    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> uang(-pi / 2.0, pi / 2.0);
    std::uniform_real_distribution<double> uoff(-aod_spread / 2.0, aod_spread / 2.0);
    std::uniform_real_distribution<double> uph(0.0, 2.0 * pi);

    RaySet rays(num_rays);
    const double a = radius_m / speed_of_light;
    for (Ray &r : rays)
    {
        r.aoa = uang(rng);
        r.aod = std::clamp(aod_center + uoff(rng), -pi / 2.0, pi / 2.0);
        r.delay_s = a * (1.0 + std::sin(r.aoa));
        r.power = 1.0 / (double)num_rays;
        r.phase_dl = uph(rng);
        r.phase_ul = uph(rng);
    }
    return rays;
}

namespace detail
{

arma::cx_mat effective_subcarrier_channel(const RaySet &rays, const UtProfile &profile,
                                          const SyncPlan &plan, arma::uword subcarrier,
                                          const OfdmConfig &ofdm, const ArrayConfig &cfg,
                                          bool uplink)
{
    if (subcarrier >= ofdm.num_subcarriers)
        throw std::domain_error("subcarrier index out of range");

    const arma::uword K = cfg.num_ut_antennas;
    const arma::uword M = cfg.num_bs_antennas;
    arma::cx_mat g = uplink ? arma::cx_mat(M, K, arma::fill::zeros)
                            : arma::cx_mat(K, M, arma::fill::zeros);
    const double fn = (double)subcarrier / ofdm.useful_duration_s();
    for (const Ray &r : rays)
    {
        arma::uword k = beam_index_of(r.aoa, K);
        arma::uword m = beam_index_of(r.aod, M);
        double tau_syn = plan.tau_for(k);
        double nu_syn = plan.nu_for(k);
        double phase = (uplink ? r.phase_ul : r.phase_dl) +
                       2.0 * pi * tau_syn * (doppler_of(r.aoa, profile) - nu_syn) -
                       2.0 * pi * fn * (r.delay_s - tau_syn);
        std::complex<double> c = std::sqrt(r.power) * std::polar(1.0, phase);
        if (uplink)
            g(m, k) += c;
        else
            g(k, m) += c;
    }
    return g;
}

} // namespace detail

static BeamChannel effective_channel(const RaySet &rays, const UtProfile &profile,
                                     const SyncPlan &plan, arma::uword subcarrier,
                                     const OfdmConfig &ofdm, const ArrayConfig &cfg,
                                     bool uplink)
{
    if (plan.mode != SyncMode::per_beam)
        throw std::invalid_argument("effective channel requires a per-beam plan");
    BeamChannel bc;
    bc.time_s = 0.0;
    bc.freq_hz = (double)subcarrier;
    bc.entries = detail::effective_subcarrier_channel(rays, profile, plan, subcarrier, ofdm, cfg, uplink);
    return bc;
}

BeamChannel effective_channel_dl(const RaySet &rays, const UtProfile &profile,
                                 const SyncPlan &plan, arma::uword subcarrier,
                                 const OfdmConfig &ofdm, const ArrayConfig &cfg)
{
    return effective_channel(rays, profile, plan, subcarrier, ofdm, cfg, false);
}

BeamChannel effective_channel_ul(const RaySet &rays, const UtProfile &profile,
                                 const SyncPlan &plan, arma::uword subcarrier,
                                 const OfdmConfig &ofdm, const ArrayConfig &cfg)
{
    return effective_channel(rays, profile, plan, subcarrier, ofdm, cfg, true);
}

} // namespace beamsim
