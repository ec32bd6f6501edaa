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

#include "beamsim/experiments.hpp"

#include <cmath>
#include <cstdio>

#include "beamsim/link_sim.hpp"

namespace beamsim
{

static constexpr double pi = 3.14159265358979323846;

const MetricTable *ExperimentResult::find(const std::string &name) const
{
    for (const auto &t : tables)
        if (t.name == name)
            return &t;
    return nullptr;
}

std::string fmt_cell(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

std::string table_to_csv(const MetricTable &table, std::uint64_t config_hash, std::uint64_t seed)
{
    char head[80];
    std::snprintf(head, sizeof(head), "# config_hash=%016llx seed=%llu\n",
                  (unsigned long long)config_hash, (unsigned long long)seed);
    std::string out = head;
    for (size_t i = 0; i < table.columns.size(); ++i)
        out += (i ? "," : "") + table.columns[i];
    out += "\n";
    for (const auto &row : table.rows)
    {
        for (size_t i = 0; i < row.size(); ++i)
            out += (i ? "," : "") + row[i];
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// statistical property suite

// Exact beam channel over a (t, f) grid via the factored identity
// V_K^H (sum_r c_r u_r b_r^T) V_M^* = A diag(c) B^T with A = V_K^H U,
// B = (V_M^H Bs); verified against beam_channel_exact at one grid point.
struct ExactChannelFactors
{
    arma::cx_mat a; // K x R
    arma::cx_mat b; // M x R
    arma::vec amp;  // sqrt(ray power)
    arma::vec nu;   // per-ray Doppler
    arma::vec tau;  // per-ray delay
    arma::vec phase;

    ExactChannelFactors(const RaySet &rays, const UtProfile &profile, const ArrayConfig &cfg)
    {
        const arma::uword nr = (arma::uword)rays.size();
        DftBeamformer vk(cfg.num_ut_antennas), vm(cfg.num_bs_antennas);
        arma::cx_mat u(cfg.num_ut_antennas, nr), bs(cfg.num_bs_antennas, nr);
        amp.set_size(nr);
        nu.set_size(nr);
        tau.set_size(nr);
        phase.set_size(nr);
        for (arma::uword r = 0; r < nr; ++r)
        {
            u.col(r) = steering_ut(rays[r].aoa, cfg.num_ut_antennas);
            bs.col(r) = steering_bs(rays[r].aod, cfg.num_bs_antennas);
            amp(r) = std::sqrt(rays[r].power);
            nu(r) = doppler_of(rays[r].aoa, profile);
            tau(r) = rays[r].delay_s;
            phase(r) = rays[r].phase_dl;
        }
        a = vk.matrix.t() * u;
        b = vm.matrix.t() * bs;
    }

    arma::cx_mat at(double t, double f) const
    {
        arma::cx_vec c(amp.n_elem);
        for (arma::uword r = 0; r < amp.n_elem; ++r)
            c(r) = amp(r) * std::polar(1.0, phase(r) + 2.0 * pi * (t * nu(r) - f * tau(r)));
        return a * arma::diagmat(c) * b.st();
    }
};

// Power-weighted mean over occupied cells of the relative std of |entry|
// over the (t, f) grid.
static double envelope_rel_std(const RaySet &rays, const UtProfile &profile,
                               arma::uword m_antennas, arma::uword k_antennas,
                               const arma::vec &t_grid, const arma::vec &f_grid,
                               bool *factor_ok)
{
    ArrayConfig cfg{m_antennas, k_antennas};
    ExactChannelFactors factors(rays, profile, cfg);
    if (factor_ok)
    {
        arma::cx_mat ref = beam_channel_exact(rays, profile, t_grid(1), f_grid(1), cfg).entries;
        *factor_ok = arma::norm(factors.at(t_grid(1), f_grid(1)) - ref, "fro") <= 1e-10 * arma::norm(ref, "fro");
    }

    PowerMatrix om = power_matrix(rays, cfg);
    std::vector<std::pair<arma::uword, arma::uword>> cells;
    for (arma::uword k = 0; k < om.omega.n_rows; ++k)
        for (arma::uword m = 0; m < om.omega.n_cols; ++m)
            if (om.omega(k, m) > 0.0)
                cells.push_back({k, m});

    arma::mat env(cells.size(), t_grid.n_elem * f_grid.n_elem);
    arma::uword col = 0;
    for (arma::uword it = 0; it < t_grid.n_elem; ++it)
        for (arma::uword jf = 0; jf < f_grid.n_elem; ++jf, ++col)
        {
            arma::cx_mat g = factors.at(t_grid(it), f_grid(jf));
            for (size_t c = 0; c < cells.size(); ++c)
                env(c, col) = std::abs(g(cells[c].first, cells[c].second));
        }

    double acc = 0.0, wsum = 0.0;
    for (size_t c = 0; c < cells.size(); ++c)
    {
        double mean = arma::mean(env.row(c));
        double sd = arma::stddev(env.row(c));
        double w = om.omega(cells[c].first, cells[c].second);
        acc += w * (mean > 0.0 ? sd / mean : 0.0);
        wsum += w;
    }
    return wsum > 0.0 ? acc / wsum : 0.0;
}

ExperimentResult run_prop_suite(const ScenarioConfig &config)
{
    ExperimentResult res;
    res.config_hash = config.hash64();
    res.seed = config.master_seed;

    MetricTable table;
    table.name = "prop_checks";
    table.columns = {"check", "value", "threshold", "pass"};
    auto add = [&](const std::string &check, double value, double threshold, bool pass)
    {
        table.rows.push_back({check, fmt_cell(value), fmt_cell(threshold), pass ? "1" : "0"});
        res.all_pass = res.all_pass && pass;
    };

    UtProfile profile = scenario_profile(config);
    RaySet rays = generate_cluster_rays(config, 0, config.master_seed);
    ArrayConfig cfg = config.array();

    // decorrelation and variance match over random-phase realizations
    {
        PowerMatrix om = power_matrix(rays, cfg);
        std::vector<std::pair<arma::uword, arma::uword>> cells;
        for (arma::uword k = 0; k < om.omega.n_rows; ++k)
            for (arma::uword m = 0; m < om.omega.n_cols; ++m)
                if (om.omega(k, m) > 0.0)
                    cells.push_back({k, m});

        const arma::uword nt = config.decorr_trials;
        arma::cx_mat samples(nt, cells.size());
        std::uniform_real_distribution<double> uph(0.0, 2.0 * pi);
        RaySet work = rays;
        for (arma::uword t = 0; t < nt; ++t)
        {
            std::mt19937_64 rng = substream_rng(config.master_seed, 10000 + t);
            for (Ray &r : work)
                r.phase_dl = uph(rng);
            arma::cx_mat g = beam_channel_approx_dl(work, profile, 0.0, 0.0, cfg).entries;
            for (size_t c = 0; c < cells.size(); ++c)
                samples(t, c) = g(cells[c].first, cells[c].second);
        }
        arma::cx_rowvec mean = arma::mean(samples, 0);
        samples.each_row() -= mean;
        arma::cx_mat gram = samples.t() * samples;
        arma::vec diag = arma::real(gram.diag());

        double max_corr = 0.0;
        for (size_t i = 0; i < cells.size(); ++i)
            for (size_t j = i + 1; j < cells.size(); ++j)
                max_corr = std::max(max_corr, std::abs(gram(i, j)) / std::sqrt(diag(i) * diag(j)));
        add("decorrelation_max_corr", max_corr, 5.0 / std::sqrt((double)nt), max_corr < 5.0 / std::sqrt((double)nt));

        double max_var_err = 0.0;
        for (size_t c = 0; c < cells.size(); ++c)
        {
            double var = diag(c) / (double)(nt - 1);
            max_var_err = std::max(max_var_err,
                                   std::abs(var - om.omega(cells[c].first, cells[c].second)) /
                                       om.omega(cells[c].first, cells[c].second));
        }
        add("variance_match_max_rel_err", max_var_err, 0.05, max_var_err < 0.05);
    }

    // envelope constancy trend over the antenna ladder
    {
        double nu_u = profile.max_doppler_hz;
        double t_span = nu_u > 0.0 ? 2.0 / nu_u : 1e-3;
        double f_span = config.delay_spread_s > 0.0 ? 2.0 / config.delay_spread_s : 20e6;
        arma::vec t_grid = arma::linspace(0.0, t_span, 16);
        arma::vec f_grid = arma::linspace(0.0, f_span, 16);
        const arma::uword ladder[3][2] = {{16, 8}, {64, 32}, {256, 128}};
        double rung[3];
        bool factor_ok = true;
        for (int i = 0; i < 3; ++i)
        {
            bool ok = true;
            rung[i] = envelope_rel_std(rays, profile, ladder[i][0], ladder[i][1], t_grid, f_grid,
                                       i == 0 ? &ok : nullptr);
            factor_ok = factor_ok && ok;
            add("envelope_rel_std_" + std::to_string(ladder[i][0]) + "x" + std::to_string(ladder[i][1]),
                rung[i], rung[i], true);
        }
        add("envelope_factorization_check", factor_ok ? 0.0 : 1.0, 0.5, factor_ok);
        add("envelope_trend_nonincreasing", std::max(rung[1] - rung[0], rung[2] - rung[1]), 0.0,
            rung[1] <= rung[0] && rung[2] <= rung[1]);
    }

    // per-beam over joint Doppler spread equals 1/K in analytic mode
    for (arma::uword k_beams : config.spread_k_list)
    {
        OffsetBounds b = offset_bounds(rays, profile, k_beams, BoundMode::analytic);
        double joint = spreads(b, SyncMode::joint).doppler_spread_hz;
        double per = spreads(b, SyncMode::per_beam).doppler_spread_hz;
        double err = joint > 0.0 ? std::abs(per / joint * (double)k_beams - 1.0) : 1.0;
        add("doppler_spread_ratio_K" + std::to_string(k_beams), err, 1e-12, err < 1e-12);
    }

    // one-ring delay laws
    for (arma::uword k_beams : {arma::uword(8), arma::uword(32)})
    {
        OffsetBounds b = one_ring_offset_bounds(config.one_ring_radius_m, profile, k_beams);
        double joint = spreads(b, SyncMode::joint).delay_spread_s;
        double per = spreads(b, SyncMode::per_beam).delay_spread_s;
        double err = std::abs(per / joint * (double)k_beams - 1.0);
        add("one_ring_analytic_ratio_K" + std::to_string(k_beams), err, 1e-14, err < 1e-14);

        RaySet ring = one_ring_rays(config.one_ring_radius_m, 100000, 0.0, 0.2,
                                    substream_seed(config.master_seed, 777));
        OffsetBounds be = offset_bounds(ring, profile, k_beams, BoundMode::empirical);
        double joint_e = spreads(be, SyncMode::joint).delay_spread_s;
        double per_e = spreads(be, SyncMode::per_beam).delay_spread_s;
        double err_e = std::abs(per_e / joint_e * (double)k_beams - 1.0);
        add("one_ring_empirical_ratio_K" + std::to_string(k_beams), err_e, 0.02, err_e < 0.02);
    }

    res.tables.push_back(std::move(table));
    return res;
}

// ---------------------------------------------------------------------------
// scheduling sweeps

ExperimentResult run_sumrate_sweep(const ScenarioConfig &config)
{
    ExperimentResult res;
    res.config_hash = config.hash64();
    res.seed = config.master_seed;

    std::vector<RaySet> raysets;
    std::vector<UtProfile> profiles;
    std::vector<PowerMatrix> omegas;
    ArrayConfig cfg = config.array();
    for (arma::uword u = 0; u < config.num_uts; ++u)
    {
        raysets.push_back(generate_cluster_rays(config, u, config.master_seed));
        profiles.push_back(scenario_profile(config));
        omegas.push_back(power_matrix(raysets.back(), cfg));
    }
    ChannelSampler sampler = make_phase_redraw_sampler_dl(raysets, profiles, cfg);
    SchedulingLimits limits{config.max_bs_beams_per_ut, config.max_ut_beams_per_ut,
                            config.max_total_bs_beams};

    MetricTable table;
    table.name = "sumrate";
    table.columns = {"snr_db", "greedy_rate", "ifree_rate", "ratio"};
    for (size_t i = 0; i < config.snr_grid_db.size(); ++i)
    {
        double snr_db = config.snr_grid_db[i];
        LinkBudget budget{std::pow(10.0, snr_db / 10.0), 1.0};
        RateEvaluator eval = make_dl_rate_evaluator(sampler, budget, config.eval_trials,
                                                    substream_seed(config.master_seed, 2000 + i));
        BeamAssignment a = greedy_schedule_dl(omegas, limits, eval);
        std::uint64_t report_seed = substream_seed(config.master_seed, 3000 + i);
        double greedy = sum_rate_dl(sampler, a, budget, config.report_trials, report_seed).sum_rate_bps_hz;
        double ifree = interference_free_rate(sampler, a, budget, config.report_trials, report_seed).sum_rate_bps_hz;
        double ratio = ifree > 0.0 ? greedy / ifree : 1.0;
        table.rows.push_back({fmt_cell(snr_db), fmt_cell(greedy), fmt_cell(ifree), fmt_cell(ratio)});
        res.all_pass = res.all_pass && ratio > 0.0 && ratio <= 1.0 + 1e-9;
    }
    res.tables.push_back(std::move(table));
    return res;
}

ExperimentResult run_schedule(const ScenarioConfig &config, BeamAssignment *assignment)
{
    ExperimentResult res;
    res.config_hash = config.hash64();
    res.seed = config.master_seed;

    std::vector<RaySet> raysets;
    std::vector<UtProfile> profiles;
    std::vector<PowerMatrix> omegas;
    ArrayConfig cfg = config.array();
    for (arma::uword u = 0; u < config.num_uts; ++u)
    {
        raysets.push_back(generate_cluster_rays(config, u, config.master_seed));
        profiles.push_back(scenario_profile(config));
        omegas.push_back(power_matrix(raysets.back(), cfg));
    }
    ChannelSampler sampler = make_phase_redraw_sampler_dl(raysets, profiles, cfg);
    SchedulingLimits limits{config.max_bs_beams_per_ut, config.max_ut_beams_per_ut,
                            config.max_total_bs_beams};

    LinkBudget sched_budget{std::pow(10.0, config.snr_grid_db[0] / 10.0), 1.0};
    RateEvaluator eval = make_dl_rate_evaluator(sampler, sched_budget, config.eval_trials,
                                                substream_seed(config.master_seed, 2000));
    BeamAssignment a = greedy_schedule_dl(omegas, limits, eval);
    if (assignment)
        *assignment = a;

    MetricTable table;
    table.name = "schedule";
    table.columns = {"snr_db", "sum_rate", "interference_free_rate"};
    for (size_t i = 0; i < config.snr_grid_db.size(); ++i)
    {
        double snr_db = config.snr_grid_db[i];
        LinkBudget budget{std::pow(10.0, snr_db / 10.0), 1.0};
        std::uint64_t report_seed = substream_seed(config.master_seed, 3000 + i);
        double rate = sum_rate_dl(sampler, a, budget, config.report_trials, report_seed).sum_rate_bps_hz;
        double ifree = interference_free_rate(sampler, a, budget, config.report_trials, report_seed).sum_rate_bps_hz;
        table.rows.push_back({fmt_cell(snr_db), fmt_cell(rate), fmt_cell(ifree)});
        res.all_pass = res.all_pass && rate <= ifree + 1e-9;
    }
    res.tables.push_back(std::move(table));
    return res;
}

// ---------------------------------------------------------------------------
// link-level sweep

// Scheduled beams for the single-UT link: strongest beam pairs with distinct
// receive and transmit beams, so each scheduled transmit beam carries one
// resolvable stream.
static BeamAssignment link_assignment(const PowerMatrix &om, const ScenarioConfig &config)
{
    struct Cell
    {
        double power;
        arma::uword k, m;
    };
    std::vector<Cell> cells;
    for (arma::uword k = 0; k < om.omega.n_rows; ++k)
        for (arma::uword m = 0; m < om.omega.n_cols; ++m)
            if (om.omega(k, m) > 0.0)
                cells.push_back({om.omega(k, m), k, m});
    std::sort(cells.begin(), cells.end(), [](const Cell &a, const Cell &b)
              { return a.power != b.power ? a.power > b.power
                                          : (a.k != b.k ? a.k < b.k : a.m < b.m); });

    arma::uword cap = std::min({config.max_bs_beams_per_ut, config.max_ut_beams_per_ut,
                                config.max_total_bs_beams});
    std::vector<arma::uword> rx, tx;
    for (const Cell &c : cells)
    {
        if (rx.size() >= cap)
            break;
        if (std::find(rx.begin(), rx.end(), c.k) != rx.end() ||
            std::find(tx.begin(), tx.end(), c.m) != tx.end())
            continue;
        rx.push_back(c.k);
        tx.push_back(c.m);
    }
    std::sort(rx.begin(), rx.end());
    std::sort(tx.begin(), tx.end());

    BeamAssignment a;
    a.bs_beams = {tx};
    a.ut_beams = {rx};
    return a;
}

ExperimentResult run_linksim_sweep(const ScenarioConfig &config)
{
    ExperimentResult res;
    res.config_hash = config.hash64();
    res.seed = config.master_seed;

    ArrayConfig cfg = config.array();
    RaySet rays = generate_cluster_rays(config, 0, config.master_seed);
    UtProfile profile = scenario_profile(config);
    PowerMatrix om = power_matrix(rays, cfg);
    BeamAssignment a = link_assignment(om, config);

    double p_ref = 0.0;
    for (arma::uword k : a.ut_beams[0])
        for (arma::uword m : a.bs_beams[0])
            p_ref += om.omega(k, m);
    p_ref /= (double)a.ut_beams[0].size();

    MetricTable table;
    table.name = "linksim";
    table.columns = {"snr_db", "sync_mode", "evm_rms", "ber", "mean_sinr_db"};
    for (size_t i = 0; i < config.snr_grid_db.size(); ++i)
    {
        double snr_db = config.snr_grid_db[i];
        double noise = (double)config.num_subcarriers * p_ref / std::pow(10.0, snr_db / 10.0);
        for (SyncMode mode : {SyncMode::per_beam, SyncMode::joint})
        {
            double evm_sq = 0.0, sinr_acc = 0.0;
            arma::uword errors = 0, bits = 0;
            for (arma::uword f = 0; f < config.link_frames; ++f)
            {
                LinkMetrics met = run_link(rays, profile, mode, a, config.ofdm(), cfg, noise,
                                           substream_seed(config.master_seed, 50000 + f),
                                           config.link_bound_mode());
                evm_sq += met.evm_rms * met.evm_rms;
                sinr_acc += arma::mean(met.sinr_db);
                errors += met.bit_errors;
                bits += met.bits_total;
            }
            table.rows.push_back({fmt_cell(snr_db),
                                  mode == SyncMode::per_beam ? "per_beam" : "joint",
                                  fmt_cell(std::sqrt(evm_sq / (double)config.link_frames)),
                                  fmt_cell((double)errors / (double)bits),
                                  fmt_cell(sinr_acc / (double)config.link_frames)});
        }
    }
    res.tables.push_back(std::move(table));
    return res;
}

// ---------------------------------------------------------------------------
// spread table

ExperimentResult run_spread_table(const ScenarioConfig &config)
{
    ExperimentResult res;
    res.config_hash = config.hash64();
    res.seed = config.master_seed;

    RaySet rays = generate_cluster_rays(config, 0, config.master_seed);
    UtProfile profile = scenario_profile(config);

    MetricTable table;
    table.name = "spreads";
    table.columns = {"K", "mode", "bound_mode", "delay_spread_ns", "doppler_spread_hz"};
    for (arma::uword k_beams : config.spread_k_list)
        for (BoundMode bm : {BoundMode::analytic, BoundMode::empirical})
        {
            OffsetBounds b = offset_bounds(rays, profile, k_beams, bm);
            for (SyncMode mode : {SyncMode::joint, SyncMode::per_beam})
            {
                SpreadReport rep = spreads(b, mode);
                table.rows.push_back({std::to_string(k_beams),
                                      mode == SyncMode::joint ? "joint" : "per_beam",
                                      bm == BoundMode::analytic ? "analytic" : "empirical",
                                      fmt_cell(rep.delay_spread_s * 1e9),
                                      fmt_cell(rep.doppler_spread_hz)});
            }
        }
    res.tables.push_back(std::move(table));
    return res;
}

} // namespace beamsim
