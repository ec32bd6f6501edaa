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

#include "beamsim/bdma_sched.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>
#include <stdexcept>

namespace beamsim
{

static constexpr double pi = 3.14159265358979323846;

arma::uword BeamAssignment::total_bs_beams() const
{
    arma::uword n = 0;
    for (const auto &s : bs_beams)
        n += (arma::uword)s.size();
    return n;
}

static arma::uvec to_uvec(const std::vector<arma::uword> &v)
{
    arma::uvec out((arma::uword)v.size());
    for (arma::uword i = 0; i < out.n_elem; ++i)
        out(i) = v[i];
    return out;
}

void validate_assignment(const BeamAssignment &a, const SchedulingLimits &limits,
                         arma::uword num_bs_beams, arma::uword num_ut_beams)
{
    if (a.bs_beams.size() != a.ut_beams.size())
        throw std::invalid_argument("assignment: per-UT set counts differ");
    std::vector<bool> taken(num_bs_beams, false);
    arma::uword total = 0;
    for (size_t u = 0; u < a.bs_beams.size(); ++u)
    {
        if (a.bs_beams[u].size() > limits.max_bs_beams_per_ut)
            throw std::invalid_argument("assignment: per-UT BS-side limit exceeded");
        if (a.ut_beams[u].size() > limits.max_ut_beams_per_ut)
            throw std::invalid_argument("assignment: per-UT UT-side limit exceeded");
        for (arma::uword m : a.bs_beams[u])
        {
            if (m >= num_bs_beams)
                throw std::invalid_argument("assignment: BS beam index out of range");
            if (taken[m])
                throw std::invalid_argument("assignment: BS-side sets not disjoint");
            taken[m] = true;
        }
        for (arma::uword k : a.ut_beams[u])
            if (k >= num_ut_beams)
                throw std::invalid_argument("assignment: UT beam index out of range");
        total += (arma::uword)a.bs_beams[u].size();
    }
    if (total > limits.max_total_bs_beams)
        throw std::invalid_argument("assignment: global BS-side budget exceeded");
}

static double log2_det_i_plus(const arma::cx_mat &s)
{
    if (s.n_rows == 0)
        return 0.0;
    if (s.n_rows == 1)
        return std::log2(std::abs(1.0 + s(0, 0)));
    if (s.n_rows == 2)
        return std::log2(std::abs((1.0 + s(0, 0)) * (1.0 + s(1, 1)) - s(0, 1) * s(1, 0)));
    arma::cx_mat h = arma::eye<arma::cx_mat>(s.n_rows, s.n_rows) + 0.5 * (s + s.t());
    double val = 0.0;
    if (!arma::log_det_sympd(val, h))
        val = arma::log_det(h).real();
    return val / std::log(2.0);
}

namespace detail
{

double dl_rate_for_trial(const std::vector<arma::cx_mat> &channels, const BeamAssignment &a,
                         double snr_linear, bool interference_free, arma::vec *per_ut)
{
    const arma::uword num_uts = a.num_uts();
    if (per_ut)
        per_ut->zeros(num_uts);
    arma::uword tot_tx = a.total_bs_beams();
    if (tot_tx == 0)
        return 0.0;
    const double c = snr_linear / (double)tot_tx;

    double rate = 0.0;
    for (arma::uword u = 0; u < num_uts; ++u)
    {
        const auto &rx = a.ut_beams[u];
        if (rx.empty())
            continue;
        arma::uvec rxi = to_uvec(rx);
        double r_u = 0.0;
        if (interference_free)
        {
            if (!a.bs_beams[u].empty())
            {
                arma::cx_mat h = channels[u].submat(rxi, to_uvec(a.bs_beams[u]));
                r_u = log2_det_i_plus(c * (h * h.t()));
            }
        }
        else
        {
            arma::cx_mat s_all(rx.size(), rx.size(), arma::fill::zeros);
            arma::cx_mat s_int(rx.size(), rx.size(), arma::fill::zeros);
            for (arma::uword up = 0; up < num_uts; ++up)
            {
                if (a.bs_beams[up].empty())
                    continue;
                arma::cx_mat h = channels[u].submat(rxi, to_uvec(a.bs_beams[up]));
                arma::cx_mat gram = h * h.t();
                s_all += gram;
                if (up != u)
                    s_int += gram;
            }
            r_u = log2_det_i_plus(c * s_all) - log2_det_i_plus(c * s_int);
        }
        rate += r_u;
        if (per_ut)
            (*per_ut)(u) = r_u;
    }
    return rate;
}

double ul_rate_for_trial(const std::vector<arma::cx_mat> &channels, const BeamAssignment &a,
                         const std::vector<double> &snr_linear, arma::vec *per_ut)
{
    const arma::uword num_uts = a.num_uts();
    if (per_ut)
        per_ut->zeros(num_uts);

    double rate = 0.0;
    for (arma::uword u = 0; u < num_uts; ++u)
    {
        const auto &rx = a.bs_beams[u]; // BS beams allocated to UT u
        if (rx.empty())
            continue;
        arma::uvec rxi = to_uvec(rx);
        arma::cx_mat s_all(rx.size(), rx.size(), arma::fill::zeros);
        arma::cx_mat s_int(rx.size(), rx.size(), arma::fill::zeros);
        for (arma::uword up = 0; up < num_uts; ++up)
        {
            const auto &tx = a.ut_beams[up];
            if (tx.empty())
                continue;
            arma::cx_mat h = channels[up].submat(rxi, to_uvec(tx));
            arma::cx_mat gram = (snr_linear[up] / (double)tx.size()) * (h * h.t());
            s_all += gram;
            if (up != u)
                s_int += gram;
        }
        double r_u = log2_det_i_plus(s_all) - log2_det_i_plus(s_int);
        rate += r_u;
        if (per_ut)
            (*per_ut)(u) = r_u;
    }
    return rate;
}

} // namespace detail

// BS-side disjointness is intrinsic to every valid assignment; the public
// rate operations reject violations regardless of limits.
static void check_disjoint(const BeamAssignment &a)
{
    std::set<arma::uword> seen;
    for (const auto &s : a.bs_beams)
        for (arma::uword m : s)
            if (!seen.insert(m).second)
                throw std::invalid_argument("assignment: BS-side sets not disjoint");
}

// Shared Monte Carlo loop; fn maps one trial's channel set to (rate, per-UT rates).
template <typename TrialFn>
static RateEstimate monte_carlo_rate(const ChannelSampler &sampler, arma::uword num_trials,
                                     std::uint64_t seed, arma::uword num_uts, TrialFn &&fn)
{
    if (num_trials == 0)
        throw std::invalid_argument("num_trials must be positive");
    RateEstimate est;
    est.num_trials = num_trials;
    est.per_ut_rates.zeros(num_uts);
    arma::vec trial_rates(num_trials);
    arma::vec per_ut(num_uts);
    for (arma::uword t = 0; t < num_trials; ++t)
    {
        std::mt19937_64 rng = substream_rng(seed, t);
        std::vector<arma::cx_mat> channels = sampler(rng);
        trial_rates(t) = fn(channels, &per_ut);
        est.per_ut_rates += per_ut;
    }
    est.per_ut_rates /= (double)num_trials;
    est.sum_rate_bps_hz = arma::sum(est.per_ut_rates);
    est.std_error = num_trials > 1 ? arma::stddev(trial_rates) / std::sqrt((double)num_trials) : 0.0;
    return est;
}

RateEstimate sum_rate_dl(const ChannelSampler &sampler, const BeamAssignment &assignment,
                         const LinkBudget &budget, arma::uword num_trials, std::uint64_t rng_seed)
{
    check_disjoint(assignment);
    return monte_carlo_rate(sampler, num_trials, rng_seed, assignment.num_uts(),
                            [&](const std::vector<arma::cx_mat> &ch, arma::vec *per_ut)
                            { return detail::dl_rate_for_trial(ch, assignment, budget.snr_linear, false, per_ut); });
}

RateEstimate sum_rate_ul(const ChannelSampler &sampler, const BeamAssignment &assignment,
                         const std::vector<LinkBudget> &budgets, arma::uword num_trials,
                         std::uint64_t rng_seed)
{
    check_disjoint(assignment);
    if (budgets.size() != assignment.num_uts())
        throw std::invalid_argument("sum_rate_ul: one budget per UT required");
    std::vector<double> rho(budgets.size());
    for (size_t u = 0; u < budgets.size(); ++u)
        rho[u] = budgets[u].snr_linear;
    return monte_carlo_rate(sampler, num_trials, rng_seed, assignment.num_uts(),
                            [&](const std::vector<arma::cx_mat> &ch, arma::vec *per_ut)
                            { return detail::ul_rate_for_trial(ch, assignment, rho, per_ut); });
}

RateEstimate interference_free_rate(const ChannelSampler &sampler, const BeamAssignment &assignment,
                                    const LinkBudget &budget, arma::uword num_trials,
                                    std::uint64_t rng_seed)
{
    check_disjoint(assignment);
    return monte_carlo_rate(sampler, num_trials, rng_seed, assignment.num_uts(),
                            [&](const std::vector<arma::cx_mat> &ch, arma::vec *per_ut)
                            { return detail::dl_rate_for_trial(ch, assignment, budget.snr_linear, true, per_ut); });
}

RateEvaluator make_dl_rate_evaluator(const ChannelSampler &sampler, const LinkBudget &budget,
                                     arma::uword num_trials, std::uint64_t rng_seed)
{
    auto trials = std::make_shared<std::vector<std::vector<arma::cx_mat>>>();
    trials->reserve(num_trials);
    for (arma::uword t = 0; t < num_trials; ++t)
    {
        std::mt19937_64 rng = substream_rng(rng_seed, t);
        trials->push_back(sampler(rng));
    }
    double snr = budget.snr_linear;
    return [trials, snr](const BeamAssignment &a)
    {
        double acc = 0.0;
        for (const auto &ch : *trials)
            acc += detail::dl_rate_for_trial(ch, a, snr, false, nullptr);
        return acc / (double)trials->size();
    };
}

RateEvaluator make_ul_rate_evaluator(const ChannelSampler &sampler, const std::vector<LinkBudget> &budgets,
                                     arma::uword num_trials, std::uint64_t rng_seed)
{
    auto trials = std::make_shared<std::vector<std::vector<arma::cx_mat>>>();
    trials->reserve(num_trials);
    for (arma::uword t = 0; t < num_trials; ++t)
    {
        std::mt19937_64 rng = substream_rng(rng_seed, t);
        trials->push_back(sampler(rng));
    }
    std::vector<double> rho(budgets.size());
    for (size_t u = 0; u < budgets.size(); ++u)
        rho[u] = budgets[u].snr_linear;
    return [trials, rho](const BeamAssignment &a)
    {
        double acc = 0.0;
        for (const auto &ch : *trials)
            acc += detail::ul_rate_for_trial(ch, a, rho, nullptr);
        return acc / (double)trials->size();
    };
}

ChannelSampler make_phase_redraw_sampler_dl(std::vector<RaySet> raysets,
                                            std::vector<UtProfile> profiles, ArrayConfig cfg)
{
    return [raysets = std::move(raysets), profiles = std::move(profiles), cfg](std::mt19937_64 &rng)
    {
        std::uniform_real_distribution<double> uph(0.0, 2.0 * pi);
        std::vector<arma::cx_mat> out;
        out.reserve(raysets.size());
        for (size_t u = 0; u < raysets.size(); ++u)
        {
            RaySet rays = raysets[u];
            for (Ray &r : rays)
                r.phase_dl = uph(rng);
            out.push_back(beam_channel_approx_dl(rays, profiles[u], 0.0, 0.0, cfg).entries);
        }
        return out;
    };
}

ChannelSampler make_phase_redraw_sampler_ul(std::vector<RaySet> raysets,
                                            std::vector<UtProfile> profiles, ArrayConfig cfg)
{
    return [raysets = std::move(raysets), profiles = std::move(profiles), cfg](std::mt19937_64 &rng)
    {
        std::uniform_real_distribution<double> uph(0.0, 2.0 * pi);
        std::vector<arma::cx_mat> out;
        out.reserve(raysets.size());
        for (size_t u = 0; u < raysets.size(); ++u)
        {
            RaySet rays = raysets[u];
            for (Ray &r : rays)
                r.phase_ul = uph(rng);
            out.push_back(beam_channel_approx_ul(rays, profiles[u], 0.0, 0.0, cfg).entries);
        }
        return out;
    };
}

// Two-phase greedy core shared by the DL and UL schedulers. bs_norms[u] holds
// omega^bs per BS beam, ut_norms[u] omega^ut per UT beam.
static BeamAssignment greedy_core(const std::vector<arma::vec> &bs_norms,
                                  const std::vector<arma::vec> &ut_norms,
                                  const SchedulingLimits &limits,
                                  const RateEvaluator &evaluate)
{
    const arma::uword num_uts = (arma::uword)bs_norms.size();
    const arma::uword M = bs_norms.empty() ? 0 : bs_norms[0].n_elem;
    const arma::uword K = ut_norms.empty() ? 0 : ut_norms[0].n_elem;

    BeamAssignment a;
    a.bs_beams.assign(num_uts, {});
    a.ut_beams.assign(num_uts, {});

    // Phase 1: disjoint BS-side sets, all UT-side beams temporarily active.
    for (arma::uword u = 0; u < num_uts; ++u)
    {
        a.ut_beams[u].resize(K);
        for (arma::uword k = 0; k < K; ++k)
            a.ut_beams[u][k] = k;
    }

    std::vector<std::vector<bool>> excluded(num_uts, std::vector<bool>(M, false));
    arma::uword num_excluded = 0;
    auto exclude = [&](arma::uword u, arma::uword m)
    {
        if (!excluded[u][m])
        {
            excluded[u][m] = true;
            ++num_excluded;
        }
    };
    if (limits.max_bs_beams_per_ut == 0 || limits.max_total_bs_beams == 0)
        for (arma::uword u = 0; u < num_uts; ++u)
            for (arma::uword m = 0; m < M; ++m)
                exclude(u, m);

    double best_rate = 0.0;
    while (num_excluded < num_uts * M)
    {
        arma::uword u_sel = 0, m_sel = 0;
        double w_sel = -1.0;
        for (arma::uword u = 0; u < num_uts; ++u)
            for (arma::uword m = 0; m < M; ++m)
                if (!excluded[u][m] && bs_norms[u](m) > w_sel)
                {
                    w_sel = bs_norms[u](m);
                    u_sel = u;
                    m_sel = m;
                }

        auto &set = a.bs_beams[u_sel];
        set.insert(std::upper_bound(set.begin(), set.end(), m_sel), m_sel);
        double rate = evaluate(a);
        if (rate > best_rate)
        {
            best_rate = rate;
            if (a.total_bs_beams() >= limits.max_total_bs_beams)
                break;
            if (set.size() >= limits.max_bs_beams_per_ut)
                for (arma::uword m = 0; m < M; ++m)
                    exclude(u_sel, m);
            for (arma::uword u = 0; u < num_uts; ++u)
                exclude(u, m_sel);
        }
        else
        {
            set.erase(std::find(set.begin(), set.end(), m_sel));
            exclude(u_sel, m_sel);
        }
    }

    // Phase 2: UT-side sets per UT in index order.
    for (arma::uword u = 0; u < num_uts; ++u)
        a.ut_beams[u].clear();
    best_rate = 0.0;
    for (arma::uword u = 0; u < num_uts; ++u)
    {
        if (limits.max_ut_beams_per_ut == 0)
            continue;
        std::vector<bool> unselected(K, true);
        arma::uword remaining = K;
        while (remaining > 0)
        {
            arma::uword k_sel = 0;
            double w_sel = -1.0;
            for (arma::uword k = 0; k < K; ++k)
                if (unselected[k] && ut_norms[u](k) > w_sel)
                {
                    w_sel = ut_norms[u](k);
                    k_sel = k;
                }
            unselected[k_sel] = false;
            --remaining;

            auto &set = a.ut_beams[u];
            set.insert(std::upper_bound(set.begin(), set.end(), k_sel), k_sel);
            double rate = evaluate(a);
            if (rate > best_rate)
                best_rate = rate;
            else
                set.erase(std::find(set.begin(), set.end(), k_sel));

            if (set.size() >= limits.max_ut_beams_per_ut || remaining == 0)
                break;
        }
    }
    return a;
}

static std::vector<arma::vec> norms_bs(const std::vector<PowerMatrix> &omegas)
{
    std::vector<arma::vec> v;
    v.reserve(omegas.size());
    for (const auto &om : omegas)
        v.push_back(beam_norms(om).bs);
    return v;
}

static std::vector<arma::vec> norms_ut(const std::vector<PowerMatrix> &omegas)
{
    std::vector<arma::vec> v;
    v.reserve(omegas.size());
    for (const auto &om : omegas)
        v.push_back(beam_norms(om).ut);
    return v;
}

BeamAssignment greedy_schedule_dl(const std::vector<PowerMatrix> &omegas,
                                  const SchedulingLimits &limits,
                                  const RateEvaluator &evaluate)
{
    return greedy_core(norms_bs(omegas), norms_ut(omegas), limits, evaluate);
}

BeamAssignment greedy_schedule_ul(const std::vector<PowerMatrix> &omegas,
                                  const SchedulingLimits &limits,
                                  const RateEvaluator &evaluate)
{
    return greedy_core(norms_bs(omegas), norms_ut(omegas), limits, evaluate);
}

static std::vector<arma::uword> assignment_encoding(const BeamAssignment &a)
{
    std::vector<arma::uword> enc;
    for (const auto &s : a.bs_beams)
    {
        enc.push_back((arma::uword)s.size());
        enc.insert(enc.end(), s.begin(), s.end());
    }
    for (const auto &s : a.ut_beams)
    {
        enc.push_back((arma::uword)s.size());
        enc.insert(enc.end(), s.begin(), s.end());
    }
    return enc;
}

BeamAssignment exhaustive_schedule(const std::vector<PowerMatrix> &omegas,
                                   const SchedulingLimits &limits,
                                   const RateEvaluator &evaluate)
{
    const arma::uword num_uts = (arma::uword)omegas.size();
    const arma::uword K = omegas.empty() ? 0 : omegas[0].omega.n_rows;
    const arma::uword M = omegas.empty() ? 0 : omegas[0].omega.n_cols;

    // search-space guard
    double subsets_per_ut = 0.0;
    {
        double binom = 1.0; // C(K, 0)
        for (arma::uword j = 0; j <= std::min<arma::uword>(K, limits.max_ut_beams_per_ut); ++j)
        {
            subsets_per_ut += binom;
            binom *= (double)(K - j) / (double)(j + 1);
        }
    }
    double count = std::pow((double)num_uts + 1.0, (double)M) * std::pow(subsets_per_ut, (double)num_uts);
    if (count > 1e6)
        throw std::length_error("exhaustive_schedule: search space exceeds 1e6 candidates");

    BeamAssignment current;
    current.bs_beams.assign(num_uts, {});
    current.ut_beams.assign(num_uts, {});

    BeamAssignment best = current;
    double best_rate = evaluate(current);
    std::vector<arma::uword> best_enc = assignment_encoding(current);

    auto consider = [&]()
    {
        double rate = evaluate(current);
        if (rate > best_rate)
        {
            best_rate = rate;
            best = current;
            best_enc = assignment_encoding(current);
        }
        else if (rate == best_rate)
        {
            auto enc = assignment_encoding(current);
            if (enc < best_enc)
            {
                best = current;
                best_enc = std::move(enc);
            }
        }
    };

    // enumerate UT-side subsets per UT, then evaluate
    std::function<void(arma::uword)> enum_ut = [&](arma::uword u)
    {
        if (u == num_uts)
        {
            consider();
            return;
        }
        std::vector<arma::uword> subset;
        std::function<void(arma::uword)> grow = [&](arma::uword start)
        {
            current.ut_beams[u] = subset;
            enum_ut(u + 1);
            if (subset.size() >= limits.max_ut_beams_per_ut)
                return;
            for (arma::uword k = start; k < K; ++k)
            {
                subset.push_back(k);
                grow(k + 1);
                subset.pop_back();
            }
        };
        grow(0);
        current.ut_beams[u].clear();
    };

    // enumerate the owner (or none) of each BS beam with limit pruning
    std::vector<arma::uword> bs_count(num_uts, 0);
    arma::uword total_bs = 0;
    std::function<void(arma::uword)> enum_bs = [&](arma::uword m)
    {
        if (m == M)
        {
            enum_ut(0);
            return;
        }
        enum_bs(m + 1); // beam m unassigned
        if (total_bs >= limits.max_total_bs_beams)
            return;
        for (arma::uword u = 0; u < num_uts; ++u)
        {
            if (bs_count[u] >= limits.max_bs_beams_per_ut)
                continue;
            current.bs_beams[u].push_back(m);
            ++bs_count[u];
            ++total_bs;
            enum_bs(m + 1);
            --total_bs;
            --bs_count[u];
            current.bs_beams[u].pop_back();
        }
    };
    enum_bs(0);
    return best;
}

} // namespace beamsim
