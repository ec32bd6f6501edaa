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

#include "beamsim/link_sim.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace beamsim
{

static constexpr double pi = 3.14159265358979323846;

OfdmFrame make_qpsk_frame(const std::vector<arma::uword> &tx_beam_ids, const OfdmConfig &ofdm,
                          arma::uword num_data_symbols, std::mt19937_64 &rng)
{
    const arma::uword nb = (arma::uword)tx_beam_ids.size();
    const arma::uword nus = ofdm.num_subcarriers;
    if (nb == 0)
        throw std::invalid_argument("make_qpsk_frame: no transmit beams");
    if (nb > nus)
        throw std::invalid_argument("make_qpsk_frame: more beams than subcarriers");

    OfdmFrame frame;
    frame.beam_ids = tx_beam_ids;
    frame.symbols.zeros(nus, 1 + num_data_symbols, nb);

    std::uniform_int_distribution<int> bit(0, 1);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (arma::uword b = 0; b < nb; ++b)
    {
        for (arma::uword n = b; n < nus; n += nb)
            frame.symbols(n, 0, b) = 1.0;
        for (arma::uword s = 1; s <= num_data_symbols; ++s)
            for (arma::uword n = 0; n < nus; ++n)
                frame.symbols(n, s, b) = std::complex<double>((1 - 2 * bit(rng)) * inv_sqrt2,
                                                              (1 - 2 * bit(rng)) * inv_sqrt2);
    }
    return frame;
}

Waveform ofdm_modulate(const OfdmFrame &frame, const OfdmConfig &ofdm)
{
    const arma::uword nus = ofdm.num_subcarriers;
    const arma::uword ncp = ofdm.cp_samples;
    const arma::uword lsym = ofdm.samples_per_symbol();
    const arma::uword nsym = frame.num_symbols();

    Waveform w;
    w.samples.zeros(nsym * lsym, frame.num_beams());
    for (arma::uword b = 0; b < frame.num_beams(); ++b)
        for (arma::uword s = 0; s < nsym; ++s)
        {
            // useful[i] = sum_n X_n e^{j 2 pi n i / N} = N * ifft(X)
            arma::cx_vec useful = (double)nus * arma::ifft(arma::cx_vec(frame.symbols.slice(b).col(s)));
            arma::uword base = s * lsym;
            if (ncp > 0)
                w.samples.submat(base, b, base + ncp - 1, b) = useful.tail(ncp);
            w.samples.submat(base + ncp, b, base + lsym - 1, b) = useful;
        }
    return w;
}

Waveform channel_apply_dl(const Waveform &transmit, const std::vector<arma::uword> &tx_beam_ids,
                          const RaySet &rays, const UtProfile &profile, const OfdmConfig &ofdm,
                          const ArrayConfig &cfg)
{
    const arma::uword L = transmit.length();
    const double ts = ofdm.sample_interval_s;

    arma::uword max_shift = 0;
    for (const Ray &r : rays)
        max_shift = std::max(max_shift, (arma::uword)std::llround(r.delay_s / ts));

    Waveform rx;
    rx.samples.zeros(L + max_shift, cfg.num_ut_antennas);

    for (const Ray &r : rays)
    {
        arma::uword m = beam_index_of(r.aod, cfg.num_bs_antennas);
        arma::uword b = (arma::uword)-1;
        for (arma::uword i = 0; i < tx_beam_ids.size(); ++i)
            if (tx_beam_ids[i] == m)
            {
                b = i;
                break;
            }
        if (b == (arma::uword)-1)
            continue; // no signal on this ray's departure beam

        arma::uword k = beam_index_of(r.aoa, cfg.num_ut_antennas);
        arma::uword shift = (arma::uword)std::llround(r.delay_s / ts);
        std::complex<double> coeff = std::sqrt(r.power) * std::polar(1.0, r.phase_dl);
        double nu = doppler_of(r.aoa, profile);
        for (arma::uword i = 0; i < L; ++i)
        {
            double t = ((double)(i + shift) - (double)ofdm.cp_samples) * ts;
            rx.samples(i + shift, k) += coeff * std::polar(1.0, 2.0 * pi * nu * t) * transmit.samples(i, b);
        }
    }
    return rx;
}

Waveform apply_sync(const Waveform &received, const SyncPlan &plan, const OfdmConfig &ofdm)
{
    const arma::uword L = received.length();
    const double ts = ofdm.sample_interval_s;

    Waveform out;
    out.samples.zeros(L, received.num_beams());
    for (arma::uword k = 0; k < received.num_beams(); ++k)
    {
        double tau = plan.tau_for(k);
        double nu = plan.nu_for(k);
        arma::uword shift = (arma::uword)std::llround(tau / ts);
        for (arma::uword i = 0; i + shift < L; ++i)
        {
            double t = ((double)i - (double)ofdm.cp_samples) * ts;
            out.samples(i, k) = received.samples(i + shift, k) * std::polar(1.0, -2.0 * pi * (t + tau) * nu);
        }
    }
    return out;
}

arma::cx_vec ofdm_demodulate_symbol(const arma::cx_vec &symbol_samples, const OfdmConfig &ofdm)
{
    const arma::uword nus = ofdm.num_subcarriers;
    const arma::uword ncp = ofdm.cp_samples;
    if (symbol_samples.n_elem < ncp + nus)
        throw std::invalid_argument("ofdm_demodulate_symbol: segment shorter than one symbol");
    return arma::fft(arma::cx_vec(symbol_samples.subvec(ncp, ncp + nus - 1))) / (double)nus;
}

arma::cx_cube ofdm_demodulate(const Waveform &waveform, const OfdmConfig &ofdm,
                              arma::uword num_symbols)
{
    const arma::uword lsym = ofdm.samples_per_symbol();
    if (waveform.length() < num_symbols * lsym)
        throw std::invalid_argument("ofdm_demodulate: waveform shorter than requested symbols");
    arma::cx_cube out(ofdm.num_subcarriers, num_symbols, waveform.num_beams());
    for (arma::uword b = 0; b < waveform.num_beams(); ++b)
        for (arma::uword s = 0; s < num_symbols; ++s)
            out.slice(b).col(s) =
                ofdm_demodulate_symbol(arma::cx_vec(waveform.samples.submat(s * lsym, b, (s + 1) * lsym - 1, b)), ofdm);
    return out;
}

// Linear interpolation of the comb estimates over all subcarriers, held flat
// beyond the first and last comb position.
static arma::cx_vec interp_comb(const arma::uvec &comb, const arma::cx_vec &values, arma::uword nus)
{
    arma::cx_vec out(nus);
    arma::uword seg = 0;
    for (arma::uword n = 0; n < nus; ++n)
    {
        if (n <= comb(0))
        {
            out(n) = values(0);
            continue;
        }
        if (n >= comb(comb.n_elem - 1))
        {
            out(n) = values(comb.n_elem - 1);
            continue;
        }
        while (comb(seg + 1) < n)
            ++seg;
        double w = (double)(n - comb(seg)) / (double)(comb(seg + 1) - comb(seg));
        out(n) = (1.0 - w) * values(seg) + w * values(seg + 1);
    }
    return out;
}

LinkMetrics run_link(const RaySet &rays, const UtProfile &profile, SyncMode plan_mode,
                     const BeamAssignment &assignment, const OfdmConfig &ofdm,
                     const ArrayConfig &cfg, double noise_power, std::uint64_t rng_seed,
                     BoundMode bound_mode)
{
    if (assignment.num_uts() == 0 || assignment.bs_beams[0].empty() || assignment.ut_beams[0].empty())
        throw std::invalid_argument("run_link: no scheduled beams");

    const std::vector<arma::uword> &tx_beams = assignment.bs_beams[0];
    const std::vector<arma::uword> &rx_beams = assignment.ut_beams[0];
    const arma::uword nb = (arma::uword)tx_beams.size();
    const arma::uword nus = ofdm.num_subcarriers;
    constexpr arma::uword num_data = 6;

    std::mt19937_64 data_rng = substream_rng(rng_seed, 0);
    OfdmFrame frame = make_qpsk_frame(tx_beams, ofdm, num_data, data_rng);
    Waveform tx = ofdm_modulate(frame, ofdm);
    Waveform rx = channel_apply_dl(tx, tx_beams, rays, profile, ofdm, cfg);

    if (noise_power > 0.0)
    {
        std::mt19937_64 noise_rng = substream_rng(rng_seed, 1);
        std::normal_distribution<double> gauss(0.0, std::sqrt(noise_power / 2.0));
        for (arma::uword k = 0; k < rx.num_beams(); ++k)
            for (arma::uword i = 0; i < rx.length(); ++i)
                rx.samples(i, k) += std::complex<double>(gauss(noise_rng), gauss(noise_rng));
    }

    OffsetBounds bounds = offset_bounds(rays, profile, cfg.num_ut_antennas, bound_mode);
    SyncPlan plan = make_sync_plan(bounds, plan_mode);
    Waveform synced = apply_sync(rx, plan, ofdm);
    arma::cx_cube demod = ofdm_demodulate(synced, ofdm, 1 + num_data);

    // LS channel estimate per (receive beam, transmit beam) on the pilot comb
    arma::cx_cube h_est(rx_beams.size(), nb, nus);
    for (arma::uword ik = 0; ik < rx_beams.size(); ++ik)
        for (arma::uword b = 0; b < nb; ++b)
        {
            arma::uword comb_len = (nus - b + nb - 1) / nb;
            arma::uvec comb(comb_len);
            arma::cx_vec vals(comb_len);
            for (arma::uword i = 0; i < comb_len; ++i)
            {
                arma::uword n = b + i * nb;
                comb(i) = n;
                vals(i) = demod(n, 0, rx_beams[ik]) / frame.symbols(n, 0, b);
            }
            arma::cx_vec h = interp_comb(comb, vals, nus);
            for (arma::uword n = 0; n < nus; ++n)
                h_est(ik, b, n) = h(n);
        }

    // ideal per-subcarrier reference from the effective-channel model
    arma::cx_cube g_ref(rx_beams.size(), nb, nus);
    for (arma::uword n = 0; n < nus; ++n)
    {
        arma::cx_mat g = detail::effective_subcarrier_channel(rays, profile, plan, n, ofdm, cfg, false);
        for (arma::uword ik = 0; ik < rx_beams.size(); ++ik)
            for (arma::uword b = 0; b < nb; ++b)
                g_ref(ik, b, n) = g(rx_beams[ik], tx_beams[b]);
    }

    LinkMetrics met;
    met.sync_mode = plan_mode;
    met.sinr_db.set_size(nus);
    double evm_num = 0.0, evm_den = 0.0;
    arma::vec sig_pow(nus, arma::fill::zeros), err_pow(nus, arma::fill::zeros);

    for (arma::uword s = 1; s <= num_data; ++s)
        for (arma::uword n = 0; n < nus; ++n)
        {
            arma::cx_mat h(rx_beams.size(), nb);
            arma::cx_vec y(rx_beams.size());
            arma::cx_vec x_tx(nb);
            for (arma::uword ik = 0; ik < rx_beams.size(); ++ik)
            {
                y(ik) = demod(n, s, rx_beams[ik]);
                for (arma::uword b = 0; b < nb; ++b)
                    h(ik, b) = h_est(ik, b, n);
            }
            for (arma::uword b = 0; b < nb; ++b)
                x_tx(b) = frame.symbols(n, s, b);

            arma::cx_vec y_ideal(rx_beams.size(), arma::fill::zeros);
            for (arma::uword ik = 0; ik < rx_beams.size(); ++ik)
                for (arma::uword b = 0; b < nb; ++b)
                    y_ideal(ik) += g_ref(ik, b, n) * x_tx(b);
            sig_pow(n) += std::pow(arma::norm(y_ideal), 2);
            err_pow(n) += std::pow(arma::norm(y - y_ideal), 2);

            arma::cx_vec x_hat;
            if (!arma::solve(x_hat, h, y))
                x_hat = arma::pinv(h) * y;

            evm_num += std::pow(arma::norm(x_hat - x_tx), 2);
            evm_den += std::pow(arma::norm(x_tx), 2);
            for (arma::uword b = 0; b < nb; ++b)
            {
                met.bit_errors += (x_hat(b).real() < 0) != (x_tx(b).real() < 0);
                met.bit_errors += (x_hat(b).imag() < 0) != (x_tx(b).imag() < 0);
                met.bits_total += 2;
            }
        }

    met.evm_rms = std::sqrt(evm_num / evm_den);
    met.ber = (double)met.bit_errors / (double)met.bits_total;
    for (arma::uword n = 0; n < nus; ++n)
        met.sinr_db(n) = 10.0 * std::log10(sig_pow(n) / std::max(err_pow(n), 1e-300));
    return met;
}

} // namespace beamsim
