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

#include "beamsim/array_channel.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace beamsim
{

static constexpr double pi = 3.14159265358979323846;

static void check_angle(double angle, const char *what)
{
    if (!(angle >= -pi / 2 && angle <= pi / 2))
        throw std::domain_error(std::string(what) + " outside [-pi/2, pi/2]");
}

DftBeamformer::DftBeamformer(arma::uword n) : dim(n), matrix(n, n)
{
    if (n == 0)
        throw std::domain_error("DftBeamformer dimension must be positive");
    double scale = 1.0 / std::sqrt((double)n);
    for (arma::uword i = 0; i < n; ++i)
        for (arma::uword j = 0; j < n; ++j)
        {
            double arg = -2.0 * pi * (double)i * ((double)j - (double)n / 2.0) / (double)n;
            matrix(i, j) = scale * std::polar(1.0, arg);
        }
}

arma::cx_vec steering_bs(double aod, arma::uword num_bs_antennas)
{
    check_angle(aod, "aod");
    arma::cx_vec v(num_bs_antennas);
    double s = std::sin(aod);
    for (arma::uword b = 0; b < num_bs_antennas; ++b)
        v(b) = std::polar(1.0, -pi * (double)b * s);
    return v;
}

arma::cx_vec steering_ut(double aoa, arma::uword num_ut_antennas)
{
    check_angle(aoa, "aoa");
    arma::cx_vec v(num_ut_antennas);
    double s = std::sin(aoa);
    for (arma::uword a = 0; a < num_ut_antennas; ++a)
        v(a) = std::polar(1.0, -pi * (double)a * s);
    return v;
}

double doppler_of(double aoa, const UtProfile &profile)
{
    check_angle(aoa, "aoa");
    return profile.max_doppler_hz * std::sin(aoa);
}

arma::vec beam_grid(arma::uword num_beams)
{
    if (num_beams == 0)
        throw std::domain_error("beam_grid requires at least one beam");
    arma::vec phi(num_beams + 1);
    for (arma::uword i = 0; i <= num_beams; ++i)
        phi(i) = std::asin(2.0 * (double)i / (double)num_beams - 1.0);
    return phi;
}

arma::uword beam_index_of(double angle, arma::uword num_beams)
{
    check_angle(angle, "angle");
    // Cells are uniform in the sine domain: cell k covers sin in
    // [2k/N - 1, 2(k+1)/N - 1), right-closed at the last cell.
    double s = std::sin(angle);
    double idx = std::floor((s + 1.0) * (double)num_beams / 2.0);
    if (idx < 0.0)
        return 0;
    if (idx >= (double)num_beams)
        return num_beams - 1;
    return (arma::uword)idx;
}

arma::cx_mat space_channel_dl(const RaySet &rays, const UtProfile &profile,
                              double t_s, double f_hz, const ArrayConfig &cfg)
{
    arma::cx_mat g(cfg.num_ut_antennas, cfg.num_bs_antennas, arma::fill::zeros);
    for (const Ray &r : rays)
    {
        std::complex<double> coeff =
            std::sqrt(r.power) *
            std::polar(1.0, r.phase_dl + 2.0 * pi * (t_s * doppler_of(r.aoa, profile) - f_hz * r.delay_s));
        g += coeff * (steering_ut(r.aoa, cfg.num_ut_antennas) * arma::strans(steering_bs(r.aod, cfg.num_bs_antennas)));
    }
    return g;
}

BeamChannel beam_channel_exact(const RaySet &rays, const UtProfile &profile,
                               double t_s, double f_hz, const ArrayConfig &cfg)
{
    DftBeamformer vk(cfg.num_ut_antennas), vm(cfg.num_bs_antennas);
    BeamChannel bc;
    bc.time_s = t_s;
    bc.freq_hz = f_hz;
    bc.entries = vk.matrix.t() * space_channel_dl(rays, profile, t_s, f_hz, cfg) * arma::conj(vm.matrix);
    return bc;
}

BeamChannel beam_channel_approx_dl(const RaySet &rays, const UtProfile &profile,
                                   double t_s, double f_hz, const ArrayConfig &cfg)
{
    BeamChannel bc;
    bc.time_s = t_s;
    bc.freq_hz = f_hz;
    bc.entries.zeros(cfg.num_ut_antennas, cfg.num_bs_antennas);
    for (const Ray &r : rays)
    {
        arma::uword k = beam_index_of(r.aoa, cfg.num_ut_antennas);
        arma::uword m = beam_index_of(r.aod, cfg.num_bs_antennas);
        bc.entries(k, m) += std::sqrt(r.power) *
                            std::polar(1.0, r.phase_dl + 2.0 * pi * (t_s * doppler_of(r.aoa, profile) - f_hz * r.delay_s));
    }
    return bc;
}

BeamChannel beam_channel_approx_ul(const RaySet &rays, const UtProfile &profile,
                                   double t_s, double f_hz, const ArrayConfig &cfg)
{
    BeamChannel bc;
    bc.time_s = t_s;
    bc.freq_hz = f_hz;
    bc.entries.zeros(cfg.num_bs_antennas, cfg.num_ut_antennas);
    for (const Ray &r : rays)
    {
        arma::uword k = beam_index_of(r.aoa, cfg.num_ut_antennas);
        arma::uword m = beam_index_of(r.aod, cfg.num_bs_antennas);
        bc.entries(m, k) += std::sqrt(r.power) *
                            std::polar(1.0, r.phase_ul + 2.0 * pi * (t_s * doppler_of(r.aoa, profile) - f_hz * r.delay_s));
    }
    return bc;
}

PowerMatrix power_matrix(const RaySet &rays, const ArrayConfig &cfg)
{
    PowerMatrix pm;
    pm.omega.zeros(cfg.num_ut_antennas, cfg.num_bs_antennas);
    for (const Ray &r : rays)
    {
        arma::uword k = beam_index_of(r.aoa, cfg.num_ut_antennas);
        arma::uword m = beam_index_of(r.aod, cfg.num_bs_antennas);
        pm.omega(k, m) += r.power;
    }
    return pm;
}

BeamNorms beam_norms(const PowerMatrix &omega)
{
    BeamNorms n;
    n.bs = arma::sum(omega.omega, 0).t(); // over UT beams -> per BS beam
    n.ut = arma::sum(omega.omega, 1);     // over BS beams -> per UT beam
    return n;
}

} // namespace beamsim
