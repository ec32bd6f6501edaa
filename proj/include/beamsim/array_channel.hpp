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

#ifndef beamsim_array_channel_H
#define beamsim_array_channel_H

#include <armadillo>
#include <utility>
#include <vector>

#include "beamsim/common.hpp"

namespace beamsim
{

// Half-wavelength ULA at both link ends. M antennas at the BS, K at the UT.
struct ArrayConfig
{
    arma::uword num_bs_antennas = 1; // M
    arma::uword num_ut_antennas = 1; // K
};

// One propagation ray. Angles in radians within [-pi/2, pi/2], power linear,
// delay in seconds, independent uniform phases for DL and UL.
struct Ray
{
    double power = 0.0;
    double aoa = 0.0;
    double aod = 0.0;
    double delay_s = 0.0;
    double phase_dl = 0.0;
    double phase_ul = 0.0;
};

using RaySet = std::vector<Ray>;

// Mobility profile of one UT. The maximum Doppler shift is f_c * v / c.
struct UtProfile
{
    RaySet rays;
    double carrier_freq_hz = 0.0;
    double velocity_mps = 0.0;
    double max_doppler_hz = 0.0;

    UtProfile() = default;
    UtProfile(RaySet r, double carrier_hz, double v_mps)
        : rays(std::move(r)), carrier_freq_hz(carrier_hz), velocity_mps(v_mps),
          max_doppler_hz(carrier_hz * v_mps / speed_of_light)
    {
    }
};

// Unitary DFT beamforming matrix with entry(i,j) = exp(-j 2 pi i (j - N/2) / N) / sqrt(N).
// Column j is the array weight vector of beam j.
struct DftBeamformer
{
    arma::uword dim = 0;
    arma::cx_mat matrix;

    explicit DftBeamformer(arma::uword n);
};

// Beam domain channel matrix at one (time, frequency) or subcarrier point.
// DL orientation is K x M (UT beams x BS beams); UL is M x K.
struct BeamChannel
{
    arma::cx_mat entries;
    double time_s = 0.0;
    double freq_hz = 0.0;
};

// Per-beam-pair average channel power, K x M, nonnegative.
struct PowerMatrix
{
    arma::mat omega;
};

struct BeamNorms
{
    arma::vec bs; // length M, per BS beam
    arma::vec ut; // length K, per UT beam
};

// ULA response at the BS for departure angle aod, element b = exp(-j pi b sin(aod)).
// Throws std::domain_error outside [-pi/2, pi/2].
arma::cx_vec steering_bs(double aod, arma::uword num_bs_antennas);

// ULA response at the UT for arrival angle aoa.
arma::cx_vec steering_ut(double aoa, arma::uword num_ut_antennas);

// Clarke-Jakes Doppler shift of the path with the given arrival angle.
double doppler_of(double aoa, const UtProfile &profile);

// Virtual-angle grid boundaries, boundary i = arcsin(2 i / N - 1), i = 0..N.
arma::vec beam_grid(arma::uword num_beams);

// Index of the half-open cell [phi_k, phi_{k+1}) containing the angle; the
// last cell is closed on the right so +pi/2 maps to N-1.
arma::uword beam_index_of(double angle, arma::uword num_beams);

// Space domain DL channel frequency response at (t, f): sum over rays of
// sqrt(p) e^{j zeta_dl} v_ut(aoa) v_bs(aod)^T e^{j 2 pi (t nu(aoa) - f delay)}.
arma::cx_mat space_channel_dl(const RaySet &rays, const UtProfile &profile,
                              double t_s, double f_hz, const ArrayConfig &cfg);

// Beam domain channel via the unitary DFT transform V_K^H G V_M^*.
BeamChannel beam_channel_exact(const RaySet &rays, const UtProfile &profile,
                               double t_s, double f_hz, const ArrayConfig &cfg);

// Beam domain approximation: each ray contributes sqrt(p) e^{j zeta_dl}
// e^{j 2 pi (t nu - f delay)} to the single cell containing its (aoa, aod).
BeamChannel beam_channel_approx_dl(const RaySet &rays, const UtProfile &profile,
                                   double t_s, double f_hz, const ArrayConfig &cfg);

// UL approximation, M x K orientation (entry (m, k)) with the UL phases.
BeamChannel beam_channel_approx_ul(const RaySet &rays, const UtProfile &profile,
                                   double t_s, double f_hz, const ArrayConfig &cfg);

// Omega: entry (k, m) is the total power of the rays in cell (k, m).
PowerMatrix power_matrix(const RaySet &rays, const ArrayConfig &cfg);

// Average squared channel norms per beam: bs[m] = sum_k omega(k,m),
// ut[k] = sum_m omega(k,m).
BeamNorms beam_norms(const PowerMatrix &omega);

} // namespace beamsim

#endif
