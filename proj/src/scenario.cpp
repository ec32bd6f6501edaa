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

#include "beamsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace beamsim
{

static constexpr double pi = 3.14159265358979323846;

BoundMode ScenarioConfig::link_bound_mode() const
{
    if (bound_mode == "analytic")
        return BoundMode::analytic;
    if (bound_mode == "empirical")
        return BoundMode::empirical;
    throw std::invalid_argument("bound_mode must be 'analytic' or 'empirical'");
}

ScenarioConfig ScenarioConfig::preset(const std::string &name)
{
    ScenarioConfig c;
    c.num_subcarriers = 2048;
    c.cp_samples = 144;
    c.sample_interval_s = 6.51e-9;
    c.num_uts = 20;
    c.num_clusters = 4;
    c.subpaths_per_cluster = 20;
    c.delay_spread_s = 1388.4e-9;
    c.angle_spread_rad = 0.034906585039886591;
    c.max_bs_beams_per_ut = 16;
    c.max_ut_beams_per_ut = 16;
    if (name == "30ghz")
    {
        c.carrier_freq_hz = 30e9;
        c.num_bs_antennas = 128;
        c.num_ut_antennas = 32;
        c.max_total_bs_beams = 128;
    }
    else if (name == "300ghz")
    {
        c.carrier_freq_hz = 300e9;
        c.num_bs_antennas = 256;
        c.num_ut_antennas = 128;
        c.max_total_bs_beams = 256;
    }
    else
        throw std::invalid_argument("unknown preset '" + name + "'");
    return c;
}

static std::vector<double> parse_double_list(const std::string &s)
{
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(std::stod(item));
    return out;
}

static std::vector<arma::uword> parse_uword_list(const std::string &s)
{
    std::vector<arma::uword> out;
    for (double v : parse_double_list(s))
        out.push_back((arma::uword)v);
    return out;
}

void ScenarioConfig::apply_override(const std::string &key, const std::string &value)
{
    try
    {
        if (key == "carrier_freq_hz")
            carrier_freq_hz = std::stod(value);
        else if (key == "num_bs_antennas")
            num_bs_antennas = (arma::uword)std::stoull(value);
        else if (key == "num_ut_antennas")
            num_ut_antennas = (arma::uword)std::stoull(value);
        else if (key == "num_uts")
            num_uts = (arma::uword)std::stoull(value);
        else if (key == "num_subcarriers")
            num_subcarriers = (arma::uword)std::stoull(value);
        else if (key == "cp_samples")
            cp_samples = (arma::uword)std::stoull(value);
        else if (key == "sample_interval_s")
            sample_interval_s = std::stod(value);
        else if (key == "num_clusters")
            num_clusters = (arma::uword)std::stoull(value);
        else if (key == "subpaths_per_cluster")
            subpaths_per_cluster = (arma::uword)std::stoull(value);
        else if (key == "delay_spread_s")
            delay_spread_s = std::stod(value);
        else if (key == "angle_spread_rad")
            angle_spread_rad = std::stod(value);
        else if (key == "aod_sector_rad")
            aod_sector_rad = std::stod(value);
        else if (key == "cluster_decay_db")
            cluster_decay_db = std::stod(value);
        else if (key == "velocity_mps")
            velocity_mps = std::stod(value);
        else if (key == "snr_grid_db")
            snr_grid_db = parse_double_list(value);
        else if (key == "eval_trials")
            eval_trials = (arma::uword)std::stoull(value);
        else if (key == "report_trials")
            report_trials = (arma::uword)std::stoull(value);
        else if (key == "decorr_trials")
            decorr_trials = (arma::uword)std::stoull(value);
        else if (key == "link_frames")
            link_frames = (arma::uword)std::stoull(value);
        else if (key == "max_bs_beams_per_ut")
            max_bs_beams_per_ut = (arma::uword)std::stoull(value);
        else if (key == "max_ut_beams_per_ut")
            max_ut_beams_per_ut = (arma::uword)std::stoull(value);
        else if (key == "max_total_bs_beams")
            max_total_bs_beams = (arma::uword)std::stoull(value);
        else if (key == "spread_k_list")
            spread_k_list = parse_uword_list(value);
        else if (key == "one_ring_radius_m")
            one_ring_radius_m = std::stod(value);
        else if (key == "bound_mode")
        {
            if (value != "analytic" && value != "empirical")
                throw std::invalid_argument("bad bound_mode");
            bound_mode = value;
        }
        else if (key == "master_seed")
            master_seed = std::stoull(value);
        else
            throw std::invalid_argument("unknown config key '" + key + "'");
    }
    catch (const std::invalid_argument &)
    {
        throw;
    }
    catch (const std::exception &)
    {
        throw std::invalid_argument("bad value for config key '" + key + "': " + value);
    }
    if (snr_grid_db.empty())
        throw std::invalid_argument("snr_grid_db must not be empty");
}

ScenarioConfig ScenarioConfig::from_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file '" + path + "'");
    ScenarioConfig c;
    std::string line;
    arma::uword lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        auto trim = [](std::string s)
        {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string stripped = trim(line);
        if (stripped.empty())
            continue;
        auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
        c.apply_override(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
    }
    return c;
}

static std::string fmt_num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string ScenarioConfig::canonical_string() const
{
    std::map<std::string, std::string> kv;
    kv["carrier_freq_hz"] = fmt_num(carrier_freq_hz);
    kv["num_bs_antennas"] = std::to_string(num_bs_antennas);
    kv["num_ut_antennas"] = std::to_string(num_ut_antennas);
    kv["num_uts"] = std::to_string(num_uts);
    kv["num_subcarriers"] = std::to_string(num_subcarriers);
    kv["cp_samples"] = std::to_string(cp_samples);
    kv["sample_interval_s"] = fmt_num(sample_interval_s);
    kv["num_clusters"] = std::to_string(num_clusters);
    kv["subpaths_per_cluster"] = std::to_string(subpaths_per_cluster);
    kv["delay_spread_s"] = fmt_num(delay_spread_s);
    kv["angle_spread_rad"] = fmt_num(angle_spread_rad);
    kv["aod_sector_rad"] = fmt_num(aod_sector_rad);
    kv["cluster_decay_db"] = fmt_num(cluster_decay_db);
    kv["velocity_mps"] = fmt_num(velocity_mps);
    {
        std::string s;
        for (double v : snr_grid_db)
            s += (s.empty() ? "" : ",") + fmt_num(v);
        kv["snr_grid_db"] = s;
    }
    kv["eval_trials"] = std::to_string(eval_trials);
    kv["report_trials"] = std::to_string(report_trials);
    kv["decorr_trials"] = std::to_string(decorr_trials);
    kv["link_frames"] = std::to_string(link_frames);
    kv["max_bs_beams_per_ut"] = std::to_string(max_bs_beams_per_ut);
    kv["max_ut_beams_per_ut"] = std::to_string(max_ut_beams_per_ut);
    kv["max_total_bs_beams"] = std::to_string(max_total_bs_beams);
    {
        std::string s;
        for (arma::uword v : spread_k_list)
            s += (s.empty() ? "" : ",") + std::to_string(v);
        kv["spread_k_list"] = s;
    }
    kv["one_ring_radius_m"] = fmt_num(one_ring_radius_m);
    kv["bound_mode"] = bound_mode;
    kv["master_seed"] = std::to_string(master_seed);

    std::string out;
    for (const auto &[k, v] : kv)
        out += k + " = " + v + "\n";
    return out;
}

std::uint64_t ScenarioConfig::hash64() const
{
    std::uint64_t h = 1469598103934665603ULL; // FNV-1a
    for (unsigned char c : canonical_string())
    {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

UtProfile scenario_profile(const ScenarioConfig &config)
{
    return UtProfile({}, config.carrier_freq_hz, config.velocity_mps);
}

RaySet generate_cluster_rays(const ScenarioConfig &config, arma::uword ut_index,
                             std::uint64_t rng_seed)
{
    std::mt19937_64 rng = substream_rng(rng_seed, ut_index);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> uph(0.0, 2.0 * pi);

    const arma::uword nc = config.num_clusters;
    const arma::uword ns = config.subpaths_per_cluster;
    const double half_sector = config.aod_sector_rad / 2.0;

    // exponential delay profile, earliest cluster at zero and strongest
    arma::vec delays(nc);
    for (arma::uword c = 0; c < nc; ++c)
        delays(c) = -std::log(1.0 - u01(rng));
    delays = arma::sort(delays);
    delays -= delays(0);

    arma::vec cluster_power(nc);
    for (arma::uword c = 0; c < nc; ++c)
        cluster_power(c) = std::pow(10.0, -config.cluster_decay_db * (double)c / 10.0);
    cluster_power /= arma::sum(cluster_power);

    // Laplacian offsets with standard deviation equal to the angle spread
    const double lap_scale = config.angle_spread_rad / std::sqrt(2.0);
    auto laplacian = [&]()
    {
        double u = u01(rng) - 0.5;
        return -lap_scale * std::copysign(std::log(1.0 - 2.0 * std::abs(u)), u);
    };

    RaySet rays;
    rays.reserve(nc * ns);
    for (arma::uword c = 0; c < nc; ++c)
    {
        double mean_aod = (2.0 * u01(rng) - 1.0) * half_sector;
        double mean_aoa = (2.0 * u01(rng) - 1.0) * pi / 2.0;
        for (arma::uword s = 0; s < ns; ++s)
        {
            Ray r;
            r.power = cluster_power(c) / (double)ns;
            r.aoa = std::clamp(mean_aoa + laplacian(), -pi / 2.0, pi / 2.0);
            r.aod = std::clamp(mean_aod + laplacian(), -half_sector, half_sector);
            r.delay_s = delays(c);
            r.phase_dl = uph(rng);
            r.phase_ul = uph(rng);
            rays.push_back(r);
        }
    }

    // rescale delays so the realized power-weighted RMS delay spread matches
    // the configured target
    double p_tot = 0.0, mean = 0.0;
    for (const Ray &r : rays)
    {
        p_tot += r.power;
        mean += r.power * r.delay_s;
    }
    mean /= p_tot;
    double var = 0.0;
    for (const Ray &r : rays)
        var += r.power * (r.delay_s - mean) * (r.delay_s - mean);
    double rms = std::sqrt(var / p_tot);
    if (rms > 0.0)
    {
        double scale = config.delay_spread_s / rms;
        for (Ray &r : rays)
            r.delay_s *= scale;
    }
    return rays;
}

} // namespace beamsim
