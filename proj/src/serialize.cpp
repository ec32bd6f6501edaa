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

#include "beamsim/serialize.hpp"

namespace beamsim
{

nlohmann::json rayset_to_json(const RaySet &rays)
{
    nlohmann::json j = nlohmann::json::array();
    for (const Ray &r : rays)
        j.push_back({{"power", r.power},
                     {"aoa", r.aoa},
                     {"aod", r.aod},
                     {"delay_s", r.delay_s},
                     {"phase_dl", r.phase_dl},
                     {"phase_ul", r.phase_ul}});
    return j;
}

RaySet rayset_from_json(const nlohmann::json &j)
{
    RaySet rays;
    rays.reserve(j.size());
    for (const auto &e : j)
    {
        Ray r;
        r.power = e.at("power").get<double>();
        r.aoa = e.at("aoa").get<double>();
        r.aod = e.at("aod").get<double>();
        r.delay_s = e.at("delay_s").get<double>();
        r.phase_dl = e.at("phase_dl").get<double>();
        r.phase_ul = e.at("phase_ul").get<double>();
        rays.push_back(r);
    }
    return rays;
}

nlohmann::json sync_plan_to_json(const SyncPlan &plan)
{
    nlohmann::json j;
    j["mode"] = plan.mode == SyncMode::joint ? "joint" : "per_beam";
    j["tau_syn_s"] = std::vector<double>(plan.tau_syn_s.begin(), plan.tau_syn_s.end());
    j["nu_syn_hz"] = std::vector<double>(plan.nu_syn_hz.begin(), plan.nu_syn_hz.end());
    return j;
}

SyncPlan sync_plan_from_json(const nlohmann::json &j)
{
    SyncPlan plan;
    std::string mode = j.at("mode").get<std::string>();
    if (mode == "joint")
        plan.mode = SyncMode::joint;
    else if (mode == "per_beam")
        plan.mode = SyncMode::per_beam;
    else
        throw std::invalid_argument("sync plan mode must be 'joint' or 'per_beam'");
    auto tau = j.at("tau_syn_s").get<std::vector<double>>();
    auto nu = j.at("nu_syn_hz").get<std::vector<double>>();
    plan.tau_syn_s = arma::vec(tau);
    plan.nu_syn_hz = arma::vec(nu);
    return plan;
}

nlohmann::json spread_report_to_json(const SpreadReport &report)
{
    return {{"delay_spread_s", report.delay_spread_s},
            {"doppler_spread_hz", report.doppler_spread_hz},
            {"mode", report.mode == SyncMode::joint ? "joint" : "per_beam"},
            {"bound_mode", report.bound_mode == BoundMode::analytic ? "analytic" : "empirical"}};
}

nlohmann::json assignment_to_json(const BeamAssignment &assignment, bool downlink)
{
    nlohmann::json j = nlohmann::json::array();
    for (arma::uword u = 0; u < assignment.num_uts(); ++u)
    {
        const auto &tx = downlink ? assignment.bs_beams[u] : assignment.ut_beams[u];
        const auto &rx = downlink ? assignment.ut_beams[u] : assignment.bs_beams[u];
        j.push_back({{"ut", u},
                     {"tx_beams", std::vector<arma::uword>(tx.begin(), tx.end())},
                     {"rx_beams", std::vector<arma::uword>(rx.begin(), rx.end())}});
    }
    return j;
}

} // namespace beamsim
