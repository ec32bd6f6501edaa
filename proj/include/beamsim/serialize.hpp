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

#ifndef beamsim_serialize_H
#define beamsim_serialize_H

#include <json.hpp>

#include "beamsim/bdma_sched.hpp"
#include "beamsim/pbs_sync.hpp"

namespace beamsim
{

// Rays serialize as an array of {power, aoa, aod, delay_s, phase_dl, phase_ul}.
nlohmann::json rayset_to_json(const RaySet &rays);
RaySet rayset_from_json(const nlohmann::json &j);

nlohmann::json sync_plan_to_json(const SyncPlan &plan);
SyncPlan sync_plan_from_json(const nlohmann::json &j);

nlohmann::json spread_report_to_json(const SpreadReport &report);

// Array of {ut, tx_beams, rx_beams}. For DL assignments the BS-side sets are
// the transmit beams; pass downlink = false for the UL orientation.
nlohmann::json assignment_to_json(const BeamAssignment &assignment, bool downlink = true);

} // namespace beamsim

#endif
