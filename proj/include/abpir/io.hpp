// Copyright 2026 The abpir authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <json.hpp>

#include "abpir/sim.hpp"
#include "abpir/solver.hpp"
#include "abpir/verify.hpp"

namespace abpir {

/// Solved parameters plus bounds, baseline, and verdict, under the stable
/// key set used by the `rate` subcommand. Rationals are "num/den" strings;
/// decimals are display-only.
nlohmann::json param_set_json(const ParamSet& params);

nlohmann::json plan_json(const QueryPlan& plan);
QueryPlan plan_from_json_value(const nlohmann::json& j);

nlohmann::json answer_json(const Answer& answer);
nlohmann::json trace_json(const DecodeTrace& trace);
nlohmann::json privacy_report_json(const PrivacyReport& report);

}  // namespace abpir
