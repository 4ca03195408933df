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

#include <cstdint>
#include <string>
#include <vector>

#include "abpir/plan.hpp"
#include "abpir/solver.hpp"

namespace abpir {

/// Structural privacy verdict: across every demand set, every server must see
/// the same support census (exactly L_s sums per s-subset) with no repeated
/// subpacket inside one server's answer.
struct PrivacyReport {
  ProblemInstance instance;
  bool pass = false;
  int64_t demand_sets_checked = 0;
  std::string counterexample;  // empty when pass
};

PrivacyReport verify_privacy(const ParamSet& params, uint64_t seed);

/// Census + duplicate check of a single plan against expected per-size
/// counts; building block of verify_privacy, also used on mutated plans.
std::string check_plan_census(const QueryPlan& plan, const std::vector<BigInt>& l_counts);

/// Rank-oracle recoverability verdict: every demand unit vector must lie in
/// the row span of the full sum incidence matrix, over F2 and F3 both.
/// Independent of the procedural decoder.
struct RecoverabilityReport {
  bool pass = false;
  std::string detail;  // first failure, empty when pass
};

RecoverabilityReport verify_recoverability(const QueryPlan& plan);

/// Membership of a single subpacket's unit vector in the plan's row span over
/// F_p (exposed for negative controls in tests and reports).
bool unit_in_span(const QueryPlan& plan, const SubpacketRef& ref, uint32_t p);

enum class ConstraintMode { kEquality, kInequality };

/// Exhaustive basic-feasible-solution sweep of the download-minimization LP,
/// with exact rational pivots. Equality mode imposes the alignment recurrence
/// as equalities; inequality mode relaxes it with slack variables.
struct LPOracleResult {
  Rational optimum;               // minimal downloads per demand message
  std::vector<Rational> argmin;   // x_1..x_K at the optimum
  int64_t bases_enumerated = 0;
};

LPOracleResult lp_oracle(const ProblemInstance& inst, ConstraintMode mode);

}  // namespace abpir
