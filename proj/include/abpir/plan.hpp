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

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "abpir/solver.hpp"

namespace abpir {

/// One subpacket of one message; both indices 1-based.
struct SubpacketRef {
  int msg = 0;
  int64_t sp = 0;
  auto operator<=>(const SubpacketRef&) const = default;
};

/// A downloaded sum: subpackets of pairwise distinct messages, terms sorted
/// by message. A single term is a singleton download.
struct SumSpec {
  std::vector<SubpacketRef> terms;

  std::vector<int> support() const;
  auto operator<=>(const SumSpec&) const = default;
};

/// The full per-server query lists for one demand set, in canonical
/// transmission order: sorted by (support size, support, indices), which is
/// independent of which messages are demanded.
struct QueryPlan {
  ProblemInstance instance;
  std::vector<int> demand;  // W, sorted ascending, 1-based
  int64_t subpackets = 0;   // L
  uint64_t seed = 0;
  std::vector<std::vector<SumSpec>> servers;  // size N

  int64_t sums_per_server() const { return static_cast<int64_t>(servers.at(0).size()); }
  bool is_demand(int msg) const;
  bool operator==(const QueryPlan&) const = default;
};

/// Builds the query plan for demand set `demand` from solved parameters.
///
/// The construction is deterministic given (params, demand): per-server
/// counters allocate subpacket indices, fresh interference tuples are emitted
/// per subset, every other server's tuple is embedded verbatim exactly once
/// per consuming server (supply and demand match because the per-subset
/// counts satisfy the alignment recurrence), and each mixed sum designates
/// one new demand subpacket whose side information comes from strictly
/// earlier recovery rounds at other servers. The seed only drives the final
/// per-message index relabeling. The result is always re-checked by a formal
/// symbolic decode; failures throw BuildError and never degrade silently.
QueryPlan build_plan(const ParamSet& params, const std::vector<int>& demand, uint64_t seed);

/// (i, j) = (demand terms, interference terms) of a sum under demand set W.
std::pair<int, int> classify(const SumSpec& sum, const std::vector<int>& demand);

/// Per-server map from support set to number of sums carried on exactly that
/// support. Equality of censuses across demand sets is the structural privacy
/// property.
using SupportCensus = std::map<std::vector<int>, int64_t>;
std::vector<SupportCensus> census(const QueryPlan& plan);

enum class PlanFormat { kJson, kCsv, kMarkdown };
PlanFormat plan_format_from_string(const std::string& name);

std::string serialize(const QueryPlan& plan, PlanFormat format);
QueryPlan plan_from_json(const std::string& text);

/// The seed-derived relabeling permutation for one message: perm[i-1] is the
/// new index of subpacket i. Exposed so tests can relate plans built with
/// different seeds.
std::vector<int64_t> relabel_permutation(uint64_t seed, int msg, int64_t subpackets);

}  // namespace abpir
