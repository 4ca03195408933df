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

#include "abpir/field.hpp"
#include "abpir/plan.hpp"

namespace abpir {

/// K messages of L symbols each over one field.
struct MessageStore {
  FieldSpec field;
  int messages = 0;
  int64_t subpackets = 0;
  std::vector<std::vector<uint64_t>> symbols;  // symbols[msg-1][sp-1]

  uint64_t at(const SubpacketRef& r) const {
    return symbols[static_cast<size_t>(r.msg - 1)][static_cast<size_t>(r.sp - 1)];
  }
};

/// Seeded uniform message material; identical across runs for a given seed.
MessageStore gen_messages(const FieldSpec& field, int messages, int64_t subpackets, uint64_t seed);

/// One server's reply: field sums of the referenced symbols, aligned 1:1 with
/// the plan's canonical sum order.
struct Answer {
  int server = 0;
  std::vector<uint64_t> values;
};

Answer server_answer(const QueryPlan& plan, int server, const MessageStore& store);

/// One decoding step: which subpacket a sum exposed and what was stripped to
/// expose it.
struct DecodeStep {
  SubpacketRef recovered;
  int server = 0;
  int64_t sum_index = 0;                // index into that server's sum list
  std::vector<SubpacketRef> side_info;  // cancelled interference + known demand refs
};

struct DecodeTrace {
  std::vector<DecodeStep> steps;
};

struct DecodeResult {
  bool ok = false;
  std::string error;
  // recovered[d] holds the L symbols of plan.demand[d]; filled on success.
  std::vector<std::vector<uint64_t>> recovered;
  DecodeTrace trace;
};

/// Interference cancellation decoder. Reads singletons, strips each mixed
/// sum's interference tuple using the matching tuple retrieved verbatim from
/// another server, then resolves demand-only sums in ascending round order.
/// Purely structural: uses only the plan, the demand set, and answer values.
DecodeResult decode(const QueryPlan& plan, const FieldSpec& field,
                    const std::vector<Answer>& answers);

/// The same decoder run on opaque formal symbols instead of field elements;
/// proves decodability over every field at once. Used as the builder's
/// mandatory self-check.
DecodeResult decode_symbolic(const QueryPlan& plan);

/// D*L / (N*M) from the plan's actual dimensions, as an exact rational.
Rational measure_rate(const QueryPlan& plan);

struct SimReport {
  DecodeResult result;
  bool matches_store = false;
  int64_t symbols_downloaded = 0;
  Rational rate;
};

/// Full round trip: generate messages, answer, decode, compare.
SimReport simulate(const QueryPlan& plan, const FieldSpec& field, uint64_t message_seed);

}  // namespace abpir
