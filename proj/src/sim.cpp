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

#include "abpir/sim.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace abpir {

namespace {

// Formal linear combination of subpacket tokens with integer coefficients.
// Characteristic-free: if decoding closes here, it closes over every field.
using FormalSum = std::vector<std::pair<SubpacketRef, int64_t>>;

FormalSum formal_sub(const FormalSum& a, const FormalSum& b) {
  FormalSum out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, -b[j].second);
      j++;
    } else {
      int64_t c = a[i].second - b[j].second;
      if (c != 0) out.emplace_back(a[i].first, c);
      i++;
      j++;
    }
  }
  return out;
}

struct NumericAlgebra {
  using Value = uint64_t;
  const FieldSpec& field;
  const std::vector<Answer>& answers;

  Value value_of(int server, int64_t index) const {
    return answers[static_cast<size_t>(server - 1)].values[static_cast<size_t>(index)];
  }
  Value sub(Value a, Value b) const { return field.sub(a, b); }
};

struct FormalAlgebra {
  using Value = FormalSum;
  const QueryPlan& plan;

  Value value_of(int server, int64_t index) const {
    const auto& spec = plan.servers[static_cast<size_t>(server - 1)][static_cast<size_t>(index)];
    FormalSum v;
    v.reserve(spec.terms.size());
    for (const auto& t : spec.terms) v.emplace_back(t, 1);  // terms already sorted
    return v;
  }
  Value sub(const Value& a, const Value& b) const { return formal_sub(a, b); }
};

template <typename Algebra>
struct Decoder {
  using Value = typename Algebra::Value;

  const QueryPlan& plan;
  const Algebra& algebra;
  DecodeTrace trace;
  std::string error;

  // recovered[d][sp-1] for demand position d.
  std::vector<std::vector<std::optional<Value>>> recovered;

  explicit Decoder(const QueryPlan& p, const Algebra& a) : plan(p), algebra(a) {
    recovered.assign(plan.demand.size(),
                     std::vector<std::optional<Value>>(static_cast<size_t>(plan.subpackets)));
  }

  size_t demand_pos(int msg) const {
    return static_cast<size_t>(std::lower_bound(plan.demand.begin(), plan.demand.end(), msg) -
                               plan.demand.begin());
  }

  bool fail(const std::string& why) {
    error = why;
    return false;
  }

  bool store(const SubpacketRef& ref, Value value, int server, int64_t index,
             std::vector<SubpacketRef> side_info) {
    auto& slot = recovered[demand_pos(ref.msg)][static_cast<size_t>(ref.sp - 1)];
    if (slot.has_value())
      return fail("subpacket " + std::to_string(ref.msg) + ":" + std::to_string(ref.sp) +
                  " recovered twice");
    slot = std::move(value);
    trace.steps.push_back({ref, server, index, std::move(side_info)});
    return true;
  }

  bool run() {
    const int n_servers = plan.instance.servers;

    struct ResolveItem {
      std::vector<SubpacketRef> refs;  // demand refs only
      Value value;
      int64_t sum_index;
      std::vector<SubpacketRef> cancelled;  // interference tuple, if any
    };
    // by_degree[i-1][server-1], each in ascending sum-index order.
    std::vector<std::vector<std::vector<ResolveItem>>> by_degree(
        plan.demand.size(), std::vector<std::vector<ResolveItem>>(static_cast<size_t>(n_servers)));

    // Interference tuples offered verbatim by each server, keyed by term set.
    std::map<std::vector<SubpacketRef>, std::vector<std::pair<int, int64_t>>> unit_suppliers;
    for (int n = 1; n <= n_servers; n++) {
      const auto& sums = plan.servers[static_cast<size_t>(n - 1)];
      for (size_t t = 0; t < sums.size(); t++) {
        auto [i, j] = classify(sums[t], plan.demand);
        if (i == 0) unit_suppliers[sums[t].terms].emplace_back(n, static_cast<int64_t>(t));
      }
    }

    // Phase 1: demand singletons; phase 2: strip interference tuples from
    // every mixed sum, queueing the demand-only residue for phase 3.
    for (int n = 1; n <= n_servers; n++) {
      const auto& sums = plan.servers[static_cast<size_t>(n - 1)];
      for (size_t t = 0; t < sums.size(); t++) {
        const SumSpec& spec = sums[t];
        auto [i, j] = classify(spec, plan.demand);
        if (i == 0) continue;
        ResolveItem item;
        item.sum_index = static_cast<int64_t>(t);
        item.value = algebra.value_of(n, static_cast<int64_t>(t));
        for (const auto& ref : spec.terms)
          if (plan.is_demand(ref.msg)) item.refs.push_back(ref);
        if (j > 0) {
          std::vector<SubpacketRef> tuple;
          for (const auto& ref : spec.terms)
            if (!plan.is_demand(ref.msg)) tuple.push_back(ref);
          auto it = unit_suppliers.find(tuple);
          const std::pair<int, int64_t>* supplier = nullptr;
          if (it != unit_suppliers.end())
            for (const auto& cand : it->second)
              if (cand.first != n) {
                supplier = &cand;
                break;
              }
          if (supplier == nullptr)
            return fail("no other server supplies the interference tuple of server " +
                        std::to_string(n) + " sum " + std::to_string(t));
          item.value = algebra.sub(item.value, algebra.value_of(supplier->first, supplier->second));
          item.cancelled = std::move(tuple);
        }
        by_degree[static_cast<size_t>(i - 1)][static_cast<size_t>(n - 1)].push_back(std::move(item));
      }
    }

    // Phase 3: ascending demand degree; inside a degree, servers then sums in
    // canonical order. Every sum must expose exactly one new subpacket.
    for (size_t deg = 0; deg < plan.demand.size(); deg++) {
      for (int n = 1; n <= n_servers; n++) {
        for (auto& item : by_degree[deg][static_cast<size_t>(n - 1)]) {
          const SubpacketRef* fresh = nullptr;
          for (const auto& ref : item.refs) {
            if (!recovered[demand_pos(ref.msg)][static_cast<size_t>(ref.sp - 1)].has_value()) {
              if (fresh != nullptr)
                return fail("sum " + std::to_string(item.sum_index) + " at server " +
                            std::to_string(n) + " has multiple unknown demand terms");
              fresh = &ref;
            }
          }
          if (fresh == nullptr)
            return fail("sum " + std::to_string(item.sum_index) + " at server " +
                        std::to_string(n) + " exposes nothing new");
          Value v = item.value;
          std::vector<SubpacketRef> side = item.cancelled;
          for (const auto& ref : item.refs) {
            if (&ref == fresh) continue;
            v = algebra.sub(v, *recovered[demand_pos(ref.msg)][static_cast<size_t>(ref.sp - 1)]);
            side.push_back(ref);
          }
          if (!store(*fresh, std::move(v), n, item.sum_index, std::move(side))) return false;
        }
      }
    }

    for (size_t d = 0; d < plan.demand.size(); d++)
      for (int64_t sp = 1; sp <= plan.subpackets; sp++)
        if (!recovered[d][static_cast<size_t>(sp - 1)].has_value())
          return fail("demand subpacket " + std::to_string(plan.demand[d]) + ":" +
                      std::to_string(sp) + " never recovered");
    return true;
  }
};

}  // namespace

MessageStore gen_messages(const FieldSpec& field, int messages, int64_t subpackets, uint64_t seed) {
  MessageStore store;
  store.field = field;
  store.messages = messages;
  store.subpackets = subpackets;
  store.symbols.assign(static_cast<size_t>(messages),
                       std::vector<uint64_t>(static_cast<size_t>(subpackets)));
  SplitMix64 rng(seed);
  for (auto& row : store.symbols)
    for (auto& sym : row) sym = draw_symbol(rng, field);
  return store;
}

Answer server_answer(const QueryPlan& plan, int server, const MessageStore& store) {
  if (store.messages != plan.instance.messages || store.subpackets != plan.subpackets)
    throw InvalidArgument("server_answer: store shape does not match plan");
  Answer a;
  a.server = server;
  const auto& sums = plan.servers.at(static_cast<size_t>(server - 1));
  a.values.reserve(sums.size());
  for (const auto& spec : sums) {
    uint64_t acc = 0;
    for (const auto& t : spec.terms) acc = store.field.add(acc, store.at(t));
    a.values.push_back(acc);
  }
  return a;
}

DecodeResult decode(const QueryPlan& plan, const FieldSpec& field,
                    const std::vector<Answer>& answers) {
  if (static_cast<int>(answers.size()) != plan.instance.servers)
    throw InvalidArgument("decode: need one answer per server");
  NumericAlgebra algebra{field, answers};
  Decoder<NumericAlgebra> dec(plan, algebra);
  DecodeResult result;
  result.ok = dec.run();
  result.error = dec.error;
  result.trace = std::move(dec.trace);
  if (result.ok) {
    result.recovered.assign(plan.demand.size(),
                            std::vector<uint64_t>(static_cast<size_t>(plan.subpackets)));
    for (size_t d = 0; d < plan.demand.size(); d++)
      for (int64_t sp = 0; sp < plan.subpackets; sp++)
        result.recovered[d][static_cast<size_t>(sp)] = *dec.recovered[d][static_cast<size_t>(sp)];
  }
  return result;
}

DecodeResult decode_symbolic(const QueryPlan& plan) {
  FormalAlgebra algebra{plan};
  Decoder<FormalAlgebra> dec(plan, algebra);
  DecodeResult result;
  result.ok = dec.run();
  result.error = dec.error;
  result.trace = std::move(dec.trace);
  if (!result.ok) return result;
  for (size_t d = 0; d < plan.demand.size(); d++) {
    for (int64_t sp = 1; sp <= plan.subpackets; sp++) {
      const SubpacketRef ref{plan.demand[d], sp};
      const FormalSum& v = *dec.recovered[d][static_cast<size_t>(sp - 1)];
      if (v.size() != 1 || v[0].first != ref || v[0].second != 1) {
        result.ok = false;
        result.error = "symbolic decode of " + std::to_string(ref.msg) + ":" +
                       std::to_string(ref.sp) + " is not the bare subpacket";
        return result;
      }
    }
  }
  return result;
}

Rational measure_rate(const QueryPlan& plan) {
  for (const auto& server : plan.servers)
    if (static_cast<int64_t>(server.size()) != plan.sums_per_server())
      throw InvalidArgument("measure_rate: uneven per-server sum counts");
  const BigInt numer = BigInt(static_cast<long>(plan.demand.size())) * BigInt(static_cast<long>(plan.subpackets));
  const BigInt denom = BigInt(plan.instance.servers) * BigInt(static_cast<long>(plan.sums_per_server()));
  return Rational(numer, denom);
}

SimReport simulate(const QueryPlan& plan, const FieldSpec& field, uint64_t message_seed) {
  SimReport report;
  MessageStore store = gen_messages(field, plan.instance.messages, plan.subpackets, message_seed);
  std::vector<Answer> answers;
  answers.reserve(static_cast<size_t>(plan.instance.servers));
  int64_t downloaded = 0;
  for (int n = 1; n <= plan.instance.servers; n++) {
    answers.push_back(server_answer(plan, n, store));
    downloaded += static_cast<int64_t>(answers.back().values.size());
  }
  report.result = decode(plan, field, answers);
  report.symbols_downloaded = downloaded;
  report.rate = measure_rate(plan);
  report.matches_store = report.result.ok;
  if (report.result.ok) {
    for (size_t d = 0; d < plan.demand.size() && report.matches_store; d++)
      if (report.result.recovered[d] != store.symbols[static_cast<size_t>(plan.demand[d] - 1)])
        report.matches_store = false;
  }
  return report;
}

}  // namespace abpir
