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

#include "abpir/plan.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "abpir/field.hpp"
#include "abpir/sim.hpp"

namespace abpir {

namespace {

int64_t to_i64(const BigInt& v, const std::string& what) {
  if (!v.fits_slong_p())
    throw InvalidArgument("build_plan: " + what + " too large for plan construction");
  return static_cast<int64_t>(v.get_si());
}

// Small deterministic max-flow (Dinic), used to split new-term remainders
// across subset groups exactly.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : adj_(static_cast<size_t>(nodes)) {}

  int add_edge(int from, int to, int64_t cap) {
    adj_[static_cast<size_t>(from)].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({to, cap, 0});
    adj_[static_cast<size_t>(to)].push_back(static_cast<int>(edges_.size()));
    edges_.push_back({from, 0, 0});
    return static_cast<int>(edges_.size()) - 2;
  }

  int64_t flow_on(int edge_id) const { return edges_[static_cast<size_t>(edge_id)].flow; }

  int64_t run(int source, int sink) {
    int64_t total = 0;
    while (bfs(source, sink)) {
      iter_.assign(adj_.size(), 0);
      while (int64_t pushed = dfs(source, sink, INT64_MAX)) total += pushed;
    }
    return total;
  }

 private:
  struct Edge {
    int to;
    int64_t cap;
    int64_t flow;
  };

  bool bfs(int source, int sink) {
    level_.assign(adj_.size(), -1);
    level_[static_cast<size_t>(source)] = 0;
    std::vector<int> queue{source};
    for (size_t head = 0; head < queue.size(); head++) {
      const int u = queue[head];
      for (int id : adj_[static_cast<size_t>(u)]) {
        const Edge& e = edges_[static_cast<size_t>(id)];
        if (e.cap - e.flow > 0 && level_[static_cast<size_t>(e.to)] < 0) {
          level_[static_cast<size_t>(e.to)] = level_[static_cast<size_t>(u)] + 1;
          queue.push_back(e.to);
        }
      }
    }
    return level_[static_cast<size_t>(sink)] >= 0;
  }

  int64_t dfs(int u, int sink, int64_t limit) {
    if (u == sink) return limit;
    for (size_t& i = iter_[static_cast<size_t>(u)]; i < adj_[static_cast<size_t>(u)].size(); i++) {
      const int id = adj_[static_cast<size_t>(u)][i];
      Edge& e = edges_[static_cast<size_t>(id)];
      if (e.cap - e.flow <= 0 || level_[static_cast<size_t>(e.to)] != level_[static_cast<size_t>(u)] + 1)
        continue;
      const int64_t pushed = dfs(e.to, sink, std::min(limit, e.cap - e.flow));
      if (pushed > 0) {
        e.flow += pushed;
        edges_[static_cast<size_t>(id ^ 1)].flow -= pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> level_;
  std::vector<size_t> iter_;
};

// Lexicographic j-subsets of a sorted element list.
template <typename Fn>
void for_each_subset(const std::vector<int>& elems, int j, Fn&& fn) {
  const int n = static_cast<int>(elems.size());
  if (j < 0 || j > n) return;
  std::vector<int> idx(static_cast<size_t>(j));
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<int> subset(static_cast<size_t>(j));
  while (true) {
    for (int t = 0; t < j; t++) subset[static_cast<size_t>(t)] = elems[static_cast<size_t>(idx[static_cast<size_t>(t)])];
    fn(subset);
    int t = j - 1;
    while (t >= 0 && idx[static_cast<size_t>(t)] == n - j + t) t--;
    if (t < 0) break;
    idx[static_cast<size_t>(t)]++;
    for (int u = t + 1; u < j; u++) idx[static_cast<size_t>(u)] = idx[static_cast<size_t>(u - 1)] + 1;
  }
}

// Recovered-but-not-yet-reused demand subpackets available to one consuming
// server, ordered by recovery round, then source server, then index. Round
// order is what guarantees acyclic decoding: a round-i sum only ever leans on
// subpackets exposed in rounds < i elsewhere.
struct KnownQueue {
  struct Entry {
    int64_t sp;
    int round;
  };
  std::vector<Entry> entries;
  size_t head = 0;

  int64_t pop(int consumer_round, const std::string& context) {
    if (head >= entries.size())
      throw BuildError("build_plan: demand side information exhausted at " + context);
    const Entry& e = entries[head];
    if (e.round >= consumer_round)
      throw BuildError("build_plan: no round-<" + std::to_string(consumer_round) +
                       " side information left at " + context);
    head++;
    return e.sp;
  }
};

struct Builder {
  const ParamSet& params;
  const ProblemInstance inst;
  std::vector<int> demand;  // sorted W
  std::vector<int> iface;   // sorted complement
  int64_t total_l = 0;      // L
  int64_t per_server_new = 0;  // R = R_1 + ... + R_D
  std::vector<int64_t> l_counts;       // 1-based via l(s)
  std::vector<int64_t> r_counts;       // 1-based via r(i)
  std::vector<int64_t> round_prefix;   // round_prefix[i] = R_1 + ... + R_i
  int64_t iface_per_server = 0;        // U, fresh interference indices per (server, message)

  int64_t l(int s) const { return l_counts[static_cast<size_t>(s - 1)]; }
  int64_t r(int i) const { return r_counts[static_cast<size_t>(i - 1)]; }

  // demand message w, server n: indices (n-1)R + 1 .. nR, rounds in order.
  int64_t block_base(int server) const { return static_cast<int64_t>(server - 1) * per_server_new; }

  std::map<int, size_t> demand_pos;  // msg -> position in demand

  Builder(const ParamSet& p, std::vector<int> w) : params(p), inst(p.instance), demand(std::move(w)) {
    std::sort(demand.begin(), demand.end());
    if (static_cast<int>(demand.size()) != inst.demands)
      throw InvalidArgument("build_plan: demand set size must equal D");
    for (size_t i = 0; i + 1 < demand.size(); i++)
      if (demand[i] == demand[i + 1]) throw InvalidArgument("build_plan: duplicate demand index");
    for (int m : demand)
      if (m < 1 || m > inst.messages) throw InvalidArgument("build_plan: demand index out of range");
    for (int m = 1; m <= inst.messages; m++)
      if (!std::binary_search(demand.begin(), demand.end(), m)) iface.push_back(m);
    for (size_t i = 0; i < demand.size(); i++) demand_pos[demand[i]] = i;

    total_l = to_i64(params.subpackets, "L");
    for (int s = 1; s <= inst.messages; s++) l_counts.push_back(to_i64(params.l(s), "L_s"));
    round_prefix.assign(1, 0);
    for (int i = 1; i <= inst.demands; i++) {
      r_counts.push_back(to_i64(params.r(i), "R_i"));
      round_prefix.push_back(round_prefix.back() + r_counts.back());
      per_server_new += r_counts.back();
    }
    const BigInt plan_size = BigInt(inst.servers) * params.downloads_per_server;
    if (plan_size > BigInt(20'000'000))
      throw InvalidArgument("build_plan: instance too large (" + plan_size.get_str() +
                            " sums); desk-scale limit is 20e6");
    const int kd = inst.interference();
    BigInt iface_total = 0;
    for (int j = 1; j <= kd; j++) iface_total += binom(kd - 1, j - 1) * params.l(j);
    if (iface_total * inst.servers > params.subpackets)
      throw BuildError("build_plan: interference index demand exceeds subpacketization at " +
                       inst.label());
    iface_per_server = to_i64(iface_total, "U");
  }

  // How many of each degree-i group's sums designate each member as new.
  // Every member gets the even share floor(T/i); the remainder is split by an
  // exact flow so each message totals R_i across its groups.
  std::vector<std::vector<int64_t>> rotation_counts(int i) const {
    const int d = inst.demands, kd = inst.interference();
    int64_t t_count = 0;
    for (int j = 0; j <= kd; j++)
      t_count += to_i64(binom(kd, j) * params.l(i + j), "T_i");
    std::vector<std::vector<int64_t>> counts;
    if (t_count == 0) {
      counts.assign(static_cast<size_t>(to_i64(binom(d, i), "groups")),
                    std::vector<int64_t>(static_cast<size_t>(i), 0));
      return counts;
    }
    const int64_t groups = to_i64(binom(d, i), "groups");
    const int64_t base = t_count / i;
    const int64_t rem = t_count % i;
    counts.assign(static_cast<size_t>(groups), std::vector<int64_t>(static_cast<size_t>(i), base));
    if (rem == 0) return counts;

    const int64_t per_msg_extra = r(i) - to_i64(binom(d - 1, i - 1), "membership") * base;
    // groups numbered 1..G, messages G+1..G+D, source 0, sink G+D+1
    MaxFlow flow(static_cast<int>(groups) + d + 2);
    const int source = 0, sink = static_cast<int>(groups) + d + 1;
    std::vector<std::vector<int>> edge_ids(static_cast<size_t>(groups));
    for (int64_t g = 0; g < groups; g++) flow.add_edge(source, static_cast<int>(g) + 1, rem);
    {
      std::vector<int> positions(static_cast<size_t>(d));
      for (int p = 0; p < d; p++) positions[static_cast<size_t>(p)] = p;
      int64_t g = 0;
      for_each_subset(positions, i, [&](const std::vector<int>& members) {
        for (int slot = 0; slot < i; slot++)
          edge_ids[static_cast<size_t>(g)].push_back(flow.add_edge(
              static_cast<int>(g) + 1,
              static_cast<int>(groups) + members[static_cast<size_t>(slot)] + 1, rem));
        g++;
      });
    }
    for (int p = 0; p < d; p++)
      flow.add_edge(static_cast<int>(groups) + p + 1, sink, per_msg_extra);
    if (flow.run(source, sink) != groups * rem)
      throw BuildError("build_plan: new-term remainder split infeasible for " + inst.label());
    for (int64_t g = 0; g < groups; g++)
      for (int slot = 0; slot < i; slot++)
        counts[static_cast<size_t>(g)][static_cast<size_t>(slot)] +=
            flow.flow_on(edge_ids[static_cast<size_t>(g)][static_cast<size_t>(slot)]);
    return counts;
  }

  QueryPlan run(uint64_t seed) {
    const int n_servers = inst.servers;
    const int d = inst.demands;
    const int kd = inst.interference();

    QueryPlan plan;
    plan.instance = inst;
    plan.demand = demand;
    plan.subpackets = total_l;
    plan.seed = seed;
    plan.servers.resize(static_cast<size_t>(n_servers));

    // Fresh interference tuples, per server and per subset, in emission order.
    // units[n-1][J] also doubles as that server's (0,j) sums and singletons.
    std::vector<std::map<std::vector<int>, std::vector<SumSpec>>> units(
        static_cast<size_t>(n_servers));
    {
      std::vector<std::vector<int64_t>> next_iface(
          static_cast<size_t>(n_servers), std::vector<int64_t>(static_cast<size_t>(inst.messages) + 1, 0));
      for (int n = 1; n <= n_servers; n++) {
        auto& counters = next_iface[static_cast<size_t>(n - 1)];
        for (int j = 1; j <= kd; j++) {
          if (l(j) == 0) continue;
          for_each_subset(iface, j, [&](const std::vector<int>& sub) {
            auto& bucket = units[static_cast<size_t>(n - 1)][sub];
            for (int64_t u = 0; u < l(j); u++) {
              SumSpec spec;
              for (int c : sub) {
                int64_t idx = static_cast<int64_t>(n - 1) * iface_per_server +
                              (++counters[static_cast<size_t>(c)]);
                spec.terms.push_back({c, idx});
              }
              bucket.push_back(std::move(spec));
            }
          });
        }
      }
    }

    for (int n = 1; n <= n_servers; n++) {
      auto& out = plan.servers[static_cast<size_t>(n - 1)];

      // Side-information queues: what this server may treat as known, in
      // (round, source server, index) order.
      std::vector<KnownQueue> known(static_cast<size_t>(d));
      for (int wi = 0; wi < d; wi++) {
        auto& q = known[static_cast<size_t>(wi)];
        for (int round = 1; round <= d; round++) {
          for (int src = 1; src <= n_servers; src++) {
            if (src == n) continue;
            const int64_t base = block_base(src) + round_prefix[static_cast<size_t>(round - 1)];
            for (int64_t o = 1; o <= r(round); o++) q.entries.push_back({base + o, round});
          }
        }
      }

      // New-subpacket exposure counters per (message, round).
      std::vector<std::vector<int64_t>> exposed(
          static_cast<size_t>(d), std::vector<int64_t>(static_cast<size_t>(d) + 1, 0));
      auto expose = [&](int msg, int round) {
        auto& cnt = exposed[demand_pos.at(msg)][static_cast<size_t>(round)];
        if (cnt >= r(round))
          throw BuildError("build_plan: exposure overflow for message " + std::to_string(msg) +
                           " round " + std::to_string(round) + " at server " + std::to_string(n));
        return block_base(n) + round_prefix[static_cast<size_t>(round - 1)] + (++cnt);
      };

      // Cross-server tuple consumption state, per interference subset.
      struct UnitCursor {
        int rr = 0;                    // round-robin position over other servers
        std::vector<int64_t> taken;    // per source server
      };
      std::map<std::vector<int>, UnitCursor> cursors;
      std::vector<int> others;
      for (int o = 1; o < n_servers; o++) others.push_back((n - 1 + o) % n_servers + 1);
      auto next_unit = [&](const std::vector<int>& sub) -> const SumSpec& {
        auto& cur = cursors[sub];
        if (cur.taken.empty()) cur.taken.assign(static_cast<size_t>(n_servers) + 1, 0);
        const int src = others[static_cast<size_t>(cur.rr)];
        cur.rr = (cur.rr + 1) % static_cast<int>(others.size());
        const auto& bucket = units[static_cast<size_t>(src - 1)].at(sub);
        int64_t& k = cur.taken[static_cast<size_t>(src)];
        if (k >= static_cast<int64_t>(bucket.size()))
          throw BuildError("build_plan: interference tuple supply exhausted at server " +
                           std::to_string(n));
        return bucket[static_cast<size_t>(k++)];
      };

      // Per-group new-term budgets for this server; every demand message must
      // end up new in exactly R_i degree-i sums.
      std::vector<std::vector<std::vector<int64_t>>> budgets;
      budgets.reserve(static_cast<size_t>(d));
      for (int i = 1; i <= d; i++) budgets.push_back(rotation_counts(i));

      // Demand-degree sums, in (i, I, j, J, copy) order.
      for (int i = 1; i <= d; i++) {
        int group_id = -1;
        for_each_subset(demand, i, [&](const std::vector<int>& dem_sub) {
          group_id++;
          auto& budget = budgets[static_cast<size_t>(i - 1)];
          for (int j = 0; j <= kd; j++) {
            if (l(i + j) == 0) continue;
            auto emit_group = [&](const std::vector<int>* iface_sub) {
              for (int64_t u = 0; u < l(i + j); u++) {
                // New message: the group member with the largest remaining
                // budget, ties to the smallest index. Budgets sum exactly to
                // the group's sum count, so this never strands.
                auto& remaining = budget[static_cast<size_t>(group_id)];
                int slot = 0;
                for (int s = 1; s < i; s++)
                  if (remaining[static_cast<size_t>(s)] > remaining[static_cast<size_t>(slot)]) slot = s;
                if (remaining[static_cast<size_t>(slot)] <= 0)
                  throw BuildError("build_plan: new-term rotation overflow at server " +
                                   std::to_string(n));
                remaining[static_cast<size_t>(slot)]--;
                const int new_msg = dem_sub[static_cast<size_t>(slot)];

                SumSpec spec;
                spec.terms.push_back({new_msg, expose(new_msg, i)});
                for (int m : dem_sub) {
                  if (m == new_msg) continue;
                  const std::string ctx = "server " + std::to_string(n) + ", message " +
                                          std::to_string(m) + ", degree " + std::to_string(i);
                  spec.terms.push_back({m, known[demand_pos.at(m)].pop(i, ctx)});
                }
                if (iface_sub != nullptr) {
                  const SumSpec& unit = next_unit(*iface_sub);
                  for (const auto& t : unit.terms) spec.terms.push_back(t);
                }
                std::sort(spec.terms.begin(), spec.terms.end());
                out.push_back(std::move(spec));
              }
            };
            if (j == 0) {
              emit_group(nullptr);
            } else {
              for_each_subset(iface, j, [&](const std::vector<int>& sub) { emit_group(&sub); });
            }
          }
        });
      }
      for (const auto& per_degree : budgets)
        for (const auto& group : per_degree)
          for (int64_t left : group)
            if (left != 0)
              throw BuildError("build_plan: rotation budget not exactly met at server " +
                               std::to_string(n));

      // This server's own fresh tuples are its interference downloads.
      for (auto& [sub, bucket] : units[static_cast<size_t>(n - 1)])
        for (auto& spec : bucket) out.push_back(spec);

      // Every external tuple must have been embedded exactly once.
      for (auto& [sub, cur] : cursors)
        for (int src : others)
          if (cur.taken[static_cast<size_t>(src)] !=
              static_cast<int64_t>(units[static_cast<size_t>(src - 1)].at(sub).size()))
            throw BuildError("build_plan: unconsumed interference tuples at server " +
                             std::to_string(n));
    }

    // Seeded relabeling, then the W-independent canonical transmission order.
    std::vector<std::vector<int64_t>> perms;
    perms.reserve(static_cast<size_t>(inst.messages));
    for (int m = 1; m <= inst.messages; m++) perms.push_back(relabel_permutation(seed, m, total_l));
    for (auto& server : plan.servers) {
      for (auto& spec : server) {
        for (auto& t : spec.terms)
          t.sp = perms[static_cast<size_t>(t.msg - 1)][static_cast<size_t>(t.sp - 1)];
        std::sort(spec.terms.begin(), spec.terms.end());
      }
      std::sort(server.begin(), server.end(), [](const SumSpec& a, const SumSpec& b) {
        if (a.terms.size() != b.terms.size()) return a.terms.size() < b.terms.size();
        auto sa = a.support(), sb = b.support();
        if (sa != sb) return sa < sb;
        return a.terms < b.terms;
      });
      if (static_cast<int64_t>(server.size()) != to_i64(params.downloads_per_server, "M"))
        throw BuildError("build_plan: per-server sum count does not match M");
    }
    return plan;
  }
};

}  // namespace

std::vector<int> SumSpec::support() const {
  std::vector<int> s;
  s.reserve(terms.size());
  for (const auto& t : terms) s.push_back(t.msg);
  return s;
}

bool QueryPlan::is_demand(int msg) const {
  return std::binary_search(demand.begin(), demand.end(), msg);
}

std::vector<int64_t> relabel_permutation(uint64_t seed, int msg, int64_t subpackets) {
  std::vector<int64_t> perm(static_cast<size_t>(subpackets));
  std::iota(perm.begin(), perm.end(), int64_t{1});
  SplitMix64 mix(seed);
  SplitMix64 rng(mix.next() ^ (0x9e3779b97f4a7c15ull * static_cast<uint64_t>(msg)));
  for (int64_t i = subpackets - 1; i > 0; i--) {
    const auto k = static_cast<int64_t>(rng.bounded(static_cast<uint64_t>(i) + 1));
    std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(k)]);
  }
  return perm;
}

QueryPlan build_plan(const ParamSet& params, const std::vector<int>& demand, uint64_t seed) {
  Builder builder(params, demand);
  QueryPlan plan = builder.run(seed);
  DecodeResult check = decode_symbolic(plan);
  if (!check.ok)
    throw BuildError("build_plan: symbolic self-check failed for " + params.instance.label() +
                     ": " + check.error);
  return plan;
}

std::pair<int, int> classify(const SumSpec& sum, const std::vector<int>& demand) {
  int i = 0, j = 0;
  for (const auto& t : sum.terms)
    (std::binary_search(demand.begin(), demand.end(), t.msg) ? i : j)++;
  return {i, j};
}

std::vector<SupportCensus> census(const QueryPlan& plan) {
  std::vector<SupportCensus> result(plan.servers.size());
  for (size_t n = 0; n < plan.servers.size(); n++)
    for (const auto& spec : plan.servers[n]) result[n][spec.support()]++;
  return result;
}

PlanFormat plan_format_from_string(const std::string& name) {
  if (name == "json") return PlanFormat::kJson;
  if (name == "csv") return PlanFormat::kCsv;
  if (name == "markdown" || name == "md") return PlanFormat::kMarkdown;
  throw InvalidArgument("unknown plan format '" + name + "' (expected json, csv, or markdown)");
}

}  // namespace abpir
