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

#include "abpir/verify.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "abpir/linalg.hpp"

namespace abpir {

namespace {

std::string refs_to_text(const std::vector<int>& support) {
  std::string s = "{";
  for (size_t i = 0; i < support.size(); i++)
    s += (i ? "," : "") + std::to_string(support[i]);
  return s + "}";
}

template <typename Fn>
void for_each_demand_set(int messages, int demands, Fn&& fn) {
  std::vector<int> w(static_cast<size_t>(demands));
  std::iota(w.begin(), w.end(), 1);
  while (true) {
    fn(w);
    int t = demands - 1;
    while (t >= 0 && w[static_cast<size_t>(t)] == messages - demands + t + 1) t--;
    if (t < 0) break;
    w[static_cast<size_t>(t)]++;
    for (int u = t + 1; u < demands; u++) w[static_cast<size_t>(u)] = w[static_cast<size_t>(u - 1)] + 1;
  }
}

int64_t column_of(const QueryPlan& plan, const SubpacketRef& ref) {
  return static_cast<int64_t>(ref.msg - 1) * plan.subpackets + (ref.sp - 1);
}

}  // namespace

std::string check_plan_census(const QueryPlan& plan, const std::vector<BigInt>& l_counts) {
  const auto counts = census(plan);
  for (size_t n = 0; n < counts.size(); n++) {
    // Every support of size s must carry exactly L_s sums; nothing else.
    SupportCensus seen = counts[n];
    for (int s = 1; s <= plan.instance.messages; s++) {
      const BigInt& expected = l_counts[static_cast<size_t>(s - 1)];
      if (expected == 0) continue;
      bool done = true;
      std::vector<int> sub(static_cast<size_t>(s));
      std::iota(sub.begin(), sub.end(), 1);
      while (done) {
        auto it = seen.find(sub);
        const BigInt got = (it == seen.end()) ? BigInt(0) : BigInt(static_cast<long>(it->second));
        if (got != expected)
          return "server " + std::to_string(n + 1) + " support " + refs_to_text(sub) +
                 ": expected " + expected.get_str() + " sums, got " + got.get_str();
        if (it != seen.end()) seen.erase(it);
        int t = s - 1;
        while (t >= 0 && sub[static_cast<size_t>(t)] == plan.instance.messages - s + t + 1) t--;
        if (t < 0) break;
        sub[static_cast<size_t>(t)]++;
        for (int u = t + 1; u < s; u++) sub[static_cast<size_t>(u)] = sub[static_cast<size_t>(u - 1)] + 1;
      }
    }
    if (!seen.empty())
      return "server " + std::to_string(n + 1) + " has sums on unexpected support " +
             refs_to_text(seen.begin()->first);
    // No subpacket may appear twice within one server's answer.
    std::set<SubpacketRef> used;
    for (const auto& spec : plan.servers[n])
      for (const auto& t : spec.terms)
        if (!used.insert(t).second)
          return "server " + std::to_string(n + 1) + " repeats subpacket " +
                 std::to_string(t.msg) + ":" + std::to_string(t.sp);
  }
  return "";
}

PrivacyReport verify_privacy(const ParamSet& params, uint64_t seed) {
  PrivacyReport report;
  report.instance = params.instance;
  report.pass = true;
  for_each_demand_set(params.instance.messages, params.instance.demands,
                      [&](const std::vector<int>& w) {
                        if (!report.pass) return;
                        report.demand_sets_checked++;
                        QueryPlan plan = build_plan(params, w, seed);
                        std::string fail = check_plan_census(plan, params.l_counts);
                        if (!fail.empty()) {
                          report.pass = false;
                          report.counterexample = "W=" + refs_to_text(w) + ": " + fail;
                        }
                      });
  return report;
}

namespace {

std::unique_ptr<linalg::Echelon> build_echelon(const QueryPlan& plan, uint32_t p) {
  const int64_t cols = static_cast<int64_t>(plan.instance.messages) * plan.subpackets;
  int64_t rows = 0;
  for (const auto& server : plan.servers) rows += static_cast<int64_t>(server.size());
  auto ech = linalg::make_echelon(p, cols, rows);
  for (const auto& server : plan.servers) {
    for (const auto& spec : server) {
      linalg::SparseRow row;
      row.reserve(spec.terms.size());
      for (const auto& t : spec.terms) row.emplace_back(column_of(plan, t), 1);
      std::sort(row.begin(), row.end());
      ech->add_row(std::move(row));
    }
  }
  return ech;
}

}  // namespace

RecoverabilityReport verify_recoverability(const QueryPlan& plan) {
  RecoverabilityReport report;
  report.pass = true;
  for (uint32_t p : {2u, 3u}) {
    auto ech = build_echelon(plan, p);
    for (int w : plan.demand) {
      for (int64_t sp = 1; sp <= plan.subpackets; sp++) {
        if (!ech->in_span({{column_of(plan, {w, sp}), 1}})) {
          report.pass = false;
          report.detail = "unit " + std::to_string(w) + ":" + std::to_string(sp) +
                          " outside row span over F" + std::to_string(p);
          return report;
        }
      }
    }
  }
  return report;
}

bool unit_in_span(const QueryPlan& plan, const SubpacketRef& ref, uint32_t p) {
  auto ech = build_echelon(plan, p);
  return ech->in_span({{column_of(plan, ref), 1}});
}

// ---------------------------------------------------------------------------
// LP oracle: enumerate all bases of the constraint matrix with exact pivots.

namespace {

struct LPSystem {
  // rows x cols rational matrix, rhs, and objective over the cols.
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<Rational> c;
  int rows = 0;
  int cols = 0;
};

LPSystem build_system(const ProblemInstance& inst, ConstraintMode mode) {
  const int k = inst.messages, d = inst.demands, kd = inst.interference();
  LPSystem sys;
  sys.rows = kd + 1;
  sys.cols = (mode == ConstraintMode::kInequality) ? k + kd : k;
  sys.a.assign(static_cast<size_t>(sys.rows), std::vector<Rational>(static_cast<size_t>(sys.cols)));
  sys.b.assign(static_cast<size_t>(sys.rows), Rational());
  sys.c.assign(static_cast<size_t>(sys.cols), Rational());
  const Rational inv(BigInt(1), BigInt(inst.servers - 1));
  for (int j = 1; j <= kd; j++) {
    auto& row = sys.a[static_cast<size_t>(j - 1)];
    row[static_cast<size_t>(j - 1)] += Rational(1);
    for (int i = 1; i <= d; i++)
      row[static_cast<size_t>(i + j - 1)] -= Rational(binom(d, i)) * inv;
    if (mode == ConstraintMode::kInequality) row[static_cast<size_t>(k + j - 1)] = Rational(-1);
  }
  auto& norm = sys.a[static_cast<size_t>(kd)];
  const Rational nd(BigInt(inst.servers), BigInt(d));
  for (int s = 1; s <= k; s++) {
    norm[static_cast<size_t>(s - 1)] = nd * Rational(BigInt(binom(k, s) - binom(kd, s)));
    sys.c[static_cast<size_t>(s - 1)] = nd * Rational(binom(k, s));
  }
  sys.b[static_cast<size_t>(kd)] = Rational(1);
  return sys;
}

// Solves the square system made of the chosen columns; false when singular.
bool solve_basis(const LPSystem& sys, const std::vector<int>& cols_sel,
                 std::vector<Rational>* solution) {
  const int m = sys.rows;
  std::vector<std::vector<Rational>> mat(static_cast<size_t>(m),
                                         std::vector<Rational>(static_cast<size_t>(m) + 1));
  for (int r = 0; r < m; r++) {
    for (int c = 0; c < m; c++)
      mat[static_cast<size_t>(r)][static_cast<size_t>(c)] =
          sys.a[static_cast<size_t>(r)][static_cast<size_t>(cols_sel[static_cast<size_t>(c)])];
    mat[static_cast<size_t>(r)][static_cast<size_t>(m)] = sys.b[static_cast<size_t>(r)];
  }
  for (int col = 0; col < m; col++) {
    int pivot = -1;
    for (int r = col; r < m; r++)
      if (!mat[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) return false;
    std::swap(mat[static_cast<size_t>(col)], mat[static_cast<size_t>(pivot)]);
    const Rational inv = mat[static_cast<size_t>(col)][static_cast<size_t>(col)].reciprocal();
    for (int c = col; c <= m; c++) mat[static_cast<size_t>(col)][static_cast<size_t>(c)] *= inv;
    for (int r = 0; r < m; r++) {
      if (r == col) continue;
      const Rational f = mat[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (f.is_zero()) continue;
      for (int c = col; c <= m; c++)
        mat[static_cast<size_t>(r)][static_cast<size_t>(c)] -=
            f * mat[static_cast<size_t>(col)][static_cast<size_t>(c)];
    }
  }
  solution->assign(static_cast<size_t>(m), Rational());
  for (int r = 0; r < m; r++) (*solution)[static_cast<size_t>(r)] = mat[static_cast<size_t>(r)][static_cast<size_t>(m)];
  return true;
}

}  // namespace

LPOracleResult lp_oracle(const ProblemInstance& inst, ConstraintMode mode) {
  const LPSystem sys = build_system(inst, mode);
  const int m = sys.rows, n = sys.cols;
  LPOracleResult result;
  bool found = false;

  std::vector<int> sel(static_cast<size_t>(m));
  std::iota(sel.begin(), sel.end(), 0);
  std::vector<Rational> basic;
  while (true) {
    result.bases_enumerated++;
    if (solve_basis(sys, sel, &basic)) {
      bool feasible = true;
      for (const auto& v : basic)
        if (v.sign() < 0) {
          feasible = false;
          break;
        }
      if (feasible) {
        Rational obj;
        for (int c = 0; c < m; c++)
          obj += sys.c[static_cast<size_t>(sel[static_cast<size_t>(c)])] * basic[static_cast<size_t>(c)];
        if (!found || obj < result.optimum) {
          found = true;
          result.optimum = obj;
          result.argmin.assign(static_cast<size_t>(inst.messages), Rational());
          for (int c = 0; c < m; c++)
            if (sel[static_cast<size_t>(c)] < inst.messages)
              result.argmin[static_cast<size_t>(sel[static_cast<size_t>(c)])] = basic[static_cast<size_t>(c)];
        }
      }
    }
    int t = m - 1;
    while (t >= 0 && sel[static_cast<size_t>(t)] == n - m + t) t--;
    if (t < 0) break;
    sel[static_cast<size_t>(t)]++;
    for (int u = t + 1; u < m; u++) sel[static_cast<size_t>(u)] = sel[static_cast<size_t>(u - 1)] + 1;
  }
  if (!found) throw Error("lp_oracle: no feasible basis for " + inst.label());
  return result;
}

}  // namespace abpir
