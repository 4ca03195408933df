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

#include "abpir/solver.hpp"

#include <algorithm>

namespace abpir {

namespace {

// Shared tail of solve_scheme and bu_baseline: given x = L_s/L candidates as
// exact rationals (scaled by trial multipliers), derive integral counts.
struct DerivedCounts {
  std::vector<BigInt> l_counts;
  std::vector<BigInt> r_counts;
  BigInt subpackets;
  BigInt downloads;
};

// R_i = (1/i) C(D-1,i-1) sum_j C(K-D,j) L_{i+j}. Returns false if any R_i is
// fractional for these counts.
bool derive_rounds(const ProblemInstance& inst, const std::vector<Rational>& l_scaled,
                   DerivedCounts* out) {
  const int k = inst.messages, d = inst.demands, kd = inst.interference();
  out->l_counts.clear();
  out->r_counts.clear();
  for (const auto& ls : l_scaled) {
    if (!ls.is_integer() || ls.sign() < 0) return false;
    out->l_counts.push_back(ls.num());
  }
  BigInt total_rounds = 0;
  for (int i = 1; i <= d; i++) {
    Rational acc;
    for (int j = 0; j <= kd; j++)
      acc += Rational(binom(kd, j)) * l_scaled[static_cast<size_t>(i + j - 1)];
    Rational ri = Rational(binom(d - 1, i - 1), BigInt(i)) * acc;
    if (!ri.is_integer() || ri.sign() < 0) return false;
    out->r_counts.push_back(ri.num());
    total_rounds += ri.num();
  }
  out->subpackets = BigInt(inst.servers) * total_rounds;
  out->downloads = 0;
  for (int s = 1; s <= k; s++) out->downloads += binom(k, s) * out->l_counts[static_cast<size_t>(s - 1)];
  return true;
}

}  // namespace

ProblemInstance::ProblemInstance(int n, int k, int d) : servers(n), messages(k), demands(d) {
  if (n < 2) throw InvalidArgument("instance: need at least 2 servers");
  if (k < 1) throw InvalidArgument("instance: need at least 1 message");
  if (d < 1 || d > k) throw InvalidArgument("instance: demand count must be in [1, K]");
}

std::string ProblemInstance::label() const {
  return "N=" + std::to_string(servers) + ",K=" + std::to_string(messages) +
         ",D=" + std::to_string(demands);
}

std::string to_string(Comparison c) {
  return c == Comparison::kStrictlyBetter ? "STRICTLY_BETTER" : "EQUAL";
}

VVectors compute_v(const ProblemInstance& inst) {
  const int k = inst.messages, d = inst.demands, n = inst.servers;
  VVectors v;
  v.instance = inst;
  v.rows.assign(static_cast<size_t>(k), std::vector<Rational>(static_cast<size_t>(d)));
  for (int s = k - d + 1; s <= k; s++)
    v.rows[static_cast<size_t>(s - 1)][static_cast<size_t>(s - k + d - 1)] = Rational(1);
  const Rational inv(BigInt(1), BigInt(n - 1));
  for (int s = k - d; s >= 1; s--) {
    auto& row = v.rows[static_cast<size_t>(s - 1)];
    for (int t = 1; t <= d; t++) {
      const Rational w(binom(d, t));
      const auto& src = v.rows[static_cast<size_t>(t + s - 1)];
      for (int c = 0; c < d; c++) row[static_cast<size_t>(c)] += w * src[static_cast<size_t>(c)];
    }
    for (auto& e : row) e *= inv;
  }
  return v;
}

FG compute_fg(const ProblemInstance& inst, const VVectors& v) {
  const int k = inst.messages, d = inst.demands, kd = inst.interference();
  const Rational nd(BigInt(inst.servers), BigInt(d));
  FG fg;
  fg.f.assign(static_cast<size_t>(d), Rational());
  fg.g.assign(static_cast<size_t>(d), Rational());
  for (int s = 1; s <= k; s++) {
    const Rational w(binom(k, s));
    for (int c = 0; c < d; c++) fg.f[static_cast<size_t>(c)] += w * v.row(s)[static_cast<size_t>(c)];
  }
  for (int c = 0; c < d; c++) fg.f[static_cast<size_t>(c)] *= nd;
  fg.g = fg.f;
  for (int s = 1; s <= kd; s++) {
    const Rational w = nd * Rational(binom(kd, s));
    for (int c = 0; c < d; c++) fg.g[static_cast<size_t>(c)] -= w * v.row(s)[static_cast<size_t>(c)];
  }
  return fg;
}

ParamSet solve_scheme(const ProblemInstance& inst) {
  const int k = inst.messages, d = inst.demands, kd = inst.interference();
  ParamSet p;
  p.instance = inst;
  p.v = compute_v(inst);
  FG fg = compute_fg(inst, p.v);
  p.f = std::move(fg.f);
  p.g = std::move(fg.g);

  // Smallest index attaining the best ratio. Ties go to the head so the plan
  // keeps nonzero singleton counts and stays self-bootstrapping.
  p.t_star = 1;
  Rational best = p.g[0] / p.f[0];
  for (int t = 2; t <= d; t++) {
    Rational r = p.g[static_cast<size_t>(t - 1)] / p.f[static_cast<size_t>(t - 1)];
    if (r > best) {
      best = r;
      p.t_star = t;
    }
  }
  const Rational& g_star = p.g[static_cast<size_t>(p.t_star - 1)];
  if (g_star.sign() <= 0) throw InvalidArgument("solve_scheme: nonpositive normalization weight");

  p.x.assign(static_cast<size_t>(k), Rational());
  const Rational inv_g = g_star.reciprocal();
  for (int s = 1; s <= kd; s++)
    p.x[static_cast<size_t>(s - 1)] = p.v.row(s)[static_cast<size_t>(p.t_star - 1)] * inv_g;
  p.x[static_cast<size_t>(kd + p.t_star - 1)] = inv_g;

  const Rational unit = Rational(BigInt(inst.servers - 1)).pow(kd) * g_star;  // L for S = 1
  DerivedCounts dc;
  for (int s_mult = 1; s_mult <= d; s_mult++) {
    const Rational trial_l = Rational(s_mult) * unit;
    if (!trial_l.is_integer()) continue;
    std::vector<Rational> l_scaled;
    l_scaled.reserve(static_cast<size_t>(k));
    for (int s = 1; s <= k; s++) l_scaled.push_back(trial_l * p.x[static_cast<size_t>(s - 1)]);
    if (!derive_rounds(inst, l_scaled, &dc)) continue;
    if (dc.subpackets != trial_l.num()) continue;  // full-recovery identity must close
    p.scale = s_mult;
    p.subpackets = dc.subpackets;
    p.l_counts = std::move(dc.l_counts);
    p.r_counts = std::move(dc.r_counts);
    p.downloads_per_server = dc.downloads;
    p.rate = Rational(BigInt(d) * p.subpackets, BigInt(inst.servers) * p.downloads_per_server);
    return p;
  }
  throw InvalidArgument("solve_scheme: no integralizing multiplier in [1, D] for " + inst.label());
}

Rational lower_bound(const ProblemInstance& inst) {
  FG fg = compute_fg(inst, compute_v(inst));
  Rational best = fg.g[0] / fg.f[0];
  for (size_t t = 1; t < fg.g.size(); t++) best = std::max(best, fg.g[t] / fg.f[t]);
  return best;
}

Rational upper_bound(const ProblemInstance& inst) {
  const int n = inst.servers, k = inst.messages, d = inst.demands;
  const long floor_kd = k / d;
  const Rational inv_n(BigInt(1), BigInt(n));
  const Rational n_pow = inv_n.pow(floor_kd);  // 1/N^floor(K/D)
  const Rational geometric = (Rational(1) - n_pow) / (Rational(1) - inv_n);
  const Rational fractional = (Rational(BigInt(k), BigInt(d)) - Rational(floor_kd)) * n_pow;
  return (geometric + fractional).reciprocal();
}

ParamSet bu_baseline(const ProblemInstance& inst) {
  const int k = inst.messages, d = inst.demands, kd = inst.interference();
  ParamSet p;
  p.instance = inst;
  p.v = compute_v(inst);
  FG fg = compute_fg(inst, p.v);
  p.f = std::move(fg.f);
  p.g = std::move(fg.g);
  p.t_star = d;

  // Backward recurrence from the fixed tail (0, ..., 0, (N-1)^(K-D)).
  std::vector<Rational> base(static_cast<size_t>(k));
  base[static_cast<size_t>(k - 1)] = Rational(BigInt(inst.servers - 1)).pow(kd);
  const Rational inv(BigInt(1), BigInt(inst.servers - 1));
  for (int j = kd; j >= 1; j--) {
    Rational acc;
    for (int i = 1; i <= d; i++)
      acc += Rational(binom(d, i)) * base[static_cast<size_t>(i + j - 1)];
    base[static_cast<size_t>(j - 1)] = acc * inv;
  }

  DerivedCounts dc;
  for (int s_mult = 1; s_mult <= d; s_mult++) {
    std::vector<Rational> l_scaled;
    l_scaled.reserve(static_cast<size_t>(k));
    for (const auto& b : base) l_scaled.push_back(Rational(s_mult) * b);
    if (!derive_rounds(inst, l_scaled, &dc)) continue;
    p.scale = s_mult;
    p.subpackets = dc.subpackets;
    p.l_counts = std::move(dc.l_counts);
    p.r_counts = std::move(dc.r_counts);
    p.downloads_per_server = dc.downloads;
    p.rate = Rational(BigInt(d) * p.subpackets, BigInt(inst.servers) * p.downloads_per_server);
    p.x.assign(static_cast<size_t>(k), Rational());
    const Rational l_rat(p.subpackets);
    for (int s = 1; s <= k; s++)
      p.x[static_cast<size_t>(s - 1)] = Rational(p.l(s)) / l_rat;
    return p;
  }
  throw InvalidArgument("bu_baseline: no integralizing multiplier in [1, D] for " + inst.label());
}

Comparison compare_schemes(const ProblemInstance& inst) {
  FG fg = compute_fg(inst, compute_v(inst));
  const int d = inst.demands;
  const Rational tail = fg.g[static_cast<size_t>(d - 1)] / fg.f[static_cast<size_t>(d - 1)];
  for (int t = 1; t < d; t++)
    if (fg.g[static_cast<size_t>(t - 1)] / fg.f[static_cast<size_t>(t - 1)] > tail)
      return Comparison::kStrictlyBetter;
  return Comparison::kEqual;
}

}  // namespace abpir
