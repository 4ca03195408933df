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

#include <string>
#include <vector>

#include "abpir/rational.hpp"

namespace abpir {

/// A retrieval instance: N non-colluding servers, K messages, D of which the
/// user wants. Validated on construction (N >= 2, 1 <= D <= K).
struct ProblemInstance {
  int servers = 2;   // N
  int messages = 1;  // K
  int demands = 1;   // D

  ProblemInstance() = default;
  ProblemInstance(int n, int k, int d);

  int interference() const { return messages - demands; }
  bool operator==(const ProblemInstance&) const = default;
  std::string label() const;
};

/// The K length-D coefficient vectors that express every per-size download
/// count through the D tail counts. Rows K-D+1..K are the unit vectors; each
/// earlier row is the binomially weighted average of the D rows above it,
/// scaled by 1/(N-1).
struct VVectors {
  ProblemInstance instance;
  std::vector<std::vector<Rational>> rows;  // rows[s-1], s in [1..K]

  const std::vector<Rational>& row(int s) const { return rows[static_cast<size_t>(s - 1)]; }
};

enum class Comparison { kStrictlyBetter, kEqual };

std::string to_string(Comparison c);

/// Fully solved scheme parameters: the download counts per subset size, the
/// per-round recovery counts, and the exact rate, all integral.
struct ParamSet {
  ProblemInstance instance;
  VVectors v;
  std::vector<Rational> f;  // length D
  std::vector<Rational> g;  // length D
  int t_star = 1;           // 1-based index of the rate-maximizing ratio
  std::vector<Rational> x;  // length K, x[s-1] = L_s / L
  int scale = 1;            // the integralizing multiplier S in [1..D]
  BigInt subpackets;        // L, subpackets per message
  std::vector<BigInt> l_counts;  // L_1..L_K
  std::vector<BigInt> r_counts;  // R_1..R_D
  BigInt downloads_per_server;   // M
  Rational rate;                 // D*L / (N*M)

  const BigInt& l(int s) const { return l_counts[static_cast<size_t>(s - 1)]; }
  const BigInt& r(int i) const { return r_counts[static_cast<size_t>(i - 1)]; }
};

/// Computes the v-vectors by the descending recurrence from the unit tail.
VVectors compute_v(const ProblemInstance& inst);

/// The objective and normalization weight vectors of the reduced LP:
/// f = (N/D) * sum_s C(K,s) v_s and g = f - (N/D) * sum_{s<=K-D} C(K-D,s) v_s.
/// When D = K the subtracted sum is empty and g = f.
struct FG {
  std::vector<Rational> f;
  std::vector<Rational> g;
};
FG compute_fg(const ProblemInstance& inst, const VVectors& v);

/// Solves the scheme-design LP in closed form: all tail weight goes to the
/// smallest index maximizing g_t/f_t, and the result is integralized with the
/// smallest multiplier S in [1..D] that makes every count whole.
ParamSet solve_scheme(const ProblemInstance& inst);

/// Best rate achievable within this scheme family: max_t g_t/f_t.
Rational lower_bound(const ProblemInstance& inst);

/// Converse bound on any scheme:
/// 1 / ( (1 - 1/N^floor(K/D)) / (1 - 1/N) + (K/D - floor(K/D)) / N^floor(K/D) ).
Rational upper_bound(const ProblemInstance& inst);

/// The prior multi-message scheme as one point of the same parameter family:
/// tail counts fixed to (0, ..., 0, (N-1)^(K-D)) instead of optimized. Its
/// rate always equals g_D/f_D.
ParamSet bu_baseline(const ProblemInstance& inst);

/// STRICTLY_BETTER iff some head ratio beats g_D/f_D, i.e. iff the optimized
/// scheme's rate strictly exceeds the baseline's.
Comparison compare_schemes(const ProblemInstance& inst);

}  // namespace abpir
