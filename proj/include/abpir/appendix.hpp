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

#include <vector>

#include "abpir/rational.hpp"

namespace abpir {

/// The two coordinate sequences of the D = 2 coefficient vectors, computed by
/// the exact descending recurrence a_s = (2 a_{s+1} + a_{s+2}) / (N-1) from
/// the boundary pairs (alpha_{K-1}, alpha_K) = (1, 0) and
/// (beta_{K-1}, beta_K) = (0, 1). No irrational closed forms anywhere; every
/// consequence is checked over exact rationals.
struct AlphaBeta {
  int servers = 2;  // N
  int messages = 2; // K
  std::vector<Rational> alpha;  // alpha[s-1], s in [1..K]
  std::vector<Rational> beta;

  const Rational& a(int s) const { return alpha[static_cast<size_t>(s - 1)]; }
  const Rational& b(int s) const { return beta[static_cast<size_t>(s - 1)]; }
};

AlphaBeta alpha_beta(int servers, int messages);

/// Per-identity verification report for one (N, K).
struct IdentityReport {
  bool cross_alpha_ok = false;  // alpha_1 b_i - alpha_i b_1 telescopes
  bool cross_beta_ok = false;   // alpha_i b_2 - alpha_2 b_i telescopes
  bool beta_shift_ok = false;   // beta_s = alpha_{s+1} / (N-1)
  bool all_ok() const { return cross_alpha_ok && cross_beta_ok && beta_shift_ok; }
};

/// Checks, for all i in [K]:
///   alpha_1 beta_i - alpha_i beta_1 = (1/(1-N))^(K-i)   * alpha_{K-i+1}
///   alpha_i beta_2 - alpha_2 beta_i = (1/(1-N))^(K-i-1) * beta_{K-i+1}
/// and, for all s in [K-1]: beta_s = alpha_{s+1} / (N-1).
/// A failure signals an implementation bug, not a property of the inputs.
IdentityReport check_pair_identities(int servers, int messages);

/// The binomially weighted alternating sum
///   sum_i C(K,i) ((alpha_1 beta_i - alpha_i beta_1)
///                 - (1/2)(alpha_i beta_2 - alpha_2 beta_i)),
/// which is positive exactly for odd K and zero for even K.
Rational signed_sum(int servers, int messages);

/// Sign of g_1/f_1 - g_2/f_2 for D = 2 (via the scheme solver vectors).
/// Must always match the sign of signed_sum.
int ratio_gap_d2(int servers, int messages);

}  // namespace abpir
