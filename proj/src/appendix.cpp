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

#include "abpir/appendix.hpp"

#include "abpir/solver.hpp"

namespace abpir {

AlphaBeta alpha_beta(int servers, int messages) {
  if (servers < 2) throw InvalidArgument("alpha_beta: need at least 2 servers");
  if (messages < 2) throw InvalidArgument("alpha_beta: need at least 2 messages");
  AlphaBeta ab;
  ab.servers = servers;
  ab.messages = messages;
  ab.alpha.assign(static_cast<size_t>(messages), Rational());
  ab.beta.assign(static_cast<size_t>(messages), Rational());
  ab.alpha[static_cast<size_t>(messages - 2)] = Rational(1);
  ab.beta[static_cast<size_t>(messages - 1)] = Rational(1);
  const Rational inv(BigInt(1), BigInt(servers - 1));
  for (int s = messages - 2; s >= 1; s--) {
    ab.alpha[static_cast<size_t>(s - 1)] = (2 * ab.a(s + 1) + ab.a(s + 2)) * inv;
    ab.beta[static_cast<size_t>(s - 1)] = (2 * ab.b(s + 1) + ab.b(s + 2)) * inv;
  }
  return ab;
}

IdentityReport check_pair_identities(int servers, int messages) {
  const AlphaBeta ab = alpha_beta(servers, messages);
  const Rational ratio(BigInt(1), BigInt(1 - servers));
  IdentityReport rep;
  rep.cross_alpha_ok = rep.cross_beta_ok = rep.beta_shift_ok = true;
  for (int i = 1; i <= messages; i++) {
    const Rational lhs1 = ab.a(1) * ab.b(i) - ab.a(i) * ab.b(1);
    if (lhs1 != ratio.pow(messages - i) * ab.a(messages - i + 1)) rep.cross_alpha_ok = false;
    const Rational lhs2 = ab.a(i) * ab.b(2) - ab.a(2) * ab.b(i);
    if (lhs2 != ratio.pow(messages - i - 1) * ab.b(messages - i + 1)) rep.cross_beta_ok = false;
  }
  const Rational inv(BigInt(1), BigInt(servers - 1));
  for (int s = 1; s <= messages - 1; s++)
    if (ab.b(s) != ab.a(s + 1) * inv) rep.beta_shift_ok = false;
  return rep;
}

Rational signed_sum(int servers, int messages) {
  const AlphaBeta ab = alpha_beta(servers, messages);
  const Rational half(BigInt(1), BigInt(2));
  Rational acc;
  for (int i = 1; i <= messages; i++) {
    const Rational first = ab.a(1) * ab.b(i) - ab.a(i) * ab.b(1);
    const Rational second = ab.a(i) * ab.b(2) - ab.a(2) * ab.b(i);
    acc += Rational(binom(messages, i)) * (first - half * second);
  }
  return acc;
}

int ratio_gap_d2(int servers, int messages) {
  if (messages < 3) throw InvalidArgument("ratio_gap_d2: need at least 3 messages");
  const ProblemInstance inst(servers, messages, 2);
  FG fg = compute_fg(inst, compute_v(inst));
  return (fg.g[0] / fg.f[0] - fg.g[1] / fg.f[1]).sign();
}

}  // namespace abpir
