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

#include <doctest.h>

#include "abpir/solver.hpp"

using namespace abpir;

namespace {

Rational rat(long n, long d = 1) { return Rational(BigInt(n), BigInt(d)); }

std::vector<BigInt> big(const std::vector<long>& v) {
  return std::vector<BigInt>(v.begin(), v.end());
}

// Independent oracle for v: the same linear relations iterated in the
// opposite (ascending) direction, solving each row from the ones above it.
std::vector<std::vector<Rational>> v_by_ascending_elimination(const ProblemInstance& inst) {
  const int k = inst.messages, d = inst.demands;
  std::vector<std::vector<Rational>> rows(static_cast<size_t>(k),
                                          std::vector<Rational>(static_cast<size_t>(d)));
  for (int s = k - d + 1; s <= k; s++) rows[static_cast<size_t>(s - 1)][static_cast<size_t>(s - k + d - 1)] = rat(1);
  // Repeatedly sweep upward until a full pass changes nothing; each row only
  // depends on rows below it, so one upward pass from the bottom suffices,
  // and a second pass verifies stability.
  for (int pass = 0; pass < 2; pass++) {
    for (int s = k - d; s >= 1; s--) {
      std::vector<Rational> acc(static_cast<size_t>(d));
      for (int t = 1; t <= d; t++)
        for (int c = 0; c < d; c++)
          acc[static_cast<size_t>(c)] += Rational(binom(d, t)) * rows[static_cast<size_t>(t + s - 1)][static_cast<size_t>(c)];
      for (int c = 0; c < d; c++)
        rows[static_cast<size_t>(s - 1)][static_cast<size_t>(c)] = acc[static_cast<size_t>(c)] / rat(inst.servers - 1);
    }
  }
  return rows;
}

}  // namespace

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(ProblemInstance(1, 5, 2), InvalidArgument);
  CHECK_THROWS_AS(ProblemInstance(2, 5, 0), InvalidArgument);
  CHECK_THROWS_AS(ProblemInstance(2, 5, 6), InvalidArgument);
  CHECK_NOTHROW(ProblemInstance(2, 1, 1));
}

TEST_CASE("v-vectors: worked example N=2 K=5 D=2") {
  const VVectors v = compute_v(ProblemInstance(2, 5, 2));
  CHECK(v.row(5) == std::vector<Rational>{rat(0), rat(1)});
  CHECK(v.row(4) == std::vector<Rational>{rat(1), rat(0)});
  CHECK(v.row(3) == std::vector<Rational>{rat(2), rat(1)});
  CHECK(v.row(2) == std::vector<Rational>{rat(5), rat(2)});
  CHECK(v.row(1) == std::vector<Rational>{rat(12), rat(5)});
}

TEST_CASE("v-vectors: D=K gives all unit rows") {
  const VVectors v = compute_v(ProblemInstance(3, 4, 4));
  for (int s = 1; s <= 4; s++)
    for (int c = 1; c <= 4; c++)
      CHECK(v.row(s)[static_cast<size_t>(c - 1)] == (c == s ? rat(1) : rat(0)));
}

TEST_CASE("v-vectors: N=3 K=5 D=2 exact fractions, cross-checked") {
  const ProblemInstance inst(3, 5, 2);
  const VVectors v = compute_v(inst);
  CHECK(v.row(3) == std::vector<Rational>{rat(1), rat(1, 2)});
  CHECK(v.row(2) == std::vector<Rational>{rat(3, 2), rat(1, 2)});
  CHECK(v.row(1) == std::vector<Rational>{rat(2), rat(3, 4)});
  CHECK(v.rows == v_by_ascending_elimination(inst));
}

TEST_CASE("f and g: worked examples and D=K degeneracy") {
  {
    const ProblemInstance inst(2, 5, 2);
    const FG fg = compute_fg(inst, compute_v(inst));
    CHECK(fg.f == std::vector<Rational>{rat(135), rat(56)});
    CHECK(fg.g == std::vector<Rational>{rat(82), rat(34)});
  }
  {
    const ProblemInstance inst(3, 5, 2);
    const FG fg = compute_fg(inst, compute_v(inst));
    CHECK(fg.f == std::vector<Rational>{rat(60), rat(177, 8)});
    CHECK(fg.g == std::vector<Rational>{rat(171, 4), rat(63, 4)});
    CHECK(fg.g[0] / fg.f[0] == rat(57, 80));
  }
  {
    const ProblemInstance inst(4, 3, 3);
    const FG fg = compute_fg(inst, compute_v(inst));
    CHECK(fg.f == fg.g);
  }
}

TEST_CASE("solve_scheme: worked example N=2 K=5 D=2, exact") {
  const ParamSet p = solve_scheme(ProblemInstance(2, 5, 2));
  CHECK(p.t_star == 1);
  CHECK(p.scale == 1);
  CHECK(p.subpackets == 82);
  CHECK(p.l_counts == big({12, 5, 2, 1, 0}));
  CHECK(p.r_counts == big({34, 7}));
  CHECK(p.downloads_per_server == 135);
  CHECK(p.rate == rat(82, 135));
}

TEST_CASE("solve_scheme: N=3 K=5 D=2 internals") {
  const ParamSet p = solve_scheme(ProblemInstance(3, 5, 2));
  CHECK(p.rate == rat(57, 80));
  CHECK(p.subpackets == 342);
  CHECK(p.l_counts == big({16, 12, 8, 8, 0}));
  CHECK(p.r_counts == big({84, 30}));
  CHECK(p.downloads_per_server == 320);
}

TEST_CASE("solve_scheme: degenerate shapes") {
  CHECK(solve_scheme(ProblemInstance(2, 2, 2)).rate == rat(1));
  CHECK(solve_scheme(ProblemInstance(2, 3, 1)).rate == rat(4, 7));
  CHECK(solve_scheme(ProblemInstance(5, 1, 1)).rate == rat(1));
  // D=1 closed form (1 - 1/N) / (1 - 1/N^K)
  for (int n = 2; n <= 5; n++) {
    for (int k = 1; k <= 7; k++) {
      const Rational inv_n = Rational(BigInt(1), BigInt(n));
      const Rational expected = (rat(1) - inv_n) / (rat(1) - inv_n.pow(k));
      CHECK(solve_scheme(ProblemInstance(n, k, 1)).rate == expected);
    }
  }
}

TEST_CASE("bounds: worked values") {
  CHECK(lower_bound(ProblemInstance(2, 5, 2)) == rat(82, 135));
  CHECK(upper_bound(ProblemInstance(2, 5, 2)) == rat(8, 13));
  CHECK(upper_bound(ProblemInstance(3, 5, 2)) == rat(18, 25));
  CHECK(upper_bound(ProblemInstance(4, 6, 6)) == rat(1));
  CHECK(lower_bound(ProblemInstance(2, 4, 2)) == rat(2, 3));
  CHECK(upper_bound(ProblemInstance(2, 4, 2)) == rat(2, 3));
}

TEST_CASE("baseline: worked values and D=K") {
  {
    const ParamSet b = bu_baseline(ProblemInstance(2, 5, 2));
    CHECK(b.rate == rat(17, 28));
    CHECK(b.l_counts == big({5, 2, 1, 0, 1}));
    CHECK(b.subpackets == 34);
    CHECK(b.downloads_per_server == 56);
  }
  CHECK(bu_baseline(ProblemInstance(3, 5, 2)).rate == rat(42, 59));
  for (int n = 2; n <= 4; n++) {
    for (int d = 1; d <= 5; d++) {
      const ProblemInstance inst(n, d, d);
      const FG fg = compute_fg(inst, compute_v(inst));
      CHECK(bu_baseline(inst).rate == fg.g[static_cast<size_t>(d - 1)] / fg.f[static_cast<size_t>(d - 1)]);
    }
  }
}

TEST_CASE("comparison verdicts") {
  CHECK(compare_schemes(ProblemInstance(2, 5, 2)) == Comparison::kStrictlyBetter);
  CHECK(compare_schemes(ProblemInstance(2, 4, 2)) == Comparison::kEqual);
  for (int n = 2; n <= 5; n++) CHECK(compare_schemes(ProblemInstance(n, 6, 2)) == Comparison::kEqual);
  for (int n = 2; n <= 4; n++)
    for (int k = 2; k <= 8; k++) CHECK(compare_schemes(ProblemInstance(n, k, 1)) == Comparison::kEqual);
}

TEST_CASE("grid: every parameter-set identity holds exactly") {
  for (int n = 2; n <= 6; n++) {
    for (int k = 1; k <= 10; k++) {
      for (int d = 1; d <= k; d++) {
        const ProblemInstance inst(n, k, d);
        const ParamSet p = solve_scheme(inst);
        const int kd = inst.interference();

        // tail entries of x and the normalization sum_t g_t x_{K-D+t} = 1
        Rational norm;
        for (int t = 1; t <= d; t++)
          norm += p.g[static_cast<size_t>(t - 1)] * p.x[static_cast<size_t>(kd + t - 1)];
        CHECK(norm == rat(1));

        // L_s = L * x_s, nonnegative integers
        for (int s = 1; s <= k; s++) {
          const Rational ls = Rational(p.subpackets) * p.x[static_cast<size_t>(s - 1)];
          CHECK(ls.is_integer());
          CHECK(ls.num() == p.l(s));
          CHECK(p.l(s) >= 0);
        }

        // alignment recurrence on the integral counts
        for (int j = 1; j <= kd; j++) {
          BigInt acc = 0;
          for (int i = 1; i <= d; i++) acc += binom(d, i) * p.l(i + j);
          CHECK(BigInt(n - 1) * p.l(j) == acc);
        }

        // full recovery, downloads, and the rate identity
        BigInt rsum = 0;
        for (int i = 1; i <= d; i++) rsum += p.r(i);
        CHECK(BigInt(n) * rsum == p.subpackets);
        CHECK(p.rate == Rational(BigInt(d) * p.subpackets, BigInt(n) * p.downloads_per_server));
        CHECK(p.rate == p.g[static_cast<size_t>(p.t_star - 1)] / p.f[static_cast<size_t>(p.t_star - 1)]);
        CHECK(p.rate == lower_bound(inst));

        // g <= f componentwise, strictly positive where referenced
        for (int t = 1; t <= d; t++)
          CHECK(p.g[static_cast<size_t>(t - 1)] <= p.f[static_cast<size_t>(t - 1)]);
        CHECK(p.g[static_cast<size_t>(p.t_star - 1)].sign() > 0);

        // baseline never beats the optimized scheme; verdict is consistent
        const ParamSet b = bu_baseline(inst);
        CHECK(p.rate >= b.rate);
        CHECK((p.rate > b.rate) == (compare_schemes(inst) == Comparison::kStrictlyBetter));

        // bound order, equality iff D | K observed on this grid
        CHECK(lower_bound(inst) <= upper_bound(inst));
        if (k % d == 0) CHECK(lower_bound(inst) == upper_bound(inst));
      }
    }
  }
}
