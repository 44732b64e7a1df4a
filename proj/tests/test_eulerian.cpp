#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "eulerchi/combinatorics.hpp"
#include "eulerchi/eulerian.hpp"

using namespace eulerchi;

namespace {

using Row = std::vector<ExactInt>;

// Triangle from (n-k)E(n-1,k-1) + (k+1)E(n-1,k).
std::vector<Row> triangle_by_recurrence(long max_n) {
  std::vector<Row> t(static_cast<std::size_t>(max_n) + 1);
  if (max_n >= 1) t[1] = {1};
  for (long n = 2; n <= max_n; ++n) {
    t[n].assign(static_cast<std::size_t>(n), 0);
    for (long k = 0; k < n; ++k) {
      ExactInt v = 0;
      if (k >= 1) v += (n - k) * t[n - 1][k - 1];
      if (k <= n - 2) v += (k + 1) * t[n - 1][k];
      t[n][k] = v;
    }
  }
  return t;
}

// E_r(n, .) by definition: every permutation, every (r-1)-subset of positions.
Row count_pairs(int r, int n) {
  Row out(static_cast<std::size_t>(std::max(0, n - r + 1)), 0);
  if (n < r) return out;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    for (unsigned s = 0; s < (1u << (n - 1)); ++s) {
      if (__builtin_popcount(s) != r - 1) continue;
      int k = 0;
      for (int i = 0; i + 1 < n; ++i) {
        if (p[i] > p[i + 1] && !(s >> i & 1u)) ++k;
      }
      out[k] += 1;
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Row ints(std::initializer_list<long> xs) {
  Row out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

}  // namespace

TEST(Eulerian, Examples) {
  EXPECT_EQ(eulerian(7, 3), 2416);
  EXPECT_EQ(eulerian(1, 0), 1);
  EXPECT_EQ(eulerian(0, 0), 0);
  EXPECT_EQ(eulerian(4, 1), 11);
  EXPECT_EQ(eulerian(-3, 0), 0);
  EXPECT_EQ(eulerian(5, 5), 0);
  EXPECT_EQ(eulerian(5, -1), 0);
}

TEST(Eulerian, KnownRows) {
  EXPECT_EQ(eulerian_row(7), ints({1, 120, 1191, 2416, 1191, 120, 1}));
  EXPECT_EQ(eulerian_row(9), ints({1, 502, 14608, 88234, 156190, 88234, 14608, 502, 1}));
  EXPECT_TRUE(eulerian_row(0).empty());
}

TEST(Eulerian, AlternatingSumMatchesRecurrence) {
  auto t = triangle_by_recurrence(60);
  for (long n = 1; n <= 60; ++n) {
    EXPECT_EQ(eulerian_row(n), t[n]) << "n=" << n;
    if (n <= 20) {
      for (long k = 0; k < n; ++k) EXPECT_EQ(eulerian_alternating(n, k), t[n][k]);
    }
  }
}

TEST(Eulerian, BruteForceSmall) {
  for (int n = 1; n <= 8; ++n) EXPECT_EQ(eulerian_row(n), count_pairs(1, n)) << "n=" << n;
}

TEST(Generalized, Examples) {
  EXPECT_EQ(generalized_eulerian(2, 4, 0), 14);
  EXPECT_EQ(generalized_eulerian(2, 4, 2), 14);
  EXPECT_EQ(generalized_eulerian(1, 7, 3), 2416);
  // The middle entry is forced by the row total 4! * C(3,1) = 72.
  EXPECT_EQ(generalized_eulerian(2, 4, 1), 44);
  EXPECT_EQ(generalized_eulerian(2, 1, 0), 0);
  EXPECT_EQ(generalized_eulerian(2, 4, 3), 0);
  EXPECT_THROW(generalized_eulerian(0, 4, 0), PreconditionError);
}

TEST(Generalized, ViaSumExamples) {
  EXPECT_EQ(generalized_eulerian_via_sum(2, 4, 1), 44);
  EXPECT_EQ(generalized_eulerian_via_sum(2, 4, 0), 14);
  EXPECT_EQ(generalized_eulerian_via_sum(3, 3, 0), 6);
}

TEST(Generalized, BruteForceExamples) {
  EXPECT_EQ(brute_force_generalized(2, 4, 0), 14);
  EXPECT_EQ(brute_force_generalized(1, 4, 1), 11);
  EXPECT_EQ(brute_force_generalized(2, 4, 1), 44);
  EXPECT_THROW(brute_force_generalized(2, 11, 0), PreconditionError);
  EXPECT_THROW(brute_force_generalized(2, 11, 0), std::invalid_argument);
}

TEST(Generalized, ThreeRoutesAgree) {
  for (int r = 1; r <= 3; ++r) {
    for (int n = r; n <= 8; ++n) {
      Row direct = count_pairs(r, n);
      const Row& row = generalized_eulerian_row(r, n);
      ASSERT_EQ(row, direct) << "r=" << r << " n=" << n;
      for (long k = 0; k <= n - r + 1; ++k) {
        ExactInt v = generalized_eulerian(r, n, k);
        EXPECT_EQ(generalized_eulerian_via_sum(r, n, k), v);
        EXPECT_EQ(brute_force_generalized(r, n, k), v);
      }
    }
  }
}

TEST(Generalized, RowTotals) {
  for (int r = 1; r <= 4; ++r) {
    for (long n = r; n <= 14; ++n) {
      const Row& row = generalized_eulerian_row(r, n);
      ExactInt total = std::accumulate(row.begin(), row.end(), ExactInt(0));
      ExactInt nf = 1;
      for (long i = 2; i <= n; ++i) nf *= i;
      EXPECT_EQ(total, nf * binomial(n - 1, r - 1)) << r << "," << n;
    }
  }
}

TEST(Generalized, LiftRecurrenceExhaustive) {
  for (int r = 2; r <= 4; ++r) {
    for (long n = 1; n <= 14; ++n) {
      for (long j = -1; j <= n + 1; ++j) {
        ExactInt lhs = (r - 1) * generalized_eulerian(r, n, j);
        ExactInt rhs = (j + 1) * generalized_eulerian(r - 1, n, j + 1) +
                       (n + 1 - j - r) * generalized_eulerian(r - 1, n, j);
        EXPECT_EQ(lhs, rhs) << r << "," << n << "," << j;
      }
    }
  }
}

TEST(Generalized, PrefixMatchesRow) {
  for (int r = 1; r <= 5; ++r) {
    for (long n = r; n <= 40; n += 3) {
      const Row& row = generalized_eulerian_row(r, n);
      for (long count : {1L, 2L, 5L, n}) {
        auto pre = generalized_eulerian_prefix(r, n, count);
        ASSERT_EQ(pre.size(), static_cast<std::size_t>(std::min(count, n - r + 1)));
        for (std::size_t i = 0; i < pre.size(); ++i) EXPECT_EQ(pre[i], row[i]);
      }
    }
  }
}

TEST(Generalized, LargeNUsesSymmetry) {
  // 300 is past the full-row cutoff, so this goes through the prefix route.
  const long n = 300;
  ExactInt a = generalized_eulerian(3, n, 2);
  ExactInt b = generalized_eulerian(3, n, n - 3 - 2);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, generalized_eulerian_row(3, n)[2]);
}

TEST(Generalized, ConcurrentReadersAgree) {
  std::vector<ExactInt> seen(8);
  std::vector<std::thread> pool;
  for (int t = 0; t < 8; ++t) {
    pool.emplace_back([t, &seen] { seen[t] = generalized_eulerian(4, 90 + t % 2, 7); });
  }
  for (auto& th : pool) th.join();
  for (int t = 0; t < 8; ++t) EXPECT_EQ(seen[t], generalized_eulerian(4, 90 + t % 2, 7));
}

TEST(Convolution, KnownVectors) {
  EXPECT_EQ(eulerian_convolution(3, 3), ints({1, 8, 18, 8, 1}));
  EXPECT_EQ(eulerian_convolution(3, 5), ints({1, 30, 171, 316, 171, 30, 1}));
  EXPECT_EQ(eulerian_convolution(5, 5), ints({1, 52, 808, 3484, 5710, 3484, 808, 52, 1}));
}

TEST(Bounds, Examples) {
  auto a = check_asymptotic_bounds(1, 3, 1);
  EXPECT_TRUE(a.lower_ok && a.upper_ok);
  EXPECT_EQ(a.lower, 4);
  EXPECT_EQ(a.upper, 8);
  auto b = check_asymptotic_bounds(2, 4, 0);
  EXPECT_TRUE(b.lower_ok && b.upper_ok);
  EXPECT_EQ(b.lower, 11);
  EXPECT_EQ(b.upper, 16);
  auto c = check_asymptotic_bounds(1, 1, 0);
  EXPECT_TRUE(c.lower_ok && c.upper_ok);
  EXPECT_EQ(c.lower, 1);
  EXPECT_EQ(c.upper, 1);
}

TEST(Bounds, HoldEverywhereSmall) {
  for (int r = 1; r <= 5; ++r) {
    for (long n = 1; n <= 60; ++n) {
      for (long k = 0; k <= n - r; ++k) {
        auto b = check_asymptotic_bounds(r, n, k);
        ASSERT_TRUE(b.lower_ok && b.upper_ok) << r << "," << n << "," << k;
      }
    }
  }
}

TEST(LnBound, BracketsLogarithm) {
  for (long x : {2L, 3L, 10L, 101L, 1041L, 1000000L}) {
    ExactRational u = ln_upper_bound(ExactInt(x));
    double ud = u.get_d();
    EXPECT_GE(ud, std::log(static_cast<double>(x)) - 1e-12) << x;
    EXPECT_LE(ud, std::log(static_cast<double>(x)) + 2e-6) << x;
  }
  EXPECT_EQ(ln_upper_bound(ExactInt(1)), 0);
}

TEST(Lower06, Examples) {
  EXPECT_EQ(lower_06_hypothesis(2, 112, 1), Lower06Case::large_n);
  EXPECT_TRUE(check_lower_06(2, 112, 1));
  EXPECT_TRUE(check_lower_06(2, 112, 8));
  EXPECT_EQ(lower_06_hypothesis(1, 100, 10), Lower06Case::small_k);
  EXPECT_TRUE(check_lower_06(1, 100, 10));
  EXPECT_FALSE(lower_06_hypothesis(2, 20, 10).has_value());
  EXPECT_THROW(check_lower_06(2, 20, 10), PreconditionError);
}

TEST(Lower06, SmallKBoundary) {
  // 100 / (ln 101 + 1) - 1 = 16.8...; 16 is admitted, 17 is not.
  EXPECT_TRUE(lower_06_hypothesis(1, 100, 16).has_value());
  EXPECT_FALSE(lower_06_hypothesis(1, 100, 17).has_value());
}

TEST(RowProperties, Examples) {
  auto a = check_row_properties(2, 4);
  EXPECT_TRUE(a.symmetric);
  EXPECT_TRUE(a.log_concave);
  EXPECT_EQ(a.total, 72);
  EXPECT_EQ(check_row_properties(1, 7).total, 5040);
  EXPECT_EQ(check_row_properties(1, 9).total, 362880);
  auto bad = row_properties(ints({1, 5, 30, 5, 2}));
  EXPECT_FALSE(bad.symmetric);
  EXPECT_FALSE(row_properties(ints({4, 1, 4})).log_concave);
}

TEST(RowProperties, AllRowsSmall) {
  for (int r = 1; r <= 5; ++r) {
    for (long n = r; n <= 40; ++n) {
      auto p = check_row_properties(r, n);
      ASSERT_TRUE(p.symmetric) << r << "," << n;
      ASSERT_TRUE(p.log_concave) << r << "," << n;
    }
  }
}

TEST(Dominance, Examples) {
  auto a = check_dominance(7);
  EXPECT_TRUE(a.holds);
  EXPECT_FALSE(a.is_exception);
  auto b = check_dominance(5);
  EXPECT_FALSE(b.holds);
  EXPECT_TRUE(b.is_exception);
  EXPECT_TRUE(check_dominance(4).holds);
  for (long n = 1; n <= 40; ++n) {
    auto d = check_dominance(n);
    EXPECT_EQ(d.holds, !d.is_exception) << n;
  }
}
