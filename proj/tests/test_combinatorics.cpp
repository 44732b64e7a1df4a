#include <gtest/gtest.h>

#include <random>
#include <set>

#include "eulerchi/combinatorics.hpp"

using namespace eulerchi;

namespace {

// Plain loop, no tables.
ExactInt slow_factorial(long n) {
  ExactInt f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

TEST(ExactInt, DecimalRoundTrip) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    ExactInt x = ExactInt(static_cast<unsigned long>(rng())) * ExactInt(static_cast<unsigned long>(rng()));
    if (i % 2) x = -x;
    x = x * x * x;
    EXPECT_EQ(parse_int(to_string(x)), x);
  }
  EXPECT_EQ(parse_int("+12"), 12);
  EXPECT_THROW(parse_int("12a"), std::invalid_argument);
  EXPECT_THROW(parse_int(""), std::invalid_argument);
  EXPECT_THROW(parse_int("-"), std::invalid_argument);
}

TEST(ExactInt, RingLawsOnSamples) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    ExactInt a = pow_si(static_cast<long>(rng() % 1000) - 500, 7);
    ExactInt b = pow_si(static_cast<long>(rng() % 1000) - 500, 5);
    ExactInt c = pow_si(static_cast<long>(rng() % 1000) - 500, 9);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(ExactRational, Reduced) {
  ExactRational q = make_rational(6, -4);
  EXPECT_EQ(q.get_num(), -3);
  EXPECT_EQ(q.get_den(), 2);
  EXPECT_EQ(to_string(parse_rational("10/4")), "5/2");
  EXPECT_THROW(make_rational(1, 0), std::domain_error);
  EXPECT_THROW(require_integer(ExactRational(1, 3), "x"), std::domain_error);
  EXPECT_EQ(floor_of(ExactRational(-7, 2)), -4);
  EXPECT_EQ(ceil_of(ExactRational(-7, 2)), -3);
}

TEST(Binomial, Examples) {
  EXPECT_EQ(binomial(4, 2), 6);
  EXPECT_EQ(binomial(5, -1), 0);
  EXPECT_EQ(binomial(10, 3), 120);
  EXPECT_EQ(binomial(3, 4), 0);
  EXPECT_EQ(binomial(-2, 1), 0);
  EXPECT_EQ(binomial(ExactInt(10), ExactInt(3)), 120);
  EXPECT_EQ(binomial(ExactInt(5), ExactInt(-1)), 0);
}

TEST(Binomial, ProductFormula) {
  for (long n = 0; n <= 40; ++n) {
    for (long k = 0; k <= n; ++k) {
      EXPECT_EQ(binomial(n, k) * slow_factorial(k) * slow_factorial(n - k), slow_factorial(n));
    }
  }
}

TEST(Binomial, Pascal) {
  for (long n = 1; n <= 30; ++n) {
    for (long k = 0; k <= n; ++k) {
      EXPECT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k)) << n << "," << k;
    }
  }
}

TEST(Binomial, RowMatchesScalar) {
  for (long n = 0; n <= 50; ++n) {
    const auto& row = binomial_row(n);
    ASSERT_EQ(row.size(), static_cast<std::size_t>(n + 1));
    for (long k = 0; k <= n; ++k) EXPECT_EQ(row[k], binomial(n, k));
  }
}

TEST(Multinomial, Examples) {
  EXPECT_EQ(multinomial(4, {1, 3}), 4);
  EXPECT_EQ(multinomial(4, {2, 2}), 6);
  EXPECT_EQ(multinomial(9, {3, 3, 3}), 1680);
  EXPECT_THROW(multinomial(5, {2, 2}), std::invalid_argument);
}

TEST(Multinomial, FactorialQuotientExhaustive) {
  for (int r = 1; r <= 4; ++r) {
    for (long n = 0; n <= 12; ++n) {
      for (const auto& eps : enumerate_compositions(r, n)) {
        ExactInt den = 1;
        for (int e : eps) den *= slow_factorial(e);
        EXPECT_EQ(multinomial(n, eps) * den, slow_factorial(n));
        ExactInt chained = 1;
        long used = 0;
        for (int e : eps) {
          used += e;
          chained *= binomial(used, e);
        }
        EXPECT_EQ(multinomial(n, eps), chained);
      }
    }
  }
}

TEST(Compositions, Examples) {
  auto a = enumerate_compositions(2, 4);
  ASSERT_EQ(a.size(), 5u);
  EXPECT_EQ(a.front(), ExponentVector({0, 4}));
  EXPECT_EQ(a.back(), ExponentVector({4, 0}));
  const int caps[] = {1, 1};
  auto b = enumerate_compositions(2, 2, std::span<const int>(caps));
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0], ExponentVector({1, 1}));
  EXPECT_EQ(enumerate_compositions(3, 3).size(), 10u);
  const int tight[] = {0, 1};
  EXPECT_TRUE(enumerate_compositions(2, 2, std::span<const int>(tight)).empty());
}

TEST(Compositions, CountSortedUnique) {
  for (int r = 1; r <= 5; ++r) {
    for (long k = 0; k <= 12; ++k) {
      auto all = enumerate_compositions(r, k);
      EXPECT_EQ(ExactInt(static_cast<unsigned long>(all.size())), binomial(k + r - 1, r - 1));
      EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
      EXPECT_EQ(std::set<ExponentVector>(all.begin(), all.end()).size(), all.size());
      for (const auto& e : all) {
        EXPECT_EQ(e.size(), static_cast<std::size_t>(r));
        EXPECT_EQ(e.total(), k);
      }
    }
  }
}

TEST(Compositions, CapsFilterUncapped) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    int r = 1 + static_cast<int>(rng() % 4);
    std::vector<int> caps(r);
    for (auto& c : caps) c = static_cast<int>(rng() % 4);
    long total = static_cast<long>(rng() % 9);
    std::vector<ExponentVector> expected;
    for (const auto& e : enumerate_compositions(r, total)) {
      bool ok = true;
      for (int i = 0; i < r; ++i) ok = ok && e[i] <= caps[i];
      if (ok) expected.push_back(e);
    }
    EXPECT_EQ(enumerate_compositions(r, total, std::span<const int>(caps)), expected);
  }
}

TEST(ExponentVector, RejectsNegative) {
  EXPECT_THROW(ExponentVector({1, -1}), std::invalid_argument);
  EXPECT_EQ(ExponentVector({1, 2}).to_string(), "(1,2)");
}
