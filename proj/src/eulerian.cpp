#include "eulerchi/eulerian.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <string>
#include <utility>

#include "eulerchi/combinatorics.hpp"

namespace eulerchi {

namespace {

// Row n from the alternating sum E(n,k) = sum_i (-1)^i (k+1-i)^n C(n+1,i),
// using symmetry for the upper half.
std::vector<ExactInt> build_eulerian_row(long n) {
  std::vector<ExactInt> row(static_cast<std::size_t>(n));
  std::vector<ExactInt> powers(static_cast<std::size_t>(n) + 2);
  for (long j = 0; j <= n + 1; ++j) powers[j] = pow_si(j, static_cast<unsigned long>(n));
  const auto& c = binomial_row(n + 1);
  const long half = (n - 1) / 2;
  for (long k = 0; k <= half; ++k) {
    ExactInt acc = 0;
    for (long i = 0; i <= k; ++i) {
      if (i % 2 == 0) {
        mpz_addmul(acc.get_mpz_t(), powers[k + 1 - i].get_mpz_t(), c[i].get_mpz_t());
      } else {
        mpz_submul(acc.get_mpz_t(), powers[k + 1 - i].get_mpz_t(), c[i].get_mpz_t());
      }
    }
    row[k] = acc;
    row[n - 1 - k] = std::move(acc);
  }
  return row;
}

class EulerianTable {
 public:
  const std::vector<ExactInt>& row(long n) {
    {
      std::shared_lock lock(mutex_);
      auto it = rows_.find(n);
      if (it != rows_.end()) return *it->second;
    }
    auto built = std::make_unique<const std::vector<ExactInt>>(build_eulerian_row(n));
    std::unique_lock lock(mutex_);
    auto [it, inserted] = rows_.try_emplace(n, std::move(built));
    return *it->second;
  }

  bool has(long n) {
    std::shared_lock lock(mutex_);
    return rows_.count(n) != 0;
  }

 private:
  std::shared_mutex mutex_;
  std::map<long, std::unique_ptr<const std::vector<ExactInt>>> rows_;
};

class GeneralizedTable {
 public:
  const std::vector<ExactInt>& row(int r, long n);

  bool has(int r, long n) {
    std::shared_lock lock(mutex_);
    return rows_.count({r, n}) != 0;
  }

 private:
  std::shared_mutex mutex_;
  std::map<std::pair<int, long>, std::unique_ptr<const std::vector<ExactInt>>> rows_;
};

EulerianTable& eulerian_table() {
  static EulerianTable table;
  return table;
}

GeneralizedTable& generalized_table() {
  static GeneralizedTable table;
  return table;
}

const std::vector<ExactInt>& GeneralizedTable::row(int r, long n) {
  {
    std::shared_lock lock(mutex_);
    auto it = rows_.find({r, n});
    if (it != rows_.end()) return *it->second;
  }
  std::vector<ExactInt> values;
  if (r == 1) {
    values = eulerian_row(n);
  } else {
    values = lift_eulerian_row(row(r - 1, n), r, n);
  }
  auto built = std::make_unique<const std::vector<ExactInt>>(std::move(values));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = rows_.try_emplace(std::make_pair(r, n), std::move(built));
  return *it->second;
}

const std::vector<ExactInt> kEmptyRow;

// Histogram of descent sets (bit i-1 set when position i is a descent) over
// all permutations of {1..n}.
const std::vector<std::uint64_t>& descent_set_histogram(long n) {
  static std::mutex mutex;
  static std::map<long, std::vector<std::uint64_t>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::uint64_t> hist(std::size_t{1} << (n - 1), 0);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  do {
    unsigned mask = 0;
    for (long i = 0; i + 1 < n; ++i) {
      if (perm[i] > perm[i + 1]) mask |= 1u << i;
    }
    ++hist[mask];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return cache.emplace(n, std::move(hist)).first->second;
}

}  // namespace

const std::vector<ExactInt>& eulerian_row(long n) {
  if (n <= 0) return kEmptyRow;
  return eulerian_table().row(n);
}

ExactInt eulerian(long n, long k) {
  if (n <= 0 || k < 0 || k > n - 1) return 0;
  return eulerian_row(n)[k];
}

ExactInt eulerian_alternating(long n, long k) {
  if (n <= 0 || k < 0 || k > n - 1) return 0;
  if (k > (n - 1) / 2) k = n - 1 - k;
  ExactInt acc = 0;
  for (long i = 0; i <= k; ++i) {
    ExactInt term = pow_si(k + 1 - i, static_cast<unsigned long>(n)) * binomial(n + 1, i);
    if (i % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

std::vector<ExactInt> lift_eulerian_row(const std::vector<ExactInt>& lower, int r, long n) {
  if (r < 2) throw PreconditionError("lift_eulerian_row needs r >= 2");
  if (n < r) return {};
  const long len = n - r + 1;
  auto at = [&](long j) -> const ExactInt* {
    if (j < 0 || j >= static_cast<long>(lower.size())) return nullptr;
    return &lower[j];
  };
  std::vector<ExactInt> out(static_cast<std::size_t>(len));
  for (long j = 0; j < len; ++j) {
    ExactInt acc = 0;
    if (const ExactInt* up = at(j + 1)) mpz_addmul_ui(acc.get_mpz_t(), up->get_mpz_t(), static_cast<unsigned long>(j + 1));
    const long coeff = n + 1 - j - r;
    if (const ExactInt* same = at(j); same && coeff > 0) {
      mpz_addmul_ui(acc.get_mpz_t(), same->get_mpz_t(), static_cast<unsigned long>(coeff));
    }
    if (r - 1 > 1) {
      if (!mpz_divisible_ui_p(acc.get_mpz_t(), static_cast<unsigned long>(r - 1))) {
        throw ConsistencyError("order-raising recurrence produced a non-integer at r=" + std::to_string(r) +
                               ", n=" + std::to_string(n) + ", j=" + std::to_string(j));
      }
      mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(r - 1));
    }
    out[j] = std::move(acc);
  }
  return out;
}

const std::vector<ExactInt>& generalized_eulerian_row(int r, long n) {
  if (r < 1) throw PreconditionError("generalized Eulerian numbers need r >= 1");
  if (n < r) return kEmptyRow;
  return generalized_table().row(r, n);
}

std::vector<ExactInt> generalized_eulerian_prefix(int r, long n, long count) {
  if (r < 1) throw PreconditionError("generalized Eulerian numbers need r >= 1");
  if (n < r || count <= 0) return {};
  count = std::min(count, n - r + 1);
  if (generalized_table().has(r, n)) {
    const auto& full = generalized_table().row(r, n);
    return {full.begin(), full.begin() + count};
  }
  // Lifting from order s-1 to s consumes one index at the top, so order 1
  // needs count + r - 1 leading values.
  const long base_count = std::min(count + r - 1, n);
  std::vector<ExactInt> cur;
  cur.reserve(static_cast<std::size_t>(base_count));
  for (long k = 0; k < base_count; ++k) cur.push_back(eulerian_alternating(n, k));
  for (int s = 2; s <= r; ++s) {
    const long want = std::min(count + r - s, n - s + 1);
    std::vector<ExactInt> next(static_cast<std::size_t>(want));
    for (long j = 0; j < want; ++j) {
      ExactInt acc = 0;
      if (j + 1 < static_cast<long>(cur.size())) {
        mpz_addmul_ui(acc.get_mpz_t(), cur[j + 1].get_mpz_t(), static_cast<unsigned long>(j + 1));
      }
      const long coeff = n + 1 - j - s;
      if (coeff > 0) mpz_addmul_ui(acc.get_mpz_t(), cur[j].get_mpz_t(), static_cast<unsigned long>(coeff));
      if (s - 1 > 1) mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(s - 1));
      next[j] = std::move(acc);
    }
    cur = std::move(next);
  }
  cur.resize(static_cast<std::size_t>(count));
  return cur;
}

ExactInt generalized_eulerian(int r, long n, long k) {
  if (r < 1) throw PreconditionError("generalized Eulerian numbers need r >= 1");
  if (n < r || k < 0 || k > n - r) return 0;
  if (r == 1) return eulerian(n, k);
  const long mirrored = std::min(k, n - r - k);
  if (n <= 256 || generalized_table().has(r, n)) return generalized_eulerian_row(r, n)[k];
  return generalized_eulerian_prefix(r, n, mirrored + 1).back();
}

ExactInt generalized_eulerian_via_sum(int r, long n, long k) {
  if (r < 1) throw PreconditionError("generalized Eulerian numbers need r >= 1");
  if (n < 0 || k < 0) return 0;
  ExactInt total = 0;
  const ExactInt n_factorial = factorial(n);
  std::vector<int> caps(static_cast<std::size_t>(r));
  for_each_composition(r, n, {}, [&](const std::vector<int>& eps) {
    // E(0, .) = 0, so any empty bucket contributes nothing.
    if (std::any_of(eps.begin(), eps.end(), [](int e) { return e == 0; })) return;
    ExactInt inner = 0;
    for (int i = 0; i < r; ++i) caps[i] = eps[i] - 1;
    for_each_composition(r, k, caps, [&](const std::vector<int>& t) {
      ExactInt prod = 1;
      for (int i = 0; i < r; ++i) prod *= eulerian(eps[i], t[i]);
      inner += prod;
    });
    if (inner == 0) return;
    ExactInt weight = n_factorial;
    for (int e : eps) mpz_divexact(weight.get_mpz_t(), weight.get_mpz_t(), factorial(e).get_mpz_t());
    total += weight * inner;
  });
  return total;
}

ExactInt brute_force_generalized(int r, long n, long k, long cap) {
  if (r < 1) throw PreconditionError("generalized Eulerian numbers need r >= 1");
  if (n > cap) {
    throw PreconditionError("brute-force oracle limited to n <= " + std::to_string(cap) + ", got n = " +
                            std::to_string(n));
  }
  if (n < 1 || n < r || k < 0) return 0;
  const auto& hist = descent_set_histogram(n);
  const unsigned positions = static_cast<unsigned>(n - 1);
  const unsigned full = (positions == 0) ? 0u : ((1u << positions) - 1u);
  std::uint64_t count = 0;
  for (unsigned subset = 0; subset <= full; ++subset) {
    if (std::popcount(subset) != r - 1) continue;
    for (unsigned descents = 0; descents <= full; ++descents) {
      if (hist[descents] == 0) continue;
      if (std::popcount(descents & ~subset) == k) count += hist[descents];
    }
  }
  return ExactInt(static_cast<unsigned long>(count));
}

std::vector<ExactInt> eulerian_convolution(long a, long b) {
  if (a < 1 || b < 1) throw PreconditionError("eulerian_convolution needs a, b >= 1");
  std::vector<ExactInt> out(static_cast<std::size_t>(a + b - 1));
  const auto& ra = eulerian_row(a);
  const auto& rb = eulerian_row(b);
  for (long i = 0; i < a; ++i) {
    for (long j = 0; j < b; ++j) mpz_addmul(out[i + j].get_mpz_t(), ra[i].get_mpz_t(), rb[j].get_mpz_t());
  }
  return out;
}

BoundsCheck check_asymptotic_bounds(int r, long n, long k) {
  if (n < 1 || r < 1 || k < 0) throw PreconditionError("check_asymptotic_bounds needs n >= 1, r >= 1, k >= 0");
  BoundsCheck out;
  const ExactInt c = binomial(k + r - 1, r - 1);
  const auto e = static_cast<unsigned long>(n);
  out.upper = c * pow_si(k + r, e);
  out.lower = c * (pow_si(k + r, e) - ExactInt(n + 1) * pow_si(k + r - 1, e));
  out.value = generalized_eulerian(r, n, k);
  out.lower_ok = out.lower <= out.value;
  out.upper_ok = out.value <= out.upper;
  return out;
}

namespace {

// Lower bound for exp(u), u >= 0: the Taylor polynomial, extended until the
// next term drops below 1e-15 of the running sum.
ExactRational exp_lower_bound(const ExactRational& u) {
  ExactRational sum = 1;
  ExactRational term = 1;
  const ExactRational tiny(1L, 1000000000000000L);
  for (unsigned long j = 1; j < 400; ++j) {
    term = term * u / ExactRational(static_cast<long>(j));
    sum += term;
    if (term < sum * tiny && ExactRational(static_cast<long>(j)) > u) break;
  }
  return sum;
}

}  // namespace

ExactRational ln_upper_bound(const ExactInt& x, const ExactRational& width) {
  if (x < 1) throw PreconditionError("ln_upper_bound needs x >= 1");
  if (x == 1) return 0;
  // ln 2 < 7/10, so bit length * 7/10 is an upper bound; certify it anyway.
  const auto bits = static_cast<long>(mpz_sizeinbase(x.get_mpz_t(), 2));
  ExactRational hi(7 * bits, 10);
  while (exp_lower_bound(hi) < ExactRational(x)) hi *= 2;
  ExactRational lo = 0;
  while (hi - lo > width) {
    ExactRational mid = (lo + hi) / 2;
    if (exp_lower_bound(mid) >= ExactRational(x)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::optional<Lower06Case> lower_06_hypothesis(int r, long n, long k) {
  if (r < 1 || n < 1 || k < 0) return std::nullopt;
  if (r >= 2 && n >= 3L * r * r + 100 && k <= 4L * r) return Lower06Case::large_n;
  // k <= n / (ln(n+1) + 1) - r, decided with a certified upper bound on ln.
  const ExactRational ln_hi = ln_upper_bound(ExactInt(n + 1));
  if (ExactRational(k + r) * (ln_hi + 1) <= ExactRational(n)) return Lower06Case::small_k;
  return std::nullopt;
}

bool check_lower_06(int r, long n, long k) {
  if (!lower_06_hypothesis(r, n, k)) {
    throw PreconditionError("check_lower_06: neither hypothesis holds for r=" + std::to_string(r) +
                            ", n=" + std::to_string(n) + ", k=" + std::to_string(k));
  }
  const ExactInt lhs = 5 * generalized_eulerian(r, n, k);
  const ExactInt rhs = 3 * binomial(k + r - 1, r - 1) * pow_si(k + r, static_cast<unsigned long>(n));
  return lhs >= rhs;
}

RowProperties row_properties(const std::vector<ExactInt>& values) {
  RowProperties out;
  out.symmetric = std::equal(values.begin(), values.begin() + static_cast<long>(values.size() / 2), values.rbegin());
  out.log_concave = true;
  for (std::size_t k = 1; k + 1 < values.size(); ++k) {
    if (values[k] * values[k] < values[k - 1] * values[k + 1]) {
      out.log_concave = false;
      break;
    }
  }
  out.total = std::accumulate(values.begin(), values.end(), ExactInt(0));
  return out;
}

RowProperties check_row_properties(int r, long n) {
  if (n < r) throw PreconditionError("check_row_properties needs n >= r");
  return row_properties(generalized_eulerian_row(r, n));
}

Dominance check_dominance(long n) {
  if (n < 1) throw PreconditionError("check_dominance needs n >= 1");
  const auto& row = eulerian_row(n);
  const ExactInt& peak = *std::max_element(row.begin(), row.end());
  return {2 * peak <= factorial(n), n == 1 || n == 3 || n == 5};
}

}  // namespace eulerchi
