#include "eulerchi/chi.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "eulerchi/eulerian.hpp"

namespace eulerchi {

IntersectionProfile::IntersectionProfile(int r, long n, Numbers numbers, bool check_admissible)
    : r_(r), n_(n), numbers_(std::move(numbers)) {
  if (r < 1 || n < 1) throw PreconditionError("profile needs r >= 1 and n >= 1");
  for (const auto& [e, v] : numbers_) {
    if (e.size() != static_cast<std::size_t>(r) || e.total() != n) {
      throw PreconditionError("profile entry " + e.to_string() + " does not have length " + std::to_string(r) +
                              " and total " + std::to_string(n));
    }
    if (v <= 0) throw PreconditionError("profile value at " + e.to_string() + " is not positive");
  }
  const ExactInt expected = binomial(n + r - 1, r - 1);
  if (ExactInt(static_cast<unsigned long>(numbers_.size())) != expected) {
    throw PreconditionError("profile has " + std::to_string(numbers_.size()) + " entries, expected " +
                            expected.get_str());
  }
  if (check_admissible && !admissible()) {
    throw PreconditionError("profile is not admissible: some value is below n!");
  }
}

IntersectionProfile IntersectionProfile::constant(int r, long n, const ExactInt& value) {
  Numbers numbers;
  for (auto& e : enumerate_compositions(r, n)) numbers.emplace(std::move(e), value);
  return IntersectionProfile(r, n, std::move(numbers));
}

const ExactInt& IntersectionProfile::at(const ExponentVector& e) const {
  auto it = numbers_.find(e);
  if (it == numbers_.end()) throw PreconditionError("no intersection number for " + e.to_string());
  return it->second;
}

bool IntersectionProfile::admissible() const {
  const ExactInt nf = factorial(n_);
  return std::all_of(numbers_.begin(), numbers_.end(), [&](const auto& kv) { return kv.second >= nf; });
}

ChiSequence::ChiSequence(long n, int r, std::vector<ExactInt> magnitudes)
    : n_(n), r_(r), values_(std::move(magnitudes)) {
  if (r < 1 || n < r) throw PreconditionError("chi sequence needs 1 <= r <= n");
  if (values_.size() != static_cast<std::size_t>(n - r + 1)) {
    throw PreconditionError("chi sequence for n=" + std::to_string(n) + ", r=" + std::to_string(r) + " needs " +
                            std::to_string(n - r + 1) + " values, got " + std::to_string(values_.size()));
  }
  if (values_.front() <= 0) throw PreconditionError("chi_0 must be positive");
  for (const auto& v : values_) {
    if (v < 0) throw PreconditionError("chi magnitudes must be nonnegative");
  }
}

ChiSequence ChiSequence::from_values(std::vector<ExactInt> values) {
  const long n = static_cast<long>(values.size());
  return ChiSequence(n, 1, std::move(values));
}

ExactInt ChiSequence::value(long q) const {
  if (q < 0 || q >= static_cast<long>(values_.size())) return 0;
  return values_[q];
}

ExactInt ChiSequence::signed_value(long q) const {
  ExactInt v = value(q);
  if ((n_ - q - r_) % 2 != 0) v = -v;
  return v;
}

bool ChiSequence::palindromic() const { return std::equal(values_.begin(), values_.end(), values_.rbegin()); }

ExactInt ChiSequence::total() const { return std::accumulate(values_.begin(), values_.end(), ExactInt(0)); }

std::string ChiSequence::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out += ' ';
    out += values_[i].get_str();
  }
  return out;
}

void DegreeProfile::validate() const {
  if (r < 1 || n < r) throw PreconditionError("degree profile needs 1 <= r <= n");
  if (d.size() != static_cast<std::size_t>(r)) throw PreconditionError("degree profile needs exactly r degrees");
  for (long di : d) {
    if (di < 1) throw PreconditionError("degrees must be >= 1");
  }
  if (h < 1) throw PreconditionError("h must be >= 1");
}

bool DegreeProfile::equal_degrees() const {
  return std::adjacent_find(d.begin(), d.end(), std::not_equal_to<>()) == d.end();
}

IntersectionProfile DegreeProfile::induced_profile() const {
  validate();
  const ExactInt base = h * factorial(n);
  IntersectionProfile::Numbers numbers;
  for (auto& e : enumerate_compositions(r, n)) {
    ExactInt v = base;
    for (int i = 0; i < r; ++i) v *= pow_si(d[i], static_cast<unsigned long>(e[i]));
    numbers.emplace(std::move(e), std::move(v));
  }
  return IntersectionProfile(r, n, std::move(numbers));
}

namespace {

// Coefficients of prod_i (sum_t E(eps_i, t) x^t).
std::vector<ExactInt> eulerian_product(const ExponentVector& eps) {
  std::vector<ExactInt> acc{ExactInt(1)};
  for (int e : eps) {
    const auto& row = eulerian_row(e);
    std::vector<ExactInt> next(acc.size() + row.size() - 1);
    for (std::size_t i = 0; i < acc.size(); ++i) {
      if (acc[i] == 0) continue;
      for (std::size_t j = 0; j < row.size(); ++j) {
        mpz_addmul(next[i + j].get_mpz_t(), acc[i].get_mpz_t(), row[j].get_mpz_t());
      }
    }
    acc = std::move(next);
  }
  return acc;
}

ExactInt divide_by_factorial(const ExactInt& numerator, long n, long q) {
  const ExactInt nf = factorial(n);
  if (!mpz_divisible_p(numerator.get_mpz_t(), nf.get_mpz_t())) {
    throw IntegralityError("chi_" + std::to_string(q) + " is not an integer: " + numerator.get_str() + " / " +
                           std::to_string(n) + "! leaves a remainder");
  }
  ExactInt out;
  mpz_divexact(out.get_mpz_t(), numerator.get_mpz_t(), nf.get_mpz_t());
  return out;
}

}  // namespace

ChiSequence chi_from_profile(const IntersectionProfile& profile) {
  const int r = profile.r();
  const long n = profile.n();
  if (n < r) throw PreconditionError("chi needs n >= r");
  std::vector<ExactInt> numer(static_cast<std::size_t>(n - r + 1));
  for (const auto& [eps, value] : profile.numbers()) {
    if (!eps.all_positive()) continue;
    const ExactInt weight = multinomial(n, eps) * value;
    const auto conv = eulerian_product(eps);
    for (std::size_t q = 0; q < numer.size() && q < conv.size(); ++q) {
      mpz_addmul(numer[q].get_mpz_t(), weight.get_mpz_t(), conv[q].get_mpz_t());
    }
  }
  std::vector<ExactInt> values;
  values.reserve(numer.size());
  for (std::size_t q = 0; q < numer.size(); ++q) values.push_back(divide_by_factorial(numer[q], n, static_cast<long>(q)));
  return ChiSequence(n, r, std::move(values));
}

ChiSequence chi_same_class(const DegreeProfile& dp) {
  dp.validate();
  if (dp.equal_degrees()) {
    // I(eps) = h n! d^n for every eps, so the sum collapses onto E_r(n, .).
    const ExactInt scale = dp.h * pow_si(dp.d.front(), static_cast<unsigned long>(dp.n));
    const auto& row = generalized_eulerian_row(dp.r, dp.n);
    std::vector<ExactInt> values;
    values.reserve(row.size());
    for (const auto& v : row) values.push_back(scale * v);
    return ChiSequence(dp.n, dp.r, std::move(values));
  }
  return chi_from_profile(dp.induced_profile());
}

ExactInt chi_coefficient(long q, const ExponentVector& eps, const std::vector<long>& d) {
  const int r = static_cast<int>(eps.size());
  if (d.size() != eps.size()) throw PreconditionError("chi_coefficient needs one degree per exponent");
  if (q < 0) return 0;
  const long n = eps.total();
  ExactInt total = 0;
  for (long used = 0; used <= q; ++used) {
    const ExactInt c = binomial(n, q - used);
    if (c == 0) continue;
    for_each_composition(r, used, {}, [&](const std::vector<int>& s) {
      ExactInt prod = c;
      for (int i = 0; i < r; ++i) {
        const long base = d[i] - s[i];
        const auto e = static_cast<unsigned long>(eps[i]);
        prod *= pow_si(base, e) - pow_si(base - 1, e);
        if (prod == 0) return;
      }
      if (used % 2 == 0) {
        total += prod;
      } else {
        total -= prod;
      }
    });
  }
  return total;
}

namespace {

class PowerSums {
 public:
  explicit PowerSums(const IntersectionProfile& profile) {
    for (const auto& [e, v] : profile.numbers()) terms_.emplace_back(e, multinomial(profile.n(), e) * v);
  }

  // (sum_i a_i H_i)^n
  const ExactInt& at(const std::vector<long>& a) {
    auto it = cache_.find(a);
    if (it != cache_.end()) return it->second;
    ExactInt acc = 0;
    for (const auto& [e, w] : terms_) {
      ExactInt t = w;
      for (std::size_t i = 0; i < a.size() && t != 0; ++i) t *= pow_si(a[i], static_cast<unsigned long>(e[i]));
      acc += t;
    }
    return cache_.emplace(a, std::move(acc)).first->second;
  }

 private:
  std::vector<std::pair<ExponentVector, ExactInt>> terms_;
  std::map<std::vector<long>, ExactInt> cache_;
};

ExactInt p0_numerator_with(PowerSums& sums, int r, const std::vector<long>& d, long m, const std::vector<long>& twist) {
  ExactInt acc = 0;
  std::vector<long> a(static_cast<std::size_t>(r));
  for (unsigned mask = 0; mask < (1u << r); ++mask) {
    for (int i = 0; i < r; ++i) {
      a[i] = d[i] - static_cast<long>((mask >> i) & 1u);
      if (!twist.empty()) a[i] += m * twist[i];
    }
    if (std::popcount(mask) % 2 == 0) {
      acc += sums.at(a);
    } else {
      acc -= sums.at(a);
    }
  }
  return acc;
}

std::vector<long> degrees_or_zero(const IntersectionProfile& profile, const std::vector<long>& d) {
  if (d.empty()) return std::vector<long>(static_cast<std::size_t>(profile.r()), 0);
  if (d.size() != static_cast<std::size_t>(profile.r())) throw PreconditionError("need one degree per hypersurface");
  return d;
}

}  // namespace

ExactInt p0_numerator(const IntersectionProfile& profile, const std::vector<long>& d, long m,
                      const std::vector<long>& twist) {
  const auto dd = degrees_or_zero(profile, d);
  if (!twist.empty() && twist.size() != dd.size()) throw PreconditionError("twist needs one coefficient per class");
  PowerSums sums(profile);
  return p0_numerator_with(sums, profile.r(), dd, m, twist);
}

std::vector<ExactInt> p_numerators(const IntersectionProfile& profile, const std::vector<long>& d) {
  const int r = profile.r();
  const long n = profile.n();
  const auto d0 = degrees_or_zero(profile, d);
  PowerSums sums(profile);
  std::map<std::pair<long, std::vector<long>>, ExactInt> memo;

  // n! P_q(d) = C(n,q) n! P_0(d) - sum_{s in {0,1}^r, s != 0} n! P_{q-|s|}(d - s)
  auto solve = [&](auto&& self, long q, const std::vector<long>& dv) -> ExactInt {
    if (q < 0) return 0;
    auto key = std::make_pair(q, dv);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    ExactInt p0 = p0_numerator_with(sums, r, dv, 0, {});
    ExactInt out = binomial(n, q) * p0;
    if (q > 0) {
      std::vector<long> shifted(dv.size());
      for (unsigned mask = 1; mask < (1u << r); ++mask) {
        const long w = std::popcount(mask);
        if (w > q) continue;
        for (int i = 0; i < r; ++i) shifted[i] = dv[i] - static_cast<long>((mask >> i) & 1u);
        out -= self(self, q - w, shifted);
      }
    }
    return memo.emplace(std::move(key), std::move(out)).first->second;
  };

  std::vector<ExactInt> out;
  for (long q = 0; q <= n - r; ++q) out.push_back(solve(solve, q, d0));
  return out;
}

ChiSequence chi_via_recurrence(const IntersectionProfile& profile, const std::vector<long>& d) {
  const int r = profile.r();
  const long n = profile.n();
  if (n < r) throw PreconditionError("chi needs n >= r");
  auto numer = p_numerators(profile, d);
  std::vector<ExactInt> values;
  for (long q = 0; q <= n - r; ++q) {
    ExactInt v = divide_by_factorial(numer[q], n, q);
    if ((n - q - r) % 2 != 0) v = -v;
    if (v < 0) {
      throw ConsistencyError("P_" + std::to_string(q) + " has the wrong sign for n=" + std::to_string(n) +
                             ", r=" + std::to_string(r));
    }
    values.push_back(std::move(v));
  }
  return ChiSequence(n, r, std::move(values));
}

bool numerical_condition(const ChiSequence& chi) {
  ExactInt sum = 0;
  ExactInt squares = 0;
  for (const auto& v : chi.values()) {
    sum += v;
    squares += v * v;
  }
  return 2 * squares <= sum * sum;
}

ChiSequence dim2_closed_form(const ExactRational& a, const ExactRational& b, int r) {
  const ExactInt outer = require_integer(a + b, "a + b");
  const ExactInt middle = require_integer(4 * a + 2 * b, "4a + 2b");
  return ChiSequence(r + 2, r, {outer, middle, outer});
}

namespace {

// Coefficient columns of A, B13, B22, C, D in chi_0..chi_4.
constexpr long kDim4Columns[5][5] = {
    {1, 26, 66, 26, 1},
    {1, 12, 22, 12, 1},
    {1, 8, 18, 8, 1},
    {1, 6, 10, 6, 1},
    {1, 4, 6, 4, 1},
};

}  // namespace

ChiSequence dim4_closed_form(const Dim4Parameters& p, int r) {
  const ExactRational vars[5] = {p.A, p.B13, p.B22, p.C, p.D};
  std::vector<ExactInt> values;
  for (int q = 0; q < 5; ++q) {
    ExactRational v = 0;
    for (int j = 0; j < 5; ++j) v += vars[j] * kDim4Columns[j][q];
    values.push_back(require_integer(v, "chi_" + std::to_string(q)));
  }
  return ChiSequence(r + 4, r, std::move(values));
}

namespace {

// All-ones vector plus the given increments.
ExponentVector shifted_ones(int r, std::initializer_list<std::pair<int, int>> bumps) {
  std::vector<int> e(static_cast<std::size_t>(r), 1);
  for (auto [i, by] : bumps) e[i] += by;
  return ExponentVector(std::move(e));
}

}  // namespace

std::pair<ExactRational, ExactRational> dim2_parameters(const IntersectionProfile& profile) {
  const int r = profile.r();
  if (profile.n() != r + 2) throw PreconditionError("dim2_parameters needs n = r + 2");
  ExactRational a = 0, b = 0;
  for (int i = 0; i < r; ++i) a += profile.at(shifted_ones(r, {{i, 2}}));
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) b += profile.at(shifted_ones(r, {{i, 1}, {j, 1}}));
  }
  return {a / 6, b / 4};
}

Dim4Parameters dim4_parameters(const IntersectionProfile& profile) {
  const int r = profile.r();
  if (profile.n() != r + 4) throw PreconditionError("dim4_parameters needs n = r + 4");
  Dim4Parameters p{0, 0, 0, 0, 0};
  for (int i = 0; i < r; ++i) {
    p.A += profile.at(shifted_ones(r, {{i, 4}}));
    for (int j = 0; j < r; ++j) {
      if (j != i) p.B13 += profile.at(shifted_ones(r, {{i, 1}, {j, 3}}));
    }
    for (int j = i + 1; j < r; ++j) {
      p.B22 += profile.at(shifted_ones(r, {{i, 2}, {j, 2}}));
      for (int k = 0; k < r; ++k) {
        if (k != i && k != j) p.C += profile.at(shifted_ones(r, {{i, 1}, {j, 1}, {k, 2}}));
      }
      for (int k = j + 1; k < r; ++k) {
        for (int l = k + 1; l < r; ++l) p.D += profile.at(shifted_ones(r, {{i, 1}, {j, 1}, {k, 1}, {l, 1}}));
      }
    }
  }
  p.A /= 120;
  p.B13 /= 48;
  p.B22 /= 36;
  p.C /= 24;
  p.D /= 16;
  return p;
}

namespace {

int variable_index(const std::string& name) {
  for (int i = 0; i < 5; ++i) {
    if (name == Dim4QuadraticCheck::kVariables[i]) return i;
  }
  throw PreconditionError("unknown variable " + name);
}

ExactInt lookup(const std::map<std::pair<int, int>, ExactInt>& form, const std::string& x, const std::string& y) {
  int i = variable_index(x), j = variable_index(y);
  if (i > j) std::swap(i, j);
  return form.at({i, j});
}

}  // namespace

ExactInt Dim4QuadraticCheck::sum_of_squares_coefficient(const std::string& x, const std::string& y) const {
  return lookup(sum_of_squares, x, y);
}

ExactInt Dim4QuadraticCheck::square_of_sum_coefficient(const std::string& x, const std::string& y) const {
  return lookup(square_of_sum, x, y);
}

Dim4QuadraticCheck dim4_quadratic_check() {
  Dim4QuadraticCheck out;
  long column_sum[5] = {0, 0, 0, 0, 0};
  for (int j = 0; j < 5; ++j) {
    for (int q = 0; q < 5; ++q) column_sum[j] += kDim4Columns[j][q];
  }
  out.dominated = true;
  for (int i = 0; i < 5; ++i) {
    for (int j = i; j < 5; ++j) {
      const long mult = (i == j) ? 1 : 2;
      long sq = 0;
      for (int q = 0; q < 5; ++q) sq += kDim4Columns[i][q] * kDim4Columns[j][q];
      ExactInt a = ExactInt(mult * sq);
      ExactInt b = ExactInt(mult * column_sum[i] * column_sum[j]);
      if (b < 2 * a) out.dominated = false;
      out.sum_of_squares.emplace(std::make_pair(i, j), std::move(a));
      out.square_of_sum.emplace(std::make_pair(i, j), std::move(b));
    }
  }
  return out;
}

ExactInt topological_euler(const IntersectionProfile& profile, bool cross_check) {
  ExactInt total = 0;
  for (const auto& [e, v] : profile.numbers()) {
    if (e.all_positive()) total += v;
  }
  if (cross_check && profile.n() >= profile.r()) {
    const ExactInt from_chi = chi_from_profile(profile).total();
    if (from_chi != total) {
      throw ConsistencyError("topological Euler characteristic " + total.get_str() + " differs from chi total " +
                             from_chi.get_str());
    }
  }
  return total;
}

ExactInt topological_euler(const ChiSequence& chi) { return chi.total(); }

bool divisible_by_six(const IntersectionProfile& profile) {
  if (2L * profile.r() >= profile.n()) throw PreconditionError("divisible_by_six needs r < n/2");
  return mpz_divisible_ui_p(topological_euler(profile).get_mpz_t(), 6) != 0;
}

}  // namespace eulerchi
