#include "eulerchi/combinatorics.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace eulerchi {

ExponentVector::ExponentVector(std::vector<int> entries) : entries_(std::move(entries)) {
  for (int e : entries_) {
    if (e < 0) throw std::invalid_argument("exponent vector entries must be nonnegative");
  }
}

ExponentVector::ExponentVector(std::initializer_list<int> entries)
    : ExponentVector(std::vector<int>(entries)) {}

long ExponentVector::total() const {
  long s = 0;
  for (int e : entries_) s += e;
  return s;
}

bool ExponentVector::all_positive() const {
  return std::all_of(entries_.begin(), entries_.end(), [](int e) { return e > 0; });
}

std::string ExponentVector::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(entries_[i]);
  }
  return out + ")";
}

namespace {

class FactorialTable {
 public:
  ExactInt get(long n) {
    {
      std::shared_lock lock(mutex_);
      if (n < static_cast<long>(values_.size())) return values_[n];
    }
    std::unique_lock lock(mutex_);
    while (static_cast<long>(values_.size()) <= n) {
      ExactInt next = values_.back() * static_cast<unsigned long>(values_.size());
      values_.push_back(std::move(next));
    }
    return values_[n];
  }

 private:
  std::shared_mutex mutex_;
  std::vector<ExactInt> values_{ExactInt(1)};
};

class BinomialRows {
 public:
  const std::vector<ExactInt>& row(long n) {
    {
      std::shared_lock lock(mutex_);
      auto it = rows_.find(n);
      if (it != rows_.end()) return *it->second;
    }
    auto built = std::make_unique<std::vector<ExactInt>>();
    built->reserve(static_cast<std::size_t>(n) + 1);
    ExactInt c = 1;
    built->push_back(c);
    for (long k = 0; k < n; ++k) {
      c *= static_cast<unsigned long>(n - k);
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(k + 1));
      built->push_back(c);
    }
    std::unique_lock lock(mutex_);
    auto [it, inserted] = rows_.try_emplace(n, std::move(built));
    return *it->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<long, std::unique_ptr<const std::vector<ExactInt>>> rows_;
};

FactorialTable& factorials() {
  static FactorialTable table;
  return table;
}

BinomialRows& binomial_rows() {
  static BinomialRows rows;
  return rows;
}

}  // namespace

ExactInt factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative number");
  return factorials().get(n);
}

const std::vector<ExactInt>& binomial_row(long n) {
  if (n < 0) throw std::invalid_argument("binomial row of a negative number");
  return binomial_rows().row(n);
}

ExactInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  ExactInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

ExactInt binomial(const ExactInt& n, const ExactInt& k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (!k.fits_ulong_p()) {
    // k > n/2 for every representable n here; use symmetry.
    ExactInt other = n - k;
    if (!other.fits_ulong_p()) throw std::overflow_error("binomial argument too large");
    return binomial(n, other);
  }
  ExactInt out;
  mpz_bin_ui(out.get_mpz_t(), n.get_mpz_t(), k.get_ui());
  return out;
}

ExactInt multinomial(long n, const ExponentVector& parts) {
  if (parts.total() != n) {
    throw std::invalid_argument("multinomial parts " + parts.to_string() + " do not sum to " + std::to_string(n));
  }
  ExactInt out = 1;
  long running = 0;
  for (int p : parts) {
    running += p;
    out *= binomial(running, p);
  }
  return out;
}

std::vector<ExponentVector> enumerate_compositions(int r, long total, std::optional<std::span<const int>> caps) {
  std::vector<ExponentVector> out;
  std::span<const int> cap_span;
  if (caps) {
    if (static_cast<int>(caps->size()) != r) throw std::invalid_argument("caps length must equal r");
    for (int c : *caps) {
      if (c < 0) throw std::invalid_argument("caps must be nonnegative");
    }
    cap_span = *caps;
  }
  for_each_composition(r, total, cap_span, [&](const std::vector<int>& v) { out.emplace_back(v); });
  return out;
}

}  // namespace eulerchi
