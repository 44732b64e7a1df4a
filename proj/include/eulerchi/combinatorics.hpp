#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eulerchi/exact.hpp"

namespace eulerchi {

// A function {1..r} -> N, stored 0-indexed. Used both as the exponent
// pattern of an intersection number and as a t/s/m_S tuple.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::vector<int> entries);
  ExponentVector(std::initializer_list<int> entries);

  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  long total() const;
  bool all_positive() const;

  const std::vector<int>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  std::string to_string() const;

  auto operator<=>(const ExponentVector&) const = default;

 private:
  std::vector<int> entries_;
};

ExactInt factorial(long n);

// C(n, k), zero whenever k < 0, k > n or n < 0.
ExactInt binomial(const ExactInt& n, const ExactInt& k);
ExactInt binomial(long n, long k);

// Memoized Pascal row C(n, 0..n). Rows are immutable once built.
const std::vector<ExactInt>& binomial_row(long n);

// n! / prod parts(i)!; throws std::invalid_argument if the parts do not sum
// to n.
ExactInt multinomial(long n, const ExponentVector& parts);

// All vectors of length r with entries summing to total (respecting caps when
// given), in lexicographic order.
std::vector<ExponentVector> enumerate_compositions(int r, long total,
                                                   std::optional<std::span<const int>> caps = std::nullopt);

// Calls visit(entries) for each composition, same order as
// enumerate_compositions, without materializing the list.
template <typename Visit>
void for_each_composition(int r, long total, std::span<const int> caps, Visit&& visit);

namespace detail {

template <typename Visit>
void compositions_rec(std::vector<int>& cur, std::size_t pos, long remaining, std::span<const int> caps,
                      std::span<const long> cap_suffix, Visit& visit) {
  const std::size_t r = cur.size();
  if (pos + 1 == r) {
    if (!caps.empty() && remaining > caps[pos]) return;
    cur[pos] = static_cast<int>(remaining);
    visit(static_cast<const std::vector<int>&>(cur));
    return;
  }
  long hi = remaining;
  if (!caps.empty()) hi = std::min<long>(hi, caps[pos]);
  long lo = 0;
  if (!caps.empty()) lo = std::max<long>(0, remaining - cap_suffix[pos + 1]);
  for (long v = lo; v <= hi; ++v) {
    cur[pos] = static_cast<int>(v);
    compositions_rec(cur, pos + 1, remaining - v, caps, cap_suffix, visit);
  }
}

}  // namespace detail

template <typename Visit>
void for_each_composition(int r, long total, std::span<const int> caps, Visit&& visit) {
  if (r <= 0 || total < 0) return;
  std::vector<long> cap_suffix;
  if (!caps.empty()) {
    cap_suffix.assign(static_cast<std::size_t>(r) + 1, 0);
    for (int i = r - 1; i >= 0; --i) cap_suffix[i] = cap_suffix[i + 1] + caps[i];
    if (cap_suffix[0] < total) return;
  }
  std::vector<int> cur(static_cast<std::size_t>(r), 0);
  detail::compositions_rec(cur, 0, total, caps, cap_suffix, visit);
}

}  // namespace eulerchi
