#pragma once

#include <optional>
#include <vector>

#include "eulerchi/errors.hpp"
#include "eulerchi/exact.hpp"

namespace eulerchi {

inline constexpr long kBruteForceCap = 10;

// Classical Eulerian number: permutations of {1..n} with k descents.
// Zero for n <= 0 or k outside [0, n-1].
ExactInt eulerian(long n, long k);

// E(n, 0..n-1) through the alternating binomial sum. Memoized; empty for n <= 0.
const std::vector<ExactInt>& eulerian_row(long n);

// Single value straight from the alternating sum, no table involved.
ExactInt eulerian_alternating(long n, long k);

// r-th order Eulerian number: pairs (permutation, (r-1)-subset S of
// {1..n-1}) with k descents outside S. Zero for n < r or k outside [0, n-r].
ExactInt generalized_eulerian(int r, long n, long k);

// E_r(n, 0..n-r), obtained by lifting the r = 1 row r-1 times. Memoized.
const std::vector<ExactInt>& generalized_eulerian_row(int r, long n);

// E_r(n, 0..count-1) without building the full row; cheap for small count
// at any n.
std::vector<ExactInt> generalized_eulerian_prefix(int r, long n, long count);

// One application of the order-raising recurrence: turns E_{r-1}(n, .) into
// E_r(n, .).
std::vector<ExactInt> lift_eulerian_row(const std::vector<ExactInt>& lower, int r, long n);

// Sum over compositions eps of n and t of k of multinomial(n; eps) * prod E(eps_i, t_i).
ExactInt generalized_eulerian_via_sum(int r, long n, long k);

// Direct count over permutations and subsets. Throws std::invalid_argument
// for n > cap.
ExactInt brute_force_generalized(int r, long n, long k, long cap = kBruteForceCap);

// c_k = sum_{i+j=k} E(a,i) E(b,j), k = 0..a+b-2.
std::vector<ExactInt> eulerian_convolution(long a, long b);

struct BoundsCheck {
  bool lower_ok = false;
  bool upper_ok = false;
  ExactInt lower;
  ExactInt value;
  ExactInt upper;
};

// C(k+r-1,r-1)((k+r)^n - (n+1)(k+r-1)^n) <= E_r(n,k) <= C(k+r-1,r-1)(k+r)^n
BoundsCheck check_asymptotic_bounds(int r, long n, long k);

// Rational U with exp(U) >= x certified by a truncated Taylor series;
// U - ln(x) shrinks below `width`.
ExactRational ln_upper_bound(const ExactInt& x, const ExactRational& width = ExactRational(1, 1000000));

enum class Lower06Case { large_n, small_k };

// Which hypothesis admits (r, n, k) for the 0.6 lower bound, if any.
std::optional<Lower06Case> lower_06_hypothesis(int r, long n, long k);

// 5 E_r(n,k) >= 3 C(k+r-1,r-1) (k+r)^n. Throws PreconditionError when
// neither hypothesis holds.
bool check_lower_06(int r, long n, long k);

struct RowProperties {
  bool symmetric = false;
  bool log_concave = false;
  ExactInt total;
};

RowProperties row_properties(const std::vector<ExactInt>& values);
RowProperties check_row_properties(int r, long n);

struct Dominance {
  bool holds = false;
  bool is_exception = false;
};

// 2 * max_k E(n,k) <= n!
Dominance check_dominance(long n);

}  // namespace eulerchi
