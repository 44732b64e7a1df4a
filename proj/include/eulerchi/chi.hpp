#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "eulerchi/combinatorics.hpp"
#include "eulerchi/errors.hpp"
#include "eulerchi/exact.hpp"

namespace eulerchi {

// Intersection numbers H_1^{e_1} ... H_r^{e_r} on an n-dimensional abelian
// variety, one for every e with |e| = n.
class IntersectionProfile {
 public:
  using Numbers = std::map<ExponentVector, ExactInt>;

  // Throws PreconditionError if an exponent vector is missing, has the wrong
  // shape, or carries a non-positive value. With check_admissible, also
  // requires every value >= n!.
  IntersectionProfile(int r, long n, Numbers numbers, bool check_admissible = false);

  static IntersectionProfile constant(int r, long n, const ExactInt& value);

  int r() const { return r_; }
  long n() const { return n_; }
  const Numbers& numbers() const { return numbers_; }
  const ExactInt& at(const ExponentVector& e) const;

  // Every value >= n! (what Riemann-Roch forces for genuine ample classes).
  bool admissible() const;

  bool operator==(const IntersectionProfile&) const = default;

 private:
  int r_;
  long n_;
  Numbers numbers_;
};

// |chi(X, Omega^q)| for q = 0..n-r. Only magnitudes are stored; the sign of
// chi(X, Omega^q) is (-1)^(n-q-r).
class ChiSequence {
 public:
  ChiSequence(long n, int r, std::vector<ExactInt> magnitudes);

  // r = 1, n = values.size().
  static ChiSequence from_values(std::vector<ExactInt> values);

  long n() const { return n_; }
  int r() const { return r_; }
  std::size_t size() const { return values_.size(); }
  const std::vector<ExactInt>& values() const { return values_; }

  // Zero outside [0, n-r].
  ExactInt value(long q) const;
  ExactInt signed_value(long q) const;

  bool palindromic() const;
  ExactInt total() const;

  std::string to_string() const;

  bool operator==(const ChiSequence&) const = default;

 private:
  long n_;
  int r_;
  std::vector<ExactInt> values_;
};

// Hypersurfaces in classes d_1 H, ..., d_r H with h = H^n / n!.
struct DegreeProfile {
  int r = 1;
  long n = 1;
  std::vector<long> d;
  ExactInt h = 1;

  void validate() const;
  bool equal_degrees() const;
  IntersectionProfile induced_profile() const;
};

ChiSequence chi_from_profile(const IntersectionProfile& profile);

ChiSequence chi_same_class(const DegreeProfile& dp);

// c_{q;eps}(d): coefficient of multinomial(n; eps) H^eps / n! in P_q(d).
ExactInt chi_coefficient(long q, const ExponentVector& eps, const std::vector<long>& d);

// n! * P_0(d, m), where the twist class is H = sum_i twist_i H_i. An empty
// twist means m is ignored.
ExactInt p0_numerator(const IntersectionProfile& profile, const std::vector<long>& d, long m = 0,
                      const std::vector<long>& twist = {});

// n! * P_q(d) for q = 0..n-r, from P_0 through the filtration recurrence.
std::vector<ExactInt> p_numerators(const IntersectionProfile& profile, const std::vector<long>& d);

// Magnitudes of P_q(d) / n!, each checked for integrality and sign.
ChiSequence chi_via_recurrence(const IntersectionProfile& profile, const std::vector<long>& d = {});

// 2 sum chi_q^2 <= (sum chi_q)^2
bool numerical_condition(const ChiSequence& chi);

// (a+b, 4a+2b, a+b) for a surface cut out by r hypersurfaces (n = r + 2).
ChiSequence dim2_closed_form(const ExactRational& a, const ExactRational& b, int r = 2);

struct Dim4Parameters {
  ExactRational A, B13, B22, C, D;
};

ChiSequence dim4_closed_form(const Dim4Parameters& p, int r = 2);

std::pair<ExactRational, ExactRational> dim2_parameters(const IntersectionProfile& profile);
Dim4Parameters dim4_parameters(const IntersectionProfile& profile);

// Quadratic forms in (A, B13, B22, C, D); keys are index pairs i <= j.
struct Dim4QuadraticCheck {
  static constexpr const char* kVariables[5] = {"A", "B13", "B22", "C", "D"};
  std::map<std::pair<int, int>, ExactInt> sum_of_squares;
  std::map<std::pair<int, int>, ExactInt> square_of_sum;
  bool dominated = false;

  // Coefficient lookup by variable names, e.g. ("A", "B13").
  ExactInt sum_of_squares_coefficient(const std::string& x, const std::string& y) const;
  ExactInt square_of_sum_coefficient(const std::string& x, const std::string& y) const;
};

Dim4QuadraticCheck dim4_quadratic_check();

// Sum of I(e) over e with every entry >= 1. With cross_check, also compares
// against the total of chi_from_profile and throws ConsistencyError on a
// mismatch.
ExactInt topological_euler(const IntersectionProfile& profile, bool cross_check = true);
ExactInt topological_euler(const ChiSequence& chi);

// Requires 2r < n.
bool divisible_by_six(const IntersectionProfile& profile);

}  // namespace eulerchi
