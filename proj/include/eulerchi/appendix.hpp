#pragma once

#include <atomic>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eulerchi/chi.hpp"
#include "eulerchi/exact.hpp"

namespace eulerchi {

enum class Outcome { holds, fails, inconclusive, hypothesis_not_met, inapplicable };

std::string_view to_string(Outcome outcome);

struct IneqVerdict {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  Outcome outcome = Outcome::inapplicable;
  bool holds = false;
  bool conservative = false;          // a square root was replaced by a bound
  std::optional<ExactRational> witness;  // lhs - rhs (or the bound used for it)
  std::string profile_id;

  std::string param(std::string_view key) const;
};

// n at which the verifier is expected to succeed: 10r^2 + 1000, or
// 10r^4 + 1000 with quartic.
long threshold_n(int r, bool quartic = false);

// chi_1 > 16 chi_0
IneqVerdict ratio_gt_16(const ChiSequence& chi);

// chi_1^2 > 48 chi_2 chi_0
IneqVerdict q2_inequality(const ChiSequence& chi);

// chi_2/chi_0 > (n-r)/2 chi_1/chi_0 + sqrt(18 chi_5/chi_1)
//               + sqrt(9 chi_3 chi_1 / (2 chi_0^2)) + 9 chi_3/chi_1 + 3
// Each sqrt(x) is first bounded by the least integer u with u^2 >= ceil(x).
// If that bound is not enough, 32 bisection rounds bracket each root; the
// verdict is fails only if the lower brackets already violate the
// inequality, and inconclusive otherwise.
IneqVerdict remaining_q2_inequality(const ChiSequence& chi);
IneqVerdict remaining_q2_inequality(const ChiSequence& chi, long n, long r);

// For every s <= r-2: 2 chi_s < chi_0 (chi_0 - 1). Needs n >= 3r^2 + 100.
IneqVerdict s_lower_bound_check(const ChiSequence& chi, int r);
IneqVerdict s_lower_bound_check(const ChiSequence& chi);

// 4 chi_{3s-2} < chi_{s-1} (chi_{s-1} - 1), out-of-range entries read as 0.
IneqVerdict large_s_check(const ChiSequence& chi, long s);

// (2^(n-r+2) - (n-r+3))^4 > 14^(n-r+3). Needs n >= r + 21.
IneqVerdict m0_bound_arithmetic(int r, long n);

struct SweepProfile {
  std::vector<long> d;  // empty: all ones
  ExactInt h = 1;

  std::string id(int r) const;
};

struct SweepRequest {
  std::vector<int> r_values;
  std::vector<long> n_values;               // used as given for every r
  bool thresholds = false;                  // add threshold_n(r) for each r
  bool quartic = false;
  SweepProfile profile;
  std::vector<long> large_s_values{2, 3, 4, 5};
  std::vector<std::string> only;            // empty: all checks
  const std::atomic<bool>* cancel = nullptr;  // grid points not yet started are skipped once set
};

// Every check on every (r, n) with n >= r, ordered by r, n, then check.
std::vector<IneqVerdict> sweep(const SweepRequest& request, int threads = 1);

// All verdicts for one chi sequence, in the same order sweep() uses.
std::vector<IneqVerdict> verify_all(const ChiSequence& chi, int r, long n, const SweepRequest& request,
                                    const std::string& profile_id);

bool all_hold(const std::vector<IneqVerdict>& verdicts);

}  // namespace eulerchi
