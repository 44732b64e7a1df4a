#include "eulerchi/appendix.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "eulerchi/combinatorics.hpp"
#include "eulerchi/errors.hpp"

namespace eulerchi {

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::holds:
      return "holds";
    case Outcome::fails:
      return "fails";
    case Outcome::inconclusive:
      return "inconclusive";
    case Outcome::hypothesis_not_met:
      return "hypothesis_not_met";
    case Outcome::inapplicable:
      return "inapplicable";
  }
  return "?";
}

std::string IneqVerdict::param(std::string_view key) const {
  for (const auto& [k, v] : params) {
    if (k == key) return v;
  }
  return {};
}

long threshold_n(int r, bool quartic) {
  const long rr = static_cast<long>(r) * r;
  return quartic ? 10 * rr * rr + 1000 : 10 * rr + 1000;
}

namespace {

IneqVerdict make(std::string name, const ChiSequence& chi) {
  IneqVerdict v;
  v.name = std::move(name);
  v.params = {{"r", std::to_string(chi.r())}, {"n", std::to_string(chi.n())}};
  return v;
}

void decide(IneqVerdict& v, const ExactRational& margin) {
  v.witness = margin;
  v.outcome = margin > 0 ? Outcome::holds : Outcome::fails;
  v.holds = v.outcome == Outcome::holds;
}

void inapplicable(IneqVerdict& v, Outcome why, std::string reason) {
  v.outcome = why;
  v.holds = false;
  v.params.emplace_back("reason", std::move(reason));
}

// lo^2 <= x <= hi^2 for x >= 0, hi - lo <= 2^-rounds.
std::pair<ExactRational, ExactRational> sqrt_bracket(const ExactRational& x, int rounds) {
  ExactRational lo(isqrt(floor_of(x)));
  ExactRational hi = lo + 1;
  for (int i = 0; i < rounds; ++i) {
    ExactRational mid = (lo + hi) / 2;
    if (mid * mid <= x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

// Least integer u with u^2 >= ceil(x).
ExactInt sqrt_ceiling(const ExactRational& x) {
  const ExactInt c = ceil_of(x);
  ExactInt u = isqrt(c);
  if (u * u < c) u += 1;
  return u;
}

}  // namespace

IneqVerdict ratio_gt_16(const ChiSequence& chi) {
  auto v = make("ratio_gt_16", chi);
  if (chi.size() < 2) {
    inapplicable(v, Outcome::inapplicable, "needs at least 2 entries");
    return v;
  }
  decide(v, ExactRational(chi.value(1) - 16 * chi.value(0)));
  return v;
}

IneqVerdict q2_inequality(const ChiSequence& chi) {
  auto v = make("q2_inequality", chi);
  if (chi.size() < 3) {
    inapplicable(v, Outcome::inapplicable, "needs at least 3 entries");
    return v;
  }
  const ExactInt& c0 = chi.values()[0];
  const ExactInt& c1 = chi.values()[1];
  const ExactInt& c2 = chi.values()[2];
  decide(v, ExactRational(c1 * c1 - 48 * c2 * c0));
  return v;
}

IneqVerdict remaining_q2_inequality(const ChiSequence& chi) { return remaining_q2_inequality(chi, chi.n(), chi.r()); }

IneqVerdict remaining_q2_inequality(const ChiSequence& chi, long n, long r) {
  auto v = make("remaining_q2_inequality", chi);
  v.params[0].second = std::to_string(r);
  v.params[1].second = std::to_string(n);
  v.conservative = true;
  if (chi.size() < 6) {
    inapplicable(v, Outcome::inapplicable, "needs at least 6 entries");
    return v;
  }
  const ExactRational c0(chi.value(0)), c1(chi.value(1)), c2(chi.value(2)), c3(chi.value(3)), c5(chi.value(5));
  if (c1 == 0) {
    inapplicable(v, Outcome::inapplicable, "chi_1 is zero");
    return v;
  }
  const ExactRational lhs = c2 / c0;
  const ExactRational rational_part = ExactRational(n - r, 2) * c1 / c0 + 9 * c3 / c1 + 3;
  const ExactRational x1 = 18 * c5 / c1;
  const ExactRational x2 = 9 * c3 * c1 / (2 * c0 * c0);

  const ExactRational coarse = rational_part + ExactRational(sqrt_ceiling(x1)) + ExactRational(sqrt_ceiling(x2));
  if (lhs > coarse) {
    v.witness = lhs - coarse;
    v.outcome = Outcome::holds;
    v.holds = true;
    v.params.emplace_back("bound", "integer_sqrt");
    return v;
  }
  const auto [lo1, hi1] = sqrt_bracket(x1, 32);
  const auto [lo2, hi2] = sqrt_bracket(x2, 32);
  const ExactRational upper = rational_part + hi1 + hi2;
  const ExactRational lower = rational_part + lo1 + lo2;
  v.params.emplace_back("bound", "bisection_32");
  if (lhs > upper) {
    v.witness = lhs - upper;
    v.outcome = Outcome::holds;
  } else if (lhs <= lower) {
    v.witness = lhs - lower;
    v.outcome = Outcome::fails;
  } else {
    v.witness = lhs - upper;
    v.outcome = Outcome::inconclusive;
  }
  v.holds = v.outcome == Outcome::holds;
  return v;
}

IneqVerdict s_lower_bound_check(const ChiSequence& chi) { return s_lower_bound_check(chi, chi.r()); }

IneqVerdict s_lower_bound_check(const ChiSequence& chi, int r) {
  auto v = make("s_lower_bound_check", chi);
  v.params[0].second = std::to_string(r);
  const long need = 3L * r * r + 100;
  if (chi.n() < need) {
    inapplicable(v, Outcome::hypothesis_not_met, "needs n >= 3r^2+100 = " + std::to_string(need));
    return v;
  }
  const ExactInt c0 = chi.value(0);
  const ExactInt rhs = c0 * (c0 - 1);
  std::optional<ExactInt> worst;
  for (long s = 0; s <= r - 2; ++s) {
    ExactInt margin = rhs - 2 * chi.value(s);
    if (!worst || margin < *worst) worst = margin;
  }
  v.params.emplace_back("s_max", std::to_string(r - 2));
  if (!worst) {
    // No s <= r - 2 exists (r = 1).
    v.outcome = Outcome::holds;
    v.holds = true;
    return v;
  }
  decide(v, ExactRational(*worst));
  return v;
}

IneqVerdict large_s_check(const ChiSequence& chi, long s) {
  auto v = make("large_s_check", chi);
  v.params.emplace_back("s", std::to_string(s));
  if (s < 1) {
    inapplicable(v, Outcome::inapplicable, "needs s >= 1");
    return v;
  }
  const ExactInt a = chi.value(s - 1);
  const ExactInt b = chi.value(3 * s - 2);
  decide(v, ExactRational(a * (a - 1) - 4 * b));
  return v;
}

IneqVerdict m0_bound_arithmetic(int r, long n) {
  IneqVerdict v;
  v.name = "m0_bound_arithmetic";
  v.params = {{"r", std::to_string(r)}, {"n", std::to_string(n)}};
  if (n < r + 21L) {
    inapplicable(v, Outcome::hypothesis_not_met, "needs n >= r + 21");
    return v;
  }
  const long e = n - r;
  const ExactInt base = pow_si(2, static_cast<unsigned long>(e + 2)) - (e + 3);
  const ExactInt lhs = pow(base, 4);
  const ExactInt rhs = pow_si(14, static_cast<unsigned long>(e + 3));
  v.params.emplace_back("base", base.get_str());
  v.params.emplace_back("rhs", "14^" + std::to_string(e + 3));
  decide(v, ExactRational(lhs - rhs));
  return v;
}

std::string SweepProfile::id(int r) const {
  std::string out = "same-class d=";
  for (int i = 0; i < r; ++i) {
    if (i) out += ",";
    out += std::to_string(d.empty() ? 1 : d[i]);
  }
  return out + " h=" + h.get_str();
}

namespace {

bool wanted(const SweepRequest& request, std::string_view name) {
  if (request.only.empty()) return true;
  return std::any_of(request.only.begin(), request.only.end(), [&](const std::string& o) {
    std::string norm = o;
    std::replace(norm.begin(), norm.end(), '-', '_');
    return name == norm || name.substr(0, norm.size()) == norm;
  });
}

}  // namespace

std::vector<IneqVerdict> verify_all(const ChiSequence& chi, int r, long n, const SweepRequest& request,
                                    const std::string& profile_id) {
  std::vector<IneqVerdict> out;
  if (wanted(request, "ratio_gt_16")) out.push_back(ratio_gt_16(chi));
  if (wanted(request, "q2_inequality")) out.push_back(q2_inequality(chi));
  if (wanted(request, "remaining_q2_inequality")) out.push_back(remaining_q2_inequality(chi, n, r));
  if (wanted(request, "s_lower_bound_check")) out.push_back(s_lower_bound_check(chi, r));
  if (wanted(request, "large_s_check")) {
    for (long s : request.large_s_values) out.push_back(large_s_check(chi, s));
  }
  if (wanted(request, "m0_bound_arithmetic")) out.push_back(m0_bound_arithmetic(r, n));
  for (auto& v : out) v.profile_id = profile_id;
  return out;
}

std::vector<IneqVerdict> sweep(const SweepRequest& request, int threads) {
  std::vector<std::pair<int, long>> grid;
  for (int r : request.r_values) {
    std::vector<long> ns = request.n_values;
    if (request.thresholds) ns.push_back(threshold_n(r, request.quartic));
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    for (long n : ns) {
      if (n >= r) grid.emplace_back(r, n);
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<std::vector<IneqVerdict>> results(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= grid.size()) break;
      if (request.cancel != nullptr && request.cancel->load(std::memory_order_relaxed)) break;
      const auto [r, n] = grid[i];
      DegreeProfile dp{r, n, request.profile.d.empty() ? std::vector<long>(r, 1) : request.profile.d,
                       request.profile.h};
      results[i] = verify_all(chi_same_class(dp), r, n, request, request.profile.id(r));
    }
  };
  const int t = std::max(1, std::min<int>(threads, static_cast<int>(grid.size())));
  if (t <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  std::vector<IneqVerdict> out;
  for (auto& chunk : results) {
    for (auto& v : chunk) out.push_back(std::move(v));
  }
  return out;
}

bool all_hold(const std::vector<IneqVerdict>& verdicts) {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const IneqVerdict& v) { return v.holds; });
}

}  // namespace eulerchi
