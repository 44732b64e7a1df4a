#include "eulerchi/monodromy.hpp"

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "eulerchi/combinatorics.hpp"
#include "eulerchi/errors.hpp"

namespace eulerchi {

IndexFunction::IndexFunction(long offset, std::vector<long> counts) : offset_(offset), counts_(std::move(counts)) {
  for (long c : counts_) {
    if (c < 0) throw PreconditionError("index function values must be nonnegative");
  }
  auto first_nz = std::find_if(counts_.begin(), counts_.end(), [](long c) { return c != 0; });
  if (first_nz == counts_.end()) throw PreconditionError("index function must have positive total");
  offset_ += first_nz - counts_.begin();
  counts_.erase(counts_.begin(), first_nz);
  while (counts_.back() == 0) counts_.pop_back();
}

namespace {

std::vector<long> dense_counts(const std::map<long, long>& values, long& offset) {
  long lo = 0, hi = -1;
  bool any = false;
  for (const auto& [i, c] : values) {
    if (c < 0) throw PreconditionError("index function values must be nonnegative");
    if (c == 0) continue;
    if (!any) lo = i;
    hi = i;
    any = true;
  }
  if (!any) throw PreconditionError("index function must have positive total");
  offset = lo;
  std::vector<long> counts(static_cast<std::size_t>(hi - lo + 1), 0);
  for (const auto& [i, c] : values) {
    if (c != 0) counts[i - lo] = c;
  }
  return counts;
}

long parse_long(std::string_view text, std::string_view what) {
  try {
    return to_long(parse_int(text));
  } catch (const std::exception&) {
    throw PreconditionError("bad " + std::string(what) + " in index function: '" + std::string(text) + "'");
  }
}

}  // namespace

IndexFunction::IndexFunction(const std::map<long, long>& values) : offset_(0) {
  long offset = 0;
  counts_ = dense_counts(values, offset);
  offset_ = offset;
}

IndexFunction IndexFunction::parse(std::string_view text) {
  std::map<long, long> values;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    auto colon = item.find(':');
    if (colon == std::string_view::npos) throw PreconditionError("expected index:count, got '" + std::string(item) + "'");
    long index = parse_long(item.substr(0, colon), "index");
    long count = parse_long(item.substr(colon + 1), "count");
    if (!values.emplace(index, count).second) {
      throw PreconditionError("index " + std::to_string(index) + " listed twice");
    }
    pos = comma + 1;
  }
  return IndexFunction(values);
}

long IndexFunction::at(long i) const {
  if (i < first() || i > last()) return 0;
  return counts_[i - offset_];
}

long IndexFunction::total() const { return std::accumulate(counts_.begin(), counts_.end(), 0L); }

long IndexFunction::weighted_sum() const {
  long s = 0;
  for (long j = 0; j < width(); ++j) s += (offset_ + j) * counts_[j];
  return s;
}

IndexFunction IndexFunction::shifted_to(long new_offset) const { return IndexFunction(new_offset, counts_); }

IndexFunction IndexFunction::reversed() const {
  return IndexFunction(offset_, std::vector<long>(counts_.rbegin(), counts_.rend()));
}

std::string IndexFunction::to_string() const {
  std::string out = "{";
  bool first_item = true;
  for (long j = 0; j < width(); ++j) {
    if (counts_[j] == 0) continue;
    if (!first_item) out += ",";
    out += std::to_string(offset_ + j) + ":" + std::to_string(counts_[j]);
    first_item = false;
  }
  return out + "}";
}

std::string_view to_string(SearchMode mode) {
  return mode == SearchMode::all_integers ? "all_integers" : "bounded_range";
}

SearchMode parse_search_mode(std::string_view text) {
  if (text == "all_integers" || text == "all-integers") return SearchMode::all_integers;
  if (text == "bounded_range" || text == "bounded-range" || text == "bounded") return SearchMode::bounded_range;
  throw PreconditionError("unknown search mode '" + std::string(text) + "'");
}

long SystemInstance::last_nonzero() const {
  const auto& v = target.values();
  for (long q = static_cast<long>(v.size()) - 1; q >= 0; --q) {
    if (v[q] != 0) return q;
  }
  return 0;
}

std::vector<ExactInt> lhs_table(const IndexFunction& m_H, long k) {
  const long width = m_H.width();
  const long m = m_H.total();
  if (k < 0) return {};
  const long span = k * (width - 1);
  if (k > m) return std::vector<ExactInt>(static_cast<std::size_t>(span + 1));
  // dp[kk][t]: weighted count of choices of kk units with relative sum t.
  std::vector<std::vector<ExactInt>> dp(static_cast<std::size_t>(k + 1),
                                        std::vector<ExactInt>(static_cast<std::size_t>(span + 1)));
  dp[0][0] = 1;
  for (long j = 0; j < width; ++j) {
    const long c = m_H.counts()[j];
    if (c == 0) continue;
    const auto& choose = binomial_row(c);
    for (long kk = k; kk >= 1; --kk) {
      for (long a = 1; a <= std::min(c, kk); ++a) {
        const auto& src = dp[kk - a];
        auto& dst = dp[kk];
        for (long t = 0; t + a * j <= span; ++t) {
          if (src[t] == 0) continue;
          mpz_addmul(dst[t + a * j].get_mpz_t(), src[t].get_mpz_t(), choose[a].get_mpz_t());
        }
      }
    }
  }
  return std::move(dp[k]);
}

ExactInt lhs_value(const IndexFunction& m_H, long k, long target_sum) {
  if (k < 0) return 0;
  const long rel = target_sum - k * m_H.offset();
  if (rel < 0 || rel > k * (m_H.width() - 1)) return 0;
  return lhs_table(m_H, k)[rel];
}

Assignments min_max_assignments(const IndexFunction& m_H, long k) {
  const long m = m_H.total();
  if (k < 1 || k > m) {
    throw PreconditionError("min_max_assignments needs 1 <= k <= m, got k=" + std::to_string(k) +
                            ", m=" + std::to_string(m));
  }
  const auto& c = m_H.counts();
  const long width = m_H.width();
  std::vector<long> low(c.size(), 0), high(c.size(), 0);
  long w = 0, w_prime = 0, min_sum = 0, max_sum = 0;
  long rem = k;
  for (long j = 0; j < width && rem > 0; ++j) {
    low[j] = std::min(c[j], rem);
    rem -= low[j];
    if (low[j] > 0) w = j;
    min_sum += (m_H.offset() + j) * low[j];
  }
  rem = k;
  for (long j = width - 1; j >= 0 && rem > 0; --j) {
    high[j] = std::min(c[j], rem);
    rem -= high[j];
    if (high[j] > 0) w_prime = j;
    max_sum += (m_H.offset() + j) * high[j];
  }
  return {IndexFunction(m_H.offset(), std::move(low)),
          IndexFunction(m_H.offset(), std::move(high)),
          m_H.offset() + w,
          m_H.offset() + w_prime,
          min_sum,
          max_sum};
}

std::string_view to_string(SpanOutcome outcome) {
  switch (outcome) {
    case SpanOutcome::holds:
      return "holds";
    case SpanOutcome::fails:
      return "fails";
    case SpanOutcome::inapplicable:
      return "inapplicable";
  }
  return "?";
}

long span_identity_value(const IndexFunction& m_H, long k) {
  const auto a = min_max_assignments(m_H, k);
  long value = k * (a.w_prime - a.w);
  for (long i = m_H.first(); i < a.w; ++i) value += (a.w - i) * m_H.at(i);
  for (long i = a.w_prime + 1; i <= m_H.last(); ++i) value += (i - a.w_prime) * m_H.at(i);
  return value;
}

SpanOutcome span_identity_holds(const IndexFunction& m_H, long k, long n, long r) {
  const auto a = min_max_assignments(m_H, k);
  if (a.w > a.w_prime) return SpanOutcome::inapplicable;
  return span_identity_value(m_H, k) == n - r ? SpanOutcome::holds : SpanOutcome::fails;
}

CandidateEvaluation evaluate_candidate(const SolutionCandidate& cand, const SystemInstance& sys) {
  CandidateEvaluation out;
  const long m = cand.m_H.total();
  out.k_in_range = cand.k >= 2 && cand.k <= m - 1;
  const long len = static_cast<long>(sys.target.size());
  const long base = cand.k * cand.m_H.offset();
  std::vector<ExactInt> table = lhs_table(cand.m_H, cand.k);
  auto lhs_at = [&](long t) -> ExactInt {
    const long rel = t - base;
    if (rel < 0 || rel >= static_cast<long>(table.size())) return 0;
    return table[rel];
  };
  out.equations_hold = true;
  for (long q = 0; q < len && out.equations_hold; ++q) {
    if (lhs_at(cand.s + q) != sys.target.value(q)) out.equations_hold = false;
  }
  if (out.equations_hold && sys.mode == SearchMode::all_integers) {
    for (long rel = 0; rel < static_cast<long>(table.size()); ++rel) {
      const long q = base + rel - cand.s;
      if ((q < 0 || q >= len) && table[rel] != 0) {
        out.equations_hold = false;
        break;
      }
    }
  }
  return out;
}

PlantedInstance plant_instance(const IndexFunction& m_H, long k, SearchMode mode) {
  const long m = m_H.total();
  if (k < 2 || k > m - 1) {
    throw PreconditionError("plant_instance needs 2 <= k <= m-1, got k=" + std::to_string(k) +
                            ", m=" + std::to_string(m));
  }
  const auto a = min_max_assignments(m_H, k);
  const auto table = lhs_table(m_H, k);
  const long base = k * m_H.offset();
  std::vector<ExactInt> target(table.begin() + (a.min_sum - base), table.begin() + (a.max_sum - base) + 1);
  SystemInstance sys{ChiSequence::from_values(std::move(target)), mode};
  return {std::move(sys), SolutionCandidate{m_H, k, a.min_sum}};
}

long default_support_width(const SystemInstance& sys) {
  const long span = sys.last_nonzero();
  return sys.mode == SearchMode::all_integers ? span + 1 : span + 3;
}

namespace {

using Clock = std::chrono::steady_clock;

constexpr long kFastPathMaxM = 62;

std::vector<std::vector<std::uint64_t>> small_binomials() {
  std::vector<std::vector<std::uint64_t>> c(kFastPathMaxM + 1);
  for (long n = 0; n <= kFastPathMaxM; ++n) {
    c[n].assign(static_cast<std::size_t>(n + 1), 1);
    for (long k = 1; k < n; ++k) c[n][k] = c[n - 1][k - 1] + c[n - 1][k];
  }
  return c;
}

const std::vector<std::vector<std::uint64_t>>& binom64() {
  static const auto table = small_binomials();
  return table;
}

struct TargetView {
  std::vector<ExactInt> values;       // q = 0..n-r
  std::vector<std::uint64_t> small;   // same, when every entry fits
  bool fits64 = false;
  long last = 0;                      // last nonzero index
  ExactInt total;
};

struct CellResult {
  std::vector<SolutionCandidate> found;
  unsigned long long examined = 0;
};

class Searcher {
 public:
  Searcher(const SystemInstance& sys, Clock::time_point deadline, const std::atomic<bool>* cancel,
           std::atomic<bool>& stop, std::atomic<bool>& budget_hit, std::atomic<bool>& interrupted)
      : sys_(sys),
        deadline_(deadline),
        cancel_(cancel),
        stop_(stop),
        budget_hit_(budget_hit),
        interrupted_(interrupted) {
    view_.values = sys.target.values();
    view_.last = sys.last_nonzero();
    view_.total = sys.target.total();
    view_.fits64 = true;
    for (const auto& v : view_.values) {
      if (!v.fits_ulong_p()) {
        view_.fits64 = false;
        break;
      }
      view_.small.push_back(v.get_ui());
    }
  }

  // Returns false if the search was stopped inside this cell.
  bool run_cell(long m, long width, CellResult& out) {
    std::vector<long> counts(static_cast<std::size_t>(width), 0);
    if (width == 1) {
      counts[0] = m;
      examine(counts, out);
      return !stop_.load();
    }
    // Ends are at least 1; distribute the remaining m - 2 freely.
    std::vector<long> inner(static_cast<std::size_t>(width), 0);
    return distribute(inner, 0, m - 2, counts, out);
  }

 private:
  bool distribute(std::vector<long>& extra, std::size_t pos, long remaining, std::vector<long>& counts,
                  CellResult& out) {
    if (pos + 1 == extra.size()) {
      extra[pos] = remaining;
      for (std::size_t i = 0; i < extra.size(); ++i) counts[i] = extra[i];
      counts.front() += 1;
      counts.back() += 1;
      if ((++ticks_ & 0xff) == 0 && should_stop()) return false;
      examine(counts, out);
      return true;
    }
    for (long v = 0; v <= remaining; ++v) {
      extra[pos] = v;
      if (!distribute(extra, pos + 1, remaining - v, counts, out)) return false;
    }
    return true;
  }

  bool should_stop() {
    if (stop_.load(std::memory_order_relaxed)) return true;
    if (cancel_ != nullptr && cancel_->load(std::memory_order_relaxed)) {
      interrupted_ = true;
      stop_ = true;
      return true;
    }
    if (Clock::now() >= deadline_) {
      budget_hit_ = true;
      stop_ = true;
      return true;
    }
    return false;
  }

  void examine(const std::vector<long>& counts, CellResult& out) {
    const long m = std::accumulate(counts.begin(), counts.end(), 0L);
    const long width = static_cast<long>(counts.size());
    for (long k = 2; k <= m - 1; ++k) {
      ++out.examined;
      // Greedy extremes, relative to offset 0.
      long rem = k, min_sum = 0, w = 0, take_w = 0;
      for (long j = 0; j < width && rem > 0; ++j) {
        long t = std::min(counts[j], rem);
        rem -= t;
        min_sum += j * t;
        if (t > 0) {
          w = j;
          take_w = t;
        }
      }
      rem = k;
      long max_sum = 0, wp = 0, take_wp = 0;
      for (long j = width - 1; j >= 0 && rem > 0; --j) {
        long t = std::min(counts[j], rem);
        rem -= t;
        max_sum += j * t;
        if (t > 0) {
          wp = j;
          take_wp = t;
        }
      }
      const long span = max_sum - min_sum;
      const bool exact_mode = sys_.mode == SearchMode::all_integers;
      if (exact_mode ? span != view_.last : span < view_.last) continue;

      const bool fast = m <= kFastPathMaxM;
      if (fast) {
        const std::uint64_t total = binom64()[m][k];
        if (exact_mode ? ExactInt(static_cast<unsigned long>(total)) != view_.total
                       : ExactInt(static_cast<unsigned long>(total)) < view_.total) {
          continue;
        }
      } else {
        const ExactInt total = binomial(m, k);
        if (exact_mode ? total != view_.total : total < view_.total) continue;
      }

      if (exact_mode) {
        // Extreme sums are reached in exactly one way up to the choice at w (w').
        const ExactInt lo = fast ? ExactInt(static_cast<unsigned long>(binom64()[counts[w]][take_w]))
                                 : binomial(counts[w], take_w);
        if (lo != view_.values[0]) continue;
        const ExactInt hi = fast ? ExactInt(static_cast<unsigned long>(binom64()[counts[wp]][take_wp]))
                                 : binomial(counts[wp], take_wp);
        if (hi != view_.values[view_.last]) continue;
      }

      if (fast && view_.fits64) {
        table64(counts, k);
        match(counts, k, min_sum, max_sum, [&](long rel) { return small_eq(rel); }, out);
      } else {
        IndexFunction f(0, counts);
        big_ = lhs_table(f, k);
        match(counts, k, min_sum, max_sum, [&](long rel) { return big_eq(rel); }, out);
      }
    }
  }

  template <typename Eq>
  void match(const std::vector<long>& counts, long k, long min_sum, long max_sum, Eq eq, CellResult& out) {
    const long len = static_cast<long>(view_.values.size());
    long s_lo = min_sum, s_hi = min_sum;
    if (sys_.mode == SearchMode::bounded_range) s_hi = max_sum - view_.last;
    for (long s = s_lo; s <= s_hi; ++s) {
      bool ok = true;
      for (long q = 0; q < len && ok; ++q) {
        current_q_ = q;
        ok = eq(s + q);
      }
      if (ok) out.found.push_back(SolutionCandidate{IndexFunction(0, counts), k, s});
    }
  }

  bool small_eq(long rel) const {
    const std::uint64_t lhs = (rel >= 0 && rel < static_cast<long>(small_.size())) ? small_[rel] : 0;
    return lhs == view_.small[current_q_];
  }

  bool big_eq(long rel) const {
    if (rel < 0 || rel >= static_cast<long>(big_.size())) return view_.values[current_q_] == 0;
    return big_[rel] == view_.values[current_q_];
  }

  void table64(const std::vector<long>& counts, long k) {
    const long width = static_cast<long>(counts.size());
    const long span = k * (width - 1);
    const std::size_t stride = static_cast<std::size_t>(span + 1);
    dp_.assign(static_cast<std::size_t>(k + 1) * stride, 0);
    dp_[0] = 1;
    const auto& c = binom64();
    for (long j = 0; j < width; ++j) {
      const long cj = counts[j];
      if (cj == 0) continue;
      for (long kk = k; kk >= 1; --kk) {
        std::uint64_t* dst = &dp_[static_cast<std::size_t>(kk) * stride];
        for (long a = 1; a <= std::min(cj, kk); ++a) {
          const std::uint64_t* src = &dp_[static_cast<std::size_t>(kk - a) * stride];
          const std::uint64_t mult = c[cj][a];
          for (long t = 0; t + a * j <= span; ++t) {
            if (src[t] != 0) dst[t + a * j] += mult * src[t];
          }
        }
      }
    }
    small_.assign(dp_.begin() + static_cast<long>(static_cast<std::size_t>(k) * stride), dp_.end());
  }

  const SystemInstance& sys_;
  Clock::time_point deadline_;
  const std::atomic<bool>* cancel_;
  std::atomic<bool>& stop_;
  std::atomic<bool>& budget_hit_;
  std::atomic<bool>& interrupted_;
  TargetView view_;
  std::vector<std::uint64_t> dp_;
  std::vector<std::uint64_t> small_;
  std::vector<ExactInt> big_;
  long current_q_ = 0;
  unsigned long ticks_ = 0;
};

std::string mirror_tag(const SolutionCandidate& c) {
  const auto& a = c.m_H.counts();
  std::vector<long> b(a.rbegin(), a.rend());
  const auto& key = std::min(a, b);
  std::ostringstream out;
  out << "k" << c.k << ":";
  for (std::size_t i = 0; i < key.size(); ++i) out << (i ? "," : "") << key[i];
  return out.str();
}

}  // namespace

SearchReport search(const SystemInstance& sys, const SearchBounds& bounds, const SearchOptions& options) {
  const auto start = Clock::now();
  SearchReport report{sys, bounds, 0, {}};
  long width = bounds.max_support_width > 0 ? bounds.max_support_width : default_support_width(sys);
  if (sys.mode == SearchMode::all_integers) width = std::min(width, sys.last_nonzero() + 1);
  report.effective_width = width;

  if (bounds.time_budget.count() <= 0) {
    report.budget_exhausted = true;
    return report;
  }

  std::vector<std::pair<long, long>> cells;
  for (long m = 3; m <= bounds.max_total_m; ++m) {
    for (long wd = 1; wd <= width; ++wd) cells.emplace_back(m, wd);
  }

  std::atomic<bool> stop{false}, budget_hit{false}, interrupted{false};
  std::atomic<std::size_t> next{0};
  std::vector<CellResult> results(cells.size());
  std::vector<char> done(cells.size(), 0);
  const auto deadline = start + bounds.time_budget;

  auto worker = [&] {
    Searcher searcher(sys, deadline, options.cancel, stop, budget_hit, interrupted);
    while (!stop.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) break;
      if (searcher.run_cell(cells[i].first, cells[i].second, results[i])) done[i] = 1;
    }
  };
  const int threads = std::max(1, options.threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<SolutionCandidate> all;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    report.candidates_examined += results[i].examined;
    all.insert(all.end(), results[i].found.begin(), results[i].found.end());
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  for (auto& c : all) report.solutions.push_back({c, mirror_tag(c)});

  report.budget_exhausted = budget_hit.load();
  report.interrupted = interrupted.load();
  report.exhausted = std::all_of(done.begin(), done.end(), [](char d) { return d != 0; }) &&
                     !report.budget_exhausted && !report.interrupted;
  report.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
  return report;
}

}  // namespace eulerchi
