#pragma once

#include <atomic>
#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eulerchi/chi.hpp"
#include "eulerchi/exact.hpp"

namespace eulerchi {

// Finitely supported map Z -> N; value at offset + i is counts[i]. Stored
// trimmed so counts.front() and counts.back() are nonzero.
class IndexFunction {
 public:
  IndexFunction(long offset, std::vector<long> counts);
  explicit IndexFunction(const std::map<long, long>& values);

  // "0:1,1:1,2:1"
  static IndexFunction parse(std::string_view text);

  long offset() const { return offset_; }
  const std::vector<long>& counts() const { return counts_; }
  long width() const { return static_cast<long>(counts_.size()); }
  long first() const { return offset_; }
  long last() const { return offset_ + width() - 1; }
  long at(long i) const;
  long total() const;
  long weighted_sum() const;

  IndexFunction shifted_to(long new_offset) const;
  IndexFunction reversed() const;

  // "{0:2,1:3}"; zero entries are skipped.
  std::string to_string() const;

  auto operator<=>(const IndexFunction&) const = default;

 private:
  long offset_;
  std::vector<long> counts_;
};

enum class SearchMode { all_integers, bounded_range };

std::string_view to_string(SearchMode mode);
SearchMode parse_search_mode(std::string_view text);

struct SystemInstance {
  ChiSequence target;
  SearchMode mode = SearchMode::all_integers;

  // Index of the last nonzero target entry.
  long last_nonzero() const;
};

struct SolutionCandidate {
  IndexFunction m_H;
  long k = 0;
  long s = 0;

  auto operator<=>(const SolutionCandidate&) const = default;
};

// Number of m_S <= m_H with sum m_S = k and sum i m_S(i) = target_sum,
// each weighted by prod C(m_H(i), m_S(i)).
ExactInt lhs_value(const IndexFunction& m_H, long k, long target_sum);

// lhs_value for every target_sum from k * first() to k * last().
std::vector<ExactInt> lhs_table(const IndexFunction& m_H, long k);

struct Assignments {
  IndexFunction m0;
  IndexFunction mmax;
  long w = 0;
  long w_prime = 0;
  long min_sum = 0;
  long max_sum = 0;
};

// Greedy fills from the left (m0) and the right (mmax). Requires 1 <= k <= m.
Assignments min_max_assignments(const IndexFunction& m_H, long k);

enum class SpanOutcome { holds, fails, inapplicable };

std::string_view to_string(SpanOutcome outcome);

// sum_{i<w} (w-i) m_H(i) + sum_{i>w'} (i-w') m_H(i) + k (w'-w) = n - r.
// Inapplicable when w > w'.
SpanOutcome span_identity_holds(const IndexFunction& m_H, long k, long n, long r);

// Left-hand side of the span identity; equals max_sum - min_sum.
long span_identity_value(const IndexFunction& m_H, long k);

struct CandidateEvaluation {
  bool equations_hold = false;
  bool k_in_range = false;  // 2 <= k <= m - 1
  bool is_solution() const { return equations_hold && k_in_range; }
};

CandidateEvaluation evaluate_candidate(const SolutionCandidate& cand, const SystemInstance& sys);

struct PlantedInstance {
  SystemInstance system;
  SolutionCandidate planted;
};

// Target = lhs over [min_sum, max_sum], s = min_sum. Requires 2 <= k <= m-1.
PlantedInstance plant_instance(const IndexFunction& m_H, long k, SearchMode mode = SearchMode::all_integers);

struct SearchBounds {
  long max_total_m = 10;
  long max_support_width = 0;  // 0: derive from the target
  std::chrono::milliseconds time_budget{60000};
};

struct SearchOptions {
  int threads = 1;
  const std::atomic<bool>* cancel = nullptr;
};

struct FoundSolution {
  SolutionCandidate candidate;
  std::string mirror_tag;  // shared by m_H and its reversal
};

struct SearchReport {
  SystemInstance system;
  SearchBounds bounds;
  long effective_width = 0;
  std::vector<FoundSolution> solutions;
  bool exhausted = false;         // every cell in the bounds was examined
  bool budget_exhausted = false;  // stopped by the time budget
  bool interrupted = false;       // stopped by the cancel flag
  unsigned long long candidates_examined = 0;
  long long elapsed_ms = 0;
};

// Support widths searched when bounds.max_support_width is 0: last_nonzero+1
// for all_integers (no solution can be wider), last_nonzero+3 otherwise.
long default_support_width(const SystemInstance& sys);

SearchReport search(const SystemInstance& sys, const SearchBounds& bounds, const SearchOptions& options = {});

}  // namespace eulerchi
