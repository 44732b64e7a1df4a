#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "eulerchi/appendix.hpp"
#include "eulerchi/chi.hpp"
#include "eulerchi/errors.hpp"
#include "eulerchi/eulerian.hpp"
#include "eulerchi/monodromy.hpp"
#include "eulerchi/report.hpp"
#include "eulerchi/selftest.hpp"

using namespace eulerchi;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kData = 3, kBudget = 4 };

std::atomic<bool> g_cancel{false};

extern "C" void on_sigint(int) { g_cancel.store(true); }

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Data problems in user-supplied files: exit 3.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::string format = "plain";
  std::string output;
  int threads = 0;
  std::uint64_t seed = 0;
  bool no_timing = false;
};

int default_threads() {
  if (const char* env = std::getenv("EULERCHI_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t > 0) return t;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

// "2", "2,3,5", "2..4", "100..1100:100", or a mix joined by commas.
std::vector<long> parse_range(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string part;
  auto num = [&](const std::string& s) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(s, &used);
    } catch (const std::exception&) {
      throw UsageError("bad number in range: '" + s + "'");
    }
    if (used != s.size()) throw UsageError("bad number in range: '" + s + "'");
    return v;
  };
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(num(part));
      continue;
    }
    long step = 1;
    std::string hi_text = part.substr(dots + 2);
    if (const auto colon = hi_text.find(':'); colon != std::string::npos) {
      step = num(hi_text.substr(colon + 1));
      hi_text = hi_text.substr(0, colon);
    }
    const long lo = num(part.substr(0, dots));
    const long hi = num(hi_text);
    if (step <= 0 || hi < lo) throw UsageError("bad range: '" + part + "'");
    for (long v = lo; v <= hi; v += step) out.push_back(v);
  }
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DataError(path + ": " + e.what());
  }
}

class Output {
 public:
  explicit Output(const Globals& g) : g_(g) {}

  void write(const std::string& text) {
    if (g_.output.empty()) {
      std::cout << text;
      std::cout.flush();
      return;
    }
    std::ofstream out(g_.output);
    if (!out) throw DataError("cannot write " + g_.output);
    out << text;
  }

  void write(const Json& j) { write(j.dump(2) + "\n"); }

 private:
  const Globals& g_;
};

struct SameClassArgs {
  bool enabled = false;
  int r = 1;
  long n = 0;
  std::vector<long> d;
  std::string h = "1";

  void add(CLI::App* app, bool with_flag = true) {
    if (with_flag) app->add_flag("--same-class", enabled, "Equal-class hypersurfaces d_i H with H^n/n! = h");
    app->add_option("--r", r, "Number of hypersurfaces")->check(CLI::Range(1, 64));
    app->add_option("--n", n, "Dimension of the abelian variety");
    app->add_option("--d", d, "Degrees d_1 ... d_r (default all 1)");
    app->add_option("--h", h, "H^n / n!");
  }

  DegreeProfile profile() const {
    DegreeProfile dp{r, n, d.empty() ? std::vector<long>(r, 1) : d, parse_int(h)};
    return dp;
  }

  std::string id() const {
    SweepProfile p{d, parse_int(h)};
    return p.id(r);
  }
};

// ---------------------------------------------------------------- eulerian

struct EulerianArgs {
  int r = 1;
  long n = 0;
  std::optional<long> k;
};

int run_eulerian(const EulerianArgs& a, const Globals& g) {
  if (a.n < a.r) throw UsageError("eulerian needs n >= r");
  std::vector<ExactInt> values;
  if (a.k) {
    if (*a.k < 0 || *a.k > a.n - a.r) throw UsageError("k must lie in [0, n - r]");
    values.push_back(generalized_eulerian(a.r, a.n, *a.k));
  } else {
    values = generalized_eulerian_row(a.r, a.n);
  }
  Output out(g);
  const auto format = parse_format(g.format);
  if (format == Format::json) {
    Json j{{"command", "eulerian"}, {"r", a.r}, {"n", a.n}};
    if (a.k) j["k"] = *a.k;
    j["values"] = to_json(values);
    out.write(j);
  } else if (format == Format::csv) {
    std::string text = "k,value\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
      text += std::to_string(a.k ? *a.k : static_cast<long>(i)) + "," + values[i].get_str() + "\n";
    }
    out.write(text);
  } else {
    std::string text;
    for (const auto& v : values) text += (text.empty() ? "" : " ") + v.get_str();
    out.write(text + "\n");
  }
  return kOk;
}

// ---------------------------------------------------------------- chi

struct ChiArgs {
  SameClassArgs same;
  std::string profile_path;
};

int run_chi(const ChiArgs& a, const Globals& g) {
  std::optional<IntersectionProfile> profile;
  ChiSequence chi = ChiSequence::from_values({1});
  std::string source, id;
  if (!a.profile_path.empty()) {
    try {
      profile = profile_from_json(read_json_file(a.profile_path));
    } catch (const PreconditionError& e) {
      throw DataError(e.what());
    }
    chi = chi_from_profile(*profile);
    const ChiSequence other = chi_via_recurrence(*profile);
    if (other != chi) throw ConsistencyError("profile and recurrence routes disagree");
    source = "profile";
    id = a.profile_path;
  } else if (a.same.enabled) {
    if (a.same.n < a.same.r) throw UsageError("chi needs n >= r");
    const auto dp = a.same.profile();
    dp.validate();
    chi = chi_same_class(dp);
    source = "same-class";
    id = a.same.id();
    if (2L * dp.r < dp.n && dp.n <= 40) profile = dp.induced_profile();
  } else {
    throw UsageError("chi needs --profile or --same-class");
  }
  const bool numcond = numerical_condition(chi);
  std::optional<bool> div6;
  if (profile && 2L * profile->r() < profile->n()) div6 = divisible_by_six(*profile);

  Output out(g);
  const auto format = parse_format(g.format);
  if (format == Format::json) {
    Json j{{"command", "chi"}, {"source", source}, {"profile_id", id}, {"r", chi.r()}, {"n", chi.n()},
           {"values", to_json(chi.values())}, {"numcond", numcond}};
    j["divisible_by_six"] = div6 ? Json(*div6) : Json(nullptr);
    j["topological_euler"] = to_json(topological_euler(chi));
    out.write(j);
  } else if (format == Format::csv) {
    std::string text = "q,value\n";
    for (std::size_t q = 0; q < chi.size(); ++q) text += std::to_string(q) + "," + chi.values()[q].get_str() + "\n";
    out.write(text);
  } else {
    std::string text = chi.to_string() + "; numcond: " + (numcond ? "true" : "false") + "\n";
    text += std::string("divisible_by_six: ") + (div6 ? (*div6 ? "true" : "false") : "n/a") + "\n";
    out.write(text);
  }
  return kOk;
}

// ---------------------------------------------------------------- numcond

struct NumcondArgs {
  std::vector<std::string> values;
  std::string chi_path;
  SameClassArgs same;
};

int run_numcond(const NumcondArgs& a, const Globals& g) {
  ChiSequence chi = ChiSequence::from_values({1});
  if (!a.values.empty()) {
    std::vector<ExactInt> v;
    for (const auto& s : a.values) v.push_back(parse_int(s));
    chi = ChiSequence::from_values(std::move(v));
  } else if (!a.chi_path.empty()) {
    try {
      chi = chi_from_json(read_json_file(a.chi_path));
    } catch (const PreconditionError& e) {
      throw DataError(e.what());
    }
  } else if (a.same.enabled) {
    if (a.same.n < a.same.r) throw UsageError("numcond needs n >= r");
    chi = chi_same_class(a.same.profile());
  } else {
    throw UsageError("numcond needs values, --chi or --same-class");
  }
  const bool holds = numerical_condition(chi);
  ExactInt sq = 0;
  for (const auto& x : chi.values()) sq += x * x;
  const ExactInt total = chi.total();
  Output out(g);
  const auto format = parse_format(g.format);
  if (format == Format::json) {
    out.write(Json{{"command", "numcond"}, {"values", to_json(chi.values())}, {"lhs", to_json(ExactInt(2 * sq))},
                   {"rhs", to_json(ExactInt(total * total))}, {"numcond", holds}});
  } else if (format == Format::csv) {
    out.write("lhs,rhs,numcond\n" + ExactInt(2 * sq).get_str() + "," + ExactInt(total * total).get_str() + "," +
              (holds ? "true" : "false") + "\n");
  } else {
    out.write(std::string("numcond: ") + (holds ? "true" : "false") + "\n");
  }
  return kOk;
}

// ---------------------------------------------------------------- search

struct SearchArgs {
  std::vector<std::string> target;
  std::string target_path;
  SameClassArgs same;
  std::string plant;
  long k = 2;
  std::string mode = "all";
  long max_m = 10;
  long max_width = 0;
  long budget_ms = 60000;
};

int run_search(const SearchArgs& a, const Globals& g) {
  std::optional<ChiSequence> target;
  std::optional<SolutionCandidate> planted;
  if (!a.plant.empty()) {
    IndexFunction f = [&] {
      try {
        return IndexFunction::parse(a.plant);
      } catch (const PreconditionError& e) {
        throw UsageError(e.what());
      }
    }();
    auto p = plant_instance(f, a.k);
    target = p.system.target;
    planted = p.planted;
  } else if (!a.target.empty()) {
    std::vector<ExactInt> v;
    for (const auto& s : a.target) v.push_back(parse_int(s));
    target = ChiSequence::from_values(std::move(v));
  } else if (!a.target_path.empty()) {
    try {
      target = chi_from_json(read_json_file(a.target_path));
    } catch (const PreconditionError& e) {
      throw DataError(e.what());
    }
  } else if (a.same.enabled) {
    if (a.same.n < a.same.r) throw UsageError("search needs n >= r");
    target = chi_same_class(a.same.profile());
  } else {
    throw UsageError("search needs --target, --target-file, --same-class or --plant");
  }

  std::vector<SearchMode> modes;
  if (a.mode == "all" || a.mode == "all_integers") {
    modes = {SearchMode::all_integers};
  } else if (a.mode == "bounded" || a.mode == "bounded_range") {
    modes = {SearchMode::bounded_range};
  } else if (a.mode == "both") {
    modes = {SearchMode::all_integers, SearchMode::bounded_range};
  } else {
    throw UsageError("unknown mode: " + a.mode);
  }

  SearchBounds bounds{a.max_m, a.max_width, std::chrono::milliseconds(a.budget_ms)};
  SearchOptions options{g.threads, &g_cancel};
  std::vector<SearchReport> reports;
  for (auto mode : modes) {
    reports.push_back(search(SystemInstance{*target, mode}, bounds, options));
    if (reports.back().interrupted) break;
  }

  bool budget = false, interrupted = false;
  for (const auto& r : reports) {
    budget = budget || r.budget_exhausted;
    interrupted = interrupted || r.interrupted;
  }
  const bool timing = !g.no_timing;
  Output out(g);
  const auto format = parse_format(g.format);
  if (format == Format::json) {
    Json runs = Json::array();
    for (const auto& r : reports) runs.push_back(to_json(r, timing));
    Json j{{"command", "search"}, {"interrupted", interrupted}, {"runs", runs}};
    if (planted) {
      j["planted"] = Json{{"m_H", to_json(planted->m_H)}, {"k", planted->k}, {"s", planted->s}};
    }
    out.write(j);
  } else if (format == Format::csv) {
    std::string text = "mode,m_H,k,s,mirror_tag\n";
    for (const auto& r : reports) {
      for (const auto& s : r.solutions) {
        text += std::string(to_string(r.system.mode)) + ",\"" + s.candidate.m_H.to_string() + "\"," +
                std::to_string(s.candidate.k) + "," + std::to_string(s.candidate.s) + ",\"" + s.mirror_tag + "\"\n";
      }
    }
    out.write(text);
  } else {
    std::string text;
    for (const auto& r : reports) text += search_plain(r, timing);
    if (interrupted) text += "interrupted\n";
    out.write(text);
  }
  return (budget || interrupted) ? kBudget : kOk;
}

// ---------------------------------------------------------------- inequalities

struct AppendixArgs {
  std::string r = "2";
  std::string n;
  bool thresholds = false;
  bool quartic = false;
  std::vector<long> d;
  std::string h = "1";
  std::vector<std::string> only;
  std::string s_values = "2..5";
};

SweepRequest make_request(const AppendixArgs& a) {
  SweepRequest req;
  for (long r : parse_range(a.r)) {
    if (r < 1 || r > 64) throw UsageError("r out of range");
    req.r_values.push_back(static_cast<int>(r));
  }
  if (!a.n.empty()) req.n_values = parse_range(a.n);
  req.thresholds = a.thresholds;
  req.quartic = a.quartic;
  req.profile = SweepProfile{a.d, parse_int(a.h)};
  if (req.profile.h <= 0) throw UsageError("h must be positive");
  for (long d : a.d) {
    if (d <= 0) throw UsageError("degrees must be positive");
  }
  if (!a.d.empty()) {
    for (int r : req.r_values) {
      if (static_cast<std::size_t>(r) != a.d.size()) throw UsageError("--d needs exactly r entries");
    }
  }
  req.large_s_values = parse_range(a.s_values);
  static const char* known[] = {"ratio", "q2", "remaining", "s-lower", "large-s", "m0"};
  for (auto o : a.only) {
    std::replace(o.begin(), o.end(), '_', '-');
    const bool ok = std::any_of(std::begin(known), std::end(known), [&](const char* k) { return o.rfind(k, 0) == 0; });
    if (!ok) throw UsageError("unknown check for --only: " + o);
  }
  req.only = a.only;
  req.cancel = &g_cancel;
  return req;
}

int run_appendix(const std::string& command, const AppendixArgs& a, const Globals& g, bool gate_exit) {
  if (a.n.empty() && !a.thresholds) throw UsageError(command + " needs --n or --thresholds");
  const auto req = make_request(a);
  const auto verdicts = sweep(req, g.threads);
  const bool interrupted = g_cancel.load();
  const bool ok = all_hold(verdicts);
  std::map<std::string, long> counts;
  for (const auto& v : verdicts) counts[std::string(to_string(v.outcome))]++;

  Output out(g);
  const auto format = parse_format(g.format);
  if (format == Format::json) {
    Json list = Json::array();
    for (const auto& v : verdicts) list.push_back(to_json(v));
    Json summary = Json::object();
    for (const auto& [k, c] : counts) summary[k] = c;
    out.write(Json{{"command", command}, {"all_hold", ok}, {"interrupted", interrupted}, {"summary", summary},
                   {"verdicts", list}});
  } else if (format == Format::csv) {
    out.write(verdicts_csv(verdicts));
  } else {
    std::string text = verdicts_plain(verdicts);
    text += "all_hold: " + std::string(ok ? "true" : "false");
    for (const auto& [k, c] : counts) text += ", " + k + "=" + std::to_string(c);
    text += interrupted ? "\ninterrupted\n" : "\n";
    out.write(text);
  }
  if (interrupted) return kBudget;
  if (gate_exit && !ok) return kFailed;
  return kOk;
}

// ---------------------------------------------------------------- selftest

int run_selftest_cmd(const std::string& fault, const Globals& g) {
  SelftestOptions opts{g.seed, g.threads, fault};
  const auto result = run_selftest(opts);
  Output out(g);
  const auto format = parse_format(g.format);
  if (format == Format::json) {
    Json checks = Json::array();
    for (const auto& c : result.checks) checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    out.write(Json{{"command", "selftest"}, {"seed", g.seed}, {"passed", result.passed()}, {"checks", checks}});
  } else if (format == Format::csv) {
    std::string text = "name,passed,detail\n";
    for (const auto& c : result.checks) text += c.name + "," + (c.passed ? "true" : "false") + ",\"" + c.detail + "\"\n";
    out.write(text);
  } else {
    std::string text = "seed " + std::to_string(g.seed) + "\n";
    for (const auto& c : result.checks) text += (c.passed ? "PASS " : "FAIL ") + c.name + ": " + c.detail + "\n";
    text += result.passed() ? "selftest passed\n" : "selftest FAILED\n";
    out.write(text);
  }
  return result.passed() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Eulerian numbers, Euler characteristics and inequality checks"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv", "plain"}));
  app.add_option("--output,-o", g.output, "Write the report here instead of stdout");
  app.add_option("--threads,-j", g.threads, "Worker threads (default: $EULERCHI_THREADS or 1)")
      ->check(CLI::Range(1, 1024));
  app.add_option("--seed", g.seed, "Seed for randomized suites");
  app.add_flag("--no-timing", g.no_timing, "Omit wall-clock fields so reports are byte-stable");

  EulerianArgs ea;
  auto* eul = app.add_subcommand("eulerian", "Generalized Eulerian numbers E_r(n, k)");
  eul->add_option("--r", ea.r, "r (1 gives classical Eulerian numbers)")->check(CLI::Range(1, 64));
  eul->add_option("--n", ea.n, "n")->required()->check(CLI::Range(0L, 100000L));
  eul->add_option("--k", ea.k, "Single index");

  ChiArgs ca;
  auto* chi = app.add_subcommand("chi", "Euler characteristics of a complete intersection");
  ca.same.add(chi);
  chi->add_option("--profile", ca.profile_path, "Intersection profile JSON");

  NumcondArgs na;
  auto* num = app.add_subcommand("numcond", "Check 2 sum chi^2 <= (sum chi)^2");
  num->add_option("values", na.values, "Chi magnitudes");
  num->add_option("--chi", na.chi_path, "Chi sequence JSON");
  na.same.add(num);

  SearchArgs sa;
  auto* srch = app.add_subcommand("search", "Search the wedge-power system for solutions");
  srch->add_option("--target", sa.target, "Target chi magnitudes")->expected(1, -1);
  srch->add_option("--target-file", sa.target_path, "Target chi JSON");
  sa.same.add(srch);
  srch->add_option("--plant", sa.plant, "Build the target from m_H, e.g. \"0:1,1:1,2:1\"");
  srch->add_option("--k", sa.k, "k used with --plant");
  srch->add_option("--mode", sa.mode, "all | bounded | both");
  srch->add_option("--max-m", sa.max_m, "Largest total multiplicity m")->check(CLI::Range(1L, 200L));
  srch->add_option("--max-width", sa.max_width, "Largest support width (0: derived)")->check(CLI::Range(0L, 1000L));
  srch->add_option("--budget-ms", sa.budget_ms, "Time budget in milliseconds")->check(CLI::Range(0L, 86400000L));

  AppendixArgs aa;
  auto add_appendix = [&](CLI::App* sub) {
    sub->add_option("--r", aa.r, "r values: 2, 2..3, 1,2,4");
    sub->add_option("--n", aa.n, "n values: 8, 6..14, 100..1100:100");
    sub->add_flag("--thresholds", aa.thresholds, "Add n = 10r^2+1000 for each r");
    sub->add_flag("--quartic", aa.quartic, "With --thresholds use 10r^4+1000");
    sub->add_option("--d", aa.d, "Degrees d_1 ... d_r (default all 1)");
    sub->add_option("--h", aa.h, "H^n / n!");
    sub->add_option("--only", aa.only, "ratio | q2 | remaining | s-lower | large-s | m0-bound");
    sub->add_option("--s", aa.s_values, "s values for the large-s check");
  };
  auto* ver = app.add_subcommand("verify-appendix", "Check the inequalities; exit 1 if any fails");
  add_appendix(ver);
  auto* swp = app.add_subcommand("sweep", "Run every inequality over a grid and record the verdicts");
  add_appendix(swp);

  std::string fault;
  auto* self = app.add_subcommand("selftest", "Cross-route consistency suite");
  self->add_option("--inject-fault", fault, "Deliberately break a component (eulerian)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  if (g.threads <= 0) g.threads = default_threads();
  std::signal(SIGINT, on_sigint);

  try {
    if (*eul) return run_eulerian(ea, g);
    if (*chi) return run_chi(ca, g);
    if (*num) return run_numcond(na, g);
    if (*srch) return run_search(sa, g);
    if (*ver) return run_appendix("verify-appendix", aa, g, true);
    if (*swp) return run_appendix("sweep", aa, g, false);
    if (*self) return run_selftest_cmd(fault, g);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  } catch (const IntegralityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  } catch (const ConsistencyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}
