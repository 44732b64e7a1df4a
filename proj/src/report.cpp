#include "eulerchi/report.hpp"

#include <sstream>

#include "eulerchi/errors.hpp"

namespace eulerchi {

Format parse_format(std::string_view text) {
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  if (text == "plain") return Format::plain;
  throw PreconditionError("unknown format: " + std::string(text));
}

Json to_json(const ExactInt& x) { return x.get_str(); }

Json to_json(const std::vector<ExactInt>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.get_str());
  return out;
}

Json to_json(const ChiSequence& chi) {
  return Json{{"r", chi.r()}, {"n", chi.n()}, {"values", to_json(chi.values())}};
}

Json to_json(const IndexFunction& f) {
  return Json{{"offset", f.offset()}, {"counts", f.counts()}, {"text", f.to_string()}};
}

Json to_json(const IneqVerdict& v) {
  Json params = Json::object();
  for (const auto& [k, val] : v.params) params[k] = val;
  return Json{{"name", v.name},
              {"params", params},
              {"outcome", std::string(to_string(v.outcome))},
              {"holds", v.holds},
              {"conservative", v.conservative},
              {"witness", v.witness ? Json(to_string(*v.witness)) : Json(nullptr)},
              {"profile_id", v.profile_id}};
}

Json to_json(const SearchReport& report, bool timing) {
  Json solutions = Json::array();
  for (const auto& s : report.solutions) {
    solutions.push_back(Json{{"m_H", to_json(s.candidate.m_H)},
                             {"k", s.candidate.k},
                             {"s", s.candidate.s},
                             {"mirror_tag", s.mirror_tag}});
  }
  Json out{{"mode", std::string(to_string(report.system.mode))},
           {"target", to_json(report.system.target)},
           {"bounds",
            {{"max_total_m", report.bounds.max_total_m},
             {"max_support_width", report.bounds.max_support_width},
             {"time_budget_ms", report.bounds.time_budget.count()}}},
           {"effective_width", report.effective_width},
           {"solutions", solutions},
           {"exhaustive", report.exhausted},
           {"budget_exhausted", report.budget_exhausted},
           {"interrupted", report.interrupted},
           {"candidates_examined", report.candidates_examined}};
  if (timing) out["elapsed_ms"] = report.elapsed_ms;
  return out;
}

Json to_json(const IntersectionProfile& profile) {
  Json numbers = Json::array();
  for (const auto& [e, v] : profile.numbers()) numbers.push_back(Json{{"eps", e.entries()}, {"value", v.get_str()}});
  return Json{{"r", profile.r()}, {"n", profile.n()}, {"numbers", numbers}};
}

namespace {

ExactInt big_from_json(const Json& j, std::string_view what) {
  if (j.is_string()) return parse_int(j.get<std::string>());
  if (j.is_number_integer()) return ExactInt(j.dump());
  throw PreconditionError(std::string(what) + " must be an integer or a decimal string");
}

long long_from_json(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) throw PreconditionError(std::string("missing integer field '") + key + "'");
  return j[key].get<long>();
}

}  // namespace

IntersectionProfile profile_from_json(const Json& j) {
  if (!j.is_object()) throw PreconditionError("profile must be a JSON object");
  const long r = long_from_json(j, "r");
  const long n = long_from_json(j, "n");
  if (r < 1 || r > 64) throw PreconditionError("profile r out of range");
  if (!j.contains("numbers") || !j["numbers"].is_array()) throw PreconditionError("profile needs a 'numbers' array");
  IntersectionProfile::Numbers numbers;
  for (const auto& item : j["numbers"]) {
    if (!item.is_object() || !item.contains("eps") || !item["eps"].is_array() || !item.contains("value")) {
      throw PreconditionError("each number needs 'eps' and 'value'");
    }
    std::vector<int> eps;
    for (const auto& e : item["eps"]) {
      if (!e.is_number_integer()) throw PreconditionError("eps entries must be integers");
      eps.push_back(e.get<int>());
    }
    ExponentVector key(std::move(eps));
    if (numbers.count(key)) throw PreconditionError("duplicate exponent vector " + key.to_string());
    numbers.emplace(std::move(key), big_from_json(item["value"], "value"));
  }
  return IntersectionProfile(static_cast<int>(r), n, std::move(numbers));
}

ChiSequence chi_from_json(const Json& j) {
  const Json& values = j.is_array() ? j : j.value("values", Json());
  if (!values.is_array()) throw PreconditionError("chi sequence needs a 'values' array");
  std::vector<ExactInt> v;
  for (const auto& x : values) v.push_back(big_from_json(x, "chi value"));
  if (j.is_object() && j.contains("r") && j.contains("n")) {
    return ChiSequence(long_from_json(j, "n"), static_cast<int>(long_from_json(j, "r")), std::move(v));
  }
  return ChiSequence::from_values(std::move(v));
}

std::string verdicts_csv(const std::vector<IneqVerdict>& verdicts) {
  std::ostringstream out;
  out << "name,r,n,profile_id,outcome,holds,conservative\n";
  for (const auto& v : verdicts) {
    out << v.name << ',' << v.param("r") << ',' << v.param("n") << ",\"" << v.profile_id << "\"," << to_string(v.outcome)
        << ',' << (v.holds ? "true" : "false") << ',' << (v.conservative ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string verdicts_plain(const std::vector<IneqVerdict>& verdicts) {
  std::ostringstream out;
  for (const auto& v : verdicts) {
    out << v.name;
    for (const auto& [k, val] : v.params) {
      if (k == "base") continue;
      out << ' ' << k << '=' << val;
    }
    out << ": " << to_string(v.outcome);
    if (v.conservative) out << " (conservative)";
    out << '\n';
  }
  return out.str();
}

std::string search_plain(const SearchReport& report, bool timing) {
  std::ostringstream out;
  out << "mode: " << to_string(report.system.mode) << '\n';
  out << "target: " << report.system.target.to_string() << '\n';
  out << "max_m: " << report.bounds.max_total_m << ", width: " << report.effective_width << '\n';
  out << "exhaustive: " << (report.exhausted ? "true" : "false") << '\n';
  if (report.budget_exhausted) out << "budget exhausted\n";
  if (report.interrupted) out << "interrupted\n";
  out << "candidates: " << report.candidates_examined << '\n';
  if (timing) out << "elapsed_ms: " << report.elapsed_ms << '\n';
  out << "solutions: " << report.solutions.size() << '\n';
  for (const auto& s : report.solutions) {
    out << "  m_H=" << s.candidate.m_H.to_string() << " k=" << s.candidate.k << " s=" << s.candidate.s
        << " mirror=" << s.mirror_tag << '\n';
  }
  return out.str();
}

}  // namespace eulerchi
