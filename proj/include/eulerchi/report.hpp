#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "eulerchi/appendix.hpp"
#include "eulerchi/chi.hpp"
#include "eulerchi/monodromy.hpp"

namespace eulerchi {

using Json = nlohmann::ordered_json;

enum class Format { json, csv, plain };

Format parse_format(std::string_view text);

// Big integers and rationals travel as decimal strings.
Json to_json(const ExactInt& x);
Json to_json(const std::vector<ExactInt>& xs);
Json to_json(const ChiSequence& chi);
Json to_json(const IndexFunction& f);
Json to_json(const IneqVerdict& v);
Json to_json(const SearchReport& report, bool timing = true);
Json to_json(const IntersectionProfile& profile);

// {"r": 2, "n": 4, "numbers": [{"eps": [0, 4], "value": "1"}, ...]}.
// Values may be JSON integers or decimal strings. Throws PreconditionError on
// malformed input.
IntersectionProfile profile_from_json(const Json& j);
ChiSequence chi_from_json(const Json& j);

// name,r,n,profile_id,outcome,holds,conservative
std::string verdicts_csv(const std::vector<IneqVerdict>& verdicts);
std::string verdicts_plain(const std::vector<IneqVerdict>& verdicts);

std::string search_plain(const SearchReport& report, bool timing = true);

}  // namespace eulerchi
