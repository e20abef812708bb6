#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "latinpat/analysis.hpp"
#include "latinpat/rectpat.hpp"

namespace latinpat {

using json = nlohmann::json;

/// Number when it fits in 64 bits, decimal string otherwise.
json bigint_to_json(const BigInt& v);

json to_json(const Permutation& p);
json to_json(const LatinSquare& s);
json to_json(const LatinRectangle& r);
json to_json(const AvoidanceSpec& spec);
/// Omits elapsed time unless include_elapsed is set, so the document only
/// depends on the inputs.
json to_json(const CountResult& r, bool include_elapsed = false);
json to_json(const LambdaReport& r);
json to_json(const WilfReport& r);
json to_json(const FullLengthReport& r);
json to_json(const ExhaustiveCheck& c);
json to_json(const RectWitness& w);

/// {"order": n, "grid": [[...], ...]}
LatinSquare square_from_json(const json& j);
/// {"rows": p, "cols": q, "alphabet_bound": n, "grid": [[...], ...]}
LatinRectangle rectangle_from_json(const json& j);

BigInt bigint_from_json(const json& j);
AvoidanceSpec spec_from_json(const json& j);
CountResult count_result_from_json(const json& j);
LambdaReport lambda_report_from_json(const json& j);
WilfReport wilf_report_from_json(const json& j);

/// JSON when the first non-blank character is '{', text grid otherwise.
LatinSquare read_square(std::string_view text);
LatinRectangle read_rectangle(std::string_view text);

/// Header "pattern,count,class_id", one row per pattern.
std::string wilf_csv(const WilfReport& r);
std::string count_csv(const CountResult& r);
std::string lambda_csv(const LambdaReport& r);

}  // namespace latinpat
