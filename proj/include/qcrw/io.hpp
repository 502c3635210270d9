#pragma once

#include <string>

#include <json.hpp>

#include "qcrw/semantics.hpp"

namespace qcrw {

using ordered_json = nlohmann::ordered_json;

// x rounded to `digits` significant digits, so printed JSON is stable
double round_sig(double x, int digits);

// {"rows", "cols", "re": [[...]], "im": [[...]]}
ordered_json unitary_to_json(const Unitary& u, int digits = 12);
// accepts the object above or a list of rows of [re, im] pairs; throws SyntaxError
Unitary unitary_from_json(const nlohmann::json& j);
Unitary unitary_from_json_text(const std::string& text);

}  // namespace qcrw
