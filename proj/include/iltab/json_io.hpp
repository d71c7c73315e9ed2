#pragma once

#include <string>

#include "json.hpp"

#include "iltab/semantics.hpp"
#include "iltab/tableau.hpp"

namespace iltab {

// {"worlds": [...], "R": [[a,b],...], "S": [[base,from,to],...],
//  "V": {"p": [...]}}, all world references by name.
nlohmann::json model_to_json(const Model& m);

// {"status", "stages", "labels", "formula", "logic"} plus "countermodel"
// when open and "reason" when exhausted or unsupported.
nlohmann::json result_to_json(const ProverResult& result, const std::string& formula_text,
                              const std::string& logic_name);

}  // namespace iltab
