#include "iltab/json_io.hpp"

namespace iltab {

nlohmann::json model_to_json(const Model& m) {
  nlohmann::json j;
  j["worlds"] = m.worlds;
  j["R"] = nlohmann::json::array();
  for (const auto& [a, b] : m.r) {
    j["R"].push_back({m.worlds.at(a), m.worlds.at(b)});
  }
  j["S"] = nlohmann::json::array();
  for (const auto& [x, y, z] : m.s) {
    j["S"].push_back({m.worlds.at(x), m.worlds.at(y), m.worlds.at(z)});
  }
  j["V"] = nlohmann::json::object();
  for (const auto& [var, worlds] : m.valuation) {
    nlohmann::json names = nlohmann::json::array();
    for (std::size_t w : worlds) names.push_back(m.worlds.at(w));
    j["V"][var] = std::move(names);
  }
  return j;
}

nlohmann::json result_to_json(const ProverResult& result, const std::string& formula_text,
                              const std::string& logic_name) {
  nlohmann::json j;
  j["status"] = to_string(result.status);
  j["stages"] = result.stages;
  j["labels"] = result.labels;
  j["formula"] = formula_text;
  j["logic"] = logic_name;
  if (result.countermodel) j["countermodel"] = model_to_json(*result.countermodel);
  if (!result.reason.empty()) j["reason"] = result.reason;
  return j;
}

}  // namespace iltab
