#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "iltab/errors.hpp"
#include "iltab/formula.hpp"
#include "iltab/horn.hpp"
#include "iltab/json_io.hpp"
#include "iltab/semantics.hpp"
#include "iltab/tableau.hpp"

namespace {

constexpr int kUsageError = 64;

std::vector<std::string> split_on_semicolons(const std::string& text) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == ';') {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  parts.push_back(current);
  return parts;
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tableau prover and satisfiability checker for interpretability logics"};

  std::string prove_text;
  std::string sat_text;
  std::string logic = "il";
  std::string frames_path;
  std::string output = "text";
  std::string out_path;
  std::size_t max_stages = 2000;
  std::size_t max_labels = 64;
  std::uint64_t seed = 0;
  bool dump_tableau = false;

  CLI::Option* prove_opt =
      app.add_option("--prove", prove_text, "Prove a formula (tableau for its negation)");
  CLI::Option* sat_opt = app.add_option(
      "--sat", sat_text, "Check joint satisfiability of ';'-separated formulas");
  prove_opt->excludes(sat_opt);
  sat_opt->excludes(prove_opt);

  CLI::Option* logic_opt =
      app.add_option("--logic", logic, "Built-in frame condition: il, ilm or ilp");
  CLI::Option* frames_opt =
      app.add_option("--frames", frames_path, "File of Horn frame-condition clauses");
  logic_opt->excludes(frames_opt);
  frames_opt->excludes(logic_opt);

  app.add_option("--max-stages", max_stages, "Stop after this many rule applications")
      ->capture_default_str();
  app.add_option("--max-labels", max_labels, "Stop when a branch reaches this many labels")
      ->capture_default_str();
  app.add_option("--output", output, "Output format")
      ->check(CLI::IsMember({"text", "dot", "json"}))
      ->capture_default_str();
  app.add_flag("--dump-tableau", dump_tableau, "Include the tableau tree in text/json output");
  app.add_option("--seed", seed, "Seed for reproducibility notes; the procedure is deterministic");
  app.add_option("--out", out_path, "Write the output to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  const bool prove_mode = prove_opt->count() > 0;
  if (!prove_mode && sat_opt->count() == 0) {
    std::cerr << "error: exactly one of --prove or --sat is required\n";
    return kUsageError;
  }

  iltab::FrameCondition condition;
  std::vector<iltab::Formula> gamma;
  std::string formula_text;
  try {
    if (frames_opt->count() > 0) {
      std::ifstream in(frames_path);
      if (!in) {
        std::cerr << "error: cannot read " << frames_path << "\n";
        return kUsageError;
      }
      std::ostringstream buffer;
      buffer << in.rdbuf();
      condition = iltab::parse_horn(buffer.str(), frames_path);
    } else {
      condition = iltab::preset(logic);
    }

    if (prove_mode) {
      formula_text = prove_text;
      gamma.push_back(iltab::Formula::neg(iltab::parse_formula(prove_text)));
    } else {
      formula_text = sat_text;
      for (const std::string& part : split_on_semicolons(sat_text)) {
        if (blank(part)) {
          std::cerr << "error: empty formula in --sat list\n";
          return kUsageError;
        }
        gamma.push_back(iltab::parse_formula(part));
      }
    }
  } catch (const iltab::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }

  iltab::Bounds bounds;
  bounds.max_stages = max_stages;
  bounds.max_labels_per_branch = max_labels;
  const iltab::ProverResult result = iltab::run(gamma, condition, bounds);

  std::ostringstream body;
  if (output == "json") {
    nlohmann::json j = iltab::result_to_json(result, formula_text, condition.name());
    if (dump_tableau) j["tableau"] = result.tableau.render_text();
    body << j.dump(2) << "\n";
  } else if (output == "dot") {
    body << result.tableau.render_dot();
  } else {
    body << "status: " << iltab::to_string(result.status) << "\n";
    body << "stages: " << result.stages << "\n";
    body << "labels: " << result.labels << "\n";
    if (!result.reason.empty()) body << "reason: " << result.reason << "\n";
    if (result.countermodel) {
      body << "countermodel:\n" << iltab::write_model(*result.countermodel);
    }
    if (dump_tableau) {
      body << "tableau:\n" << result.tableau.render_text();
    }
  }

  if (out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return kUsageError;
    }
    out << body.str();
  }

  switch (result.status) {
    case iltab::Status::Closed:
      return prove_mode ? 0 : 1;
    case iltab::Status::Open:
      return prove_mode ? 1 : 0;
    case iltab::Status::Exhausted:
      return 2;
    case iltab::Status::Unsupported:
      return 3;
  }
  return kUsageError;
}
