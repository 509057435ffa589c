#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nps/cfta.hpp"
#include "nps/dsl.hpp"
#include "nps/loss.hpp"
#include "nps/objective.hpp"

namespace nps {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// One synthesis problem as configured on disk (JSON object; every field
// optional unless noted). Paths are resolved relative to the config file.
struct ProblemConfig {
  std::string dsl = "string";  // "toy" | "string"
  std::vector<std::string> constants;
  std::vector<std::int64_t> ks = {1, 2, 3, -1, -2, -3};
  std::vector<std::int64_t> const_pos_ks = {0, 1, 2, 3, -1};
  std::vector<std::string> tokens;  // empty: all shipped token classes
  int height = 3;
  int len_slack = 1;  // 0 or 1
  std::string loss = "0inf";
  std::string complexity = "size";  // "size" or a cost-table file path
  std::string objective = "lex";
  std::optional<double> bound;  // loss bound b; +inf allowed (JSON "inf")
  std::vector<std::size_t> trusted_indices;
  std::string dataset;      // dataset path
  double timeout_sec = 600;  // per-problem budget under bench
};

// Parse/validate a config document. origin_dir, when nonempty, is prepended
// to relative file paths (dataset, cost table).
ProblemConfig parse_config(const std::string& json_text, const std::string& origin_dir = "");
ProblemConfig load_config(const std::string& path);

// JSON dataset {"examples":[{"input":{"x":...},"output":...}]}; values typed
// by the dsl choice: integers for "toy" (numbers or numeric strings),
// strings for "string". Errors carry the offending row index.
DataSet load_dataset(const std::string& path, const std::string& dsl);
std::string dataset_to_json(const DataSet& data, const std::string& dsl);
void save_dataset(const DataSet& data, const std::string& path, const std::string& dsl);

// Cost table file: one "name cost" line per symbol or function; blank lines
// and lines starting with # are skipped. Names are classified against the
// grammar.
CostTable load_cost_table(const std::string& path, const Grammar& g);

// A config materialized into engine objects. The grammar is heap-allocated
// so automata can keep pointing at it while the Problem moves.
struct Problem {
  std::unique_ptr<Grammar> grammar;
  PerExampleLoss loss;
  CostTable table;
  Objective objective;
  BuildOptions build;
};

Problem make_problem(const ProblemConfig& c);

}  // namespace nps
