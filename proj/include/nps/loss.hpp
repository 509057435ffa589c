#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "nps/dsl.hpp"
#include "nps/value.hpp"
#include "nps/weight.hpp"

namespace nps {

struct LossError : std::runtime_error {
  explicit LossError(const std::string& what) : std::runtime_error(what) {}
};

struct Example {
  Env input;
  Value output;
};

struct DataSet {
  std::vector<Example> examples;
  std::size_t size() const { return examples.size(); }
  bool empty() const { return examples.empty(); }
};

// Per-example loss L(expected, produced); pure and deterministic.
struct PerExampleLoss {
  std::string name;
  std::function<Weight(const Value& expected, const Value& produced)> fn;
  Weight operator()(const Value& expected, const Value& produced) const {
    return fn(expected, produced);
  }
};

// 0 when equal, 1 otherwise.
Weight zero_one(const Value& o, const Value& c);
// 0 when equal, Infinity otherwise.
Weight zero_inf(const Value& o, const Value& c);
// Edit distance with substitutions, insertions, deletions, and adjacent
// transpositions (each cost 1); strings only.
Weight dl(const Value& a, const Value& b);
// 0 when equal, 1 when deleting exactly one character of the program output
// yields the data output, Infinity otherwise.
Weight one_delete(const Value& program_output, const Value& data_output);
// Hamming distance for equal-length strings, Infinity otherwise.
Weight n_substitution(const Value& program_output, const Value& data_output);
// (produced - expected)^2 over integers.
Weight squared_error(const Value& o, const Value& c);

PerExampleLoss zero_one_loss();
PerExampleLoss zero_inf_loss();
PerExampleLoss dl_loss();
PerExampleLoss one_delete_loss();
PerExampleLoss n_substitution_loss();
PerExampleLoss squared_error_loss();

// "01", "0inf", "dl", "1del", "nsub"; throws LossError on anything else.
PerExampleLoss loss_by_name(std::string_view name);

// Sum of per-example losses of p over data; examples where p is undefined
// contribute Infinity.
Weight dataset_loss(const Grammar& g, const Program& p, const DataSet& data,
                    const PerExampleLoss& L);

}  // namespace nps
