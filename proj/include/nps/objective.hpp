#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "nps/grammar.hpp"
#include "nps/program.hpp"
#include "nps/weight.hpp"

namespace nps {

struct ObjectiveError : std::runtime_error {
  explicit ObjectiveError(const std::string& what) : std::runtime_error(what) {}
};

// Per-symbol complexity costs; a program's complexity is the sum of the
// costs of its nodes.
struct CostTable {
  std::map<std::string, double> terminal_cost;
  std::map<std::string, double> func_cost;

  // All-ones table: complexity becomes program size.
  static CostTable unit(const Grammar& g);
};

// Recursive cost of p under t; throws ObjectiveError on a missing or
// negative entry.
Weight cost(const Program& p, const CostTable& t);

// Value of an objective function: either a single weight or a (loss,
// complexity) pair ordered lexicographically. Values of different kinds do
// not compare.
class ObjectiveValue {
 public:
  static ObjectiveValue scalar(Weight w) { return ObjectiveValue(true, w, Weight()); }
  static ObjectiveValue lex_pair(Weight l, Weight c) { return ObjectiveValue(false, l, c); }

  bool is_scalar() const { return scalar_; }
  Weight scalar_value() const {
    if (!scalar_) throw ObjectiveError("objective value is not scalar");
    return a_;
  }
  std::pair<Weight, Weight> lex_value() const {
    if (scalar_) throw ObjectiveError("objective value is not a pair");
    return {a_, b_};
  }

  friend bool operator==(const ObjectiveValue& x, const ObjectiveValue& y) {
    x.check_kind(y);
    return x.a_ == y.a_ && (x.scalar_ || x.b_ == y.b_);
  }
  friend bool operator<(const ObjectiveValue& x, const ObjectiveValue& y) {
    x.check_kind(y);
    if (x.scalar_) return x.a_ < y.a_;
    if (x.a_ != y.a_) return x.a_ < y.a_;
    return x.b_ < y.b_;
  }
  friend bool operator<=(const ObjectiveValue& x, const ObjectiveValue& y) {
    return x < y || x == y;
  }

  bool approx_equal(const ObjectiveValue& o, double tol = 1e-9) const {
    check_kind(o);
    return a_.approx_equal(o.a_, tol) && (scalar_ || b_.approx_equal(o.b_, tol));
  }

 private:
  ObjectiveValue(bool scalar, Weight a, Weight b) : scalar_(scalar), a_(a), b_(b) {}
  void check_kind(const ObjectiveValue& o) const {
    if (scalar_ != o.scalar_) throw ObjectiveError("objective values of different kinds compared");
  }
  bool scalar_;
  Weight a_;
  Weight b_;
};

std::string to_string(const ObjectiveValue& v);

// An objective maps (loss, complexity) into a totally ordered set. It must be
// monotonically nondecreasing in the complexity for each fixed loss.
struct Objective {
  std::string name;
  std::function<ObjectiveValue(Weight, Weight)> fn;
  ObjectiveValue operator()(Weight l, Weight c) const { return fn(l, c); }
};

// Minimize loss first, then complexity.
Objective lexicographic();

// Scalar objective l + lambda * c; lambda must be positive.
Objective tradeoff(double lambda);

// "lex" or "tradeoff:<lambda>".
std::optional<Objective> objective_by_name(const std::string& name);

// Samples the monotonicity contract (fixed loss, nondecreasing in
// complexity); throws ObjectiveError on a violation.
void check_monotone(const Objective& u);

}  // namespace nps
