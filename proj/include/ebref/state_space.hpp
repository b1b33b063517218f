#ifndef EBREF_STATE_SPACE_HPP
#define EBREF_STATE_SPACE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ebref/ast.hpp"
#include "ebref/eval.hpp"
#include "ebref/lts.hpp"

namespace ebref {

struct BuildLimits {
  long max_states = 200000;
  long max_transitions = 2000000;
};

struct LimitExceeded : std::runtime_error {
  long frontier_size;
  LimitExceeded(const std::string& what, long frontier)
      : std::runtime_error(what + " (frontier size " + std::to_string(frontier) +
                           ")"),
        frontier_size(frontier) {}
};

/// The full cartesian valuation space of a machine, in lexicographic order of
/// variable values (variable declaration order, values ascending).
class ValuationSpace {
 public:
  explicit ValuationSpace(const Machine& m);
  std::int64_t size() const { return size_; }
  Valuation at(std::int64_t idx) const;
  std::int64_t index_of(const Valuation& v) const;
  const Machine& machine() const { return *m_; }

 private:
  const Machine* m_;
  std::vector<std::int64_t> radix_;  // per variable: domain size
  std::vector<std::int64_t> lo_;     // per variable: first value (0 for enums)
  std::int64_t size_;
};

struct InvariantViolation {
  int state;                       // LTS state index
  std::optional<Transition> edge;  // producing edge; absent for initial states
};

struct ConsistencyReport {
  bool invariant_checked = true;  // false: invariant mentions foreign variables
  bool no_initial_state = false;
  std::vector<InvariantViolation> violations;
  bool consistent() const {
    return !no_initial_state && (!invariant_checked || violations.empty());
  }
};

struct BuiltLts {
  Lts lts;
  std::vector<Valuation> states;  // index-aligned with lts states
  ConsistencyReport consistency;
};

/// Breadth-first explicit construction. Initial states are the solutions of
/// the init body; transitions (s, e, s') exist exactly when the guard holds
/// in s and the before-after predicate holds on (s, s'). States violating the
/// invariant are retained and flagged.
BuiltLts build_lts(const Machine& m, const BuildLimits& limits = {});

bool eval_guard(const Machine& m, const EventDecl& e, const Valuation& s);
bool eval_body(const Machine& m, const EventDecl& e, const Valuation& before,
               const Valuation& after);
bool eval_init(const Machine& m, const Valuation& after);

}  // namespace ebref

#endif
