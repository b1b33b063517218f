#ifndef EBREF_EVAL_HPP
#define EBREF_EVAL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ebref/ast.hpp"

namespace ebref {

/// Values of one machine's variables, index-aligned with its declarations.
/// Integer variables hold their value, enum variables their ordinal.
using Valuation = std::vector<std::int64_t>;

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Variable environment for expression evaluation. Lookups are by name so
/// that joint abstract/concrete scopes compose.
class Env {
 public:
  virtual ~Env() = default;
  // true if found; v receives the value
  virtual bool lookup(const std::string& name, bool primed,
                      std::int64_t& v) const = 0;
};

/// Single-machine scope: `before` may be null for init bodies, `after` null
/// for guards and invariants.
class MachineEnv : public Env {
 public:
  MachineEnv(const Machine& m, const Valuation* before, const Valuation* after)
      : m_(m), before_(before), after_(after) {}
  bool lookup(const std::string& name, bool primed,
              std::int64_t& v) const override {
    int idx = m_.var_index(name);
    if (idx < 0) return false;
    const Valuation* val = primed ? after_ : before_;
    if (!val) throw EvalError("no " + std::string(primed ? "after" : "before") +
                              "-state for variable '" + name + "'");
    v = (*val)[static_cast<std::size_t>(idx)];
    return true;
  }

 private:
  const Machine& m_;
  const Valuation* before_;
  const Valuation* after_;
};

/// Joint scope for refinement obligations: abstract then concrete.
class JointEnv : public Env {
 public:
  JointEnv(const Env& a, const Env& b) : a_(a), b_(b) {}
  bool lookup(const std::string& name, bool primed,
              std::int64_t& v) const override {
    return a_.lookup(name, primed, v) || b_.lookup(name, primed, v);
  }

 private:
  const Env& a_;
  const Env& b_;
};

std::int64_t eval(const Expr& e, const Env& env);

inline bool eval_bool(const Expr& e, const Env& env) { return eval(e, env) != 0; }

std::string render_valuation(const Machine& m, const Valuation& v);

}  // namespace ebref

#endif
