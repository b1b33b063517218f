#include "ebref/eval.hpp"

#include <sstream>

namespace ebref {
namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw EvalError("integer overflow");
  return r;
}
std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw EvalError("integer overflow");
  return r;
}
std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw EvalError("integer overflow");
  return r;
}

// Euclidean remainder: result carries the sign of the divisor.
std::int64_t euclid_mod(std::int64_t a, std::int64_t b) {
  if (b == 0) throw EvalError("mod by zero");
  std::int64_t r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) r += b;
  return r;
}

class Evaluator {
 public:
  explicit Evaluator(const Env& env) : env_(env) {}

  std::int64_t run(const Expr& e) {
    switch (e.kind) {
      case ExprKind::BoolLit:
      case ExprKind::IntLit:
      case ExprKind::EnumLit:
        return e.value;
      case ExprKind::Var: {
        if (!e.primed) {
          for (auto it = bindings_.rbegin(); it != bindings_.rend(); ++it)
            if (it->first == e.name) return it->second;
        }
        std::int64_t v;
        if (!env_.lookup(e.name, e.primed, v))
          throw EvalError("unbound variable '" + e.name + "'");
        return v;
      }
      case ExprKind::Neg:
        return checked_sub(0, run(e.args[0]));
      case ExprKind::Add:
        return checked_add(run(e.args[0]), run(e.args[1]));
      case ExprKind::Sub:
        return checked_sub(run(e.args[0]), run(e.args[1]));
      case ExprKind::Mul:
        return checked_mul(run(e.args[0]), run(e.args[1]));
      case ExprKind::Mod:
        return euclid_mod(run(e.args[0]), run(e.args[1]));
      case ExprKind::Eq:
        return run(e.args[0]) == run(e.args[1]);
      case ExprKind::Ne:
        return run(e.args[0]) != run(e.args[1]);
      case ExprKind::Lt:
        return run(e.args[0]) < run(e.args[1]);
      case ExprKind::Le:
        return run(e.args[0]) <= run(e.args[1]);
      case ExprKind::Gt:
        return run(e.args[0]) > run(e.args[1]);
      case ExprKind::Ge:
        return run(e.args[0]) >= run(e.args[1]);
      case ExprKind::And:
        return run(e.args[0]) != 0 && run(e.args[1]) != 0;
      case ExprKind::Or:
        return run(e.args[0]) != 0 || run(e.args[1]) != 0;
      case ExprKind::Not:
        return run(e.args[0]) == 0;
      case ExprKind::Implies:
        return run(e.args[0]) == 0 || run(e.args[1]) != 0;
      case ExprKind::Forall:
      case ExprKind::Exists: {
        bool universal = e.kind == ExprKind::Forall;
        for (std::int64_t v = e.lo; v <= e.hi; ++v) {
          bindings_.emplace_back(e.name, v);
          bool b = run(e.args[0]) != 0;
          bindings_.pop_back();
          if (universal && !b) return 0;
          if (!universal && b) return 1;
        }
        return universal ? 1 : 0;
      }
    }
    throw EvalError("bad expression");
  }

 private:
  const Env& env_;
  std::vector<std::pair<std::string, std::int64_t>> bindings_;
};

}  // namespace

std::int64_t eval(const Expr& e, const Env& env) {
  return Evaluator(env).run(e);
}

std::string render_valuation(const Machine& m, const Valuation& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.variables.size(); ++i) {
    if (i) os << ",";
    const SortDecl& s = m.sorts[static_cast<std::size_t>(m.variables[i].sort)];
    os << m.variables[i].name << "=" << s.render(v[i]);
  }
  return os.str();
}

}  // namespace ebref
