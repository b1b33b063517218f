#ifndef EBREF_AST_HPP
#define EBREF_AST_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ebref {

/// A finite carrier for machine variables: either a bounded integer range
/// lo..hi or a named enumeration of literals.
struct SortDecl {
  std::string name;  // empty for an anonymous inline range
  bool is_range = true;
  std::int64_t lo = 0, hi = 0;
  std::vector<std::string> literals;

  std::int64_t size() const {
    return is_range ? hi - lo + 1 : static_cast<std::int64_t>(literals.size());
  }
  // i-th value of the carrier, in ascending order
  std::int64_t value_at(std::int64_t i) const { return is_range ? lo + i : i; }
  std::string render(std::int64_t v) const {
    return is_range ? std::to_string(v) : literals.at(static_cast<std::size_t>(v));
  }
};

struct Type {
  enum Kind { Bool, Int, Enum } kind = Bool;
  int sort = -1;  // sort index when kind == Enum
  bool operator==(const Type&) const = default;
};

enum class ExprKind {
  BoolLit,
  IntLit,
  EnumLit,
  Var,
  Neg,
  Add,
  Sub,
  Mul,
  Mod,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  And,
  Or,
  Not,
  Implies,
  Forall,
  Exists,
};

/// Typed expression tree over machine variables; primed references denote the
/// after-state inside event bodies.
struct Expr {
  ExprKind kind = ExprKind::BoolLit;
  std::int64_t value = 0;   // BoolLit (0/1), IntLit, EnumLit ordinal
  std::string name;         // Var name, quantifier binder, enum literal text
  bool primed = false;      // Var only
  std::int64_t lo = 0, hi = 0;  // quantifier binder range (ordinals for enum sorts)
  Type binder_type;             // quantifier binder
  std::string binder_sort_name;  // nonempty when the binder ranges over a named sort
  std::vector<Expr> args;
  Type type;
  int line = 0, col = 0;

  static Expr bool_lit(bool b) {
    Expr e;
    e.kind = ExprKind::BoolLit;
    e.value = b ? 1 : 0;
    e.type = Type{Type::Bool, -1};
    return e;
  }
};

struct VarDecl {
  std::string name;
  int sort = -1;  // index into Machine::sorts
};

enum class EventStatus { Ordinary, Anticipated, Convergent };

std::string to_string(EventStatus s);

struct EventDecl {
  std::string name;
  EventStatus status = EventStatus::Ordinary;
  std::optional<std::string> refines;
  Expr guard;  // boolean over unprimed variables; literal true when absent
  Expr body;   // before-after predicate over unprimed and primed variables
};

struct Machine {
  std::string name;
  std::vector<SortDecl> sorts;
  std::vector<VarDecl> variables;
  Expr invariant;
  bool invariant_local = true;  // free variables of the invariant all declared here
  EventDecl init;               // distinguished; body over primed variables only
  std::vector<EventDecl> events;  // excludes init
  std::optional<Expr> variant;    // integer-valued
  std::optional<std::string> refines_machine;

  int var_index(const std::string& n) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
      if (variables[i].name == n) return static_cast<int>(i);
    return -1;
  }
  const EventDecl* find_event(const std::string& n) const {
    for (const auto& e : events)
      if (e.name == n) return &e;
    return nullptr;
  }
};

/// Ordered abstract-to-concrete list of machines; each machine after the
/// first refines its predecessor.
struct RefinementChain {
  std::vector<Machine> machines;
};

std::string pretty_print(const Expr& e);
std::string pretty_print(const Machine& m);

bool structurally_equal(const Machine& a, const Machine& b);

}  // namespace ebref

#endif
