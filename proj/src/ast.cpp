#include "ebref/ast.hpp"

#include <sstream>

namespace ebref {
namespace {

const char* op_text(ExprKind k) {
  switch (k) {
    case ExprKind::Add: return "+";
    case ExprKind::Sub: return "-";
    case ExprKind::Mul: return "*";
    case ExprKind::Mod: return "mod";
    case ExprKind::Eq: return "=";
    case ExprKind::Ne: return "/=";
    case ExprKind::Lt: return "<";
    case ExprKind::Le: return "<=";
    case ExprKind::Gt: return ">";
    case ExprKind::Ge: return ">=";
    case ExprKind::And: return "&";
    case ExprKind::Or: return "or";
    case ExprKind::Implies: return "=>";
    default: return "?";
  }
}

void print_expr(std::ostream& os, const Expr& e) {
  switch (e.kind) {
    case ExprKind::BoolLit:
      os << (e.value ? "true" : "false");
      return;
    case ExprKind::IntLit:
      os << e.value;
      return;
    case ExprKind::EnumLit:
      os << e.name;
      return;
    case ExprKind::Var:
      os << e.name;
      if (e.primed) os << "'";
      return;
    case ExprKind::Neg:
      os << "(-";
      print_expr(os, e.args[0]);
      os << ")";
      return;
    case ExprKind::Not:
      os << "(!";
      print_expr(os, e.args[0]);
      os << ")";
      return;
    case ExprKind::Forall:
    case ExprKind::Exists:
      os << "(" << (e.kind == ExprKind::Forall ? "forall " : "exists ")
         << e.name << " : ";
      if (!e.binder_sort_name.empty())
        os << e.binder_sort_name;
      else
        os << e.lo << ".." << e.hi;
      os << " . ";
      print_expr(os, e.args[0]);
      os << ")";
      return;
    default:
      os << "(";
      print_expr(os, e.args[0]);
      os << " " << op_text(e.kind) << " ";
      print_expr(os, e.args[1]);
      os << ")";
      return;
  }
}

void print_event(std::ostream& os, const EventDecl& e) {
  os << "  event " << e.name << "\n";
  if (e.status != EventStatus::Ordinary)
    os << "  status " << to_string(e.status) << "\n";
  if (e.refines) os << "  refines " << *e.refines << "\n";
  if (!(e.guard.kind == ExprKind::BoolLit && e.guard.value == 1)) {
    os << "  when\n    ";
    print_expr(os, e.guard);
    os << "\n";
  }
  os << "  then\n    ";
  print_expr(os, e.body);
  os << "\n  end\n";
}

bool expr_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.value != b.value || a.name != b.name ||
      a.primed != b.primed || a.lo != b.lo || a.hi != b.hi ||
      a.binder_sort_name != b.binder_sort_name ||
      a.args.size() != b.args.size())
    return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!expr_equal(a.args[i], b.args[i])) return false;
  return true;
}

bool event_equal(const EventDecl& a, const EventDecl& b) {
  return a.name == b.name && a.status == b.status && a.refines == b.refines &&
         expr_equal(a.guard, b.guard) && expr_equal(a.body, b.body);
}

}  // namespace

std::string pretty_print(const Expr& e) {
  std::ostringstream os;
  print_expr(os, e);
  return os.str();
}

std::string pretty_print(const Machine& m) {
  std::ostringstream os;
  os << "machine " << m.name << "\n";
  if (m.refines_machine) os << "refines " << *m.refines_machine << "\n";
  bool have_named = false;
  for (const auto& s : m.sorts)
    if (!s.name.empty()) have_named = true;
  if (have_named) {
    os << "sorts\n";
    for (const auto& s : m.sorts) {
      if (s.name.empty()) continue;
      os << "  " << s.name << " = ";
      if (s.is_range) {
        os << s.lo << ".." << s.hi;
      } else {
        os << "{ ";
        for (std::size_t i = 0; i < s.literals.size(); ++i)
          os << (i ? ", " : "") << s.literals[i];
        os << " }";
      }
      os << "\n";
    }
  }
  os << "variables\n";
  for (const auto& v : m.variables) {
    const SortDecl& s = m.sorts[static_cast<std::size_t>(v.sort)];
    os << "  " << v.name << " : ";
    if (!s.name.empty())
      os << s.name;
    else
      os << s.lo << ".." << s.hi;
    os << "\n";
  }
  os << "invariant\n  ";
  print_expr(os, m.invariant);
  os << "\n";
  if (m.variant) {
    os << "variant\n  ";
    print_expr(os, *m.variant);
    os << "\n";
  }
  os << "events\n";
  print_event(os, m.init);
  for (const auto& e : m.events) print_event(os, e);
  os << "end\n";
  return os.str();
}

bool structurally_equal(const Machine& a, const Machine& b) {
  if (a.name != b.name || a.refines_machine != b.refines_machine) return false;
  if (a.sorts.size() != b.sorts.size() ||
      a.variables.size() != b.variables.size() ||
      a.events.size() != b.events.size())
    return false;
  for (std::size_t i = 0; i < a.sorts.size(); ++i) {
    const auto& sa = a.sorts[i];
    const auto& sb = b.sorts[i];
    if (sa.name != sb.name || sa.is_range != sb.is_range || sa.lo != sb.lo ||
        sa.hi != sb.hi || sa.literals != sb.literals)
      return false;
  }
  for (std::size_t i = 0; i < a.variables.size(); ++i)
    if (a.variables[i].name != b.variables[i].name ||
        a.variables[i].sort != b.variables[i].sort)
      return false;
  if (!expr_equal(a.invariant, b.invariant)) return false;
  if (a.variant.has_value() != b.variant.has_value()) return false;
  if (a.variant && !expr_equal(*a.variant, *b.variant)) return false;
  if (!event_equal(a.init, b.init)) return false;
  for (std::size_t i = 0; i < a.events.size(); ++i)
    if (!event_equal(a.events[i], b.events[i])) return false;
  return true;
}

}  // namespace ebref
