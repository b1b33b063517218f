#include "ebref/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace ebref {
namespace {

enum class Tok {
  Ident,
  Int,
  LParen,
  RParen,
  LBrace,
  RBrace,
  Comma,
  Dot,
  DotDot,
  Colon,
  Assign,
  Plus,
  Minus,
  Star,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  Amp,
  Bar,
  Bang,
  Implies,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::int64_t value = 0;
  bool primed = false;  // Ident with trailing '
  int line = 1, col = 1;
};

const std::set<std::string> kKeywords = {
    "machine",  "refines",   "sorts",       "variables",  "invariant",
    "variant",  "events",    "event",       "status",     "when",
    "then",     "end",       "forall",      "exists",     "true",
    "false",    "or",        "and",         "not",        "mod",
    "ordinary", "anticipated", "convergent"};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { next(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    next();
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_, col_);
  }

  char cur() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char at(std::size_t off) const {
    return pos_ + off < text_.size() ? text_[pos_ + off] : '\0';
  }
  void advance() {
    if (cur() == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void next() {
    for (;;) {
      while (std::isspace(static_cast<unsigned char>(cur()))) advance();
      if (cur() == '-' && at(1) == '-') {
        while (cur() != '\0' && cur() != '\n') advance();
        continue;
      }
      break;
    }
    tok_.line = line_;
    tok_.col = col_;
    tok_.primed = false;
    tok_.text.clear();
    char c = cur();
    if (c == '\0') {
      tok_.kind = Tok::End;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (std::isalnum(static_cast<unsigned char>(cur())) || cur() == '_') {
        s.push_back(cur());
        advance();
      }
      tok_.kind = Tok::Ident;
      tok_.text = s;
      if (cur() == '\'') {
        advance();
        tok_.primed = true;
      }
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::int64_t v = 0;
      while (std::isdigit(static_cast<unsigned char>(cur()))) {
        v = v * 10 + (cur() - '0');
        advance();
      }
      tok_.kind = Tok::Int;
      tok_.value = v;
      return;
    }
    auto two = [&](char a, char b) { return cur() == a && at(1) == b; };
    if (two(':', '=')) { advance(); advance(); tok_.kind = Tok::Assign; return; }
    if (two('.', '.')) { advance(); advance(); tok_.kind = Tok::DotDot; return; }
    if (two('/', '=')) { advance(); advance(); tok_.kind = Tok::Ne; return; }
    if (two('<', '=')) { advance(); advance(); tok_.kind = Tok::Le; return; }
    if (two('>', '=')) { advance(); advance(); tok_.kind = Tok::Ge; return; }
    if (two('=', '>')) { advance(); advance(); tok_.kind = Tok::Implies; return; }
    advance();
    switch (c) {
      case '(': tok_.kind = Tok::LParen; return;
      case ')': tok_.kind = Tok::RParen; return;
      case '{': tok_.kind = Tok::LBrace; return;
      case '}': tok_.kind = Tok::RBrace; return;
      case ',': tok_.kind = Tok::Comma; return;
      case '.': tok_.kind = Tok::Dot; return;
      case ':': tok_.kind = Tok::Colon; return;
      case '+': tok_.kind = Tok::Plus; return;
      case '-': tok_.kind = Tok::Minus; return;
      case '*': tok_.kind = Tok::Star; return;
      case '=': tok_.kind = Tok::Eq; return;
      case '<': tok_.kind = Tok::Lt; return;
      case '>': tok_.kind = Tok::Gt; return;
      case '&': tok_.kind = Tok::Amp; return;
      case '|': tok_.kind = Tok::Bar; return;
      case '!': tok_.kind = Tok::Bang; return;
      default: fail(std::string("unexpected character '") + c + "'");
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token tok_;
};

// Scope for expression typechecking. Primed references are controlled per
// context; the invariant of a refining machine may also see the abstract
// machine's variables and sorts.
struct ExprContext {
  const Machine* own;
  const Machine* abstract = nullptr;  // invariant context only
  bool allow_primed = false;
  bool forbid_unprimed = false;  // init body
};

class Parser {
 public:
  Parser(std::string_view text, const Machine* abstract)
      : lex_(text), abstract_(abstract) {}

  Machine parse() {
    expect_kw("machine");
    m_.name = expect_ident("machine name");
    if (is_kw("refines")) {
      lex_.take();
      m_.refines_machine = expect_ident("refined machine name");
    }
    if (is_kw("sorts")) {
      lex_.take();
      while (lex_.peek().kind == Tok::Ident && !is_any_kw()) parse_sort();
    }
    expect_kw("variables");
    while (lex_.peek().kind == Tok::Ident && !is_any_kw()) parse_var();
    expect_kw("invariant");
    {
      ExprContext ctx{&m_, m_.refines_machine ? abstract_ : nullptr, false, false};
      if (m_.refines_machine && abstract_ &&
          abstract_->name != *m_.refines_machine)
        err("abstract machine context is '" + abstract_->name +
            "' but this machine refines '" + *m_.refines_machine + "'");
      m_.invariant = parse_expr(ctx);
      require_bool(m_.invariant, "invariant");
      m_.invariant_local = uses_only_own_vars(m_.invariant);
      if (!m_.invariant_local && !abstract_)
        err("invariant mentions variables not declared in this machine and no "
            "abstract machine was supplied");
    }
    if (is_kw("variant")) {
      lex_.take();
      ExprContext ctx{&m_, nullptr, false, false};
      Expr v = parse_expr(ctx);
      if (v.type.kind != Type::Int) err("variant must be integer-valued");
      m_.variant = std::move(v);
    }
    expect_kw("events");
    bool saw_init = false;
    while (is_kw("event")) {
      EventDecl e = parse_event();
      if (e.name == "init") {
        if (saw_init) err("duplicate init event");
        saw_init = true;
        m_.init = std::move(e);
      } else {
        for (const auto& other : m_.events)
          if (other.name == e.name) err("duplicate event name '" + e.name + "'");
        m_.events.push_back(std::move(e));
      }
    }
    expect_kw("end");
    if (lex_.peek().kind != Tok::End) err("trailing input after machine");
    if (!saw_init) err("missing init event");
    bool needs_variant = false;
    for (const auto& e : m_.events)
      if (e.status != EventStatus::Ordinary) needs_variant = true;
    if (needs_variant && !m_.variant)
      err("variant required: machine has anticipated or convergent events");
    if (abstract_) {
      for (const auto& e : m_.events)
        if (e.refines && !abstract_->find_event(*e.refines))
          err("event '" + e.name + "' refines unknown abstract event '" +
              *e.refines + "'");
    }
    return std::move(m_);
  }

 private:
  [[noreturn]] void err(const std::string& msg) const {
    throw ParseError(msg, lex_.peek().line, lex_.peek().col);
  }

  bool is_kw(const std::string& kw) const {
    return lex_.peek().kind == Tok::Ident && !lex_.peek().primed &&
           lex_.peek().text == kw;
  }
  bool is_any_kw() const {
    return lex_.peek().kind == Tok::Ident &&
           kKeywords.count(lex_.peek().text) > 0;
  }
  void expect_kw(const std::string& kw) {
    if (!is_kw(kw)) err("expected '" + kw + "'");
    lex_.take();
  }
  std::string expect_ident(const std::string& what) {
    if (lex_.peek().kind != Tok::Ident || lex_.peek().primed)
      err("expected " + what);
    if (kKeywords.count(lex_.peek().text)) err("expected " + what);
    return lex_.take().text;
  }
  std::int64_t expect_int_bound() {
    bool neg = false;
    if (lex_.peek().kind == Tok::Minus) {
      lex_.take();
      neg = true;
    }
    if (lex_.peek().kind != Tok::Int) err("expected integer");
    std::int64_t v = lex_.take().value;
    return neg ? -v : v;
  }

  void parse_sort() {
    SortDecl s;
    s.name = expect_ident("sort name");
    for (const auto& prev : m_.sorts)
      if (prev.name == s.name) err("duplicate sort '" + s.name + "'");
    if (lex_.peek().kind != Tok::Eq) err("expected '=' in sort declaration");
    lex_.take();
    if (lex_.peek().kind == Tok::LBrace) {
      lex_.take();
      s.is_range = false;
      for (;;) {
        std::string lit = expect_ident("enumeration literal");
        if (std::find(s.literals.begin(), s.literals.end(), lit) !=
            s.literals.end())
          err("duplicate literal '" + lit + "'");
        s.literals.push_back(lit);
        if (lex_.peek().kind == Tok::Comma) {
          lex_.take();
          continue;
        }
        break;
      }
      if (lex_.peek().kind != Tok::RBrace) err("expected '}'");
      lex_.take();
      if (s.literals.empty()) err("empty enumeration");
    } else {
      s.is_range = true;
      s.lo = expect_int_bound();
      if (lex_.peek().kind != Tok::DotDot) err("expected '..'");
      lex_.take();
      s.hi = expect_int_bound();
      if (s.lo > s.hi) err("empty integer range");
    }
    m_.sorts.push_back(std::move(s));
  }

  int find_sort(const Machine& m, const std::string& name) const {
    for (std::size_t i = 0; i < m.sorts.size(); ++i)
      if (m.sorts[i].name == name) return static_cast<int>(i);
    return -1;
  }

  void parse_var() {
    VarDecl v;
    v.name = expect_ident("variable name");
    if (m_.var_index(v.name) >= 0) err("duplicate variable '" + v.name + "'");
    if (lex_.peek().kind != Tok::Colon) err("expected ':' in variable declaration");
    lex_.take();
    if (lex_.peek().kind == Tok::Ident) {
      std::string sn = expect_ident("sort name");
      int idx = find_sort(m_, sn);
      if (idx < 0) err("unknown sort '" + sn + "'");
      v.sort = idx;
    } else {
      SortDecl anon;
      anon.is_range = true;
      anon.lo = expect_int_bound();
      if (lex_.peek().kind != Tok::DotDot) err("expected '..'");
      lex_.take();
      anon.hi = expect_int_bound();
      if (anon.lo > anon.hi) err("empty integer range");
      m_.sorts.push_back(std::move(anon));
      v.sort = static_cast<int>(m_.sorts.size()) - 1;
    }
    m_.variables.push_back(std::move(v));
  }

  EventDecl parse_event() {
    expect_kw("event");
    EventDecl e;
    e.name = expect_ident("event name");
    bool saw_status = false;
    while (is_kw("status") || is_kw("refines")) {
      if (is_kw("status")) {
        if (saw_status) err("duplicate status clause");
        saw_status = true;
        lex_.take();
        if (is_kw("ordinary"))
          e.status = EventStatus::Ordinary;
        else if (is_kw("anticipated"))
          e.status = EventStatus::Anticipated;
        else if (is_kw("convergent"))
          e.status = EventStatus::Convergent;
        else
          err("expected event status (ordinary, anticipated, convergent)");
        lex_.take();
      } else {
        if (e.refines) err("duplicate refines clause");
        lex_.take();
        e.refines = expect_ident("refined event name");
      }
    }
    if (is_kw("when")) {
      if (e.name == "init") err("init event must not have a guard");
      lex_.take();
      ExprContext ctx{&m_, nullptr, false, false};
      e.guard = parse_expr(ctx);
      require_bool(e.guard, "guard");
    } else {
      e.guard = Expr::bool_lit(true);
    }
    expect_kw("then");
    e.body = parse_body(e.name == "init");
    expect_kw("end");
    if (e.name == "init") {
      if (e.refines) err("init must not declare refines");
      if (e.status != EventStatus::Ordinary) err("init must not carry a status");
    }
    return e;
  }

  // Body is either an assignment list (desugared to a before-after predicate
  // with equality frames for unmentioned variables) or a predicate.
  Expr parse_body(bool is_init) {
    bool assign_mode = false;
    {
      Lexer probe = lex_;
      if (probe.peek().kind == Tok::Ident && !probe.peek().primed) {
        probe.take();
        if (probe.peek().kind == Tok::Assign) assign_mode = true;
      }
    }
    ExprContext ctx{&m_, nullptr, true, is_init};
    if (!assign_mode) {
      Expr body = parse_expr(ctx);
      require_bool(body, "event body");
      return body;
    }
    std::map<std::string, Expr> assigned;
    for (;;) {
      Token t = lex_.peek();
      std::string var = expect_ident("assigned variable");
      int idx = m_.var_index(var);
      if (idx < 0)
        throw ParseError("unbound variable '" + var + "'", t.line, t.col);
      if (assigned.count(var))
        throw ParseError("variable '" + var + "' assigned twice", t.line, t.col);
      if (lex_.peek().kind != Tok::Assign) err("expected ':='");
      lex_.take();
      ExprContext rhs_ctx{&m_, nullptr, false, false};
      if (is_init) rhs_ctx = ExprContext{&m_, nullptr, false, false};
      Expr rhs = parse_expr(rhs_ctx);
      Type vt = var_type(m_, idx);
      if (!(rhs.type == vt))
        throw ParseError("type mismatch in assignment to '" + var + "'", t.line,
                         t.col);
      assigned.emplace(var, std::move(rhs));
      if (lex_.peek().kind == Tok::Comma) {
        lex_.take();
        continue;
      }
      break;
    }
    // init bodies have no before-state: every variable must be assigned
    if (is_init) {
      for (const auto& v : m_.variables)
        if (!assigned.count(v.name))
          err("init must assign every variable (missing '" + v.name + "')");
      for (const auto& [var, rhs] : assigned)
        if (!uses_only_constants(rhs))
          err("init assignment to '" + var + "' must not read variables");
    }
    Expr body;
    bool first = true;
    for (const auto& v : m_.variables) {
      Expr lhs;
      lhs.kind = ExprKind::Var;
      lhs.name = v.name;
      lhs.primed = true;
      lhs.type = var_type(m_, m_.var_index(v.name));
      Expr rhs;
      auto it = assigned.find(v.name);
      if (it != assigned.end()) {
        rhs = it->second;
      } else {
        if (is_init) continue;  // unreachable, all assigned
        rhs = lhs;
        rhs.primed = false;
      }
      Expr eq;
      eq.kind = ExprKind::Eq;
      eq.type = Type{Type::Bool, -1};
      eq.args = {std::move(lhs), std::move(rhs)};
      if (first) {
        body = std::move(eq);
        first = false;
      } else {
        Expr conj;
        conj.kind = ExprKind::And;
        conj.type = Type{Type::Bool, -1};
        conj.args = {std::move(body), std::move(eq)};
        body = std::move(conj);
      }
    }
    return body;
  }

  static Type var_type(const Machine& m, int idx) {
    const SortDecl& s = m.sorts[static_cast<std::size_t>(m.variables[
        static_cast<std::size_t>(idx)].sort)];
    if (s.is_range) return Type{Type::Int, -1};
    return Type{Type::Enum, m.variables[static_cast<std::size_t>(idx)].sort};
  }

  bool uses_only_own_vars(const Expr& e,
                          std::vector<std::string> bound = {}) const {
    if (e.kind == ExprKind::Var && m_.var_index(e.name) < 0 &&
        std::find(bound.begin(), bound.end(), e.name) == bound.end())
      return false;
    if (e.kind == ExprKind::Forall || e.kind == ExprKind::Exists)
      bound.push_back(e.name);
    for (const auto& a : e.args)
      if (!uses_only_own_vars(a, bound)) return false;
    return true;
  }
  static bool uses_only_constants(const Expr& e) {
    if (e.kind == ExprKind::Var) return false;
    for (const auto& a : e.args)
      if (!uses_only_constants(a)) return false;
    return true;
  }

  void require_bool(const Expr& e, const std::string& what) const {
    if (e.type.kind != Type::Bool)
      throw ParseError(what + " must be boolean", e.line, e.col);
  }

  // --- expressions ---

  struct Binder {
    std::string name;
    Type type;
  };
  std::vector<Binder> binders_;

  Expr parse_expr(const ExprContext& ctx) { return parse_implies(ctx); }

  Expr parse_implies(const ExprContext& ctx) {
    if (is_kw("forall") || is_kw("exists")) return parse_quantifier(ctx);
    Expr lhs = parse_or(ctx);
    if (lex_.peek().kind == Tok::Implies) {
      Token t = lex_.take();
      require_bool(lhs, "left operand of '=>'");
      Expr rhs = parse_implies(ctx);  // right-associative
      require_bool(rhs, "right operand of '=>'");
      return mk_bin(ExprKind::Implies, std::move(lhs), std::move(rhs), t,
                    Type{Type::Bool, -1});
    }
    return lhs;
  }

  Expr parse_quantifier(const ExprContext& ctx) {
    Token t = lex_.take();  // forall/exists
    bool universal = t.text == "forall";
    Expr q;
    q.kind = universal ? ExprKind::Forall : ExprKind::Exists;
    q.line = t.line;
    q.col = t.col;
    q.name = expect_ident("quantifier binder");
    if (lex_.peek().kind != Tok::Colon) err("expected ':' after binder");
    lex_.take();
    if (lex_.peek().kind == Tok::Ident) {
      std::string sn = expect_ident("sort name");
      int idx = find_sort(m_, sn);
      const Machine* owner = &m_;
      if (idx < 0 && ctx.abstract) {
        idx = find_sort(*ctx.abstract, sn);
        owner = ctx.abstract;
      }
      if (idx < 0) err("unknown sort '" + sn + "'");
      const SortDecl& s = owner->sorts[static_cast<std::size_t>(idx)];
      q.binder_sort_name = sn;
      if (s.is_range) {
        q.lo = s.lo;
        q.hi = s.hi;
        q.binder_type = Type{Type::Int, -1};
      } else {
        q.lo = 0;
        q.hi = s.size() - 1;
        q.binder_type = Type{Type::Enum, idx};
      }
    } else {
      q.lo = expect_int_bound();
      if (lex_.peek().kind != Tok::DotDot) err("expected '..'");
      lex_.take();
      q.hi = expect_int_bound();
      if (q.lo > q.hi) err("empty quantifier range");
      q.binder_type = Type{Type::Int, -1};
    }
    if (lex_.peek().kind != Tok::Dot) err("expected '.' after quantifier domain");
    lex_.take();
    binders_.push_back({q.name, q.binder_type});
    Expr body = parse_implies(ctx);
    binders_.pop_back();
    require_bool(body, "quantifier body");
    q.args.push_back(std::move(body));
    q.type = Type{Type::Bool, -1};
    return q;
  }

  Expr parse_or(const ExprContext& ctx) {
    Expr lhs = parse_and(ctx);
    while (lex_.peek().kind == Tok::Bar || is_kw("or")) {
      Token t = lex_.take();
      require_bool(lhs, "operand of 'or'");
      Expr rhs = parse_and(ctx);
      require_bool(rhs, "operand of 'or'");
      lhs = mk_bin(ExprKind::Or, std::move(lhs), std::move(rhs), t,
                   Type{Type::Bool, -1});
    }
    return lhs;
  }

  Expr parse_and(const ExprContext& ctx) {
    Expr lhs = parse_not(ctx);
    while (lex_.peek().kind == Tok::Amp || is_kw("and")) {
      Token t = lex_.take();
      require_bool(lhs, "operand of 'and'");
      Expr rhs = parse_not(ctx);
      require_bool(rhs, "operand of 'and'");
      lhs = mk_bin(ExprKind::And, std::move(lhs), std::move(rhs), t,
                   Type{Type::Bool, -1});
    }
    return lhs;
  }

  Expr parse_not(const ExprContext& ctx) {
    if (lex_.peek().kind == Tok::Bang || is_kw("not")) {
      Token t = lex_.take();
      Expr arg = parse_not(ctx);
      require_bool(arg, "operand of 'not'");
      Expr e;
      e.kind = ExprKind::Not;
      e.line = t.line;
      e.col = t.col;
      e.type = Type{Type::Bool, -1};
      e.args.push_back(std::move(arg));
      return e;
    }
    return parse_cmp(ctx);
  }

  Expr parse_cmp(const ExprContext& ctx) {
    Expr lhs = parse_add(ctx);
    Tok k = lex_.peek().kind;
    if (k != Tok::Eq && k != Tok::Ne && k != Tok::Lt && k != Tok::Le &&
        k != Tok::Gt && k != Tok::Ge)
      return lhs;
    Token t = lex_.take();
    Expr rhs = parse_add(ctx);
    ExprKind kind;
    switch (k) {
      case Tok::Eq: kind = ExprKind::Eq; break;
      case Tok::Ne: kind = ExprKind::Ne; break;
      case Tok::Lt: kind = ExprKind::Lt; break;
      case Tok::Le: kind = ExprKind::Le; break;
      case Tok::Gt: kind = ExprKind::Gt; break;
      default: kind = ExprKind::Ge; break;
    }
    if (kind == ExprKind::Eq || kind == ExprKind::Ne) {
      if (!(lhs.type == rhs.type) || lhs.type.kind == Type::Bool)
        throw ParseError("type mismatch in comparison", t.line, t.col);
    } else {
      if (lhs.type.kind != Type::Int || rhs.type.kind != Type::Int)
        throw ParseError("ordering comparison requires integers", t.line, t.col);
    }
    return mk_bin(kind, std::move(lhs), std::move(rhs), t, Type{Type::Bool, -1});
  }

  Expr parse_add(const ExprContext& ctx) {
    Expr lhs = parse_mul(ctx);
    while (lex_.peek().kind == Tok::Plus || lex_.peek().kind == Tok::Minus) {
      Token t = lex_.take();
      Expr rhs = parse_mul(ctx);
      require_int(lhs, t);
      require_int(rhs, t);
      lhs = mk_bin(t.kind == Tok::Plus ? ExprKind::Add : ExprKind::Sub,
                   std::move(lhs), std::move(rhs), t, Type{Type::Int, -1});
    }
    return lhs;
  }

  Expr parse_mul(const ExprContext& ctx) {
    Expr lhs = parse_unary(ctx);
    while (lex_.peek().kind == Tok::Star || is_kw("mod")) {
      Token t = lex_.take();
      Expr rhs = parse_unary(ctx);
      require_int(lhs, t);
      require_int(rhs, t);
      lhs = mk_bin(t.kind == Tok::Star ? ExprKind::Mul : ExprKind::Mod,
                   std::move(lhs), std::move(rhs), t, Type{Type::Int, -1});
    }
    return lhs;
  }

  Expr parse_unary(const ExprContext& ctx) {
    if (lex_.peek().kind == Tok::Minus) {
      Token t = lex_.take();
      Expr arg = parse_unary(ctx);
      require_int(arg, t);
      Expr e;
      e.kind = ExprKind::Neg;
      e.line = t.line;
      e.col = t.col;
      e.type = Type{Type::Int, -1};
      e.args.push_back(std::move(arg));
      return e;
    }
    return parse_primary(ctx);
  }

  Expr parse_primary(const ExprContext& ctx) {
    const Token& t = lex_.peek();
    if (t.kind == Tok::LParen) {
      lex_.take();
      Expr e = parse_implies(ctx);
      if (lex_.peek().kind != Tok::RParen) err("expected ')'");
      lex_.take();
      return e;
    }
    if (t.kind == Tok::Int) {
      Token tok = lex_.take();
      Expr e;
      e.kind = ExprKind::IntLit;
      e.value = tok.value;
      e.type = Type{Type::Int, -1};
      e.line = tok.line;
      e.col = tok.col;
      return e;
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "true" || t.text == "false") {
        Token tok = lex_.take();
        Expr e = Expr::bool_lit(tok.text == "true");
        e.line = tok.line;
        e.col = tok.col;
        return e;
      }
      if (kKeywords.count(t.text) && t.text != "mod")
        err("unexpected keyword '" + t.text + "'");
      Token tok = lex_.take();
      return resolve_name(tok, ctx);
    }
    err("expected expression");
  }

  Expr resolve_name(const Token& tok, const ExprContext& ctx) {
    Expr e;
    e.line = tok.line;
    e.col = tok.col;
    // quantifier binders shadow variables
    if (!tok.primed) {
      for (auto it = binders_.rbegin(); it != binders_.rend(); ++it) {
        if (it->name == tok.text) {
          e.kind = ExprKind::Var;
          e.name = tok.text;
          e.type = it->type;
          return e;
        }
      }
    }
    auto as_var = [&](const Machine& m) -> bool {
      int idx = m.var_index(tok.text);
      if (idx < 0) return false;
      e.kind = ExprKind::Var;
      e.name = tok.text;
      e.primed = tok.primed;
      e.type = var_type(m, idx);
      return true;
    };
    bool found = as_var(m_);
    if (!found && ctx.abstract) found = as_var(*ctx.abstract);
    if (found) {
      if (e.primed && !ctx.allow_primed)
        throw ParseError("primed variable in guard", tok.line, tok.col);
      if (!e.primed && ctx.forbid_unprimed)
        throw ParseError("init body must reference only primed variables",
                         tok.line, tok.col);
      return e;
    }
    if (tok.primed)
      throw ParseError("unbound variable '" + tok.text + "'", tok.line, tok.col);
    // enumeration literal
    auto as_lit = [&](const Machine& m) -> bool {
      for (std::size_t si = 0; si < m.sorts.size(); ++si) {
        const SortDecl& s = m.sorts[si];
        if (s.is_range) continue;
        for (std::size_t li = 0; li < s.literals.size(); ++li) {
          if (s.literals[li] == tok.text) {
            e.kind = ExprKind::EnumLit;
            e.name = tok.text;
            e.value = static_cast<std::int64_t>(li);
            e.type = Type{Type::Enum, static_cast<int>(si)};
            return true;
          }
        }
      }
      return false;
    };
    if (as_lit(m_)) return e;
    if (ctx.abstract && as_lit(*ctx.abstract)) return e;
    throw ParseError("unbound variable '" + tok.text + "'", tok.line, tok.col);
  }

  void require_int(const Expr& e, const Token& t) const {
    if (e.type.kind != Type::Int)
      throw ParseError("arithmetic requires integer operands", t.line, t.col);
  }

  static Expr mk_bin(ExprKind k, Expr lhs, Expr rhs, const Token& t, Type type) {
    Expr e;
    e.kind = k;
    e.line = t.line;
    e.col = t.col;
    e.type = type;
    e.args = {std::move(lhs), std::move(rhs)};
    return e;
  }

  Lexer lex_;
  const Machine* abstract_;
  Machine m_;
};

}  // namespace

std::string to_string(EventStatus s) {
  switch (s) {
    case EventStatus::Ordinary: return "ordinary";
    case EventStatus::Anticipated: return "anticipated";
    case EventStatus::Convergent: return "convergent";
  }
  return "?";
}

Machine parse_machine(std::string_view text, const Machine* abstract) {
  return Parser(text, abstract).parse();
}

RefinementChain parse_chain(
    const std::vector<std::pair<std::string, std::string>>& named_texts) {
  if (named_texts.empty())
    throw ParseError("empty chain manifest", 1, 1);
  RefinementChain chain;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < named_texts.size(); ++i) {
    const Machine* abstract = i == 0 ? nullptr : &chain.machines.back();
    Machine m;
    try {
      m = parse_machine(named_texts[i].second, abstract);
    } catch (const ParseError& pe) {
      throw ParseError(named_texts[i].first + ": " + pe.what(), pe.line, pe.col);
    }
    if (!seen.insert(m.name).second)
      throw ParseError("duplicate machine '" + m.name + "' in chain", 1, 1);
    if (i == 0) {
      if (m.refines_machine)
        throw ParseError("first machine '" + m.name +
                             "' must not declare refines",
                         1, 1);
    } else {
      const std::string& prev = chain.machines.back().name;
      if (!m.refines_machine)
        throw ParseError("machine '" + m.name + "' does not refine '" + prev +
                             "'",
                         1, 1);
      if (*m.refines_machine != prev)
        throw ParseError("broken link: machine '" + m.name + "' refines '" +
                             *m.refines_machine + "' but follows '" + prev + "'",
                         1, 1);
    }
    chain.machines.push_back(std::move(m));
  }
  return chain;
}

}  // namespace ebref
