#pragma once

// Untyped lambda terms used as logical forms.
//
// Terms are immutable handles over shared nodes, so copying a Term is cheap
// and subterms are shared freely between derivations.  Connectives get their
// own node kinds rather than being encoded as constant applications; code
// generation pattern-matches on them directly.

#include <cctype>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "nl2pbt/error.hpp"

namespace nl2pbt {

enum class ConstKind { Symbol, Number, String };

class Term;

namespace detail {
struct TermNode;
}

struct Var {
  std::string name;
};

struct Const {
  std::string name;
  ConstKind kind = ConstKind::Symbol;
};

struct Lam;
struct App;
struct And;
struct Or;
struct Not;
struct Eq;

class Term {
 public:
  static Term var(std::string name);
  static Term constant(std::string name);
  static Term number(std::string spelling);
  static Term string(std::string content);
  static Term lam(std::string param, Term body);
  static Term app(Term fn, Term arg);
  /// Curried application: app(f, {a, b}) is App(App(f, a), b).
  static Term app(Term fn, std::initializer_list<Term> args);
  static Term conj(Term lhs, Term rhs);
  static Term disj(Term lhs, Term rhs);
  static Term negation(Term operand);
  static Term equality(Term lhs, Term rhs);

  template <typename T>
  const T* get_if() const;

  template <typename Visitor>
  decltype(auto) visit(Visitor&& v) const;

  bool is_var() const { return get_if<Var>() != nullptr; }
  bool is_const() const { return get_if<Const>() != nullptr; }
  bool is_lam() const { return get_if<Lam>() != nullptr; }
  bool is_app() const { return get_if<App>() != nullptr; }

  /// True when both handles point at the same node.
  bool same_node(const Term& other) const { return node_ == other.node_; }

 private:
  explicit Term(std::shared_ptr<const detail::TermNode> node) : node_(std::move(node)) {}

  std::shared_ptr<const detail::TermNode> node_;
};

struct Lam {
  std::string param;
  Term body;
};

struct App {
  Term fn;
  Term arg;
};

struct And {
  Term lhs;
  Term rhs;
};

struct Or {
  Term lhs;
  Term rhs;
};

struct Not {
  Term operand;
};

struct Eq {
  Term lhs;
  Term rhs;
};

namespace detail {

struct TermNode {
  std::variant<Var, Const, Lam, App, And, Or, Not, Eq> value;
};

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

}  // namespace detail

template <typename T>
const T* Term::get_if() const {
  return std::get_if<T>(&node_->value);
}

template <typename Visitor>
decltype(auto) Term::visit(Visitor&& v) const {
  return std::visit(std::forward<Visitor>(v), node_->value);
}

inline Term Term::var(std::string name) {
  return Term(std::make_shared<const detail::TermNode>(detail::TermNode{Var{std::move(name)}}));
}
inline Term Term::constant(std::string name) {
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{Const{std::move(name), ConstKind::Symbol}}));
}
inline Term Term::number(std::string spelling) {
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{Const{std::move(spelling), ConstKind::Number}}));
}
inline Term Term::string(std::string content) {
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{Const{std::move(content), ConstKind::String}}));
}
inline Term Term::lam(std::string param, Term body) {
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{Lam{std::move(param), std::move(body)}}));
}
inline Term Term::app(Term fn, Term arg) {
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{App{std::move(fn), std::move(arg)}}));
}
inline Term Term::app(Term fn, std::initializer_list<Term> args) {
  for (const auto& a : args) fn = app(std::move(fn), a);
  return fn;
}
inline Term Term::conj(Term lhs, Term rhs) {
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{And{std::move(lhs), std::move(rhs)}}));
}
inline Term Term::disj(Term lhs, Term rhs) {
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{Or{std::move(lhs), std::move(rhs)}}));
}
inline Term Term::negation(Term operand) {
  return Term(std::make_shared<const detail::TermNode>(detail::TermNode{Not{std::move(operand)}}));
}
inline Term Term::equality(Term lhs, Term rhs) {
  return Term(std::make_shared<const detail::TermNode>(
      detail::TermNode{Eq{std::move(lhs), std::move(rhs)}}));
}

// ---------------------------------------------------------------------------
// Structural queries

/// Exact structural equality: names of bound variables must agree too.
inline bool structurally_equal(const Term& a, const Term& b) {
  using detail::overloaded;
  if (a.same_node(b)) return true;
  return a.visit(overloaded{
      [&](const Var& x) {
        auto y = b.get_if<Var>();
        return y && x.name == y->name;
      },
      [&](const Const& x) {
        auto y = b.get_if<Const>();
        return y && x.kind == y->kind && x.name == y->name;
      },
      [&](const Lam& x) {
        auto y = b.get_if<Lam>();
        return y && x.param == y->param && structurally_equal(x.body, y->body);
      },
      [&](const App& x) {
        auto y = b.get_if<App>();
        return y && structurally_equal(x.fn, y->fn) && structurally_equal(x.arg, y->arg);
      },
      [&](const And& x) {
        auto y = b.get_if<And>();
        return y && structurally_equal(x.lhs, y->lhs) && structurally_equal(x.rhs, y->rhs);
      },
      [&](const Or& x) {
        auto y = b.get_if<Or>();
        return y && structurally_equal(x.lhs, y->lhs) && structurally_equal(x.rhs, y->rhs);
      },
      [&](const Not& x) {
        auto y = b.get_if<Not>();
        return y && structurally_equal(x.operand, y->operand);
      },
      [&](const Eq& x) {
        auto y = b.get_if<Eq>();
        return y && structurally_equal(x.lhs, y->lhs) && structurally_equal(x.rhs, y->rhs);
      },
  });
}

namespace detail {

inline void collect_free(const Term& t, std::vector<std::string>& bound,
                         std::set<std::string>& out) {
  t.visit(overloaded{
      [&](const Var& x) {
        for (const auto& b : bound)
          if (b == x.name) return;
        out.insert(x.name);
      },
      [&](const Const&) {},
      [&](const Lam& x) {
        bound.push_back(x.param);
        collect_free(x.body, bound, out);
        bound.pop_back();
      },
      [&](const App& x) {
        collect_free(x.fn, bound, out);
        collect_free(x.arg, bound, out);
      },
      [&](const And& x) {
        collect_free(x.lhs, bound, out);
        collect_free(x.rhs, bound, out);
      },
      [&](const Or& x) {
        collect_free(x.lhs, bound, out);
        collect_free(x.rhs, bound, out);
      },
      [&](const Not& x) { collect_free(x.operand, bound, out); },
      [&](const Eq& x) {
        collect_free(x.lhs, bound, out);
        collect_free(x.rhs, bound, out);
      },
  });
}

inline bool occurs_free(const Term& t, const std::string& name) {
  return t.visit(overloaded{
      [&](const Var& x) { return x.name == name; },
      [&](const Const&) { return false; },
      [&](const Lam& x) { return x.param != name && occurs_free(x.body, name); },
      [&](const App& x) { return occurs_free(x.fn, name) || occurs_free(x.arg, name); },
      [&](const And& x) { return occurs_free(x.lhs, name) || occurs_free(x.rhs, name); },
      [&](const Or& x) { return occurs_free(x.lhs, name) || occurs_free(x.rhs, name); },
      [&](const Not& x) { return occurs_free(x.operand, name); },
      [&](const Eq& x) { return occurs_free(x.lhs, name) || occurs_free(x.rhs, name); },
  });
}

}  // namespace detail

inline std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  detail::collect_free(t, bound, out);
  return out;
}

/// Symbolic constants (not numerals or strings) occurring anywhere in t.
inline std::set<std::string> constant_symbols(const Term& t) {
  using detail::overloaded;
  std::set<std::string> out;
  auto walk = [&](auto&& self, const Term& u) -> void {
    u.visit(overloaded{
        [&](const Var&) {},
        [&](const Const& c) {
          if (c.kind == ConstKind::Symbol) out.insert(c.name);
        },
        [&](const Lam& x) { self(self, x.body); },
        [&](const App& x) {
          self(self, x.fn);
          self(self, x.arg);
        },
        [&](const And& x) {
          self(self, x.lhs);
          self(self, x.rhs);
        },
        [&](const Or& x) {
          self(self, x.lhs);
          self(self, x.rhs);
        },
        [&](const Not& x) { self(self, x.operand); },
        [&](const Eq& x) {
          self(self, x.lhs);
          self(self, x.rhs);
        },
    });
  };
  walk(walk, t);
  return out;
}

inline std::size_t term_size(const Term& t) {
  using detail::overloaded;
  return t.visit(overloaded{
      [](const Var&) -> std::size_t { return 1; },
      [](const Const&) -> std::size_t { return 1; },
      [](const Lam& x) { return 1 + term_size(x.body); },
      [](const App& x) { return 1 + term_size(x.fn) + term_size(x.arg); },
      [](const And& x) { return 1 + term_size(x.lhs) + term_size(x.rhs); },
      [](const Or& x) { return 1 + term_size(x.lhs) + term_size(x.rhs); },
      [](const Not& x) { return 1 + term_size(x.operand); },
      [](const Eq& x) { return 1 + term_size(x.lhs) + term_size(x.rhs); },
  });
}

// ---------------------------------------------------------------------------
// Substitution and reduction

/// Least `stem<k>` (k = 1, 2, ...) different from `base` and not in `avoid`,
/// where stem is `base` with trailing digits removed.
inline std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "v";
  for (std::size_t k = 1;; ++k) {
    std::string candidate = stem + std::to_string(k);
    if (candidate != base && !avoid.count(candidate)) return candidate;
  }
}

/// Capture-avoiding substitution of r for the free occurrences of v in t.
inline Term substitute(const Term& t, const std::string& v, const Term& r) {
  using detail::overloaded;
  return t.visit(overloaded{
      [&](const Var& x) { return x.name == v ? r : t; },
      [&](const Const&) { return t; },
      [&](const Lam& x) {
        if (x.param == v || !detail::occurs_free(x.body, v)) return t;
        if (detail::occurs_free(r, x.param)) {
          std::set<std::string> avoid = free_vars(x.body);
          avoid.merge(free_vars(r));
          avoid.insert(v);
          std::string renamed = fresh_name(x.param, avoid);
          Term body = substitute(x.body, x.param, Term::var(renamed));
          return Term::lam(renamed, substitute(body, v, r));
        }
        return Term::lam(x.param, substitute(x.body, v, r));
      },
      [&](const App& x) { return Term::app(substitute(x.fn, v, r), substitute(x.arg, v, r)); },
      [&](const And& x) { return Term::conj(substitute(x.lhs, v, r), substitute(x.rhs, v, r)); },
      [&](const Or& x) { return Term::disj(substitute(x.lhs, v, r), substitute(x.rhs, v, r)); },
      [&](const Not& x) { return Term::negation(substitute(x.operand, v, r)); },
      [&](const Eq& x) {
        return Term::equality(substitute(x.lhs, v, r), substitute(x.rhs, v, r));
      },
  });
}

inline constexpr std::size_t kDefaultBetaFuel = 10000;

namespace detail {

class Reducer {
 public:
  explicit Reducer(std::size_t fuel) : fuel_(fuel), budget_(fuel) {}

  Term normal_form(const Term& t) {
    return t.visit(overloaded{
        [&](const Var&) { return t; },
        [&](const Const&) { return t; },
        [&](const Lam& x) { return Term::lam(x.param, normal_form(x.body)); },
        [&](const App& x) {
          Term head = weak_head(x.fn);
          if (auto lam = head.get_if<Lam>()) {
            spend();
            return normal_form(substitute(lam->body, lam->param, x.arg));
          }
          return Term::app(normal_form(head), normal_form(x.arg));
        },
        [&](const And& x) { return Term::conj(normal_form(x.lhs), normal_form(x.rhs)); },
        [&](const Or& x) { return Term::disj(normal_form(x.lhs), normal_form(x.rhs)); },
        [&](const Not& x) { return Term::negation(normal_form(x.operand)); },
        [&](const Eq& x) { return Term::equality(normal_form(x.lhs), normal_form(x.rhs)); },
    });
  }

 private:
  // Contracts head redexes only; never reduces under a binder.
  Term weak_head(const Term& t) {
    auto app = t.get_if<App>();
    if (!app) return t;
    Term head = weak_head(app->fn);
    if (auto lam = head.get_if<Lam>()) {
      spend();
      return weak_head(substitute(lam->body, lam->param, app->arg));
    }
    return head.same_node(app->fn) ? t : Term::app(head, app->arg);
  }

  void spend() {
    if (budget_ == 0) throw FuelExhausted(fuel_);
    --budget_;
  }

  std::size_t fuel_;
  std::size_t budget_;
};

}  // namespace detail

/// Normal-order (leftmost-outermost) beta normalization. Each contraction
/// costs one unit of fuel; throws FuelExhausted when the budget runs out.
inline Term beta_normalize(const Term& t, std::size_t fuel = kDefaultBetaFuel) {
  detail::Reducer reducer(fuel);
  return reducer.normal_form(t);
}

inline bool has_beta_redex(const Term& t) {
  using detail::overloaded;
  return t.visit(overloaded{
      [](const Var&) { return false; },
      [](const Const&) { return false; },
      [](const Lam& x) { return has_beta_redex(x.body); },
      [](const App& x) { return x.fn.is_lam() || has_beta_redex(x.fn) || has_beta_redex(x.arg); },
      [](const And& x) { return has_beta_redex(x.lhs) || has_beta_redex(x.rhs); },
      [](const Or& x) { return has_beta_redex(x.lhs) || has_beta_redex(x.rhs); },
      [](const Not& x) { return has_beta_redex(x.operand); },
      [](const Eq& x) { return has_beta_redex(x.lhs) || has_beta_redex(x.rhs); },
  });
}

// ---------------------------------------------------------------------------
// Alpha equivalence

namespace detail {

// Binder depth of the innermost binding of `name`, or nullopt when free.
inline std::optional<std::size_t> binding_index(const std::vector<std::string>& env,
                                                const std::string& name) {
  for (std::size_t i = env.size(); i > 0; --i)
    if (env[i - 1] == name) return i - 1;
  return std::nullopt;
}

inline bool alpha_equal_in(const Term& a, const Term& b, std::vector<std::string>& env_a,
                           std::vector<std::string>& env_b) {
  auto both = [&](const Term& l1, const Term& r1, const Term& l2, const Term& r2) {
    return alpha_equal_in(l1, l2, env_a, env_b) && alpha_equal_in(r1, r2, env_a, env_b);
  };
  return a.visit(overloaded{
      [&](const Var& x) {
        auto y = b.get_if<Var>();
        if (!y) return false;
        auto ia = binding_index(env_a, x.name);
        auto ib = binding_index(env_b, y->name);
        if (ia || ib) return ia == ib;
        return x.name == y->name;
      },
      [&](const Const& x) {
        auto y = b.get_if<Const>();
        return y && x.kind == y->kind && x.name == y->name;
      },
      [&](const Lam& x) {
        auto y = b.get_if<Lam>();
        if (!y) return false;
        env_a.push_back(x.param);
        env_b.push_back(y->param);
        bool eq = alpha_equal_in(x.body, y->body, env_a, env_b);
        env_a.pop_back();
        env_b.pop_back();
        return eq;
      },
      [&](const App& x) {
        auto y = b.get_if<App>();
        return y && both(x.fn, x.arg, y->fn, y->arg);
      },
      [&](const And& x) {
        auto y = b.get_if<And>();
        return y && both(x.lhs, x.rhs, y->lhs, y->rhs);
      },
      [&](const Or& x) {
        auto y = b.get_if<Or>();
        return y && both(x.lhs, x.rhs, y->lhs, y->rhs);
      },
      [&](const Not& x) {
        auto y = b.get_if<Not>();
        return y && alpha_equal_in(x.operand, y->operand, env_a, env_b);
      },
      [&](const Eq& x) {
        auto y = b.get_if<Eq>();
        return y && both(x.lhs, x.rhs, y->lhs, y->rhs);
      },
  });
}

}  // namespace detail

/// Equality up to consistent renaming of bound variables. Free variables and
/// constants must match exactly.
inline bool alpha_equal(const Term& a, const Term& b) {
  std::vector<std::string> env_a, env_b;
  return detail::alpha_equal_in(a, b, env_a, env_b);
}

// ---------------------------------------------------------------------------
// Text syntax
//
//   term  := '\' ident '.' term | eq
//   eq    := or (('=' | '==') or)?
//   or    := and ('|' and)*
//   and   := unary ('&' unary)*
//   unary := '-' unary | mod
//   mod   := call ('%' call)*          a % b is mod(a, b)
//   call  := atom ('(' term (',' term)* ')')*
//   atom  := ident | number | "string" | '(' term ')' | '\' ident '.' term
//
// An identifier is a variable when an enclosing lambda binds it or when it
// is variable-shaped (one letter, optional digits: x, P, x1); any other
// identifier is a symbolic constant.

/// One ASCII letter followed by digits only.
inline bool is_var_shaped(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (std::size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  return true;
}

inline bool is_numeric_literal(std::string_view text) {
  std::size_t i = 0;
  if (i < text.size() && text[i] == '-') ++i;
  std::size_t digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, ++digits;
  if (digits == 0) return false;
  if (i == text.size()) return true;
  if (text[i] != '.') return false;
  ++i;
  std::size_t frac = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, ++frac;
  return frac > 0 && i == text.size();
}

namespace detail {

class TermParser {
 public:
  explicit TermParser(std::string_view text) : text_(text) {}

  Term parse() {
    Term t = term();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
  }

  static bool ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string identifier() {
    skip_space();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected identifier");
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Term term() {
    if (peek('\\')) return lambda();
    return equation();
  }

  Term lambda() {
    expect('\\');
    std::string param = identifier();
    expect('.');
    bound_.push_back(param);
    Term body = term();
    bound_.pop_back();
    return Term::lam(std::move(param), std::move(body));
  }

  Term equation() {
    Term lhs = disjunction();
    if (peek('=')) {
      ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '=') ++pos_;
      Term rhs = disjunction();
      if (peek('=')) fail("'=' is not associative; parenthesize");
      return Term::equality(std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Term disjunction() {
    Term t = conjunction();
    while (accept('|')) t = Term::disj(std::move(t), conjunction());
    return t;
  }

  Term conjunction() {
    Term t = unary();
    while (accept('&')) t = Term::conj(std::move(t), unary());
    return t;
  }

  Term unary() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '-') {
      if (pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))
        return modulo();
      ++pos_;
      return Term::negation(unary());
    }
    if (peek('\\')) return lambda();
    return modulo();
  }

  Term modulo() {
    Term t = call();
    while (accept('%')) t = Term::app(Term::constant("mod"), {t, call()});
    return t;
  }

  Term call() {
    Term t = atom();
    while (accept('(')) {
      do {
        t = Term::app(std::move(t), term());
      } while (accept(','));
      expect(')');
    }
    return t;
  }

  Term atom() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Term t = term();
      expect(')');
      return t;
    }
    if (c == '\\') return lambda();
    if (c == '"') return string_literal();
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '-' && pos_ + 1 < text_.size() &&
         std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))))
      return number_literal();
    if (ident_start(c)) {
      std::string name = identifier();
      for (const auto& b : bound_)
        if (b == name) return Term::var(std::move(name));
      if (is_var_shaped(name)) return Term::var(std::move(name));
      return Term::constant(std::move(name));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Term number_literal() {
    std::size_t start = pos_;
    if (text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ + 1 < text_.size() && text_[pos_] == '.' &&
        std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    if (pos_ < text_.size() && ident_char(text_[pos_])) fail("malformed number");
    return Term::number(std::string(text_.substr(start, pos_ - start)));
  }

  Term string_literal() {
    std::size_t start = pos_;
    ++pos_;
    std::string content;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
      content += text_[pos_++];
    }
    if (pos_ >= text_.size()) throw SyntaxError("unterminated string literal", start);
    ++pos_;
    return Term::string(std::move(content));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string> bound_;
};

// Binding strength used by the printer; higher binds tighter.
enum Level : int { kLambda = 0, kEquation = 1, kDisjunction = 2, kConjunction = 3, kUnary = 4, kAtom = 5 };

inline int level_of(const Term& t) {
  return t.visit(overloaded{
      [](const Var&) { return int(kAtom); },
      [](const Const&) { return int(kAtom); },
      [](const Lam&) { return int(kLambda); },
      [](const App&) { return int(kAtom); },
      [](const And&) { return int(kConjunction); },
      [](const Or&) { return int(kDisjunction); },
      [](const Not&) { return int(kUnary); },
      [](const Eq&) { return int(kEquation); },
  });
}

inline std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

inline std::string print_at(const Term& t, int required);

inline std::string print_bare(const Term& t) {
  return t.visit(overloaded{
      [](const Var& x) { return x.name; },
      [](const Const& c) { return c.kind == ConstKind::String ? quote(c.name) : c.name; },
      [](const Lam& x) {
        // Infix bodies are parenthesized, as in `\x.(a & b)`.
        int body_level = level_of(x.body);
        bool wrap = body_level >= kEquation && body_level <= kConjunction;
        return "\\" + x.param + "." + (wrap ? "(" + print_at(x.body, kLambda) + ")"
                                            : print_at(x.body, kLambda));
      },
      [](const App& x) {
        std::vector<const Term*> args{&x.arg};
        const Term* head = &x.fn;
        while (auto inner = head->get_if<App>()) {
          args.push_back(&inner->arg);
          head = &inner->fn;
        }
        std::string out = (head->is_var() || head->is_const()) ? print_bare(*head)
                                                                : "(" + print_at(*head, kLambda) + ")";
        out += "(";
        for (std::size_t i = args.size(); i > 0; --i) {
          out += print_at(*args[i - 1], kLambda);
          if (i > 1) out += ",";
        }
        return out + ")";
      },
      [](const And& x) {
        return print_at(x.lhs, kConjunction) + " & " + print_at(x.rhs, kUnary);
      },
      [](const Or& x) {
        return print_at(x.lhs, kDisjunction) + " | " + print_at(x.rhs, kConjunction);
      },
      [](const Not& x) {
        std::string inner = print_at(x.operand, kUnary);
        if (!inner.empty() && (std::isdigit(static_cast<unsigned char>(inner[0])) || inner[0] == '-'))
          inner = "(" + inner + ")";
        return "-" + inner;
      },
      [](const Eq& x) {
        return print_at(x.lhs, kDisjunction) + "=" + print_at(x.rhs, kDisjunction);
      },
  });
}

inline std::string print_at(const Term& t, int required) {
  std::string s = print_bare(t);
  return level_of(t) < required ? "(" + s + ")" : s;
}

}  // namespace detail

inline Term parse_term(std::string_view text) { return detail::TermParser(text).parse(); }

inline std::string print_term(const Term& t) { return detail::print_at(t, detail::kLambda); }

}  // namespace nl2pbt
