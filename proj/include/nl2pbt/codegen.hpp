#pragma once

// Logical form -> fast-check (JavaScript) property test.
//
// Emission walks the term; there is no textual rewriting.  Bound variables
// are renamed x, y, z, x1, y1, ... by scope depth, so alpha-equivalent forms
// produce identical text.
//
//   foreach(G, F)            fc.assert(fc.property(G', F'));
//   filter(G, P)             G'.filter(P')
//   floats / integers        fc.float() / fc.integer()
//   lessthan(a, b)           a < b
//   lessthanoreq(a, b)       a <= b
//   equals(a, b), a = b      a === b
//   divisibleby(x, n)        x % n === 0
//   mod(a, b)                a % b
//   &, |, -                  &&, ||, !
//   checkthrows(isexc, \u.E) throwsException(() => E')
//   \x.B                     (x) => B'
//
// Any other constant is emitted verbatim as an identifier (a function of the
// subject under test) and reported in EmittedTest::unknown_constants.

#include <algorithm>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nl2pbt/category.hpp"
#include "nl2pbt/error.hpp"
#include "nl2pbt/parser.hpp"
#include "nl2pbt/term.hpp"

namespace nl2pbt {

struct EmitConfig {
  std::string target = "fastcheck-js";
  std::string test_name = "property";
  /// Subject-under-test functions the prelude imports.
  std::vector<std::string> function_imports;
  std::string import_module = "./subjects";
};

struct EmittedTest {
  std::string source;
  std::vector<std::string> unknown_constants;
};

namespace detail {

inline const std::set<std::string, std::less<>> kMappedConstants = {
    "foreach", "filter",      "floats", "integers",    "lessthan", "lessthanoreq",
    "equals",  "divisibleby", "mod",    "checkthrows", "isexc",
};

inline void check_config(const EmitConfig& cfg) {
  if (cfg.target != "fastcheck-js")
    throw std::invalid_argument("unsupported emission target '" + cfg.target + "'");
  if (cfg.test_name.empty()) throw std::invalid_argument("test name must not be empty");
}

class JsEmitter {
 public:
  enum class Kind { Atom, Unary, Arithmetic, Comparison, Logical, Arrow };

  struct Js {
    std::string text;
    Kind kind;
  };

  std::string assertion(const Term& form) {
    auto [head, args] = spine(form);
    auto c = head.get_if<Const>();
    if (!c || c->kind != ConstKind::Symbol || c->name != "foreach" || args.size() != 2)
      throw MalformedFormError("logical form must be foreach(generator, claim), got " +
                               print_term(form));
    Js gen = emit(args[0]);
    Js claim = emit(args[1]);
    return "fc.assert(fc.property(" + gen.text + ", " + claim.text + "));";
  }

  std::vector<std::string> unknown() const { return {unknown_.begin(), unknown_.end()}; }

 private:
  static std::pair<Term, std::vector<Term>> spine(const Term& t) {
    std::vector<Term> args;
    Term head = t;
    while (auto app = head.get_if<App>()) {
      args.push_back(app->arg);
      head = app->fn;
    }
    std::reverse(args.begin(), args.end());
    return {head, args};
  }

  // Binary expressions are parenthesized except as operands of && and ||
  // (comparisons) or of comparisons (arithmetic).
  static std::string wrapped(const Js& e) {
    switch (e.kind) {
      case Kind::Arithmetic:
      case Kind::Comparison:
      case Kind::Logical:
      case Kind::Arrow:
        return "(" + e.text + ")";
      default:
        return e.text;
    }
  }

  static std::string logical_operand(const Js& e) {
    return e.kind == Kind::Comparison ? e.text : wrapped(e);
  }

  static std::string comparison_operand(const Js& e) {
    if (e.kind == Kind::Arithmetic || e.kind == Kind::Atom) return e.text;
    return "(" + e.text + ")";
  }

  static std::string arithmetic_operand(const Js& e) {
    return e.kind == Kind::Atom ? e.text : "(" + e.text + ")";
  }

  static std::string argument(const Js& e) {
    return e.kind == Kind::Arrow ? e.text : wrapped(e);
  }

  Js compare(const Term& a, const Term& b, std::string_view op) {
    return {comparison_operand(emit(a)) + " " + std::string(op) + " " + comparison_operand(emit(b)),
            Kind::Comparison};
  }

  std::string canonical_name() const {
    static constexpr std::string_view kBase[] = {"x", "y", "z"};
    for (std::size_t k = 0;; ++k) {
      for (auto base : kBase) {
        std::string name = std::string(base) + (k == 0 ? "" : std::to_string(k));
        bool taken = false;
        for (const auto& [orig, canon] : scope_) taken = taken || canon == name;
        if (!taken) return name;
      }
    }
  }

  std::string lookup_var(const std::string& name) const {
    for (std::size_t i = scope_.size(); i > 0; --i)
      if (scope_[i - 1].first == name) return scope_[i - 1].second;
    return name;
  }

  Js lambda(const Lam& l) {
    std::string name = canonical_name();
    scope_.emplace_back(l.param, name);
    Js body = emit(l.body);
    scope_.pop_back();
    return {"(" + name + ") => " + argument(body), Kind::Arrow};
  }

  void arity(const std::string& name, const std::vector<Term>& args, std::size_t n) {
    if (args.size() != n)
      throw MalformedFormError(name + " expects " + std::to_string(n) + " arguments, got " +
                               std::to_string(args.size()));
  }

  Js call(const Term& t) {
    auto [head, args] = spine(t);
    if (head.is_lam())
      throw MalformedFormError("logical form is not beta-normal: " + print_term(t));
    if (auto c = head.get_if<Const>(); c && c->kind == ConstKind::Symbol) {
      const std::string& f = c->name;
      if (f == "foreach") throw MalformedFormError("foreach may only appear at the root");
      if (f == "isexc") throw MalformedFormError("isexc is only valid as checkthrows' first argument");
      if (f == "filter") {
        arity(f, args, 2);
        Js gen = emit(args[0]);
        return {wrapped(gen) + ".filter(" + argument(emit(args[1])) + ")", Kind::Atom};
      }
      if (f == "lessthan" || f == "lessthanoreq" || f == "equals") {
        arity(f, args, 2);
        return compare(args[0], args[1], f == "lessthan" ? "<" : f == "equals" ? "===" : "<=");
      }
      if (f == "mod") {
        arity(f, args, 2);
        return {arithmetic_operand(emit(args[0])) + " % " + arithmetic_operand(emit(args[1])),
                Kind::Arithmetic};
      }
      if (f == "divisibleby") {
        arity(f, args, 2);
        return {arithmetic_operand(emit(args[0])) + " % " + arithmetic_operand(emit(args[1])) +
                    " === 0",
                Kind::Comparison};
      }
      if (f == "checkthrows") {
        arity(f, args, 2);
        auto kind = args[0].get_if<Const>();
        if (!kind || kind->name != "isexc")
          throw MalformedFormError("checkthrows supports only isexc, got " + print_term(args[0]));
        auto thunk = args[1].get_if<Lam>();
        if (!thunk || detail::occurs_free(thunk->body, thunk->param))
          throw MalformedFormError("checkthrows expects a thunk \\u.E with u unused");
        return {"throwsException(() => " + argument(emit(thunk->body)) + ")", Kind::Atom};
      }
      if (f == "floats" || f == "integers")
        throw MalformedFormError(f + " takes no arguments");
    }
    std::string out = emit_head(head) + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out += ", ";
      out += argument(emit(args[i]));
    }
    return {out + ")", Kind::Atom};
  }

  std::string emit_head(const Term& head) {
    if (head.is_var() || head.is_const()) return emit(head).text;
    return "(" + emit(head).text + ")";
  }

  Js constant(const Const& c) {
    switch (c.kind) {
      case ConstKind::Number:
        return {c.name, Kind::Atom};
      case ConstKind::String: {
        std::string out = "\"";
        for (char ch : c.name) {
          if (ch == '"' || ch == '\\') out += '\\';
          out += ch;
        }
        return {out + "\"", Kind::Atom};
      }
      case ConstKind::Symbol:
        break;
    }
    if (c.name == "floats") return {"fc.float()", Kind::Atom};
    if (c.name == "integers") return {"fc.integer()", Kind::Atom};
    if (c.name == "isexc") throw MalformedFormError("isexc is only valid as checkthrows' first argument");
    if (kMappedConstants.count(c.name))
      throw MalformedFormError(c.name + " used without its arguments");
    unknown_.insert(c.name);
    return {c.name, Kind::Atom};
  }

  Js emit(const Term& t) {
    return t.visit(overloaded{
        [&](const Var& v) { return Js{lookup_var(v.name), Kind::Atom}; },
        [&](const Const& c) { return constant(c); },
        [&](const Lam& l) { return lambda(l); },
        [&](const App&) { return call(t); },
        [&](const And& x) {
          return Js{logical_operand(emit(x.lhs)) + " && " + logical_operand(emit(x.rhs)),
                    Kind::Logical};
        },
        [&](const Or& x) {
          return Js{logical_operand(emit(x.lhs)) + " || " + logical_operand(emit(x.rhs)),
                    Kind::Logical};
        },
        [&](const Not& x) {
          Js operand = emit(x.operand);
          return Js{"!" + (operand.kind == Kind::Atom ? operand.text : "(" + operand.text + ")"),
                    Kind::Unary};
        },
        [&](const Eq& x) { return compare(x.lhs, x.rhs, "==="); },
    });
  }

  std::vector<std::pair<std::string, std::string>> scope_;
  std::set<std::string> unknown_;
};

}  // namespace detail

/// One `fc.assert(...)` statement plus a trailing newline.  Throws
/// MalformedFormError unless the form is foreach(generator, claim) over the
/// supported vocabulary.
inline EmittedTest emit_test(const Term& form, const EmitConfig& cfg = {}) {
  detail::check_config(cfg);
  detail::JsEmitter emitter;
  std::string line = emitter.assertion(form);
  return {line + "\n", emitter.unknown()};
}

inline std::string emit_prelude(const EmitConfig& cfg = {}) {
  detail::check_config(cfg);
  std::string out = "const fc = require(\"fast-check\");\n";
  if (!cfg.function_imports.empty()) {
    out += "const { ";
    for (std::size_t i = 0; i < cfg.function_imports.size(); ++i) {
      if (i) out += ", ";
      out += cfg.function_imports[i];
    }
    out += " } = require(\"" + cfg.import_module + "\");\n";
  }
  out +=
      "\n"
      "function throwsException(thunk) {\n"
      "  try {\n"
      "    thunk();\n"
      "  } catch (e) {\n"
      "    return true;\n"
      "  }\n"
      "  return false;\n"
      "}\n";
  return out;
}

/// Prelude, a comment naming the test, and the assertion: the content of one
/// generated test file.
inline std::string emit_test_file(const Term& form, const EmitConfig& cfg = {}) {
  EmittedTest test = emit_test(form, cfg);
  return emit_prelude(cfg) + "\n// " + cfg.test_name + "\n" + test.source;
}

/// Source text of a generated test file for a single logical form; the
/// prelude imports every constant the mapping does not cover.
inline std::string generate_test_file(const Term& form, const std::string& test_name) {
  EmitConfig cfg;
  cfg.test_name = test_name;
  cfg.function_imports = emit_test(form, cfg).unknown_constants;
  return emit_test_file(form, cfg);
}

namespace detail {

inline std::string phrase_of(const Derivation& d) {
  if (d->rule == Rule::Lexical) return d->token;
  if (!d->right) return phrase_of(d->left);
  return phrase_of(d->left) + " " + phrase_of(d->right);
}

inline void render_into(const Derivation& d, std::size_t depth, std::size_t fuel, std::string& out) {
  out += std::string(depth * 2, ' ') + "[" + std::string(rule_label(d->rule)) + "] " +
         phrase_of(d) + " |- " + print_category(d->category) + " => " +
         print_term(beta_normalize(d->semantics, fuel)) + "\n";
  if (d->left) render_into(d->left, depth + 1, fuel, out);
  if (d->right) render_into(d->right, depth + 1, fuel, out);
}

}  // namespace detail

/// One line per node, children indented under their parent:
///
///   [<] 3 is even |- S => mod(3,2)=0
///     [lex] 3 |- NP => 3
///     ...
inline std::string render_derivation(const Derivation& d, std::size_t fuel = kDefaultBetaFuel) {
  std::string out;
  detail::render_into(d, 0, fuel, out);
  return out;
}

}  // namespace nl2pbt
