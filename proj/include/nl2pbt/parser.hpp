#pragma once

// CKY chart parser over CCG categories.
//
// Every cell keeps every derivation (no packing), so the derivations returned
// for a sentence are exactly the distinct proof trees the rule set admits.
// Semantics are composed symbolically and only beta-normalized once per
// complete parse, in logical_forms().

#include <array>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nl2pbt/category.hpp"
#include "nl2pbt/lexicon.hpp"
#include "nl2pbt/term.hpp"

namespace nl2pbt {

enum class Rule {
  Lexical,
  ForwardApplication,        // >
  BackwardApplication,       // <
  ForwardComposition,        // >B
  BackwardComposition,       // <B
  BackwardCrossedComposition,  // <Bx
  ForwardSubstitution,       // >S
  BackwardCrossedSubstitution,  // <Sx
  ForwardRaising,            // >T
  BackwardRaising,           // <T
};

inline constexpr std::array<Rule, 7> kBinaryRules = {
    Rule::ForwardApplication,         Rule::BackwardApplication,
    Rule::ForwardComposition,         Rule::BackwardComposition,
    Rule::BackwardCrossedComposition, Rule::ForwardSubstitution,
    Rule::BackwardCrossedSubstitution,
};

inline std::string_view rule_label(Rule r) {
  switch (r) {
    case Rule::Lexical: return "lex";
    case Rule::ForwardApplication: return ">";
    case Rule::BackwardApplication: return "<";
    case Rule::ForwardComposition: return ">B";
    case Rule::BackwardComposition: return "<B";
    case Rule::BackwardCrossedComposition: return "<Bx";
    case Rule::ForwardSubstitution: return ">S";
    case Rule::BackwardCrossedSubstitution: return "<Sx";
    case Rule::ForwardRaising: return ">T";
    case Rule::BackwardRaising: return "<T";
  }
  return "?";
}

struct ChartItem;
using Derivation = std::shared_ptr<const ChartItem>;

struct ChartItem {
  std::size_t start = 0;
  std::size_t end = 0;  // one past the last token
  Category category;
  Term semantics;
  Rule rule = Rule::Lexical;
  Derivation left;   // sole child for raised items
  Derivation right;
  std::string token;  // lexical items only
};

struct ParseConfig {
  std::size_t max_derivations = 256;
  bool enable_type_raising = true;
  std::vector<Category> type_raise_targets{Category::prim("S")};
  std::size_t beta_fuel = kDefaultBetaFuel;
  // Hard ceiling on the items kept in one chart cell.
  std::size_t max_cell_items = 200000;
};

struct ParseResult {
  std::vector<Derivation> derivations;
  /// Set when more complete derivations existed than max_derivations, or a
  /// cell hit max_cell_items.
  bool truncated = false;
};

namespace detail {

inline std::set<std::string> free_in_both(const Term& f, const Term& g) {
  std::set<std::string> avoid = free_vars(f);
  avoid.merge(free_vars(g));
  return avoid;
}

inline std::string fresh_var(const std::string& preferred, const std::set<std::string>& avoid) {
  return avoid.count(preferred) ? fresh_name(preferred, avoid) : preferred;
}

// \z.f(g(z))
inline Term compose(const Term& f, const Term& g) {
  std::string z = fresh_var("z", free_in_both(f, g));
  return Term::lam(z, Term::app(f, Term::app(g, Term::var(z))));
}

// \z.f(z)(g(z))
inline Term substitution(const Term& f, const Term& g) {
  std::string z = fresh_var("z", free_in_both(f, g));
  return Term::lam(z, Term::app(Term::app(f, Term::var(z)), Term::app(g, Term::var(z))));
}

inline bool application_only(const Slash& s) { return s.modality == kApplicationOnly; }

inline const Slash* functor(const Category& c, Direction dir) {
  auto s = c.as_slash();
  return s && s->dir == dir ? s : nullptr;
}

// Shared-argument compatibility for the substitution rules.
inline bool same_argument(const Category& a, const Category& b) {
  return categories_match(a, b) && categories_match(b, a);
}

inline Derivation make_item(const Derivation& l, const Derivation& r, Category cat, Term sem,
                            Rule rule) {
  return std::make_shared<const ChartItem>(
      ChartItem{l->start, r->end, std::move(cat), std::move(sem), rule, l, r, {}});
}

}  // namespace detail

/// Applies one binary rule to adjacent items; nullptr when the categories do
/// not fit the rule's schema.  Slashes marked ⋆ take part in > and < only.
inline Derivation combine(Rule rule, const Derivation& left, const Derivation& right) {
  using detail::functor;
  if (!left || !right || left->end != right->start) return nullptr;
  const Category& lc = left->category;
  const Category& rc = right->category;
  const Term& ls = left->semantics;
  const Term& rs = right->semantics;

  switch (rule) {
    case Rule::ForwardApplication: {  // X/Y  Y  =>  X
      auto f = functor(lc, Direction::Right);
      if (!f || !categories_match(f->arg, rc)) return nullptr;
      return detail::make_item(left, right, f->result, Term::app(ls, rs), rule);
    }
    case Rule::BackwardApplication: {  // Y  X\Y  =>  X
      auto f = functor(rc, Direction::Left);
      if (!f || !categories_match(f->arg, lc)) return nullptr;
      return detail::make_item(left, right, f->result, Term::app(rs, ls), rule);
    }
    case Rule::ForwardComposition: {  // X/Y  Y/Z  =>  X/Z
      auto f = functor(lc, Direction::Right);
      auto g = functor(rc, Direction::Right);
      if (!f || !g || detail::application_only(*f) || detail::application_only(*g)) return nullptr;
      if (!categories_match(f->arg, g->result)) return nullptr;
      return detail::make_item(left, right,
                               Category::slash(Direction::Right, f->result, g->arg, g->modality),
                               detail::compose(ls, rs), rule);
    }
    case Rule::BackwardComposition: {  // Y\Z  X\Y  =>  X\Z
      auto g = functor(lc, Direction::Left);
      auto f = functor(rc, Direction::Left);
      if (!f || !g || detail::application_only(*f) || detail::application_only(*g)) return nullptr;
      if (!categories_match(f->arg, g->result)) return nullptr;
      return detail::make_item(left, right,
                               Category::slash(Direction::Left, f->result, g->arg, g->modality),
                               detail::compose(rs, ls), rule);
    }
    case Rule::BackwardCrossedComposition: {  // Y/Z  X\Y  =>  X/Z
      auto g = functor(lc, Direction::Right);
      auto f = functor(rc, Direction::Left);
      if (!f || !g || detail::application_only(*f) || detail::application_only(*g)) return nullptr;
      if (!categories_match(f->arg, g->result)) return nullptr;
      return detail::make_item(left, right,
                               Category::slash(Direction::Right, f->result, g->arg, g->modality),
                               detail::compose(rs, ls), rule);
    }
    case Rule::ForwardSubstitution: {  // (X/Y)/Z  Y/Z  =>  X/Z
      auto outer = functor(lc, Direction::Right);
      auto g = functor(rc, Direction::Right);
      if (!outer || !g) return nullptr;
      auto f = functor(outer->result, Direction::Right);
      if (!f || detail::application_only(*outer) || detail::application_only(*f) ||
          detail::application_only(*g))
        return nullptr;
      if (!categories_match(f->arg, g->result) || !detail::same_argument(outer->arg, g->arg))
        return nullptr;
      return detail::make_item(
          left, right, Category::slash(Direction::Right, f->result, outer->arg, outer->modality),
          detail::substitution(ls, rs), rule);
    }
    case Rule::BackwardCrossedSubstitution: {  // Y/Z  (X\Y)/Z  =>  X/Z
      auto g = functor(lc, Direction::Right);
      auto outer = functor(rc, Direction::Right);
      if (!outer || !g) return nullptr;
      auto f = functor(outer->result, Direction::Left);
      if (!f || detail::application_only(*outer) || detail::application_only(*f) ||
          detail::application_only(*g))
        return nullptr;
      if (!categories_match(f->arg, g->result) || !detail::same_argument(outer->arg, g->arg))
        return nullptr;
      return detail::make_item(
          left, right, Category::slash(Direction::Right, f->result, outer->arg, outer->modality),
          detail::substitution(rs, ls), rule);
    }
    case Rule::Lexical:
    case Rule::ForwardRaising:
    case Rule::BackwardRaising:
      break;
  }
  return nullptr;
}

/// Type-raises a primitive item: >T gives T/(T\X), <T gives T\(T/X), both
/// with semantics \f.f(a).  Throws std::invalid_argument for slash categories.
inline Derivation type_raise(const Derivation& item, const Category& target, Direction dir) {
  if (!item->category.is_prim())
    throw std::invalid_argument("type raising applies to primitive categories only, got " +
                                print_category(item->category));
  Direction inner = dir == Direction::Right ? Direction::Left : Direction::Right;
  Category raised =
      Category::slash(dir, target, Category::slash(inner, target, item->category));
  std::string f = detail::fresh_var("f", free_vars(item->semantics));
  Term sem = Term::lam(f, Term::app(Term::var(f), item->semantics));
  return std::make_shared<const ChartItem>(ChartItem{
      item->start, item->end, std::move(raised), std::move(sem),
      dir == Direction::Right ? Rule::ForwardRaising : Rule::BackwardRaising, item, nullptr, {}});
}

inline bool is_sentence(const Category& c) {
  auto p = c.as_prim();
  return p && p->name == "S";
}

/// All derivations of category S over the whole token sequence, in a fixed
/// order (span, split point, rule, lexicon order).  Throws UnknownWordError
/// if some token has no lexicon entry.
inline ParseResult parse(const std::vector<std::string>& tokens, const Lexicon& lex,
                         const ParseConfig& cfg = {}) {
  if (tokens.empty()) throw std::invalid_argument("cannot parse an empty token sequence");
  if (cfg.max_derivations == 0) throw std::invalid_argument("max_derivations must be positive");

  const std::size_t n = tokens.size();
  std::vector<std::vector<LexEntry>> entries(n);
  std::vector<std::string> unknown;
  for (std::size_t i = 0; i < n; ++i) {
    entries[i] = lookup(lex, tokens[i]);
    if (entries[i].empty()) unknown.push_back(tokens[i]);
  }
  if (!unknown.empty()) throw UnknownWordError(std::move(unknown));

  ParseResult result;
  // cells[i][len - 1] holds items spanning tokens [i, i + len).
  std::vector<std::vector<std::vector<Derivation>>> cells(n, std::vector<std::vector<Derivation>>(n));

  auto add_raised = [&](std::vector<Derivation>& cell) {
    if (!cfg.enable_type_raising) return;
    const std::size_t base = cell.size();
    for (std::size_t k = 0; k < base; ++k) {
      if (!cell[k]->category.is_prim()) continue;
      for (const auto& target : cfg.type_raise_targets) {
        for (Direction dir : {Direction::Right, Direction::Left}) {
          if (cell.size() >= cfg.max_cell_items) {
            result.truncated = true;
            return;
          }
          cell.push_back(type_raise(cell[k], target, dir));
        }
      }
    }
  };

  for (std::size_t i = 0; i < n; ++i) {
    auto& cell = cells[i][0];
    for (const auto& e : entries[i])
      cell.push_back(std::make_shared<const ChartItem>(
          ChartItem{i, i + 1, e.category, e.semantics, Rule::Lexical, nullptr, nullptr, tokens[i]}));
    add_raised(cell);
  }

  for (std::size_t len = 2; len <= n; ++len) {
    for (std::size_t i = 0; i + len <= n; ++i) {
      auto& cell = cells[i][len - 1];
      for (std::size_t split = 1; split < len; ++split) {
        const auto& lefts = cells[i][split - 1];
        const auto& rights = cells[i + split][len - split - 1];
        for (const auto& l : lefts) {
          for (const auto& r : rights) {
            for (Rule rule : kBinaryRules) {
              if (auto item = combine(rule, l, r)) {
                if (cell.size() >= cfg.max_cell_items) {
                  result.truncated = true;
                  break;
                }
                cell.push_back(std::move(item));
              }
            }
          }
        }
      }
      add_raised(cell);
    }
  }

  for (const auto& item : cells[0][n - 1]) {
    if (!is_sentence(item->category)) continue;
    if (result.derivations.size() == cfg.max_derivations) {
      result.truncated = true;
      break;
    }
    result.derivations.push_back(item);
  }
  return result;
}

/// Beta-normal forms of the derivations' semantics, deduplicated up to alpha
/// equivalence in first-seen order.
inline std::vector<Term> logical_forms(const std::vector<Derivation>& derivs,
                                       const ParseConfig& cfg = {}) {
  std::vector<Term> forms;
  for (const auto& d : derivs) {
    Term nf = beta_normalize(d->semantics, cfg.beta_fuel);
    bool seen = false;
    for (const auto& f : forms) {
      if (alpha_equal(f, nf)) {
        seen = true;
        break;
      }
    }
    if (!seen) forms.push_back(std::move(nf));
  }
  return forms;
}

}  // namespace nl2pbt
