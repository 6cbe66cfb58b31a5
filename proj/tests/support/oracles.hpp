#pragma once

// Reference implementations the library is checked against.  They share no
// code with the library beyond the Term and Category data types.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "nl2pbt/category.hpp"
#include "nl2pbt/lexicon.hpp"
#include "nl2pbt/term.hpp"

namespace oracle {

using nl2pbt::Term;

// ---------------------------------------------------------------------------
// Nameless terms.  Bound variables are de Bruijn indices, so alpha
// equivalence is structural equality and substitution needs no renaming.

struct Db;
using DbPtr = std::shared_ptr<const Db>;

struct Db {
  enum class K { Bound, Free, Const, Lam, App, And, Or, Not, Eq } k;
  std::size_t index = 0;
  std::string name;  // free variable or constant spelling, prefixed by kind
  DbPtr a, b;
};

inline DbPtr node(Db::K k, DbPtr a = nullptr, DbPtr b = nullptr) {
  return std::make_shared<const Db>(Db{k, 0, {}, std::move(a), std::move(b)});
}

inline DbPtr to_db(const Term& t, std::vector<std::string>& env) {
  if (auto v = t.get_if<nl2pbt::Var>()) {
    for (std::size_t i = env.size(); i > 0; --i)
      if (env[i - 1] == v->name)
        return std::make_shared<const Db>(Db{Db::K::Bound, env.size() - i, {}, nullptr, nullptr});
    return std::make_shared<const Db>(Db{Db::K::Free, 0, v->name, nullptr, nullptr});
  }
  if (auto c = t.get_if<nl2pbt::Const>()) {
    std::string tag = c->kind == nl2pbt::ConstKind::Symbol   ? "s:"
                      : c->kind == nl2pbt::ConstKind::Number ? "n:"
                                                             : "q:";
    return std::make_shared<const Db>(Db{Db::K::Const, 0, tag + c->name, nullptr, nullptr});
  }
  if (auto l = t.get_if<nl2pbt::Lam>()) {
    env.push_back(l->param);
    DbPtr body = to_db(l->body, env);
    env.pop_back();
    return node(Db::K::Lam, body);
  }
  if (auto x = t.get_if<nl2pbt::App>()) return node(Db::K::App, to_db(x->fn, env), to_db(x->arg, env));
  if (auto x = t.get_if<nl2pbt::And>()) return node(Db::K::And, to_db(x->lhs, env), to_db(x->rhs, env));
  if (auto x = t.get_if<nl2pbt::Or>()) return node(Db::K::Or, to_db(x->lhs, env), to_db(x->rhs, env));
  if (auto x = t.get_if<nl2pbt::Not>()) return node(Db::K::Not, to_db(x->operand, env));
  if (auto x = t.get_if<nl2pbt::Eq>()) return node(Db::K::Eq, to_db(x->lhs, env), to_db(x->rhs, env));
  throw std::logic_error("unhandled term");
}

inline DbPtr to_db(const Term& t) {
  std::vector<std::string> env;
  return to_db(t, env);
}

inline bool same(const DbPtr& x, const DbPtr& y) {
  if (x == y) return true;
  if (!x || !y || x->k != y->k || x->index != y->index || x->name != y->name) return false;
  return same(x->a, y->a) && same(x->b, y->b);
}

/// Alpha equivalence by comparing nameless forms.
inline bool alpha_equivalent(const Term& s, const Term& t) { return same(to_db(s), to_db(t)); }

inline DbPtr shift(const DbPtr& t, long d, std::size_t cutoff) {
  if (!t) return t;
  switch (t->k) {
    case Db::K::Bound:
      if (t->index < cutoff) return t;
      return std::make_shared<const Db>(
          Db{Db::K::Bound, static_cast<std::size_t>(static_cast<long>(t->index) + d), {}, nullptr, nullptr});
    case Db::K::Free:
    case Db::K::Const:
      return t;
    case Db::K::Lam:
      return node(Db::K::Lam, shift(t->a, d, cutoff + 1));
    default:
      return node(t->k, shift(t->a, d, cutoff), shift(t->b, d, cutoff));
  }
}

inline DbPtr subst(const DbPtr& t, std::size_t j, const DbPtr& s) {
  if (!t) return t;
  switch (t->k) {
    case Db::K::Bound:
      return t->index == j ? s : t;
    case Db::K::Free:
    case Db::K::Const:
      return t;
    case Db::K::Lam:
      return node(Db::K::Lam, subst(t->a, j + 1, shift(s, 1, 0)));
    default:
      return node(t->k, subst(t->a, j, s), subst(t->b, j, s));
  }
}

// (\.body) arg
inline DbPtr contract(const DbPtr& body, const DbPtr& arg) {
  return shift(subst(body, 0, shift(arg, 1, 0)), -1, 0);
}

/// One leftmost-outermost step, or nullptr in normal form.
inline DbPtr step(const DbPtr& t) {
  switch (t->k) {
    case Db::K::Bound:
    case Db::K::Free:
    case Db::K::Const:
      return nullptr;
    case Db::K::Lam: {
      auto b = step(t->a);
      return b ? node(Db::K::Lam, b) : nullptr;
    }
    case Db::K::Not: {
      auto b = step(t->a);
      return b ? node(Db::K::Not, b) : nullptr;
    }
    case Db::K::App:
      if (t->a->k == Db::K::Lam) return contract(t->a->a, t->b);
      [[fallthrough]];
    default: {
      if (auto l = step(t->a)) return node(t->k, l, t->b);
      if (auto r = step(t->b)) return node(t->k, t->a, r);
      return nullptr;
    }
  }
}

/// Normal form by repeated single steps; nullopt when `max_steps` runs out.
inline std::optional<DbPtr> normalize(DbPtr t, std::size_t max_steps) {
  for (std::size_t i = 0; i <= max_steps; ++i) {
    auto next = step(t);
    if (!next) return t;
    t = next;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Derivation counting.  Counts the proof trees of each category over each
// span by dynamic programming, without building semantics; the parser's
// derivation count must agree.

struct CatCount {
  nl2pbt::Category category;
  std::size_t count;
};

using Cell = std::map<std::string, CatCount>;

inline std::string key(const nl2pbt::Category& c) { return nl2pbt::print_category(c); }

inline bool fits(const nl2pbt::Category& want, const nl2pbt::Category& have) {
  auto pw = want.as_prim();
  auto ph = have.as_prim();
  if (pw || ph) {
    if (!pw || !ph || pw->name != ph->name) return false;
    return !pw->feature.has_value() || pw->feature == ph->feature;
  }
  auto sw = want.as_slash();
  auto sh = have.as_slash();
  return sw->dir == sh->dir && sw->modality == sh->modality && fits(sw->result, sh->result) &&
         fits(sw->arg, sh->arg);
}

inline bool starred(const nl2pbt::Slash* s) { return s->modality == nl2pbt::kApplicationOnly; }

inline const nl2pbt::Slash* slash(const nl2pbt::Category& c, nl2pbt::Direction d) {
  auto s = c.as_slash();
  return s && s->dir == d ? s : nullptr;
}

// Every category the seven binary rules produce from (l, r), one per
// applicable rule.
inline std::vector<nl2pbt::Category> results(const nl2pbt::Category& l, const nl2pbt::Category& r) {
  using nl2pbt::Category;
  using nl2pbt::Direction;
  constexpr auto R = Direction::Right;
  constexpr auto L = Direction::Left;
  std::vector<Category> out;
  auto lr = slash(l, R), ll = slash(l, L), rr = slash(r, R), rl = slash(r, L);
  if (lr && fits(lr->arg, r)) out.push_back(lr->result);
  if (rl && fits(rl->arg, l)) out.push_back(rl->result);
  if (lr && rr && !starred(lr) && !starred(rr) && fits(lr->arg, rr->result))
    out.push_back(Category::slash(R, lr->result, rr->arg, rr->modality));
  if (ll && rl && !starred(ll) && !starred(rl) && fits(rl->arg, ll->result))
    out.push_back(Category::slash(L, rl->result, ll->arg, ll->modality));
  if (lr && rl && !starred(lr) && !starred(rl) && fits(rl->arg, lr->result))
    out.push_back(Category::slash(R, rl->result, lr->arg, lr->modality));
  auto mutual = [](const Category& a, const Category& b) { return fits(a, b) && fits(b, a); };
  if (lr && rr) {
    auto inner = slash(lr->result, R);
    if (inner && !starred(lr) && !starred(inner) && !starred(rr) && fits(inner->arg, rr->result) &&
        mutual(lr->arg, rr->arg))
      out.push_back(Category::slash(R, inner->result, lr->arg, lr->modality));
  }
  if (lr && rr) {
    auto inner = slash(rr->result, L);
    if (inner && !starred(rr) && !starred(inner) && !starred(lr) && fits(inner->arg, lr->result) &&
        mutual(rr->arg, lr->arg))
      out.push_back(Category::slash(R, inner->result, rr->arg, rr->modality));
  }
  return out;
}

inline void add(Cell& cell, const nl2pbt::Category& c, std::size_t n) {
  auto [it, fresh] = cell.try_emplace(key(c), CatCount{c, 0});
  it->second.count += n;
}

inline void raise(Cell& cell, const std::vector<nl2pbt::Category>& targets) {
  using nl2pbt::Category;
  using nl2pbt::Direction;
  std::vector<CatCount> prims;
  for (const auto& [k, cc] : cell)
    if (cc.category.is_prim()) prims.push_back(cc);
  for (const auto& p : prims)
    for (const auto& t : targets) {
      add(cell, Category::right(t, Category::left(t, p.category)), p.count);
      add(cell, Category::left(t, Category::right(t, p.category)), p.count);
    }
}

/// Number of S derivations over the tokens, as the chart parser would
/// enumerate them with no limits.
inline std::size_t count_derivations(const std::vector<std::string>& tokens,
                                     const nl2pbt::Lexicon& lex,
                                     const std::vector<nl2pbt::Category>& targets = {
                                         nl2pbt::Category::prim("S")}) {
  const std::size_t n = tokens.size();
  std::vector<std::vector<Cell>> chart(n, std::vector<Cell>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& e : nl2pbt::lookup(lex, tokens[i])) add(chart[i][i + 1], e.category, 1);
    raise(chart[i][i + 1], targets);
  }
  for (std::size_t len = 2; len <= n; ++len)
    for (std::size_t i = 0; i + len <= n; ++i) {
      Cell& cell = chart[i][i + len];
      for (std::size_t k = i + 1; k < i + len; ++k)
        for (const auto& [lk, l] : chart[i][k])
          for (const auto& [rk, r] : chart[k][i + len])
            for (const auto& c : results(l.category, r.category)) add(cell, c, l.count * r.count);
      raise(cell, targets);
    }
  std::size_t total = 0;
  for (const auto& [k, cc] : chart[0][n]) {
    auto p = cc.category.as_prim();
    if (p && p->name == "S") total += cc.count;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Random generation with fixed seeds.

class TermGen {
 public:
  explicit TermGen(std::uint32_t seed) : rng_(seed) {}

  /// Terms over a small vocabulary.  Lambda parameters and free variables
  /// are variable-shaped names; constants never are, so printing and
  /// re-parsing cannot confuse the two.
  Term term(int depth) {
    std::vector<std::string> scope;
    return gen(depth, scope);
  }

  /// Closed terms built mostly from abstractions and applications, so that
  /// they contain redexes.
  Term redex_rich(int depth) {
    std::vector<std::string> scope;
    return gen_redex(depth, scope);
  }

  std::string var_name() { return pick(kVars); }
  std::mt19937& rng() { return rng_; }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

 private:
  static inline const std::vector<std::string> kVars = {"x", "y", "z", "n", "x1", "y1"};
  static inline const std::vector<std::string> kSymbols = {"foo", "bar", "passing", "filter",
                                                           "lessthan"};

  std::string pick(const std::vector<std::string>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }

  Term leaf(const std::vector<std::string>& scope) {
    switch (uniform(0, 5)) {
      case 0:
      case 1:
        if (!scope.empty()) return Term::var(scope[static_cast<std::size_t>(uniform(0, static_cast<int>(scope.size()) - 1))]);
        return Term::var(pick(kVars));
      case 2:
        return Term::var(pick(kVars));
      case 3:
        return Term::constant(pick(kSymbols));
      case 4: {
        static const std::vector<std::string> nums = {"0", "3", "10", "-2", "1.5"};
        return Term::number(pick(nums));
      }
      default: {
        static const std::vector<std::string> strs = {"Fizz", "Buzz", "a b"};
        return Term::string(pick(strs));
      }
    }
  }

  Term gen(int depth, std::vector<std::string>& scope) {
    if (depth <= 0 || uniform(0, 9) < 2) return leaf(scope);
    switch (uniform(0, 6)) {
      case 0:
      case 1: {
        std::string p = pick(kVars);
        scope.push_back(p);
        Term body = gen(depth - 1, scope);
        scope.pop_back();
        return Term::lam(p, body);
      }
      case 2:
      case 3:
        return Term::app(gen(depth - 1, scope), gen(depth - 1, scope));
      case 4:
        return uniform(0, 1) ? Term::conj(gen(depth - 1, scope), gen(depth - 1, scope))
                             : Term::disj(gen(depth - 1, scope), gen(depth - 1, scope));
      case 5:
        return Term::negation(gen(depth - 1, scope));
      default:
        return Term::equality(gen(depth - 1, scope), gen(depth - 1, scope));
    }
  }

  Term gen_redex(int depth, std::vector<std::string>& scope) {
    if (depth <= 0 || uniform(0, 9) == 0) {
      if (!scope.empty() && uniform(0, 3) != 0)
        return Term::var(scope[static_cast<std::size_t>(uniform(0, static_cast<int>(scope.size()) - 1))]);
      return Term::constant(pick(kSymbols));
    }
    switch (uniform(0, 4)) {
      case 0:
      case 1: {
        std::string p = pick(kVars);
        scope.push_back(p);
        Term body = gen_redex(depth - 1, scope);
        scope.pop_back();
        return Term::lam(p, body);
      }
      case 2:
      case 3:
        return Term::app(gen_redex(depth - 1, scope), gen_redex(depth - 1, scope));
      default:
        return Term::conj(gen_redex(depth - 1, scope), gen_redex(depth - 1, scope));
    }
  }

  std::mt19937 rng_;
};

/// Random category over a few primitives, features and modalities.
inline nl2pbt::Category random_category(std::mt19937& rng, int depth) {
  using nl2pbt::Category;
  auto roll = [&](int hi) { return std::uniform_int_distribution<int>(0, hi)(rng); };
  if (depth <= 0 || roll(3) == 0) {
    static const char* names[] = {"S", "NP", "ADJ", "CN"};
    static const char* features[] = {"Gen", "Chk", "than"};
    std::optional<std::string> feature;
    if (roll(2) == 0) feature = features[roll(2)];
    return Category::prim(names[roll(3)], feature);
  }
  std::optional<std::string> modality;
  if (roll(3) == 0) modality = roll(1) ? nl2pbt::kApplicationOnly : std::string("◇");
  return Category::slash(roll(1) ? nl2pbt::Direction::Right : nl2pbt::Direction::Left,
                         random_category(rng, depth - 1), random_category(rng, depth - 1), modality);
}

}  // namespace oracle
