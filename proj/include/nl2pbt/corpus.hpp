#pragma once

// Golden sentence/logical-form fixtures and the equivalence used to compare
// a parse against them.
//
// Corpus file format, one case per line (blank lines and `#` comments are
// ignored):
//
//   id | sentence | expected term | adequate:yes|no | notes
//
// The expected term may itself contain `|`; the sentence and notes may not.

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nl2pbt/error.hpp"
#include "nl2pbt/lexicon.hpp"
#include "nl2pbt/term.hpp"

namespace nl2pbt {

struct CorpusCase {
  int id = 0;
  std::string sentence;
  Term expected_form;
  /// True when the generated test should pass against a correct
  /// implementation of the subject.
  bool expected_adequate = true;
  std::string notes;
};

inline std::vector<CorpusCase> load_corpus(std::string_view text,
                                           const std::string& source = "<string>") {
  std::vector<CorpusCase> cases;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = detail::trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    std::size_t first = line.find('|');
    std::size_t second = first == std::string_view::npos ? first : line.find('|', first + 1);
    std::size_t last = line.rfind('|');
    std::size_t penultimate = last == std::string_view::npos || last == 0
                                  ? std::string_view::npos
                                  : line.rfind('|', last - 1);
    if (second == std::string_view::npos || penultimate == std::string_view::npos ||
        penultimate <= second)
      throw CorpusError(source, line_no, "expected 5 '|'-separated fields");

    std::string id_text(detail::trim(line.substr(0, first)));
    std::string_view term_text = detail::trim(line.substr(second + 1, penultimate - second - 1));
    std::string_view adequacy = detail::trim(line.substr(penultimate + 1, last - penultimate - 1));

    CorpusCase c{0, std::string(detail::trim(line.substr(first + 1, second - first - 1))),
                 Term::constant("foreach"), true, std::string(detail::trim(line.substr(last + 1)))};
    try {
      std::size_t used = 0;
      c.id = std::stoi(id_text, &used);
      if (used != id_text.size()) throw std::invalid_argument(id_text);
    } catch (const std::exception&) {
      throw CorpusError(source, line_no, "bad case id '" + id_text + "'");
    }
    if (c.sentence.empty()) throw CorpusError(source, line_no, "empty sentence");
    try {
      c.expected_form = parse_term(term_text);
    } catch (const SyntaxError& e) {
      throw CorpusError(source, line_no, std::string("expected term: ") + e.what());
    }
    if (!free_vars(c.expected_form).empty())
      throw CorpusError(source, line_no, "expected term has free variables");
    if (has_beta_redex(c.expected_form))
      throw CorpusError(source, line_no, "expected term is not beta-normal");
    if (adequacy == "adequate:yes") {
      c.expected_adequate = true;
    } else if (adequacy == "adequate:no") {
      c.expected_adequate = false;
    } else {
      throw CorpusError(source, line_no, "adequacy must be adequate:yes or adequate:no");
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

inline std::vector<CorpusCase> load_corpus_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError(path.string(), 0, "cannot open corpus file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_corpus(buf.str(), path.string());
}

namespace detail {

inline bool has_variables(const Term& t) {
  return t.visit(overloaded{
      [](const Var&) { return true; },
      [](const Const&) { return false; },
      [](const Lam&) { return true; },
      [](const App& x) { return has_variables(x.fn) || has_variables(x.arg); },
      [](const And& x) { return has_variables(x.lhs) || has_variables(x.rhs); },
      [](const Or& x) { return has_variables(x.lhs) || has_variables(x.rhs); },
      [](const Not& x) { return has_variables(x.operand); },
      [](const Eq& x) { return has_variables(x.lhs) || has_variables(x.rhs); },
  });
}

// Matches `name(a, b)` exactly: a symbolic constant applied to two arguments.
inline bool binary_call(const Term& t, std::string_view name, Term* a, Term* b) {
  auto outer = t.get_if<App>();
  if (!outer) return false;
  auto inner = outer->fn.get_if<App>();
  if (!inner) return false;
  auto head = inner->fn.get_if<Const>();
  if (!head || head->kind != ConstKind::Symbol || head->name != name) return false;
  *a = inner->arg;
  *b = outer->arg;
  return true;
}

inline Term rewrite_comparisons(const Term& t) {
  Term a = t, b = t;
  if (binary_call(t, "lessthanoreq", &a, &b)) {
    Term lhs = rewrite_comparisons(a), rhs = rewrite_comparisons(b);
    return Term::disj(Term::app(Term::constant("lessthan"), {lhs, rhs}),
                      rewrite_comparisons(Term::app(Term::constant("equals"), {lhs, rhs})));
  }
  if (binary_call(t, "equals", &a, &b)) {
    Term lhs = rewrite_comparisons(a), rhs = rewrite_comparisons(b);
    if (has_variables(lhs) && !has_variables(rhs)) std::swap(lhs, rhs);
    return Term::app(Term::constant("equals"), {lhs, rhs});
  }
  return t.visit(overloaded{
      [&](const Var&) { return t; },
      [&](const Const&) { return t; },
      [&](const Lam& x) { return Term::lam(x.param, rewrite_comparisons(x.body)); },
      [&](const App& x) {
        return Term::app(rewrite_comparisons(x.fn), rewrite_comparisons(x.arg));
      },
      [&](const And& x) {
        return Term::conj(rewrite_comparisons(x.lhs), rewrite_comparisons(x.rhs));
      },
      [&](const Or& x) {
        return Term::disj(rewrite_comparisons(x.lhs), rewrite_comparisons(x.rhs));
      },
      [&](const Not& x) { return Term::negation(rewrite_comparisons(x.operand)); },
      [&](const Eq& x) {
        return Term::equality(rewrite_comparisons(x.lhs), rewrite_comparisons(x.rhs));
      },
  });
}

}  // namespace detail

/// Canonical form for corpus comparison: beta-normal, lessthanoreq(a,b)
/// expanded to lessthan(a,b) | equals(a,b), and equals(a,b) oriented so a
/// variable-free argument comes first.
inline Term comparison_normalize(const Term& t, std::size_t fuel = kDefaultBetaFuel) {
  return detail::rewrite_comparisons(beta_normalize(t, fuel));
}

/// A case matches when the sentence has exactly one logical form and it
/// agrees with the fixture after comparison normalization.
inline bool match_case(const CorpusCase& c, const std::vector<Term>& forms) {
  if (forms.size() != 1) return false;
  return alpha_equal(comparison_normalize(forms.front()), comparison_normalize(c.expected_form));
}

}  // namespace nl2pbt
