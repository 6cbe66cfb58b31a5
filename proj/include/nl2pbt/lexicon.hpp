#pragma once

// Word -> (category, semantics) entries.
//
// File format, one entry per line:
//
//   token => CATEGORY : TERM
//
// Blank lines and lines starting with `#` are ignored.  Numerals and
// double-quoted string literals never need entries; lookup() synthesizes
// `NP : <literal>` for them.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nl2pbt/category.hpp"
#include "nl2pbt/error.hpp"
#include "nl2pbt/term.hpp"

namespace nl2pbt {

struct LexEntry {
  std::string token;
  Category category;
  Term semantics;
  std::string source;
  std::size_t line = 0;
};

inline bool same_entry(const LexEntry& a, const LexEntry& b) {
  return a.token == b.token && a.category == b.category && alpha_equal(a.semantics, b.semantics);
}

class Lexicon {
 public:
  /// Appends after any existing entries for the same token.
  void add(LexEntry entry) { entries_[entry.token].push_back(std::move(entry)); }

  const std::vector<LexEntry>& entries_for(const std::string& token) const {
    static const std::vector<LexEntry> none;
    auto it = entries_.find(token);
    return it == entries_.end() ? none : it->second;
  }

  bool contains(const std::string& token) const { return entries_.count(token) != 0; }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& [token, list] : entries_) n += list.size();
    return n;
  }

  std::size_t word_count() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Every entry, grouped by token (tokens in lexicographic order).
  std::vector<LexEntry> all_entries() const {
    std::vector<LexEntry> out;
    for (const auto& [token, list] : entries_) out.insert(out.end(), list.begin(), list.end());
    return out;
  }

  const std::map<std::string, std::vector<LexEntry>>& by_token() const { return entries_; }

  const std::vector<std::string>& warnings() const { return warnings_; }
  void warn(std::string message) { warnings_.push_back(std::move(message)); }

 private:
  std::map<std::string, std::vector<LexEntry>> entries_;
  std::vector<std::string> warnings_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace detail

inline Lexicon load_lexicon(std::string_view text, const std::string& source = "<string>") {
  Lexicon lex;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++line_no;

    std::string_view line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;

    std::size_t arrow = line.find("=>");
    if (arrow == std::string_view::npos) throw LexiconError(source, line_no, "missing '=>'");
    std::size_t colon = line.find(':', arrow + 2);
    if (colon == std::string_view::npos) throw LexiconError(source, line_no, "missing ':'");

    std::string_view token = detail::trim(line.substr(0, arrow));
    if (token.empty()) throw LexiconError(source, line_no, "empty token");
    if (std::any_of(token.begin(), token.end(),
                    [](unsigned char c) { return std::isspace(c); }))
      throw LexiconError(source, line_no, "token contains whitespace");

    auto category = [&] {
      try {
        return parse_category(detail::trim(line.substr(arrow + 2, colon - arrow - 2)));
      } catch (const SyntaxError& e) {
        throw LexiconError(source, line_no, std::string("category: ") + e.what());
      }
    }();
    auto semantics = [&] {
      try {
        return parse_term(detail::trim(line.substr(colon + 1)));
      } catch (const SyntaxError& e) {
        throw LexiconError(source, line_no, std::string("semantics: ") + e.what());
      }
    }();
    LexEntry entry{detail::lowercase(token), std::move(category), std::move(semantics), source,
                   line_no};
    if (auto fv = free_vars(entry.semantics); !fv.empty())
      throw LexiconError(source, line_no, "semantics has free variable " + *fv.begin());

    const auto& existing = lex.entries_for(entry.token);
    if (std::any_of(existing.begin(), existing.end(),
                    [&](const LexEntry& e) { return same_entry(e, entry); })) {
      lex.warn(source + ":" + std::to_string(line_no) + ": duplicate entry for '" + entry.token +
               "' ignored");
      continue;
    }
    lex.add(std::move(entry));
  }
  return lex;
}

inline Lexicon load_lexicon_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LexiconError(path.string(), 0, "cannot open lexicon file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_lexicon(buf.str(), path.string());
}

/// Union of both lexicons; for each token the extension's entries follow the
/// base's.  Nothing is removed or deduplicated.
inline Lexicon merge(const Lexicon& base, const Lexicon& extension) {
  Lexicon out = base;
  for (const auto& [token, list] : extension.by_token())
    for (const auto& e : list) out.add(e);
  for (const auto& w : extension.warnings()) out.warn(w);
  return out;
}

inline bool is_string_literal_token(std::string_view token) {
  return token.size() >= 2 && token.front() == '"' && token.back() == '"';
}

/// Stored entries for `token`, followed by a synthesized NP entry when the
/// token is a numeral or a quoted string.
inline std::vector<LexEntry> lookup(const Lexicon& lex, const std::string& token) {
  std::vector<LexEntry> out = lex.entries_for(token);
  if (is_numeric_literal(token)) {
    out.push_back(LexEntry{token, Category::prim("NP"), Term::number(token), "<literal>", 0});
  } else if (is_string_literal_token(token)) {
    out.push_back(LexEntry{token, Category::prim("NP"),
                           Term::string(token.substr(1, token.size() - 2)), "<literal>", 0});
  }
  return out;
}

/// Splits on whitespace, drops trailing sentence punctuation, keeps quoted
/// spans as single tokens (quotes included) and lowercases everything else.
inline std::vector<std::string> tokenize(std::string_view sentence) {
  auto is_punct = [](char c) { return c == '.' || c == ',' || c == '!' || c == '?'; };
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < sentence.size()) {
    if (std::isspace(static_cast<unsigned char>(sentence[i]))) {
      ++i;
      continue;
    }
    if (sentence[i] == '"') {
      std::size_t close = sentence.find('"', i + 1);
      if (close == std::string_view::npos)
        throw TokenizeError("unbalanced quote at position " + std::to_string(i));
      tokens.emplace_back(sentence.substr(i, close - i + 1));
      i = close + 1;
      while (i < sentence.size() && is_punct(sentence[i])) ++i;
      if (i < sentence.size() && !std::isspace(static_cast<unsigned char>(sentence[i])))
        throw TokenizeError("unexpected text after string literal at position " +
                            std::to_string(i));
      continue;
    }
    std::size_t start = i;
    while (i < sentence.size() && !std::isspace(static_cast<unsigned char>(sentence[i]))) ++i;
    std::string_view word = sentence.substr(start, i - start);
    while (!word.empty() && is_punct(word.back())) word.remove_suffix(1);
    if (word.find('"') != std::string_view::npos)
      throw TokenizeError("unbalanced quote in '" + std::string(word) + "'");
    if (!word.empty()) tokens.push_back(detail::lowercase(word));
  }
  return tokens;
}

}  // namespace nl2pbt
