#pragma once

// CCG categories: primitives with an optional feature (CN[Gen]) and
// directional slash types.  A/B looks for a B on its right, A\B for a B on
// its left; the result is always written left of the slash.

#include <cctype>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "nl2pbt/error.hpp"

namespace nl2pbt {

enum class Direction { Right, Left };

/// Modality that restricts a slash to plain application.
inline const std::string kApplicationOnly = "⋆";

class Category;

namespace detail {
struct CategoryNode;
}

struct Prim {
  std::string name;
  std::optional<std::string> feature;
};

struct Slash;

class Category {
 public:
  static Category prim(std::string name, std::optional<std::string> feature = std::nullopt);
  static Category slash(Direction dir, Category result, Category arg,
                        std::optional<std::string> modality = std::nullopt);
  static Category right(Category result, Category arg) {
    return slash(Direction::Right, std::move(result), std::move(arg));
  }
  static Category left(Category result, Category arg) {
    return slash(Direction::Left, std::move(result), std::move(arg));
  }

  const Prim* as_prim() const;
  const Slash* as_slash() const;
  bool is_prim() const { return as_prim() != nullptr; }

 private:
  explicit Category(std::shared_ptr<const detail::CategoryNode> node) : node_(std::move(node)) {}

  std::shared_ptr<const detail::CategoryNode> node_;
};

struct Slash {
  Direction dir;
  Category result;
  Category arg;
  std::optional<std::string> modality;
};

namespace detail {
struct CategoryNode {
  std::variant<Prim, Slash> value;
};
}  // namespace detail

inline Category Category::prim(std::string name, std::optional<std::string> feature) {
  return Category(std::make_shared<const detail::CategoryNode>(
      detail::CategoryNode{Prim{std::move(name), std::move(feature)}}));
}

inline Category Category::slash(Direction dir, Category result, Category arg,
                                std::optional<std::string> modality) {
  return Category(std::make_shared<const detail::CategoryNode>(
      detail::CategoryNode{Slash{dir, std::move(result), std::move(arg), std::move(modality)}}));
}

inline const Prim* Category::as_prim() const { return std::get_if<Prim>(&node_->value); }
inline const Slash* Category::as_slash() const { return std::get_if<Slash>(&node_->value); }

inline bool operator==(const Category& a, const Category& b) {
  if (auto pa = a.as_prim()) {
    auto pb = b.as_prim();
    return pb && pa->name == pb->name && pa->feature == pb->feature;
  }
  auto sa = a.as_slash();
  auto sb = b.as_slash();
  return sb && sa->dir == sb->dir && sa->modality == sb->modality && sa->result == sb->result &&
         sa->arg == sb->arg;
}

/// Argument matching for rule application.  An unfeatured primitive on the
/// expected side accepts the same primitive with any feature; the converse
/// does not hold, so CN matches CN[Gen] but CN[Gen] does not match CN.
inline bool categories_match(const Category& expected, const Category& actual) {
  if (auto pe = expected.as_prim()) {
    auto pa = actual.as_prim();
    if (!pa || pe->name != pa->name) return false;
    return !pe->feature || pe->feature == pa->feature;
  }
  auto se = expected.as_slash();
  auto sa = actual.as_slash();
  return sa && se->dir == sa->dir && se->modality == sa->modality &&
         categories_match(se->result, sa->result) && categories_match(se->arg, sa->arg);
}

// ---------------------------------------------------------------------------
// Text syntax: `((S/(S\NP))/CN[Gen])/ADJ`.  Slashes associate to the left;
// a slash may carry a modality mark right after it (`/*` or `/⋆`, `/◇`,
// `/×`, `/·`).

namespace detail {

inline const std::pair<std::string_view, std::string_view> kModalities[] = {
    {"*", "⋆"}, {"⋆", "⋆"}, {"◇", "◇"}, {"×", "×"}, {"·", "·"},
};

class CategoryParser {
 public:
  explicit CategoryParser(std::string_view text) : text_(text) {}

  Category parse() {
    Category c = category();
    skip_space();
    if (pos_ != text_.size()) unexpected();
    return c;
  }

 private:
  [[noreturn]] void unexpected() const {
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of category", pos_);
    char c = text_[pos_];
    if (c == '(' || c == ')' || c == '/' || c == '\\' || c == '[' || c == ']' ||
        std::isalnum(static_cast<unsigned char>(c)))
      throw SyntaxError(std::string("unexpected '") + c + "' in category", pos_);
    throw SyntaxError("unknown character in category", pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Category category() {
    Category c = atom();
    for (;;) {
      skip_space();
      if (pos_ >= text_.size() || (text_[pos_] != '/' && text_[pos_] != '\\')) return c;
      Direction dir = text_[pos_] == '/' ? Direction::Right : Direction::Left;
      ++pos_;
      std::optional<std::string> modality = modality_mark();
      Category arg = atom();
      c = Category::slash(dir, std::move(c), std::move(arg), std::move(modality));
    }
  }

  std::optional<std::string> modality_mark() {
    for (const auto& [spelling, canonical] : kModalities) {
      if (text_.substr(pos_, spelling.size()) == spelling) {
        pos_ += spelling.size();
        return std::string(canonical);
      }
    }
    return std::nullopt;
  }

  std::string name() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) unexpected();
    return std::string(text_.substr(start, pos_ - start));
  }

  Category atom() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      Category c = category();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') unexpected();
      ++pos_;
      return c;
    }
    std::string prim = name();
    if (pos_ < text_.size() && text_[pos_] == '[') {
      ++pos_;
      std::string feature = name();
      if (pos_ >= text_.size() || text_[pos_] != ']') unexpected();
      ++pos_;
      return Category::prim(std::move(prim), std::move(feature));
    }
    return Category::prim(std::move(prim));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline std::string print_operand(const Category& c);

}  // namespace detail

inline Category parse_category(std::string_view text) {
  return detail::CategoryParser(text).parse();
}

/// Complex subcategories are always parenthesized, the way the categories are
/// usually written by hand: `(S\NP)/ADJ`.
inline std::string print_category(const Category& c) {
  if (auto p = c.as_prim()) return p->feature ? p->name + "[" + *p->feature + "]" : p->name;
  const Slash& s = *c.as_slash();
  return detail::print_operand(s.result) + (s.dir == Direction::Right ? "/" : "\\") +
         s.modality.value_or("") + detail::print_operand(s.arg);
}

namespace detail {
inline std::string print_operand(const Category& c) {
  return c.is_prim() ? print_category(c) : "(" + print_category(c) + ")";
}
}  // namespace detail

}  // namespace nl2pbt
