#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace nl2pbt {

/// Malformed term, category, lexicon line, or corpus record. `position` is a
/// byte offset into the text that was being parsed.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// Beta normalization ran out of reduction steps.
class FuelExhausted : public std::runtime_error {
 public:
  explicit FuelExhausted(std::size_t fuel)
      : std::runtime_error("beta normalization did not terminate within " +
                           std::to_string(fuel) + " steps") {}
};

class LexiconError : public std::runtime_error {
 public:
  LexiconError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        source_(source),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

class TokenizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownWordError : public std::runtime_error {
 public:
  explicit UnknownWordError(std::vector<std::string> words)
      : std::runtime_error(describe(words)), words_(std::move(words)) {}

  const std::vector<std::string>& words() const noexcept { return words_; }

 private:
  static std::string describe(const std::vector<std::string>& words) {
    std::string out = "unknown word(s):";
    for (const auto& w : words) out += " " + w;
    return out;
  }

  std::vector<std::string> words_;
};

class MalformedFormError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CorpusError : public std::runtime_error {
 public:
  CorpusError(const std::string& source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what) {}
};

}  // namespace nl2pbt
