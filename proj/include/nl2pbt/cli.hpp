#pragma once

// The nl2pbt command line: parse, gen and eval over one sentence, a file of
// sentences, or a corpus.  Each run_* function writes its report to `out`,
// diagnostics to `err`, and returns the process exit status.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nl2pbt/codegen.hpp"
#include "nl2pbt/corpus.hpp"
#include "nl2pbt/error.hpp"
#include "nl2pbt/lexicon.hpp"
#include "nl2pbt/parser.hpp"
#include "nl2pbt/term.hpp"

#ifndef NL2PBT_DATA_DIR
#define NL2PBT_DATA_DIR ""
#endif

namespace nl2pbt {

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;  // no parse, unusable form, or a corpus mismatch
inline constexpr int kUnknownWord = 2;
inline constexpr int kLoadError = 3;  // lexicon or corpus file
inline constexpr int kAmbiguous = 4;
inline constexpr int kMalformedInput = 5;  // sentence does not tokenize
inline constexpr int kUsage = 64;
}  // namespace exit_code

struct CliInvocation {
  std::string command;  // parse | gen | eval
  std::vector<std::string> lexicon_paths;
  std::optional<std::string> sentence;
  std::optional<std::filesystem::path> input_file;
  std::optional<std::filesystem::path> corpus_path;
  bool show_derivations = false;
  std::size_t max_parses = 10;
  std::optional<std::filesystem::path> out;
  std::string format = "text";  // text | json
};

inline const std::vector<std::string> kDefaultLexicons = {"core.lex", "sttp.lex"};

namespace detail {

using nlohmann::json;

inline std::vector<std::filesystem::path> lexicon_search_path() {
  std::vector<std::filesystem::path> dirs;
  if (const char* env = std::getenv("NL2PBT_LEXICON_PATH")) {
    std::string_view rest = env;
    while (!rest.empty()) {
      std::size_t colon = rest.find(':');
      std::string_view dir = rest.substr(0, colon);
      if (!dir.empty()) dirs.emplace_back(std::string(dir));
      if (colon == std::string_view::npos) break;
      rest.remove_prefix(colon + 1);
    }
  }
  if (std::string_view(NL2PBT_DATA_DIR).size())
    dirs.push_back(std::filesystem::path(NL2PBT_DATA_DIR) / "lexicon");
  return dirs;
}

// A path that exists as given wins; otherwise the first search directory
// that holds a file of that name.
inline std::filesystem::path resolve_lexicon(const std::string& name) {
  std::filesystem::path p(name);
  if (std::filesystem::exists(p)) return p;
  if (p.is_relative()) {
    for (const auto& dir : lexicon_search_path())
      if (std::filesystem::exists(dir / p)) return dir / p;
  }
  throw LexiconError(name, 0, "lexicon file not found");
}

inline Lexicon load_lexicons(const std::vector<std::string>& names, std::ostream& err) {
  Lexicon lex;
  for (const auto& name : names.empty() ? kDefaultLexicons : names)
    lex = merge(lex, load_lexicon_file(resolve_lexicon(name)));
  for (const auto& w : lex.warnings()) err << "warning: " << w << "\n";
  return lex;
}

inline std::vector<std::string> read_sentences(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    out.emplace_back(s);
  }
  return out;
}

struct SentenceReport {
  std::string sentence;
  std::vector<std::string> tokens;
  std::vector<std::string> unknown_words;
  std::string error;
  ParseResult result;
  std::vector<Term> forms;
  int status = exit_code::kOk;
};

inline SentenceReport analyse(const std::string& sentence, const Lexicon& lex) {
  SentenceReport r;
  r.sentence = sentence;
  try {
    r.tokens = tokenize(sentence);
    if (r.tokens.empty()) {
      r.status = exit_code::kMalformedInput;
      r.error = "empty sentence";
      return r;
    }
    r.result = parse(r.tokens, lex);
    r.forms = logical_forms(r.result.derivations);
    if (r.forms.empty()) {
      r.status = exit_code::kFailed;
      r.error = "no parse";
    }
  } catch (const TokenizeError& e) {
    r.status = exit_code::kMalformedInput;
    r.error = e.what();
  } catch (const UnknownWordError& e) {
    r.status = exit_code::kUnknownWord;
    r.unknown_words = e.words();
    r.error = e.what();
  } catch (const FuelExhausted& e) {
    r.status = exit_code::kFailed;
    r.error = e.what();
  }
  return r;
}

inline std::string status_name(int status) {
  switch (status) {
    case exit_code::kOk: return "ok";
    case exit_code::kFailed: return "no-parse";
    case exit_code::kUnknownWord: return "unknown-word";
    case exit_code::kAmbiguous: return "ambiguous";
    case exit_code::kMalformedInput: return "malformed-input";
    default: return "error";
  }
}

inline std::vector<std::string> printed(const std::vector<Term>& forms) {
  std::vector<std::string> out;
  for (const auto& f : forms) out.push_back(print_term(f));
  return out;
}

inline json parse_json(const SentenceReport& r, const CliInvocation& inv) {
  json j = {{"sentence", r.sentence},
            {"status", status_name(r.status)},
            {"tokens", r.tokens},
            {"forms", printed(r.forms)},
            {"parse_count", r.result.derivations.size()},
            {"deduped_count", r.forms.size()},
            {"truncated", r.result.truncated}};
  if (!r.unknown_words.empty()) j["unknown_words"] = r.unknown_words;
  if (!r.error.empty()) j["error"] = r.error;
  if (inv.show_derivations) {
    json trees = json::array();
    for (std::size_t i = 0; i < r.result.derivations.size() && i < inv.max_parses; ++i)
      trees.push_back(render_derivation(r.result.derivations[i]));
    j["derivations"] = trees;
  }
  return j;
}

inline void parse_text(const SentenceReport& r, const CliInvocation& inv, bool batch,
                       std::ostream& out, std::ostream& err) {
  if (batch) out << r.sentence << "\n";
  const std::string indent = batch ? "  " : "";
  if (r.status != exit_code::kOk) {
    err << (batch ? r.sentence + ": " : "") << r.error << "\n";
    return;
  }
  for (const auto& f : r.forms) out << indent << print_term(f) << "\n";
  out << indent << "# " << r.result.derivations.size() << " parse(s), " << r.forms.size()
      << " distinct form(s)" << (r.result.truncated ? ", truncated" : "") << "\n";
  if (!inv.show_derivations) return;
  for (std::size_t i = 0; i < r.result.derivations.size() && i < inv.max_parses; ++i) {
    out << "\n" << indent << "# parse " << i + 1 << "\n";
    std::istringstream tree(render_derivation(r.result.derivations[i]));
    for (std::string line; std::getline(tree, line);) out << indent << line << "\n";
  }
}

inline bool write_file(const std::filesystem::path& path, const std::string& text,
                       std::ostream& err) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) {
    err << "cannot write " << path.string() << "\n";
    return false;
  }
  return true;
}

}  // namespace detail

inline int run_parse(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  using detail::json;
  Lexicon lex;
  std::vector<std::string> sentences;
  try {
    lex = detail::load_lexicons(inv.lexicon_paths, err);
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return exit_code::kLoadError;
  }
  try {
    sentences = inv.input_file ? detail::read_sentences(*inv.input_file)
                               : std::vector<std::string>{inv.sentence.value_or("")};
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return exit_code::kLoadError;
  }

  const bool batch = inv.input_file.has_value();
  int status = exit_code::kOk;
  json results = json::array();
  for (const auto& s : sentences) {
    auto r = detail::analyse(s, lex);
    status = std::max(status, r.status);
    if (inv.format == "json") {
      results.push_back(detail::parse_json(r, inv));
    } else {
      detail::parse_text(r, inv, batch, out, err);
    }
  }
  if (inv.format == "json") {
    if (batch) {
      out << json{{"results", results}}.dump(2) << "\n";
    } else {
      out << results.at(0).dump(2) << "\n";
    }
  }
  return status;
}

inline int run_gen(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  using detail::json;
  Lexicon lex;
  struct Job {
    std::string name;  // file stem
    std::string test_name;
    std::string sentence;
  };
  std::vector<Job> jobs;
  try {
    lex = detail::load_lexicons(inv.lexicon_paths, err);
    if (inv.corpus_path) {
      for (const auto& c : load_corpus_file(*inv.corpus_path))
        jobs.push_back({std::to_string(c.id), "sttp-" + std::to_string(c.id), c.sentence});
    } else if (inv.input_file) {
      auto sentences = detail::read_sentences(*inv.input_file);
      for (std::size_t i = 0; i < sentences.size(); ++i)
        jobs.push_back({std::to_string(i + 1), "sentence-" + std::to_string(i + 1), sentences[i]});
    } else {
      jobs.push_back({"", "generated", inv.sentence.value_or("")});
    }
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return exit_code::kLoadError;
  }

  const bool batch = inv.corpus_path || inv.input_file;
  int status = exit_code::kOk;
  json files = json::array();
  for (const auto& job : jobs) {
    auto r = detail::analyse(job.sentence, lex);
    json entry = {{"sentence", job.sentence}, {"forms", detail::printed(r.forms)}};
    std::string source;
    if (r.status == exit_code::kOk && r.forms.size() > 1) {
      r.status = exit_code::kAmbiguous;
      r.error = std::to_string(r.forms.size()) + " distinct logical forms:";
      for (const auto& f : r.forms) r.error += "\n  " + print_term(f);
    }
    if (r.status == exit_code::kOk) {
      try {
        source = generate_test_file(r.forms.front(), job.test_name);
      } catch (const MalformedFormError& e) {
        r.status = exit_code::kFailed;
        r.error = std::string("cannot emit a test: ") + e.what();
      }
    }
    status = std::max(status, r.status);
    entry["status"] = detail::status_name(r.status);
    if (!r.error.empty()) {
      entry["error"] = r.error;
      err << (batch ? job.sentence + ": " : "") << r.error << "\n";
    }
    if (r.status == exit_code::kOk) {
      if (batch && inv.out) {
        auto path = *inv.out / (job.name + ".test.js");
        if (!detail::write_file(path, source, err)) return exit_code::kFailed;
        entry["file"] = path.string();
      } else if (inv.out) {
        if (!detail::write_file(*inv.out, source, err)) return exit_code::kFailed;
        entry["file"] = inv.out->string();
      } else if (inv.format != "json") {
        if (batch) out << "// ---- " << job.sentence << "\n";
        out << source;
      } else {
        entry["source"] = source;
      }
    }
    files.push_back(entry);
  }
  if (inv.format == "json") out << json{{"results", files}}.dump(2) << "\n";
  return status;
}

inline int run_eval(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  using detail::json;
  Lexicon lex;
  std::vector<CorpusCase> cases;
  try {
    lex = detail::load_lexicons(inv.lexicon_paths, err);
    cases = load_corpus_file(inv.corpus_path.value());
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return exit_code::kLoadError;
  }

  json rows = json::array();
  std::size_t passed = 0;
  for (const auto& c : cases) {
    auto r = detail::analyse(c.sentence, lex);
    bool ok = r.status == exit_code::kOk && match_case(c, r.forms);
    if (ok) ++passed;
    json row = {{"id", c.id},
                {"sentence", c.sentence},
                {"parse_count", r.result.derivations.size()},
                {"deduped_count", r.forms.size()},
                {"truncated", r.result.truncated},
                {"forms", detail::printed(r.forms)},
                {"expected", print_term(c.expected_form)},
                {"expected_adequate", c.expected_adequate},
                {"match", ok}};
    if (!r.error.empty()) row["error"] = r.error;
    rows.push_back(row);
  }

  if (inv.format == "json") {
    out << json{{"cases", rows}, {"passed", passed}, {"total", cases.size()}}.dump(2) << "\n";
  } else {
    out << "id  parses  forms  result  sentence\n";
    for (const auto& row : rows) {
      std::ostringstream line;
      line << std::left << std::setw(4) << row["id"].get<int>() << std::setw(8)
           << row["parse_count"].get<std::size_t>() << std::setw(7)
           << row["deduped_count"].get<std::size_t>() << std::setw(8)
           << (row["match"].get<bool>() ? "PASS" : "FAIL") << row["sentence"].get<std::string>();
      out << line.str() << "\n";
      if (!row["match"].get<bool>()) {
        if (row.contains("error")) out << "      error:    " << row["error"].get<std::string>() << "\n";
        for (const auto& f : row["forms"]) out << "      got:      " << f.get<std::string>() << "\n";
        out << "      expected: " << row["expected"].get<std::string>() << "\n";
      }
    }
    out << passed << "/" << cases.size() << " cases match\n";
  }
  return passed == cases.size() ? exit_code::kOk : exit_code::kFailed;
}

inline int run(const CliInvocation& inv, std::ostream& out, std::ostream& err) {
  if (inv.command == "parse") return run_parse(inv, out, err);
  if (inv.command == "gen") return run_gen(inv, out, err);
  if (inv.command == "eval") return run_eval(inv, out, err);
  err << "unknown command '" << inv.command << "'\n";
  return exit_code::kUsage;
}

/// Parses argv into a CliInvocation and runs it.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Translate English property descriptions into property-based tests"};
  app.require_subcommand(1);
  CliInvocation inv;
  std::string input, corpus, out_path;

  auto common = [&](CLI::App* sub) {
    sub->add_option("-l,--lexicon", inv.lexicon_paths,
                    "Lexicon file, merged in order (default: core.lex sttp.lex)")
        ->allow_extra_args(false);
    sub->add_option("--format", inv.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}));
  };

  auto* parse_cmd = app.add_subcommand("parse", "Print the logical forms of a sentence");
  common(parse_cmd);
  auto* p_sentence = parse_cmd->add_option("sentence", inv.sentence, "Sentence to parse");
  auto* p_input = parse_cmd->add_option("-i,--input", input, "File with one sentence per line");
  p_sentence->excludes(p_input);
  parse_cmd->add_flag("-d,--show-derivations", inv.show_derivations, "Print derivation trees");
  parse_cmd->add_option("--max-parses", inv.max_parses, "Derivations to print per sentence")
      ->check(CLI::PositiveNumber);

  auto* gen_cmd = app.add_subcommand("gen", "Emit a fast-check test for a sentence");
  common(gen_cmd);
  auto* g_sentence = gen_cmd->add_option("sentence", inv.sentence, "Sentence to translate");
  auto* g_input = gen_cmd->add_option("-i,--input", input, "File with one sentence per line");
  auto* g_corpus = gen_cmd->add_option("-c,--corpus", corpus, "Corpus file");
  g_sentence->excludes(g_input)->excludes(g_corpus);
  g_input->excludes(g_corpus);
  gen_cmd->add_option("-o,--out", out_path,
                      "Output file, or directory when used with --input/--corpus");

  auto* eval_cmd = app.add_subcommand("eval", "Check a corpus against its expected forms");
  common(eval_cmd);
  eval_cmd->add_option("corpus", corpus, "Corpus file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? exit_code::kOk : exit_code::kUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  inv.command = chosen->get_name();
  if (!input.empty()) inv.input_file = input;
  if (!corpus.empty()) inv.corpus_path = corpus;
  if (!out_path.empty()) inv.out = out_path;

  if (inv.command != "eval" && !inv.sentence && !inv.input_file && !inv.corpus_path) {
    err << inv.command << ": give a sentence or --input FILE\n";
    return exit_code::kUsage;
  }
  return run(inv, out, err);
}

}  // namespace nl2pbt
