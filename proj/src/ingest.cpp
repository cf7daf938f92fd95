// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "damforge/ingest.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "damforge/errors.hpp"
#include "damforge/random.hpp"

namespace damforge {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

bool parse_int(const std::string& text, int& value) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc() && ptr == last;
}

bool has_space_after_no(const std::string& misc) {
  std::size_t start = 0;
  while (start <= misc.size()) {
    std::size_t bar = misc.find('|', start);
    if (bar == std::string::npos) bar = misc.size();
    if (misc.compare(start, bar - start, "SpaceAfter=No") == 0) return true;
    start = bar + 1;
  }
  return false;
}

std::string trim(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

struct Block {
  std::size_t first_line = 0;
  std::vector<std::pair<std::size_t, std::string>> lines;
};

// Parses one block; throws ParseError on malformed input.
Sentence parse_block(const Block& block, std::size_t block_number) {
  Sentence sentence;
  sentence.id = "s" + std::to_string(block_number);
  for (const auto& [line_no, line] : block.lines) {
    if (line.starts_with("#")) {
      const std::string body = trim(line.substr(1));
      if (body.starts_with("sent_id")) {
        const auto eq = body.find('=');
        if (eq != std::string::npos) {
          const std::string id = trim(body.substr(eq + 1));
          if (!id.empty()) sentence.id = id;
        }
      }
      continue;
    }
    const std::vector<std::string> fields = split_tabs(line);
    if (fields.size() != 10) {
      throw ParseError(line_no, "expected 10 tab-separated columns, found " +
                                    std::to_string(fields.size()));
    }
    const std::string& id = fields[0];
    if (id.find('-') != std::string::npos || id.find('.') != std::string::npos) {
      continue;  // multiword range or empty node
    }
    int position = 0;
    if (!parse_int(id, position)) {
      throw ParseError(line_no, "non-numeric token id '" + id + "'");
    }
    const int expected = static_cast<int>(sentence.tokens.size()) + 1;
    if (position != expected) {
      throw ParseError(line_no, "token id " + id + " out of sequence (expected " +
                                    std::to_string(expected) + ")");
    }
    int head = 0;
    if (!parse_int(fields[6], head) || head < 0) {
      throw ParseError(line_no, "non-numeric HEAD '" + fields[6] + "'");
    }
    Token token;
    token.index = position - 1;
    token.surface = fields[1];
    token.lemma = fields[2];
    token.upos = fields[3];
    token.head = head == 0 ? token.index : head - 1;
    token.deprel = fields[7];
    token.space_after = !has_space_after_no(fields[9]);
    sentence.tokens.push_back(std::move(token));
  }
  if (sentence.tokens.empty()) {
    throw ParseError(block.first_line, "block has no token lines");
  }
  const int n = static_cast<int>(sentence.tokens.size());
  for (const Token& token : sentence.tokens) {
    if (token.head >= n) {
      throw ParseError(block.first_line,
                       "HEAD " + std::to_string(token.head + 1) +
                           " beyond sentence length in sentence " + sentence.id);
    }
  }
  return sentence;
}

}  // namespace

ConlluReadResult read_conllu(std::istream& in, bool strict) {
  ConlluReadResult result;
  Block block;
  std::size_t line_no = 0;
  std::size_t block_number = 0;
  auto flush = [&] {
    if (block.lines.empty()) return;
    bool comments_only = true;
    for (const auto& entry : block.lines) {
      if (!entry.second.starts_with("#")) comments_only = false;
    }
    if (comments_only) {  // file-level header comments
      block.lines.clear();
      return;
    }
    ++block_number;
    try {
      result.sentences.push_back(parse_block(block, block_number));
    } catch (const ParseError& error) {
      if (strict) throw;
      result.diagnostics.push_back({error.line(), error.what()});
    }
    block.lines.clear();
  };
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) {
      flush();
      continue;
    }
    if (block.lines.empty()) block.first_line = line_no;
    block.lines.emplace_back(line_no, line);
  }
  flush();
  return result;
}

void write_conllu(std::ostream& out, const Sentence& sentence) {
  out << "# sent_id = " << sentence.id << '\n';
  out << "# text = " << sentence.surface() << '\n';
  for (const Token& token : sentence.tokens) {
    out << token.index + 1 << '\t' << token.surface << '\t'
        << (token.lemma.empty() ? "_" : token.lemma) << '\t'
        << (token.upos.empty() ? "_" : token.upos) << "\t_\t_\t"
        << (token.is_root() ? 0 : token.head + 1) << '\t'
        << (token.deprel.empty() ? "_" : token.deprel) << "\t_\t"
        << (token.space_after ? "_" : "SpaceAfter=No") << '\n';
  }
  out << '\n';
}

void write_conllu(std::ostream& out, const std::vector<Sentence>& sentences) {
  for (const Sentence& sentence : sentences) write_conllu(out, sentence);
}

std::size_t whitespace_token_count(const Sentence& sentence) {
  std::istringstream words(sentence.surface());
  std::size_t count = 0;
  std::string word;
  while (words >> word) ++count;
  return count;
}

std::vector<Sentence> filter_by_length(std::vector<Sentence> sentences,
                                       std::size_t min_tokens,
                                       std::size_t max_tokens) {
  if (min_tokens < 1 || max_tokens < min_tokens) {
    throw ConfigError("length bounds must satisfy 1 <= min <= max");
  }
  std::vector<Sentence> kept;
  kept.reserve(sentences.size());
  for (Sentence& sentence : sentences) {
    const std::size_t n = whitespace_token_count(sentence);
    if (n >= min_tokens && n <= max_tokens) kept.push_back(std::move(sentence));
  }
  return kept;
}

void validate(const SplitRatios& ratios) {
  if (ratios.train < 0 || ratios.validation < 0 || ratios.test < 0) {
    throw ConfigError("split ratios must be nonnegative");
  }
  const double sum = ratios.train + ratios.validation + ratios.test;
  if (std::abs(sum - 1.0) > 1e-9) {
    std::ostringstream message;
    message << "split ratios must sum to 1 (got " << sum << ")";
    throw ConfigError(message.str());
  }
}

Split split_for(const std::string& sentence_id, const SplitRatios& ratios,
                std::uint64_t seed) {
  const double u =
      static_cast<double>(stable_hash(sentence_id, seed) >> 11) * 0x1.0p-53;
  if (u < ratios.train) return Split::kTrain;
  if (u < ratios.train + ratios.validation) return Split::kValidation;
  return Split::kTest;
}

void assign_splits(std::vector<Sentence>& sentences, const SplitRatios& ratios,
                   std::uint64_t seed) {
  validate(ratios);
  for (Sentence& sentence : sentences) {
    sentence.split = split_for(sentence.id, ratios, seed);
  }
}

}  // namespace damforge
