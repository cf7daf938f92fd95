// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef DAMFORGE_SEMANTICS_HPP_
#define DAMFORGE_SEMANTICS_HPP_

#include <filesystem>
#include <istream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "damforge/corpus.hpp"

namespace damforge {

// A set of lowercase entries read from a one-per-line file with '#'
// comments.
class WordList {
 public:
  WordList() = default;
  WordList(std::initializer_list<std::string_view> words);

  static WordList load(const std::filesystem::path& path);
  static WordList parse(std::istream& in);

  void add(std::string_view word);
  bool contains(std::string_view word) const;  // case-insensitive
  std::size_t size() const { return words_.size(); }

 private:
  std::set<std::string> words_;
};

// Deterministic lexicon-plus-heuristic labeller for argument NPs.
//
//   pronominality  pronoun iff the head is tagged PRON (proper nouns count
//                  as common).
//   definiteness   definite iff the head is a pronoun or proper noun, or
//                  the span holds a definite determiner, demonstrative or
//                  possessive. Bare plurals and mass nouns are indefinite.
//   animacy        animate iff the head lemma (or form) is in the animate
//                  lexicon, or the head is a personal pronoun with human
//                  reference.
class Annotator {
 public:
  Annotator(WordList animate_lexicon, WordList definite_determiners);

  // Throws ConfigError if either file is missing.
  static Annotator load(const std::filesystem::path& animate_lexicon,
                        const std::filesystem::path& definite_determiners);

  SemanticLabels annotate(const Sentence& sentence, const NPSpan& span) const;

  // Fills both label slots of every frame.
  void annotate(AnnotatedSentence& sentence) const;

 private:
  WordList animate_;
  WordList definite_;
};

struct GoldNp {
  Sentence sentence;
  NPSpan span;
  SemanticLabels labels;
};

// Reads a labeled NP set stored as CoNLL-U. Each block carries
//   # np = <head> <start> <end>          (1-based token ids)
//   # gold = <animacy> <definiteness> <pronominality>
// Throws ParseError on missing or malformed annotations.
std::vector<GoldNp> read_gold_nps(std::istream& in);

struct AnnotatorAccuracy {
  std::size_t n = 0;
  double animacy = 0;
  double definiteness = 0;
  double pronominality = 0;

  double for_trigger(Trigger trigger) const;
};

// Per-trigger accuracy of `annotator` against the gold labels. Throws
// InputError on an empty set or when some trigger has a single class.
AnnotatorAccuracy evaluate_annotator(const Annotator& annotator,
                                     const std::vector<GoldNp>& gold);

}  // namespace damforge

#endif  // DAMFORGE_SEMANTICS_HPP_
