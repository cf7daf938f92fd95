// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "damforge/semantics.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "damforge/errors.hpp"
#include "damforge/ingest.hpp"

namespace damforge {

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

// Personal pronouns with human reference. "they"/"them" are included:
// in conversational text they overwhelmingly refer to people.
const WordList& human_pronouns() {
  static const WordList kPronouns{
      "i",        "me",         "my",        "mine",       "myself",
      "you",      "your",       "yours",     "yourself",   "yourselves",
      "he",       "him",        "his",       "himself",    "she",
      "her",      "hers",       "herself",   "we",         "us",
      "our",      "ours",       "ourselves", "they",       "them",
      "their",    "theirs",     "themselves", "who",       "whom",
      "whoever",  "someone",    "somebody",  "everyone",   "everybody",
      "anyone",   "anybody",    "nobody",    "no-one",     "y'all"};
  return kPronouns;
}

bool is_possessive_marker(const Token& token) {
  const std::string form = lower(token.surface);
  return token.deprel == "nmod:poss" || token.deprel == "poss" ||
         token.deprel == "det:poss" || form == "'s" || form == "'";
}

}  // namespace

WordList::WordList(std::initializer_list<std::string_view> words) {
  for (std::string_view word : words) add(word);
}

WordList WordList::parse(std::istream& in) {
  WordList list;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string word;
    if (fields >> word) list.add(word);
  }
  return list;
}

WordList WordList::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read word list " + path.string());
  return parse(in);
}

void WordList::add(std::string_view word) { words_.insert(lower(word)); }

bool WordList::contains(std::string_view word) const {
  return words_.contains(lower(word));
}

Annotator::Annotator(WordList animate_lexicon, WordList definite_determiners)
    : animate_(std::move(animate_lexicon)),
      definite_(std::move(definite_determiners)) {}

Annotator Annotator::load(const std::filesystem::path& animate_lexicon,
                          const std::filesystem::path& definite_determiners) {
  return Annotator(WordList::load(animate_lexicon),
                   WordList::load(definite_determiners));
}

SemanticLabels Annotator::annotate(const Sentence& sentence,
                                   const NPSpan& span) const {
  const Token& head = sentence.tokens.at(span.head_index);
  SemanticLabels labels;

  const bool pronoun = head.upos == "PRON";
  const bool proper = head.upos == "PROPN";
  labels.pronominality =
      pronoun ? Pronominality::kPronoun : Pronominality::kCommon;

  bool definite = pronoun || proper;
  for (int i = span.start; i <= span.end && !definite; ++i) {
    if (i == span.head_index) continue;
    const Token& token = sentence.tokens[i];
    definite = definite_.contains(token.surface) ||
               definite_.contains(token.lemma) || is_possessive_marker(token);
  }
  labels.definiteness =
      definite ? Definiteness::kDefinite : Definiteness::kIndefinite;

  bool animate = animate_.contains(head.lemma) || animate_.contains(head.surface);
  if (pronoun) {
    animate = animate || human_pronouns().contains(head.surface) ||
              human_pronouns().contains(head.lemma);
  }
  labels.animacy = animate ? Animacy::kAnimate : Animacy::kInanimate;
  return labels;
}

void Annotator::annotate(AnnotatedSentence& sentence) const {
  for (SvoFrame& frame : sentence.frames) {
    frame.subject_labels = annotate(sentence.sentence, frame.subject);
    frame.object_labels = annotate(sentence.sentence, frame.object);
  }
}

std::vector<GoldNp> read_gold_nps(std::istream& in) {
  // Collect the raw block text alongside the comments we care about, then
  // hand the token lines to the CoNLL-U reader.
  std::vector<GoldNp> out;
  std::string line;
  std::size_t line_no = 0;
  std::ostringstream block;
  std::size_t block_start = 0;
  std::string np_line, gold_line;
  bool has_tokens = false;

  auto flush = [&] {
    const std::string text = block.str();
    if (text.empty()) return;
    block.str("");
    if (!has_tokens && np_line.empty() && gold_line.empty()) return;  // header
    has_tokens = false;
    if (np_line.empty() || gold_line.empty()) {
      throw ParseError(block_start, "labeled NP block lacks '# np' or '# gold'");
    }
    std::istringstream block_in(text);
    ConlluReadResult parsed = read_conllu(block_in, /*strict=*/true);
    GoldNp gold;
    gold.sentence = std::move(parsed.sentences.at(0));
    std::istringstream np_fields(np_line);
    int head = 0, start = 0, end = 0;
    if (!(np_fields >> head >> start >> end) || start < 1 || start > head ||
        head > end || end > static_cast<int>(gold.sentence.size())) {
      throw ParseError(block_start, "bad '# np' span '" + np_line + "'");
    }
    gold.span = {head - 1, start - 1, end - 1};
    std::istringstream gold_fields(gold_line);
    std::string animacy, definiteness, pronominality;
    gold_fields >> animacy >> definiteness >> pronominality;
    if ((animacy != "animate" && animacy != "inanimate") ||
        (definiteness != "definite" && definiteness != "indefinite") ||
        (pronominality != "pronoun" && pronominality != "common")) {
      throw ParseError(block_start, "bad '# gold' labels '" + gold_line + "'");
    }
    gold.labels.animacy =
        animacy == "animate" ? Animacy::kAnimate : Animacy::kInanimate;
    gold.labels.definiteness = definiteness == "definite"
                                   ? Definiteness::kDefinite
                                   : Definiteness::kIndefinite;
    gold.labels.pronominality = pronominality == "pronoun"
                                    ? Pronominality::kPronoun
                                    : Pronominality::kCommon;
    out.push_back(std::move(gold));
    np_line.clear();
    gold_line.clear();
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      flush();
      continue;
    }
    if (block.str().empty()) block_start = line_no;
    auto value_of = [&](std::string_view key) -> std::string {
      const std::string prefix = "# " + std::string(key) + " =";
      if (!line.starts_with(prefix)) return {};
      return line.substr(prefix.size());
    };
    if (auto v = value_of("np"); !v.empty()) np_line = v;
    if (auto v = value_of("gold"); !v.empty()) gold_line = v;
    if (!line.starts_with("#")) has_tokens = true;
    block << line << '\n';
  }
  flush();
  return out;
}

double AnnotatorAccuracy::for_trigger(Trigger trigger) const {
  switch (trigger) {
    case Trigger::kAnimacy:
      return animacy;
    case Trigger::kDefiniteness:
      return definiteness;
    case Trigger::kPronominality:
      return pronominality;
  }
  return 0;
}

AnnotatorAccuracy evaluate_annotator(const Annotator& annotator,
                                     const std::vector<GoldNp>& gold) {
  if (gold.empty()) throw InputError("gold NP set is empty");
  for (Trigger trigger : kAllTriggers) {
    const auto high = std::count_if(gold.begin(), gold.end(), [&](const GoldNp& g) {
      return g.labels.is_high(trigger);
    });
    if (high == 0 || high == static_cast<long>(gold.size())) {
      throw InputError("gold NP set has a single class for " +
                       std::string(to_string(trigger)));
    }
  }
  std::size_t animacy = 0, definiteness = 0, pronominality = 0;
  for (const GoldNp& g : gold) {
    const SemanticLabels predicted = annotator.annotate(g.sentence, g.span);
    animacy += predicted.animacy == g.labels.animacy;
    definiteness += predicted.definiteness == g.labels.definiteness;
    pronominality += predicted.pronominality == g.labels.pronominality;
  }
  const double n = static_cast<double>(gold.size());
  return {gold.size(), animacy / n, definiteness / n, pronominality / n};
}

}  // namespace damforge
