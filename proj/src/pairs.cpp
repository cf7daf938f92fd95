// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "damforge/pairs.hpp"

#include <algorithm>
#include <cctype>

#include "damforge/errors.hpp"
#include "damforge/random.hpp"

namespace damforge {

namespace {

constexpr int kMaxShiftAttempts = 16;

std::string without_whitespace(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

std::vector<std::size_t> pool(const std::vector<AnnotatedSentence>& corpus,
                              const std::vector<PerturbedSentence>& perturbed,
                              Bucket bucket) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    if (corpus[i].sentence.split == Split::kTest &&
        perturbed[i].bucket == bucket) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<PerturbedSentence> apply_all(
    const DamRule& rule, const std::vector<AnnotatedSentence>& corpus,
    const MarkerStrings& markers) {
  std::vector<PerturbedSentence> out;
  out.reserve(corpus.size());
  for (const AnnotatedSentence& sentence : corpus) {
    out.push_back(apply_rule(rule, sentence, markers));
  }
  return out;
}

}  // namespace

std::string_view to_string(PairKind kind) {
  switch (kind) {
    case PairKind::kMastery:
      return "mastery";
    case PairKind::kPlacement:
      return "placement";
    case PairKind::kBenchmark:
      return "benchmark";
  }
  return "mastery";
}

PairKind parse_pair_kind(std::string_view name) {
  if (name == "mastery") return PairKind::kMastery;
  if (name == "placement") return PairKind::kPlacement;
  if (name == "benchmark") return PairKind::kBenchmark;
  throw InputError("unknown pair kind '" + std::string(name) + "'");
}

std::string_view to_string(Polarity polarity) {
  return polarity == Polarity::kMarkedGood ? "marked_good" : "unmarked_good";
}

Polarity parse_polarity(std::string_view name) {
  if (name == "marked_good") return Polarity::kMarkedGood;
  if (name == "unmarked_good") return Polarity::kUnmarkedGood;
  throw InputError("unknown polarity '" + std::string(name) + "'");
}

std::vector<MinimalPair> generate_mastery_pairs(
    const DamRule& rule, const std::vector<AnnotatedSentence>& corpus,
    const MarkerStrings& markers, std::size_t n_per_polarity,
    std::uint64_t seed) {
  if (n_per_polarity == 0) return {};
  const std::vector<PerturbedSentence> perturbed =
      apply_all(rule, corpus, markers);
  const std::vector<std::size_t> affected =
      pool(corpus, perturbed, Bucket::kAffected);
  const std::vector<std::size_t> unaffected =
      pool(corpus, perturbed, Bucket::kUnaffected);
  if (affected.size() < n_per_polarity || unaffected.size() < n_per_polarity) {
    throw GenerationError(
        "rule " + rule.name() + ": need " + std::to_string(n_per_polarity) +
        " affected and unaffected test sentences, have " +
        std::to_string(affected.size()) + " affected and " +
        std::to_string(unaffected.size()) + " unaffected");
  }

  Rng rng(seed);
  std::vector<MinimalPair> pairs;
  pairs.reserve(2 * n_per_polarity);
  for (std::size_t k : rng.sample_without_replacement(affected.size(),
                                                      n_per_polarity)) {
    const std::size_t i = affected[k];
    MinimalPair pair;
    pair.kind = PairKind::kMastery;
    pair.rule = rule.name();
    pair.polarity = Polarity::kMarkedGood;
    pair.good = perturbed[i].surface;
    pair.bad = corpus[i].sentence.surface();
    pair.source_id = corpus[i].sentence.id;
    pairs.push_back(std::move(pair));
  }
  const MarkDecision forced = forced_decision(rule);
  for (std::size_t k : rng.sample_without_replacement(unaffected.size(),
                                                      n_per_polarity)) {
    const std::size_t i = unaffected[k];
    const AnnotatedSentence& sentence = corpus[i];
    MinimalPair pair;
    pair.kind = PairKind::kMastery;
    pair.rule = rule.name();
    pair.polarity = Polarity::kUnmarkedGood;
    pair.good = sentence.sentence.surface();
    pair.bad = render(sentence.sentence,
                      insertions_for(sentence.frames.front(), forced), markers);
    pair.source_id = sentence.sentence.id;
    pairs.push_back(std::move(pair));
  }
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    pairs[k].pair_id = rule.name() + "/mastery/" + std::to_string(k);
  }
  return pairs;
}

std::optional<std::vector<Insertion>> shift_insertion(
    const std::vector<Insertion>& insertions, std::size_t which, int shift,
    std::size_t sentence_length) {
  const int target = insertions.at(which).after + shift;
  if (shift == 0 || target < -1 ||
      target > static_cast<int>(sentence_length) - 1) {
    return std::nullopt;
  }
  for (std::size_t j = 0; j < insertions.size(); ++j) {
    if (j != which && insertions[j].after == target) return std::nullopt;
  }
  std::vector<Insertion> moved = insertions;
  moved[which].after = target;
  return moved;
}

std::vector<MinimalPair> generate_placement_pairs(
    const DamRule& rule, const std::vector<AnnotatedSentence>& corpus,
    const MarkerStrings& markers, std::size_t n, int max_shift,
    std::uint64_t seed) {
  if (n == 0) return {};
  if (max_shift < 1) throw ConfigError("max_shift must be at least 1");
  const std::vector<PerturbedSentence> perturbed =
      apply_all(rule, corpus, markers);
  std::vector<std::size_t> affected =
      pool(corpus, perturbed, Bucket::kAffected);

  Rng rng(seed);
  rng.shuffle(affected);
  std::vector<MinimalPair> pairs;
  for (std::size_t i : affected) {
    if (pairs.size() == n) break;
    const PerturbedSentence& source = perturbed[i];
    const std::size_t which = rng.uniform_index(source.insertions.size());
    std::optional<std::vector<Insertion>> moved;
    int shift = 0;
    for (int attempt = 0; attempt < kMaxShiftAttempts && !moved; ++attempt) {
      const int draw = static_cast<int>(rng.uniform_index(2 * max_shift));
      shift = draw < max_shift ? draw - max_shift : draw - max_shift + 1;
      moved = shift_insertion(source.insertions, which, shift,
                              corpus[i].sentence.size());
    }
    if (!moved) continue;
    MinimalPair pair;
    pair.pair_id = rule.name() + "/placement/" + std::to_string(pairs.size());
    pair.kind = PairKind::kPlacement;
    pair.rule = rule.name();
    pair.good = source.surface;
    pair.bad = render(corpus[i].sentence, *moved, markers);
    pair.shift = shift;
    pair.source_id = source.sentence_id;
    pairs.push_back(std::move(pair));
  }
  if (pairs.size() < n) {
    throw GenerationError("rule " + rule.name() + ": only " +
                          std::to_string(pairs.size()) + " of " +
                          std::to_string(n) +
                          " placement pairs could be generated from " +
                          std::to_string(affected.size()) +
                          " affected test sentences");
  }
  return pairs;
}

std::vector<BenchmarkItem> perturb_benchmark(
    const DamRule& rule, const std::vector<BenchmarkItem>& items,
    const PseudoObjectLexicon& lexicon, const Annotator& annotator,
    const MarkerStrings& markers) {
  auto perturb = [&](const std::string& id, const std::string& text,
                     const Sentence& parse) {
    if (without_whitespace(text) != without_whitespace(parse.surface())) {
      throw InputError("benchmark item " + id + ": parse spells '" +
                       parse.surface() + "' but the sentence is '" + text +
                       "'");
    }
    AnnotatedSentence annotated{parse, extract_frames(parse, lexicon)};
    if (annotated.frames.empty()) return text;
    annotator.annotate(annotated);
    const PerturbedSentence out = apply_rule(rule, annotated, markers);
    return out.insertions.empty() ? text : out.surface;
  };

  std::vector<BenchmarkItem> out;
  out.reserve(items.size());
  for (const BenchmarkItem& item : items) {
    BenchmarkItem perturbed = item;
    perturbed.good = perturb(item.id, item.good, item.good_parse);
    perturbed.bad = perturb(item.id, item.bad, item.bad_parse);
    out.push_back(std::move(perturbed));
  }
  return out;
}

}  // namespace damforge
