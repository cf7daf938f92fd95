// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

// Minimal-pair suites: rule mastery, marker placement and DAM-perturbed
// benchmark items.

#ifndef DAMFORGE_PAIRS_HPP_
#define DAMFORGE_PAIRS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "damforge/corpus.hpp"
#include "damforge/frames.hpp"
#include "damforge/rules.hpp"
#include "damforge/semantics.hpp"

namespace damforge {

enum class PairKind { kMastery, kPlacement, kBenchmark };
enum class Polarity { kMarkedGood, kUnmarkedGood };

std::string_view to_string(PairKind kind);
PairKind parse_pair_kind(std::string_view name);
std::string_view to_string(Polarity polarity);
Polarity parse_polarity(std::string_view name);

struct MinimalPair {
  std::string pair_id;
  PairKind kind = PairKind::kMastery;
  std::string rule;
  std::string good;
  std::string bad;
  std::optional<Polarity> polarity;  // mastery only
  std::optional<int> shift;          // placement only; negative = left
  std::string source_id;

  bool operator==(const MinimalPair&) const = default;
};

// Rule-mastery pairs from the test split of `corpus`. Draws
// `n_per_polarity` affected sentences (good = marked, bad = stripped) and
// as many unaffected ones (good = original, bad = the first frame marked
// as if the rule had licensed it), without replacement. Throws
// GenerationError naming the shortfall when either pool is too small.
std::vector<MinimalPair> generate_mastery_pairs(
    const DamRule& rule, const std::vector<AnnotatedSentence>& corpus,
    const MarkerStrings& markers, std::size_t n_per_polarity,
    std::uint64_t seed);

// Marker-placement pairs from affected test sentences: good is the
// correctly marked sentence, bad moves one randomly chosen marker by a
// shift drawn uniformly from the feasible values in
// {-max_shift..-1, 1..max_shift}. A shift is infeasible when it leaves the
// sentence or lands on another marker; after 16 infeasible draws the
// sentence is dropped and another drawn.
std::vector<MinimalPair> generate_placement_pairs(
    const DamRule& rule, const std::vector<AnnotatedSentence>& corpus,
    const MarkerStrings& markers, std::size_t n, int max_shift,
    std::uint64_t seed);

// Displaces insertion `which` by `shift` tokens. Returns nullopt when the
// move is infeasible.
std::optional<std::vector<Insertion>> shift_insertion(
    const std::vector<Insertion>& insertions, std::size_t which, int shift,
    std::size_t sentence_length);

struct BenchmarkItem {
  std::string id;
  std::string good;
  std::string bad;
  Sentence good_parse;
  Sentence bad_parse;
};

// Runs frame extraction, annotation and the rule over both sentences of
// each item. Which member is grammatical never changes; sentences with no
// valid frame pass through untouched. Throws InputError when a parse does
// not spell its sentence (whitespace aside).
std::vector<BenchmarkItem> perturb_benchmark(
    const DamRule& rule, const std::vector<BenchmarkItem>& items,
    const PseudoObjectLexicon& lexicon, const Annotator& annotator,
    const MarkerStrings& markers);

}  // namespace damforge

#endif  // DAMFORGE_PAIRS_HPP_
