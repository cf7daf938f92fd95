// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

// CoNLL-U reading and writing, length filtering and deterministic
// train/validation/test assignment.

#ifndef DAMFORGE_INGEST_HPP_
#define DAMFORGE_INGEST_HPP_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "damforge/corpus.hpp"

namespace damforge {

struct Diagnostic {
  std::size_t line = 0;  // 1-based line of the offending input
  std::string message;
};

struct ConlluReadResult {
  std::vector<Sentence> sentences;
  // Blocks skipped in lenient mode, one entry per block.
  std::vector<Diagnostic> diagnostics;
};

// Reads blank-line separated CoNLL-U blocks. Sentence ids come from a
// "# sent_id = ..." comment when present, otherwise "s<N>" with N the
// 1-based block number. Multiword-token ranges ("3-4") and empty nodes
// ("5.1") are skipped. A malformed block throws ParseError in strict
// mode and is reported in `diagnostics` and skipped otherwise.
ConlluReadResult read_conllu(std::istream& in, bool strict = false);

// Writes the retained fields back out (XPOS, FEATS and DEPS as "_").
void write_conllu(std::ostream& out, const std::vector<Sentence>& sentences);
void write_conllu(std::ostream& out, const Sentence& sentence);

// Number of whitespace-delimited tokens in the rebuilt surface text.
std::size_t whitespace_token_count(const Sentence& sentence);

// Keeps sentences whose whitespace-token count lies in [min, max].
std::vector<Sentence> filter_by_length(std::vector<Sentence> sentences,
                                       std::size_t min_tokens = 3,
                                       std::size_t max_tokens = 30);

struct SplitRatios {
  double train = 0.90;
  double validation = 0.05;
  double test = 0.05;
};

// Throws ConfigError unless the ratios are nonnegative and sum to 1
// within 1e-9.
void validate(const SplitRatios& ratios);

// The split for one sentence id: a pure function of (id, seed).
Split split_for(const std::string& sentence_id, const SplitRatios& ratios,
                std::uint64_t seed);

// Sets every sentence's split in place.
void assign_splits(std::vector<Sentence>& sentences, const SplitRatios& ratios,
                   std::uint64_t seed);

}  // namespace damforge

#endif  // DAMFORGE_INGEST_HPP_
