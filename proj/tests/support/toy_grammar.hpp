// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

// Template grammar that emits parsed sentences together with the frames,
// spans and semantic labels it built them from. Tests use the metadata as
// ground truth independent of the extractor and annotator.

#ifndef DAMFORGE_TESTS_TOY_GRAMMAR_HPP_
#define DAMFORGE_TESTS_TOY_GRAMMAR_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "damforge/corpus.hpp"
#include "damforge/frames.hpp"
#include "damforge/semantics.hpp"

namespace damforge::testing {

struct ToyArgument {
  int head = 0;
  int start = 0;
  int end = 0;  // inclusive; pseudo-objects start at the preposition
  std::string animacy;        // "animate" / "inanimate"
  std::string definiteness;   // "definite" / "indefinite"
  std::string pronominality;  // "pronoun" / "common"
};

struct ToyFrame {
  int predicate = 0;
  ToyArgument subject;
  ToyArgument object;
  bool pseudo = false;
};

struct ToySentence {
  Sentence sentence;
  std::vector<ToyFrame> frames;  // empty when no valid frame was built
  std::string construction;
};

enum class ToyGrammar {
  kRich,    // many constructions, about a third without a valid frame
  kSimple,  // plain "DET NOUN VERB DET NOUN ." clauses, small vocabulary
};

std::vector<ToySentence> generate_toy_corpus(std::size_t n, std::uint64_t seed,
                                             ToyGrammar grammar);

// Lexicons consistent with the grammar's words.
WordList toy_animate_lexicon();
WordList toy_definite_determiners();
PseudoObjectLexicon toy_pseudo_objects();

}  // namespace damforge::testing

#endif  // DAMFORGE_TESTS_TOY_GRAMMAR_HPP_
