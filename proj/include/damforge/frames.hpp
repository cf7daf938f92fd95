// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

// Clause-local SVO frame extraction over dependency parses.
//
// A frame is one verbal predicate with exactly one nominal subject and
// exactly one object-like argument, both direct dependents of the
// predicate. Passives, ditransitives, clausal complements, coordinated
// arguments and arguments carrying a clausal modifier never yield frames.
// When the predicate has no bare object, a predicate-selected prepositional
// complement listed in the pseudo-object lexicon (wait+for, listen+to)
// stands in as the object.

#ifndef DAMFORGE_FRAMES_HPP_
#define DAMFORGE_FRAMES_HPP_

#include <filesystem>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "damforge/corpus.hpp"

namespace damforge {

class PseudoObjectLexicon {
 public:
  PseudoObjectLexicon() = default;

  // One "verb-lemma<TAB>preposition" pair per line; '#' starts a comment.
  // Throws ConfigError on malformed lines or an unreadable file.
  static PseudoObjectLexicon load(const std::filesystem::path& path);
  static PseudoObjectLexicon parse(std::istream& in);

  void add(std::string verb_lemma, std::string preposition);
  bool contains(std::string_view verb_lemma,
                std::string_view preposition) const;
  std::size_t size() const { return pairs_.size(); }

 private:
  std::set<std::pair<std::string, std::string>> pairs_;
};

// Maximal contiguous span around `head_index` made of the head and its
// (recursive) determiner, adjectival-modifier, compound and possessive
// dependents, including the possessive clitic. Any other dependent
// truncates the span so it stays contiguous.
NPSpan expand_np(const Sentence& sentence, int head_index);

// For a predicate without a bare nominal object: the span covering a
// lexicon-licensed preposition and its nominal complement, or nullopt.
// Returns nullopt as well when more than one candidate exists.
std::optional<NPSpan> detect_pseudo_object(const Sentence& sentence,
                                           int predicate_index,
                                           const PseudoObjectLexicon& lexicon);

// All frames of the sentence in predicate order. Labels are left unset.
std::vector<SvoFrame> extract_frames(const Sentence& sentence,
                                     const PseudoObjectLexicon& lexicon);

enum class Validity { kHasValidFrame, kInvalid };

Validity classify_validity(const Sentence& sentence,
                           const std::vector<SvoFrame>& frames);

}  // namespace damforge

#endif  // DAMFORGE_FRAMES_HPP_
