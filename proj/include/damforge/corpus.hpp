// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

// Shared domain vocabulary: tokens, sentences, noun-phrase spans, SVO
// frames and the three binary prominence hierarchies.

#ifndef DAMFORGE_CORPUS_HPP_
#define DAMFORGE_CORPUS_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace damforge {

struct Token {
  int index = 0;  // 0-based
  std::string surface;
  std::string lemma;
  std::string upos;
  int head = 0;  // 0-based head index; the root points at itself
  std::string deprel;
  // Whether the surface text has whitespace after this token (CoNLL-U
  // MISC SpaceAfter=No clears it). Needed to rebuild the raw text.
  bool space_after = true;

  bool is_root() const { return head == index; }

  // Relation label before any ':' subtype ("nmod:poss" -> "nmod").
  std::string_view base_deprel() const;

  bool operator==(const Token&) const = default;
};

enum class Split { kTrain, kValidation, kTest };

std::string_view to_string(Split split);
// Throws InputError on an unknown name.
Split parse_split(std::string_view name);

struct Sentence {
  std::string id;
  std::vector<Token> tokens;
  Split split = Split::kTrain;

  std::size_t size() const { return tokens.size(); }

  // Raw text rebuilt from token surfaces and their space_after flags.
  std::string surface() const;

  // Indices of the direct dependents of `head`, in token order.
  std::vector<int> dependents(int head) const;

  bool operator==(const Sentence&) const = default;
};

// Checks the token invariants (contiguous indices, heads in range).
// Throws InputError naming the first violation.
void validate(const Sentence& sentence);

struct NPSpan {
  int head_index = 0;
  int start = 0;
  int end = 0;  // inclusive

  bool contains(int index) const { return start <= index && index <= end; }
  bool overlaps(const NPSpan& other) const {
    return start <= other.end && other.start <= end;
  }

  bool operator==(const NPSpan&) const = default;
};

enum class Trigger { kAnimacy, kDefiniteness, kPronominality };

inline constexpr Trigger kAllTriggers[] = {
    Trigger::kAnimacy, Trigger::kDefiniteness, Trigger::kPronominality};

std::string_view to_string(Trigger trigger);
// Accepts "animacy", "definiteness", "pronominality" and the short
// forms "Ani", "Def", "Pro". Throws ConfigError otherwise.
Trigger parse_trigger(std::string_view name);

enum class Animacy { kAnimate, kInanimate };
enum class Definiteness { kDefinite, kIndefinite };
enum class Pronominality { kPronoun, kCommon };

std::string_view to_string(Animacy value);
std::string_view to_string(Definiteness value);
std::string_view to_string(Pronominality value);

struct SemanticLabels {
  Animacy animacy = Animacy::kInanimate;
  Definiteness definiteness = Definiteness::kIndefinite;
  Pronominality pronominality = Pronominality::kCommon;

  // Binary value for `trigger`: true when the label is the
  // hierarchy-high category (animate, definite, pronoun).
  bool is_high(Trigger trigger) const;

  bool operator==(const SemanticLabels&) const = default;
};

// Ordinal prominence, so the global A <= P comparison is an integer one.
enum class Prominence : int { kLow = 0, kHigh = 1 };

// High iff the label for `trigger` is the hierarchy-high category:
// animate > inanimate, definite > indefinite, pronoun > common.
Prominence prominence(const SemanticLabels& labels, Trigger trigger);

struct ProminenceHierarchy {
  Trigger trigger;
  std::string_view high_value;
  std::string_view low_value;
};

// The fixed hierarchy for a trigger. There is no way to invert it.
ProminenceHierarchy hierarchy(Trigger trigger);

struct SvoFrame {
  int predicate_index = 0;
  NPSpan subject;
  NPSpan object;
  bool object_is_pseudo = false;
  // Unset until the semantics module annotates the frame.
  std::optional<SemanticLabels> subject_labels;
  std::optional<SemanticLabels> object_labels;

  bool annotated() const {
    return subject_labels.has_value() && object_labels.has_value();
  }

  bool operator==(const SvoFrame&) const = default;
};

// A sentence together with its extracted (and possibly annotated) frames.
struct AnnotatedSentence {
  Sentence sentence;
  std::vector<SvoFrame> frames;

  bool valid() const { return !frames.empty(); }

  bool operator==(const AnnotatedSentence&) const = default;
};

}  // namespace damforge

#endif  // DAMFORGE_CORPUS_HPP_
