// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

// The differential argument marking rule engine.
//
// A standard rule is a point in trigger x dependency x direction x target.
// Local rules inspect one argument and mark it; global rules compare the
// prominence of subject (A) and object (P) and mark both or neither. Two
// controls complete the 20 conditions: Baseline never marks and Full marks
// both arguments of every frame.

#ifndef DAMFORGE_RULES_HPP_
#define DAMFORGE_RULES_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "damforge/corpus.hpp"

namespace damforge {

enum class Dependency { kLocal, kGlobal };
enum class Direction { kNatural, kInverse };
enum class Target { kA, kP, kAP };
enum class RuleKind { kStandard, kBaseline, kFull };

std::string_view to_string(Dependency value);
std::string_view to_string(Direction value);
std::string_view to_string(Target value);

class DamRule {
 public:
  // Throws ConfigError for combinations outside the rule space: local
  // rules target A or P, global rules target A+P.
  static DamRule standard(Trigger trigger, Dependency dependency,
                          Direction direction, Target target);
  static DamRule baseline();
  static DamRule full();

  const std::string& name() const { return name_; }
  RuleKind kind() const { return kind_; }
  bool is_control() const { return kind_ != RuleKind::kStandard; }

  // Only meaningful for standard rules (Full reports target A+P).
  const std::optional<Trigger>& trigger() const { return trigger_; }
  const std::optional<Dependency>& dependency() const { return dependency_; }
  const std::optional<Direction>& direction() const { return direction_; }
  const std::optional<Target>& target() const { return target_; }

  // The same rule with the opposite markedness direction.
  DamRule inverted() const;

  bool operator==(const DamRule& other) const { return name_ == other.name_; }

 private:
  DamRule() = default;

  std::string name_;
  RuleKind kind_ = RuleKind::kStandard;
  std::optional<Trigger> trigger_;
  std::optional<Dependency> dependency_;
  std::optional<Direction> direction_;
  std::optional<Target> target_;
};

// The 18 standard rules in table order (L-P, L-A, G; Ani, Def, Pro;
// natural before inverse).
const std::vector<DamRule>& standard_rules();

// Baseline, Full, then the 18 standard rules.
const std::vector<DamRule>& all_conditions();

// Looks up a canonical name such as "L-P-Def-inv", "G-Ani", "Baseline".
// Throws ConfigError listing all 20 names on a miss.
DamRule parse_rule(std::string_view name);

// Comma-separated list of the canonical names.
std::string canonical_rule_names();

enum class MarkDecision { kNoMark, kMarkA, kMarkP, kMarkBoth };

std::string_view to_string(MarkDecision decision);
MarkDecision parse_mark_decision(std::string_view name);

// Licensing for a standard rule over an annotated frame:
//   local natural P: mark P iff P is high-prominence
//   local natural A: mark A iff A is low-prominence
//   local inverse:   the negation of the natural condition
//   global natural:  mark both iff prom(A) <= prom(P)
//   global inverse:  mark both iff prom(A) >  prom(P)
// Throws ContractError for unannotated frames or control rules.
MarkDecision licenses(const DamRule& rule, const SvoFrame& frame);

// The decision a rule makes when marking is forced on a frame (used for
// counterfactual minimal pairs and by Full).
MarkDecision forced_decision(const DamRule& rule);

enum class Marker { kAgent, kPatient };

struct MarkerStrings {
  std::string agent = "<A>";
  std::string patient = "<P>";

  const std::string& operator[](Marker marker) const {
    return marker == Marker::kAgent ? agent : patient;
  }
};

// A marker placed after token `after`. -1 denotes the sentence start;
// only displaced markers in placement pairs use it.
struct Insertion {
  int after = 0;
  Marker marker = Marker::kPatient;

  auto operator<=>(const Insertion&) const = default;
};

// Insertions realizing `decision` on `frame`: at the right edge of the
// subject and/or object span.
std::vector<Insertion> insertions_for(const SvoFrame& frame,
                                      MarkDecision decision);

// The sentence text with each marker placed as its own whitespace-
// delimited token right after its anchor token and before whatever
// spacing followed that token, so "dog." becomes "dog <P>.".
std::string render(const Sentence& sentence,
                   const std::vector<Insertion>& insertions,
                   const MarkerStrings& markers);

// Removes every marker token inserted by render().
std::string strip_markers(std::string_view text, const MarkerStrings& markers);

enum class Bucket { kAffected, kUnaffected, kInvalid };

std::string_view to_string(Bucket bucket);
Bucket parse_bucket(std::string_view name);

struct PerturbedSentence {
  std::string sentence_id;
  Split split = Split::kTrain;
  std::string rule;
  Bucket bucket = Bucket::kInvalid;
  std::vector<Insertion> insertions;  // sorted, deduplicated
  std::vector<MarkDecision> frame_decisions;  // one per frame
  std::string surface;

  bool operator==(const PerturbedSentence&) const = default;
};

// Applies the rule to every frame of the sentence. Insertions from
// different frames at the same (position, marker) are merged.
PerturbedSentence apply_rule(const DamRule& rule,
                             const AnnotatedSentence& sentence,
                             const MarkerStrings& markers);

struct RuleStats {
  std::string rule;
  std::size_t affected = 0;
  std::size_t unaffected = 0;
  std::size_t invalid = 0;
  std::size_t frames = 0;         // valid frames
  std::size_t frames_marked = 0;  // frames with a marking decision

  std::size_t total() const { return affected + unaffected + invalid; }
  // affected / (affected + unaffected) x 100
  double svo_pct() const;
  // affected / total x 100
  double all_pct() const;
  // marked frames / valid frames x 100
  double frame_svo_pct() const;
};

// Throws StatisticError when no sentence has a valid frame.
RuleStats corpus_stats(const DamRule& rule,
                       const std::vector<PerturbedSentence>& corpus);

}  // namespace damforge

#endif  // DAMFORGE_RULES_HPP_
