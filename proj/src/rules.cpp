// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "damforge/rules.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "damforge/errors.hpp"

namespace damforge {

namespace {

std::string_view short_name(Trigger trigger) {
  switch (trigger) {
    case Trigger::kAnimacy:
      return "Ani";
    case Trigger::kDefiniteness:
      return "Def";
    case Trigger::kPronominality:
      return "Pro";
  }
  return "";
}

}  // namespace

std::string_view to_string(Dependency value) {
  return value == Dependency::kLocal ? "local" : "global";
}

std::string_view to_string(Direction value) {
  return value == Direction::kNatural ? "natural" : "inverse";
}

std::string_view to_string(Target value) {
  switch (value) {
    case Target::kA:
      return "A";
    case Target::kP:
      return "P";
    case Target::kAP:
      return "A+P";
  }
  return "";
}

DamRule DamRule::standard(Trigger trigger, Dependency dependency,
                          Direction direction, Target target) {
  if (dependency == Dependency::kLocal && target == Target::kAP) {
    throw ConfigError("local rules target a single argument (A or P)");
  }
  if (dependency == Dependency::kGlobal && target != Target::kAP) {
    throw ConfigError("global rules target both arguments (A+P)");
  }
  DamRule rule;
  rule.kind_ = RuleKind::kStandard;
  rule.trigger_ = trigger;
  rule.dependency_ = dependency;
  rule.direction_ = direction;
  rule.target_ = target;
  rule.name_ = dependency == Dependency::kLocal ? "L-" : "G-";
  if (dependency == Dependency::kLocal) {
    rule.name_ += target == Target::kA ? "A-" : "P-";
  }
  rule.name_ += short_name(trigger);
  if (direction == Direction::kInverse) rule.name_ += "-inv";
  return rule;
}

DamRule DamRule::baseline() {
  DamRule rule;
  rule.kind_ = RuleKind::kBaseline;
  rule.name_ = "Baseline";
  return rule;
}

DamRule DamRule::full() {
  DamRule rule;
  rule.kind_ = RuleKind::kFull;
  rule.name_ = "Full";
  rule.target_ = Target::kAP;
  return rule;
}

DamRule DamRule::inverted() const {
  if (is_control()) {
    throw ContractError("control condition " + name_ + " has no direction");
  }
  return standard(*trigger_, *dependency_,
                  *direction_ == Direction::kNatural ? Direction::kInverse
                                                     : Direction::kNatural,
                  *target_);
}

const std::vector<DamRule>& standard_rules() {
  static const std::vector<DamRule> kRules = [] {
    std::vector<DamRule> rules;
    const std::pair<Dependency, Target> families[] = {
        {Dependency::kLocal, Target::kP},
        {Dependency::kLocal, Target::kA},
        {Dependency::kGlobal, Target::kAP}};
    for (const auto& [dependency, target] : families) {
      for (Trigger trigger : kAllTriggers) {
        for (Direction direction : {Direction::kNatural, Direction::kInverse}) {
          rules.push_back(
              DamRule::standard(trigger, dependency, direction, target));
        }
      }
    }
    return rules;
  }();
  return kRules;
}

const std::vector<DamRule>& all_conditions() {
  static const std::vector<DamRule> kAll = [] {
    std::vector<DamRule> rules{DamRule::baseline(), DamRule::full()};
    for (const DamRule& rule : standard_rules()) rules.push_back(rule);
    return rules;
  }();
  return kAll;
}

std::string canonical_rule_names() {
  std::string names;
  for (const DamRule& rule : all_conditions()) {
    if (!names.empty()) names += ", ";
    names += rule.name();
  }
  return names;
}

DamRule parse_rule(std::string_view name) {
  for (const DamRule& rule : all_conditions()) {
    if (rule.name() == name) return rule;
  }
  throw ConfigError("unknown rule '" + std::string(name) +
                    "'; expected one of: " + canonical_rule_names());
}

std::string_view to_string(MarkDecision decision) {
  switch (decision) {
    case MarkDecision::kNoMark:
      return "none";
    case MarkDecision::kMarkA:
      return "A";
    case MarkDecision::kMarkP:
      return "P";
    case MarkDecision::kMarkBoth:
      return "A+P";
  }
  return "none";
}

MarkDecision parse_mark_decision(std::string_view name) {
  if (name == "none") return MarkDecision::kNoMark;
  if (name == "A") return MarkDecision::kMarkA;
  if (name == "P") return MarkDecision::kMarkP;
  if (name == "A+P") return MarkDecision::kMarkBoth;
  throw InputError("unknown mark decision '" + std::string(name) + "'");
}

MarkDecision licenses(const DamRule& rule, const SvoFrame& frame) {
  if (rule.is_control()) {
    throw ContractError("licensing is undefined for control " + rule.name());
  }
  if (!frame.annotated()) {
    throw ContractError("frame at predicate " +
                        std::to_string(frame.predicate_index) +
                        " has no semantic labels");
  }
  const Trigger trigger = *rule.trigger();
  const int a = static_cast<int>(prominence(*frame.subject_labels, trigger));
  const int p = static_cast<int>(prominence(*frame.object_labels, trigger));
  const bool natural = *rule.direction() == Direction::kNatural;

  if (*rule.dependency() == Dependency::kGlobal) {
    const bool a_not_above_p = a <= p;
    return a_not_above_p == natural ? MarkDecision::kMarkBoth
                                    : MarkDecision::kNoMark;
  }
  if (*rule.target() == Target::kP) {
    const bool p_high = p == static_cast<int>(Prominence::kHigh);
    return p_high == natural ? MarkDecision::kMarkP : MarkDecision::kNoMark;
  }
  const bool a_low = a == static_cast<int>(Prominence::kLow);
  return a_low == natural ? MarkDecision::kMarkA : MarkDecision::kNoMark;
}

MarkDecision forced_decision(const DamRule& rule) {
  switch (rule.kind()) {
    case RuleKind::kBaseline:
      throw ContractError("Baseline never marks");
    case RuleKind::kFull:
      return MarkDecision::kMarkBoth;
    case RuleKind::kStandard:
      break;
  }
  switch (*rule.target()) {
    case Target::kA:
      return MarkDecision::kMarkA;
    case Target::kP:
      return MarkDecision::kMarkP;
    case Target::kAP:
      return MarkDecision::kMarkBoth;
  }
  return MarkDecision::kNoMark;
}

std::vector<Insertion> insertions_for(const SvoFrame& frame,
                                      MarkDecision decision) {
  std::vector<Insertion> out;
  if (decision == MarkDecision::kMarkA || decision == MarkDecision::kMarkBoth) {
    out.push_back({frame.subject.end, Marker::kAgent});
  }
  if (decision == MarkDecision::kMarkP || decision == MarkDecision::kMarkBoth) {
    out.push_back({frame.object.end, Marker::kPatient});
  }
  return out;
}

std::string render(const Sentence& sentence,
                   const std::vector<Insertion>& insertions,
                   const MarkerStrings& markers) {
  std::vector<Insertion> sorted = insertions;
  std::sort(sorted.begin(), sorted.end());
  std::string text;
  auto next = sorted.begin();
  for (; next != sorted.end() && next->after < 0; ++next) {
    text += markers[next->marker];
    text += ' ';
  }
  const std::size_t n = sentence.tokens.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Token& token = sentence.tokens[i];
    text += token.surface;
    for (; next != sorted.end() && next->after == static_cast<int>(i); ++next) {
      text += ' ';
      text += markers[next->marker];
    }
    if (i + 1 < n && token.space_after) text += ' ';
  }
  return text;
}

std::string strip_markers(std::string_view text, const MarkerStrings& markers) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    bool stripped = false;
    for (const std::string* marker : {&markers.agent, &markers.patient}) {
      if (marker->empty() || text.compare(i, marker->size(), *marker) != 0) {
        continue;
      }
      if (i == 0 && text.size() > marker->size() &&
          text[marker->size()] == ' ') {
        i = marker->size() + 1;  // sentence-initial "<A> "
        stripped = true;
      } else if (i > 0 && text[i - 1] == ' ' && !out.empty() &&
                 out.back() == ' ') {
        out.pop_back();  // the separator render() added
        i += marker->size();
        stripped = true;
      }
      if (stripped) break;
    }
    if (!stripped) out += text[i++];
  }
  return out;
}

std::string_view to_string(Bucket bucket) {
  switch (bucket) {
    case Bucket::kAffected:
      return "affected";
    case Bucket::kUnaffected:
      return "unaffected";
    case Bucket::kInvalid:
      return "invalid";
  }
  return "invalid";
}

Bucket parse_bucket(std::string_view name) {
  if (name == "affected") return Bucket::kAffected;
  if (name == "unaffected") return Bucket::kUnaffected;
  if (name == "invalid") return Bucket::kInvalid;
  throw InputError("unknown bucket '" + std::string(name) + "'");
}

PerturbedSentence apply_rule(const DamRule& rule,
                             const AnnotatedSentence& sentence,
                             const MarkerStrings& markers) {
  PerturbedSentence out;
  out.sentence_id = sentence.sentence.id;
  out.split = sentence.sentence.split;
  out.rule = rule.name();

  std::set<Insertion> unique;
  for (const SvoFrame& frame : sentence.frames) {
    MarkDecision decision = MarkDecision::kNoMark;
    switch (rule.kind()) {
      case RuleKind::kBaseline:
        break;
      case RuleKind::kFull:
        decision = MarkDecision::kMarkBoth;
        break;
      case RuleKind::kStandard:
        decision = licenses(rule, frame);
        break;
    }
    out.frame_decisions.push_back(decision);
    for (const Insertion& insertion : insertions_for(frame, decision)) {
      unique.insert(insertion);
    }
  }
  out.insertions.assign(unique.begin(), unique.end());
  if (sentence.frames.empty()) {
    out.bucket = Bucket::kInvalid;
  } else {
    out.bucket = out.insertions.empty() ? Bucket::kUnaffected : Bucket::kAffected;
  }
  out.surface = render(sentence.sentence, out.insertions, markers);
  return out;
}

double RuleStats::svo_pct() const {
  return 100.0 * static_cast<double>(affected) /
         static_cast<double>(affected + unaffected);
}

double RuleStats::all_pct() const {
  return 100.0 * static_cast<double>(affected) / static_cast<double>(total());
}

double RuleStats::frame_svo_pct() const {
  return 100.0 * static_cast<double>(frames_marked) /
         static_cast<double>(frames);
}

RuleStats corpus_stats(const DamRule& rule,
                       const std::vector<PerturbedSentence>& corpus) {
  RuleStats stats;
  stats.rule = rule.name();
  for (const PerturbedSentence& sentence : corpus) {
    switch (sentence.bucket) {
      case Bucket::kAffected:
        ++stats.affected;
        break;
      case Bucket::kUnaffected:
        ++stats.unaffected;
        break;
      case Bucket::kInvalid:
        ++stats.invalid;
        break;
    }
    stats.frames += sentence.frame_decisions.size();
    stats.frames_marked += std::count_if(
        sentence.frame_decisions.begin(), sentence.frame_decisions.end(),
        [](MarkDecision d) { return d != MarkDecision::kNoMark; });
  }
  if (stats.affected + stats.unaffected == 0) {
    throw StatisticError("rule " + rule.name() +
                         ": no sentence has a valid SVO frame");
  }
  return stats;
}

}  // namespace damforge
