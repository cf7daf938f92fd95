// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "damforge/corpus.hpp"

#include <algorithm>
#include <cctype>

#include "damforge/errors.hpp"

namespace damforge {

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

std::string_view Token::base_deprel() const {
  std::string_view rel = deprel;
  return rel.substr(0, rel.find(':'));
}

std::string_view to_string(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kValidation:
      return "validation";
    case Split::kTest:
      return "test";
  }
  return "train";
}

Split parse_split(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "validation") return Split::kValidation;
  if (name == "test") return Split::kTest;
  throw InputError("unknown split '" + std::string(name) + "'");
}

std::string Sentence::surface() const {
  std::string text;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    text += tokens[i].surface;
    if (i + 1 < tokens.size() && tokens[i].space_after) text += ' ';
  }
  return text;
}

std::vector<int> Sentence::dependents(int head) const {
  std::vector<int> out;
  for (const Token& token : tokens) {
    if (token.head == head && token.index != head) out.push_back(token.index);
  }
  return out;
}

void validate(const Sentence& sentence) {
  const int n = static_cast<int>(sentence.tokens.size());
  for (int i = 0; i < n; ++i) {
    const Token& token = sentence.tokens[i];
    if (token.index != i) {
      throw InputError("sentence " + sentence.id + ": token " +
                       std::to_string(i) + " has index " +
                       std::to_string(token.index));
    }
    if (token.head < 0 || token.head >= n) {
      throw InputError("sentence " + sentence.id + ": token " +
                       std::to_string(i) + " has out-of-range head " +
                       std::to_string(token.head));
    }
  }
}

std::string_view to_string(Trigger trigger) {
  switch (trigger) {
    case Trigger::kAnimacy:
      return "animacy";
    case Trigger::kDefiniteness:
      return "definiteness";
    case Trigger::kPronominality:
      return "pronominality";
  }
  return "animacy";
}

Trigger parse_trigger(std::string_view name) {
  const std::string key = lower(name);
  if (key == "animacy" || key == "ani") return Trigger::kAnimacy;
  if (key == "definiteness" || key == "def") return Trigger::kDefiniteness;
  if (key == "pronominality" || key == "pro") return Trigger::kPronominality;
  throw ConfigError("unknown trigger '" + std::string(name) +
                    "' (expected animacy, definiteness or pronominality)");
}

std::string_view to_string(Animacy value) {
  return value == Animacy::kAnimate ? "animate" : "inanimate";
}

std::string_view to_string(Definiteness value) {
  return value == Definiteness::kDefinite ? "definite" : "indefinite";
}

std::string_view to_string(Pronominality value) {
  return value == Pronominality::kPronoun ? "pronoun" : "common";
}

bool SemanticLabels::is_high(Trigger trigger) const {
  switch (trigger) {
    case Trigger::kAnimacy:
      return animacy == Animacy::kAnimate;
    case Trigger::kDefiniteness:
      return definiteness == Definiteness::kDefinite;
    case Trigger::kPronominality:
      return pronominality == Pronominality::kPronoun;
  }
  return false;
}

Prominence prominence(const SemanticLabels& labels, Trigger trigger) {
  return labels.is_high(trigger) ? Prominence::kHigh : Prominence::kLow;
}

ProminenceHierarchy hierarchy(Trigger trigger) {
  switch (trigger) {
    case Trigger::kAnimacy:
      return {trigger, "animate", "inanimate"};
    case Trigger::kDefiniteness:
      return {trigger, "definite", "indefinite"};
    case Trigger::kPronominality:
      return {trigger, "pronoun", "common"};
  }
  return {trigger, "", ""};
}

}  // namespace damforge
