// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace damforge::testing {

namespace {

// 1 for the top of the hierarchy, 0 for the bottom.
int rank(const ToyArgument& arg, const std::string& trigger) {
  if (trigger == "Ani") return arg.animacy == "animate" ? 1 : 0;
  if (trigger == "Def") return arg.definiteness == "definite" ? 1 : 0;
  if (trigger == "Pro") return arg.pronominality == "pronoun" ? 1 : 0;
  throw std::invalid_argument("trigger " + trigger);
}

}  // namespace

OracleMarks oracle_marks(const std::string& rule, const ToyArgument& subject,
                         const ToyArgument& object) {
  const bool inverse = rule.size() > 4 && rule.substr(rule.size() - 4) == "-inv";
  const bool global = rule[0] == 'G';
  const std::string trigger = global ? rule.substr(2, 3) : rule.substr(4, 3);
  const int a = rank(subject, trigger);
  const int p = rank(object, trigger);
  OracleMarks marks;
  if (global) {
    // Natural marks both when the subject does not outrank the object.
    const bool both = inverse ? (a > p) : (a <= p);
    marks.a = marks.p = both;
  } else if (rule[2] == 'P') {
    const bool high_p = p == 1;
    marks.p = inverse ? !high_p : high_p;
  } else {
    const bool low_a = a == 0;
    marks.a = inverse ? !low_a : low_a;
  }
  return marks;
}

std::string oracle_decision_name(const OracleMarks& marks) {
  if (marks.a && marks.p) return "A+P";
  if (marks.a) return "A";
  if (marks.p) return "P";
  return "none";
}

std::string oracle_render(const Sentence& sentence,
                          std::vector<std::pair<int, std::string>> markers) {
  std::stable_sort(markers.begin(), markers.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  std::string out;
  const int n = static_cast<int>(sentence.tokens.size());
  for (int i = 0; i < n; ++i) {
    out += sentence.tokens[i].surface;
    for (const auto& [anchor, text] : markers) {
      if (anchor == i) out += " " + text;
    }
    if (i + 1 < n && sentence.tokens[i].space_after) out += ' ';
  }
  return out;
}

std::vector<std::string> oracle_rule_names() {
  std::vector<std::string> names;
  for (const char* scope : {"L-P-", "L-A-", "G-"}) {
    for (const char* trigger : {"Ani", "Def", "Pro"}) {
      names.push_back(std::string(scope) + trigger);
      names.push_back(std::string(scope) + trigger + "-inv");
    }
  }
  return names;
}

}  // namespace damforge::testing
