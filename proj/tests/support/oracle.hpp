// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

// Brute-force reference implementations used to cross-check the library.
// Nothing here calls into the rule engine: rule names are decoded by
// string inspection and the marking conditions are written out longhand.

#ifndef DAMFORGE_TESTS_ORACLE_HPP_
#define DAMFORGE_TESTS_ORACLE_HPP_

#include <string>
#include <utility>
#include <vector>

#include "damforge/corpus.hpp"
#include "toy_grammar.hpp"

namespace damforge::testing {

struct OracleMarks {
  bool a = false;
  bool p = false;
};

// Marking licensed by a standard rule (e.g. "G-Def-inv") on one frame.
OracleMarks oracle_marks(const std::string& rule, const ToyArgument& subject,
                         const ToyArgument& object);

// The decision string the library reports for these marks
// ("none", "A", "P", "A+P").
std::string oracle_decision_name(const OracleMarks& marks);

// Surface text with `markers` (token index, marker text) placed after
// their anchor tokens, built directly from tokens and spacing flags.
std::string oracle_render(const Sentence& sentence,
                          std::vector<std::pair<int, std::string>> markers);

// The eighteen standard rule names, spelled out.
std::vector<std::string> oracle_rule_names();

}  // namespace damforge::testing

#endif  // DAMFORGE_TESTS_ORACLE_HPP_
