// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

// JSON-lines encodings of the toolkit's artifacts. Field names are part
// of the file formats documented in docs/FORMATS.md.

#ifndef DAMFORGE_RECORDS_HPP_
#define DAMFORGE_RECORDS_HPP_

#include <filesystem>
#include <functional>
#include <istream>
#include <ostream>
#include <vector>

#include <json.hpp>

#include "damforge/corpus.hpp"
#include "damforge/pairs.hpp"
#include "damforge/probes.hpp"
#include "damforge/rules.hpp"
#include "damforge/scoring.hpp"

namespace damforge {

using Json = nlohmann::ordered_json;

Json to_json(const Sentence& sentence);
Sentence sentence_from_json(const Json& record);

Json to_json(const SvoFrame& frame);
SvoFrame frame_from_json(const Json& record);

// Sentence fields plus "valid" and "frames".
Json to_json(const AnnotatedSentence& sentence);
AnnotatedSentence annotated_from_json(const Json& record);

Json to_json(const PerturbedSentence& sentence);
PerturbedSentence perturbed_from_json(const Json& record);

Json to_json(const MinimalPair& pair);
MinimalPair pair_from_json(const Json& record);

Json to_json(const ProbeInstance& instance);
ProbeInstance probe_instance_from_json(const Json& record);

// Calls `handle` for every nonblank line parsed as JSON. Parse failures
// and exceptions thrown by `handle` surface as ParseError with the line.
void for_each_json_line(std::istream& in,
                        const std::function<void(const Json&)>& handle);

template <typename T>
std::vector<T> read_jsonl(std::istream& in, T (*decode)(const Json&)) {
  std::vector<T> out;
  for_each_json_line(in, [&](const Json& record) { out.push_back(decode(record)); });
  return out;
}

template <typename T>
void write_jsonl(std::ostream& out, const std::vector<T>& items) {
  for (const T& item : items) out << to_json(item).dump() << '\n';
}

}  // namespace damforge

#endif  // DAMFORGE_RECORDS_HPP_
