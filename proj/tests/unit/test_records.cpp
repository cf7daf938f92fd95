// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <sstream>

#include "damforge/errors.hpp"
#include "damforge/pairs.hpp"
#include "damforge/probes.hpp"
#include "damforge/records.hpp"
#include "damforge/rules.hpp"
#include "util.hpp"

using namespace damforge;
using namespace damforge::unit;

TEST_CASE("sentence and annotated records round-trip") {
  for (const auto& s : read_fixture("tiny.conllu")) {
    CHECK(sentence_from_json(to_json(s)) == s);
    const auto a = analyze(s);
    const auto back = annotated_from_json(Json::parse(to_json(a).dump()));
    CHECK(back == a);
    CHECK(to_json(a)["valid"] == a.valid());
  }
}

TEST_CASE("space_after is written only when false") {
  const auto s = parse("Go go VERB 0 root|. . PUNCT 1 punct");
  const auto j = to_json(s);
  CHECK(j["tokens"][0]["space_after"] == false);
  CHECK_FALSE(j["tokens"][1].contains("space_after"));
  CHECK(j["tokens"][0]["head"] == 0);
}

TEST_CASE("perturbed, pair and probe records round-trip") {
  const auto a = analyze(parse(
      "I I PRON 2 nsubj|chase chase VERB 0 root|a a DET 4 det|dog dog NOUN 2 obj|. . PUNCT 2 punct"));
  const auto p = apply_rule(DamRule::full(), a, {});
  CHECK(perturbed_from_json(to_json(p)) == p);

  MinimalPair m{"G-Ani/mastery/1", PairKind::kMastery, "G-Ani", "x <P>", "x",
                Polarity::kMarkedGood, std::nullopt, "s1"};
  CHECK(pair_from_json(to_json(m)) == m);
  CHECK(to_json(m)["shift"].is_null());
  m.kind = PairKind::kPlacement;
  m.polarity.reset();
  m.shift = -2;
  CHECK(pair_from_json(to_json(m)) == m);

  ProbeInstance inst{"i1", "s1", 3, true, ProbeSet::kTest, "I chase a dog.", 10, 13};
  CHECK(probe_instance_from_json(to_json(inst)) == inst);
  CHECK(to_json(inst)["label"] == 1);
}

TEST_CASE("decoding errors carry the line number") {
  std::istringstream in("{\"id\": \"a\", \"split\": \"train\", \"tokens\": []}\n\n{\"id\": 3}\n");
  try {
    read_jsonl(in, sentence_from_json);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  std::istringstream junk("{not json\n");
  CHECK_THROWS_AS(read_jsonl(junk, pair_from_json), ParseError);
}

TEST_CASE("write_jsonl writes one record per line") {
  std::ostringstream out;
  write_jsonl(out, read_fixture("tiny.conllu"));
  std::istringstream in(out.str());
  CHECK(read_jsonl(in, sentence_from_json).size() == 20);
}
