// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "damforge/errors.hpp"
#include "damforge/frames.hpp"
#include "damforge/semantics.hpp"
#include "util.hpp"

using namespace damforge;
using namespace damforge::unit;

namespace {

const char* kWaitForBus =
    "I I PRON 2 nsubj|wait wait VERB 0 root|for for ADP 5 case|the the DET 5 det|"
    "bus bus NOUN 2 obl|. . PUNCT 2 punct";

NPSpan span_of(const std::string& text) {
  int h, s, e;
  char c;
  std::istringstream in(text);
  in >> h >> c >> s >> c >> e;
  return {h, s, e};
}

SemanticLabels labels_of(const std::string& code) {
  SemanticLabels l;
  l.animacy = code[0] == 'A' ? Animacy::kAnimate : Animacy::kInanimate;
  l.definiteness = code[1] == 'D' ? Definiteness::kDefinite : Definiteness::kIndefinite;
  l.pronominality = code[2] == 'P' ? Pronominality::kPronoun : Pronominality::kCommon;
  return l;
}

}  // namespace

TEST_CASE("transitive clause gives one frame with full NP spans") {
  const auto s = parse(
      "The the DET 2 det|dog dog NOUN 3 nsubj|chases chase VERB 0 root|"
      "the the DET 5 det|cat cat NOUN 3 obj|. . PUNCT 3 punct");
  const auto frames = extract_frames(s, {});
  REQUIRE(frames.size() == 1);
  CHECK(frames[0].predicate_index == 2);
  CHECK(frames[0].subject == NPSpan{1, 0, 1});
  CHECK(frames[0].object == NPSpan{4, 3, 4});
  CHECK_FALSE(frames[0].object_is_pseudo);
  CHECK_FALSE(frames[0].annotated());
  CHECK(classify_validity(s, frames) == Validity::kHasValidFrame);
}

TEST_CASE("pseudo-object needs the verb-preposition lexicon") {
  const auto s = parse(kWaitForBus);
  CHECK(extract_frames(s, {}).empty());
  CHECK(classify_validity(s, extract_frames(s, {})) == Validity::kInvalid);

  PseudoObjectLexicon lexicon;
  lexicon.add("wait", "for");
  const auto frames = extract_frames(s, lexicon);
  REQUIRE(frames.size() == 1);
  CHECK(frames[0].object_is_pseudo);
  CHECK(frames[0].object == NPSpan{4, 2, 4});

  const auto direct = detect_pseudo_object(s, 1, lexicon);
  REQUIRE(direct.has_value());
  CHECK(*direct == NPSpan{4, 2, 4});
}

TEST_CASE("shipped pseudo-object lexicon covers listen to") {
  const auto s = parse(
      "She she PRON 2 nsubj|listened listen VERB 0 root|to to ADP 5 case|"
      "the the DET 5 det|story story NOUN 2 obl|. . PUNCT 2 punct");
  const auto frames = extract_frames(s, shipped_pseudo_objects());
  REQUIRE(frames.size() == 1);
  CHECK(frames[0].object_is_pseudo);
  CHECK(frames[0].object.start == 2);
  CHECK(shipped_pseudo_objects().contains("listen", "to"));
  CHECK_FALSE(shipped_pseudo_objects().contains("listen", "for"));
}

TEST_CASE("an unlisted preposition is not a pseudo-object") {
  const auto s = parse(
      "I I PRON 2 nsubj|sat sit VERB 0 root|on on ADP 5 case|the the DET 5 det|"
      "bench bench NOUN 2 obl|. . PUNCT 2 punct");
  CHECK(extract_frames(s, shipped_pseudo_objects()).empty());
}

TEST_CASE("possessor phrases stay inside the NP span") {
  const auto s = parse(
      "The the DET 2 det|teacher teacher NOUN 4 nmod:poss|'s 's PART 2 case|"
      "student student NOUN 5 nsubj|read read VERB 0 root|a a DET 7 det|"
      "book book NOUN 5 obj|. . PUNCT 5 punct");
  CHECK(expand_np(s, 3) == NPSpan{3, 0, 3});
  const auto frames = extract_frames(s, {});
  REQUIRE(frames.size() == 1);
  CHECK(frames[0].subject == NPSpan{3, 0, 3});
}

TEST_CASE("proper names are arguments") {
  const auto s = parse(
      "Beth Beth PROPN 2 nsubj|scares scare VERB 0 root|Roger Roger PROPN 2 obj|. . PUNCT 2 punct");
  const auto a = analyze(s);
  REQUIRE(a.frames.size() == 1);
  CHECK(a.frames[0].subject == NPSpan{0, 0, 0});
  CHECK(a.frames[0].object == NPSpan{2, 2, 2});
  CHECK(*a.frames[0].subject_labels == labels_of("ADC"));
  CHECK(*a.frames[0].object_labels == labels_of("ADC"));
}

TEST_CASE("an object with a relative clause makes the sentence invalid") {
  const auto s = parse(
      "I I PRON 2 nsubj|know know VERB 0 root|people people NOUN 2 obj|"
      "that that PRON 5 nsubj|swear swear VERB 3 acl:relcl|by by ADP 7 case|"
      "it it PRON 5 obl|. . PUNCT 2 punct");
  const auto frames = extract_frames(s, shipped_pseudo_objects());
  CHECK(frames.empty());
  CHECK(classify_validity(s, frames) == Validity::kInvalid);
}

TEST_CASE("intransitive, passive and coordinated objects give no frame") {
  CHECK(extract_frames(parse("The the DET 2 det|baby baby NOUN 3 nsubj|slept sleep VERB 0 root"), {})
            .empty());
  CHECK(extract_frames(parse("The the DET 2 det|window window NOUN 4 nsubj:pass|was be AUX 4 aux:pass|"
                             "broken break VERB 0 root"),
                       {})
            .empty());
  CHECK(extract_frames(parse("Dogs dog NOUN 2 nsubj|chase chase VERB 0 root|cats cat NOUN 2 obj|"
                             "and and CCONJ 5 cc|mice mouse NOUN 3 conj"),
                       {})
            .empty());
}

TEST_CASE("pseudo-object lexicon file format") {
  std::istringstream good("# comment\nwait\tfor\n\nlook\tat\n");
  const auto lexicon = PseudoObjectLexicon::parse(good);
  CHECK(lexicon.size() == 2);
  CHECK(lexicon.contains("look", "at"));
  std::istringstream bad("wait\n");
  CHECK_THROWS_AS(PseudoObjectLexicon::parse(bad), ConfigError);
  CHECK_THROWS_AS(PseudoObjectLexicon::load(kSource / "no-such-file.tsv"), ConfigError);
}

TEST_CASE("tiny fixture matches its hand-checked golden frames and labels") {
  const auto sentences = read_fixture("tiny.conllu");
  REQUIRE(sentences.size() == 20);

  std::map<std::string, std::vector<std::vector<std::string>>> golden;
  std::ifstream in(kSource / "tests/fixtures/tiny.golden.tsv");
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::vector<std::string> row;
    for (std::string f; std::getline(fields, f, '\t');) row.push_back(f);
    REQUIRE(row.size() == 8);
    golden[row[0]].push_back(row);
  }
  REQUIRE(golden.size() == 20);

  int invalid = 0;
  for (const auto& s : sentences) {
    CAPTURE(s.id);
    const auto a = analyze(s);
    const auto& rows = golden.at(s.id);
    if (rows[0][1] == "0") {
      ++invalid;
      CHECK_FALSE(a.valid());
      continue;
    }
    REQUIRE(a.frames.size() == rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto& f = a.frames[k];
      CHECK(f.predicate_index == std::stoi(rows[k][2]));
      CHECK(f.subject == span_of(rows[k][3]));
      CHECK(f.object == span_of(rows[k][4]));
      CHECK(f.object_is_pseudo == (rows[k][5] == "1"));
      CHECK(*f.subject_labels == labels_of(rows[k][6]));
      CHECK(*f.object_labels == labels_of(rows[k][7]));
    }
  }
  CHECK(invalid == 7);
}

TEST_CASE("a book is inanimate, indefinite and common") {
  const auto s = parse(
      "She she PRON 2 nsubj|read read VERB 0 root|a a DET 4 det|book book NOUN 2 obj");
  const auto labels = shipped_annotator().annotate(s, {3, 2, 3});
  CHECK(labels == labels_of("INC"));
  CHECK(labels.is_high(Trigger::kAnimacy) == false);
  CHECK(prominence(shipped_annotator().annotate(s, {0, 0, 0}), Trigger::kPronominality) ==
        Prominence::kHigh);
}

TEST_CASE("definiteness cues") {
  const auto s = parse(
      "My my PRON 2 nmod:poss|dogs dog NOUN 3 nsubj|like like VERB 0 root|"
      "bones bone NOUN 3 obj|and and CCONJ 7 cc|this this DET 7 det|toy toy NOUN 4 conj");
  const auto& annotator = shipped_annotator();
  CHECK(annotator.annotate(s, {1, 0, 1}).definiteness == Definiteness::kDefinite);
  CHECK(annotator.annotate(s, {3, 3, 3}).definiteness == Definiteness::kIndefinite);
  CHECK(annotator.annotate(s, {6, 5, 6}).definiteness == Definiteness::kDefinite);
}

TEST_CASE("word lists are case-insensitive and skip comments") {
  std::istringstream in("# people\nTeacher\n\ndog\n");
  const auto list = WordList::parse(in);
  CHECK(list.size() == 2);
  CHECK(list.contains("teacher"));
  CHECK(list.contains("DOG"));
  CHECK_THROWS_AS(Annotator::load(kSource / "missing.txt", kSource / "data/animate.txt"),
                  ConfigError);
}

TEST_CASE("annotator agrees with the hand-labeled seed set on every trigger") {
  std::ifstream in(kSource / "data/seed_nps.conllu");
  const auto gold = read_gold_nps(in);
  REQUIRE(gold.size() == 200);
  const auto accuracy = evaluate_annotator(shipped_annotator(), gold);
  CHECK(accuracy.n == 200);
  for (Trigger t : kAllTriggers) {
    CAPTURE(to_string(t));
    CHECK(accuracy.for_trigger(t) >= 0.90);
  }
  MESSAGE("seed accuracy: animacy " << accuracy.animacy << ", definiteness "
                                    << accuracy.definiteness << ", pronominality "
                                    << accuracy.pronominality);
}

TEST_CASE("gold NP reader rejects incomplete blocks") {
  std::istringstream missing("# np = 1 1 1\n1\tI\tI\tPRON\t_\t_\t0\troot\t_\t_\n\n");
  CHECK_THROWS_AS(read_gold_nps(missing), ParseError);
  std::istringstream bad_label(
      "# np = 1 1 1\n# gold = animate definite proper\n1\tI\tI\tPRON\t_\t_\t0\troot\t_\t_\n\n");
  CHECK_THROWS_AS(read_gold_nps(bad_label), ParseError);
  std::istringstream one_class(
      "# np = 1 1 1\n# gold = animate definite pronoun\n1\tI\tI\tPRON\t_\t_\t0\troot\t_\t_\n\n");
  CHECK_THROWS_AS(evaluate_annotator(shipped_annotator(), read_gold_nps(one_class)), InputError);
}
