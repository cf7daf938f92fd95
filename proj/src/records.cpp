// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "damforge/records.hpp"

#include "damforge/errors.hpp"

namespace damforge {

namespace {

const Json& field(const Json& record, const char* name) {
  if (!record.is_object() || !record.contains(name)) {
    throw InputError(std::string("record lacks field '") + name + "'");
  }
  return record.at(name);
}

Json span_json(const NPSpan& span) {
  return Json{{"head", span.head_index}, {"start", span.start}, {"end", span.end}};
}

NPSpan span_from_json(const Json& record) {
  NPSpan span{field(record, "head").get<int>(), field(record, "start").get<int>(),
              field(record, "end").get<int>()};
  if (!(span.start <= span.head_index && span.head_index <= span.end)) {
    throw InputError("NP span does not contain its head");
  }
  return span;
}

Json labels_json(const SemanticLabels& labels) {
  return Json{{"animacy", to_string(labels.animacy)},
              {"definiteness", to_string(labels.definiteness)},
              {"pronominality", to_string(labels.pronominality)}};
}

SemanticLabels labels_from_json(const Json& record) {
  SemanticLabels labels;
  const std::string animacy = field(record, "animacy");
  const std::string definiteness = field(record, "definiteness");
  const std::string pronominality = field(record, "pronominality");
  if (animacy != "animate" && animacy != "inanimate") {
    throw InputError("bad animacy '" + animacy + "'");
  }
  if (definiteness != "definite" && definiteness != "indefinite") {
    throw InputError("bad definiteness '" + definiteness + "'");
  }
  if (pronominality != "pronoun" && pronominality != "common") {
    throw InputError("bad pronominality '" + pronominality + "'");
  }
  labels.animacy = animacy == "animate" ? Animacy::kAnimate : Animacy::kInanimate;
  labels.definiteness = definiteness == "definite" ? Definiteness::kDefinite
                                                   : Definiteness::kIndefinite;
  labels.pronominality = pronominality == "pronoun" ? Pronominality::kPronoun
                                                    : Pronominality::kCommon;
  return labels;
}

void fill_sentence(Json& record, const Sentence& sentence) {
  record["id"] = sentence.id;
  record["split"] = to_string(sentence.split);
  Json tokens = Json::array();
  for (const Token& token : sentence.tokens) {
    Json t{{"surface", token.surface}, {"lemma", token.lemma},
           {"upos", token.upos},       {"head", token.head},
           {"deprel", token.deprel}};
    if (!token.space_after) t["space_after"] = false;
    tokens.push_back(std::move(t));
  }
  record["tokens"] = std::move(tokens);
}

}  // namespace

Json to_json(const Sentence& sentence) {
  Json record = Json::object();
  fill_sentence(record, sentence);
  return record;
}

Sentence sentence_from_json(const Json& record) {
  Sentence sentence;
  sentence.id = field(record, "id").get<std::string>();
  sentence.split = parse_split(field(record, "split").get<std::string>());
  int index = 0;
  for (const Json& t : field(record, "tokens")) {
    Token token;
    token.index = index++;
    token.surface = field(t, "surface").get<std::string>();
    token.lemma = field(t, "lemma").get<std::string>();
    token.upos = field(t, "upos").get<std::string>();
    token.head = field(t, "head").get<int>();
    token.deprel = field(t, "deprel").get<std::string>();
    token.space_after = t.value("space_after", true);
    sentence.tokens.push_back(std::move(token));
  }
  validate(sentence);
  return sentence;
}

Json to_json(const SvoFrame& frame) {
  Json record{{"predicate", frame.predicate_index},
              {"subject", span_json(frame.subject)},
              {"object", span_json(frame.object)},
              {"object_is_pseudo", frame.object_is_pseudo}};
  if (frame.subject_labels) {
    record["subject_labels"] = labels_json(*frame.subject_labels);
  }
  if (frame.object_labels) {
    record["object_labels"] = labels_json(*frame.object_labels);
  }
  return record;
}

SvoFrame frame_from_json(const Json& record) {
  SvoFrame frame;
  frame.predicate_index = field(record, "predicate").get<int>();
  frame.subject = span_from_json(field(record, "subject"));
  frame.object = span_from_json(field(record, "object"));
  frame.object_is_pseudo = record.value("object_is_pseudo", false);
  if (record.contains("subject_labels")) {
    frame.subject_labels = labels_from_json(record["subject_labels"]);
  }
  if (record.contains("object_labels")) {
    frame.object_labels = labels_from_json(record["object_labels"]);
  }
  return frame;
}

Json to_json(const AnnotatedSentence& sentence) {
  Json record = to_json(sentence.sentence);
  record["valid"] = sentence.valid();
  Json frames = Json::array();
  for (const SvoFrame& frame : sentence.frames) frames.push_back(to_json(frame));
  record["frames"] = std::move(frames);
  return record;
}

AnnotatedSentence annotated_from_json(const Json& record) {
  AnnotatedSentence out;
  out.sentence = sentence_from_json(record);
  const int n = static_cast<int>(out.sentence.size());
  for (const Json& f : field(record, "frames")) {
    SvoFrame frame = frame_from_json(f);
    if (frame.subject.end >= n || frame.object.end >= n ||
        frame.predicate_index >= n || frame.subject.start < 0 ||
        frame.object.start < 0) {
      throw InputError("frame of sentence " + out.sentence.id +
                       " points outside the sentence");
    }
    out.frames.push_back(std::move(frame));
  }
  return out;
}

Json to_json(const PerturbedSentence& sentence) {
  Json insertions = Json::array();
  for (const Insertion& insertion : sentence.insertions) {
    insertions.push_back(
        Json{{"after", insertion.after},
             {"marker", insertion.marker == Marker::kAgent ? "A" : "P"}});
  }
  Json decisions = Json::array();
  for (MarkDecision d : sentence.frame_decisions) decisions.push_back(to_string(d));
  return Json{{"id", sentence.sentence_id},
              {"split", to_string(sentence.split)},
              {"rule", sentence.rule},
              {"bucket", to_string(sentence.bucket)},
              {"surface", sentence.surface},
              {"insertions", std::move(insertions)},
              {"frame_decisions", std::move(decisions)}};
}

PerturbedSentence perturbed_from_json(const Json& record) {
  PerturbedSentence out;
  out.sentence_id = field(record, "id").get<std::string>();
  out.split = parse_split(field(record, "split").get<std::string>());
  out.rule = field(record, "rule").get<std::string>();
  out.bucket = parse_bucket(field(record, "bucket").get<std::string>());
  out.surface = field(record, "surface").get<std::string>();
  for (const Json& i : field(record, "insertions")) {
    const std::string marker = field(i, "marker");
    if (marker != "A" && marker != "P") {
      throw InputError("bad marker '" + marker + "'");
    }
    out.insertions.push_back({field(i, "after").get<int>(),
                              marker == "A" ? Marker::kAgent : Marker::kPatient});
  }
  if (record.contains("frame_decisions")) {
    for (const Json& d : record["frame_decisions"]) {
      out.frame_decisions.push_back(parse_mark_decision(d.get<std::string>()));
    }
  }
  return out;
}

Json to_json(const MinimalPair& pair) {
  Json record{{"pair_id", pair.pair_id},
              {"kind", to_string(pair.kind)},
              {"rule", pair.rule},
              {"good", pair.good},
              {"bad", pair.bad}};
  record["polarity"] =
      pair.polarity ? Json(to_string(*pair.polarity)) : Json(nullptr);
  record["shift"] = pair.shift ? Json(*pair.shift) : Json(nullptr);
  record["source_id"] = pair.source_id;
  return record;
}

MinimalPair pair_from_json(const Json& record) {
  MinimalPair pair;
  pair.pair_id = field(record, "pair_id").get<std::string>();
  pair.kind = parse_pair_kind(field(record, "kind").get<std::string>());
  pair.rule = field(record, "rule").get<std::string>();
  pair.good = field(record, "good").get<std::string>();
  pair.bad = field(record, "bad").get<std::string>();
  if (record.contains("polarity") && !record["polarity"].is_null()) {
    pair.polarity = parse_polarity(record["polarity"].get<std::string>());
  }
  if (record.contains("shift") && !record["shift"].is_null()) {
    pair.shift = record["shift"].get<int>();
  }
  pair.source_id = record.value("source_id", "");
  return pair;
}

Json to_json(const ProbeInstance& instance) {
  return Json{{"instance_id", instance.instance_id},
              {"sentence_id", instance.sentence_id},
              {"head_token_index", instance.head_token_index},
              {"label", instance.label ? 1 : 0},
              {"set", to_string(instance.set)},
              {"text", instance.text},
              {"char_start", instance.char_start},
              {"char_end", instance.char_end}};
}

ProbeInstance probe_instance_from_json(const Json& record) {
  ProbeInstance instance;
  instance.instance_id = field(record, "instance_id").get<std::string>();
  instance.sentence_id = field(record, "sentence_id").get<std::string>();
  instance.head_token_index = field(record, "head_token_index").get<int>();
  const Json& label = field(record, "label");
  instance.label = label.is_boolean() ? label.get<bool>() : label.get<int>() != 0;
  instance.set = parse_probe_set(record.value("set", "train"));
  instance.text = record.value("text", "");
  instance.char_start = record.value("char_start", std::size_t{0});
  instance.char_end = record.value("char_end", std::size_t{0});
  return instance;
}

void for_each_json_line(std::istream& in,
                        const std::function<void(const Json&)>& handle) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json record = Json::parse(line, nullptr, false);
    if (record.is_discarded()) throw ParseError(line_no, "invalid JSON");
    try {
      handle(record);
    } catch (const ParseError&) {
      throw;
    } catch (const Json::exception& error) {
      throw ParseError(line_no, error.what());
    } catch (const Error& error) {
      throw ParseError(line_no, error.what());
    }
  }
}

}  // namespace damforge
