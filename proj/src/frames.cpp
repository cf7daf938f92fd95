// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "damforge/frames.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "damforge/errors.hpp"

namespace damforge {

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool is_nominal(const Token& token) {
  return token.upos == "NOUN" || token.upos == "PROPN" || token.upos == "PRON";
}

bool is_predicate(const Token& token) {
  if (token.upos == "VERB") return true;
  // An auxiliary only counts when it heads its own clause.
  if (token.upos == "AUX") {
    const std::string_view rel = token.base_deprel();
    return rel != "aux" && rel != "cop" && rel != "auxpass";
  }
  return false;
}

bool is_possessive_clitic(const Token& token) {
  const std::string form = lower(token.surface);
  return form == "'s" || form == "'" || form == "\xe2\x80\x99s";
}

bool expands(const Token& dependent) {
  const std::string_view rel = dependent.base_deprel();
  if (rel == "det" || rel == "amod" || rel == "compound" || rel == "poss" ||
      dependent.deprel == "nmod:poss") {
    return true;
  }
  return (rel == "case" && is_possessive_clitic(dependent));
}

// Coordinated heads and heads modified by a clause have no well-defined
// right edge for the marker.
bool is_blocked_argument(const Sentence& sentence, int head) {
  for (int dep : sentence.dependents(head)) {
    const std::string_view rel = sentence.tokens[dep].base_deprel();
    if (rel == "conj" || rel == "acl" || rel == "relcl") return true;
  }
  return false;
}

struct PredicateDependents {
  std::vector<int> subjects;
  std::vector<int> objects;
  bool passive = false;
  bool clausal = false;       // ccomp / xcomp / csubj
  bool ditransitive = false;  // iobj / dative
};

PredicateDependents collect(const Sentence& sentence, int predicate) {
  PredicateDependents out;
  for (int dep : sentence.dependents(predicate)) {
    const Token& token = sentence.tokens[dep];
    const std::string_view rel = token.base_deprel();
    if (token.deprel == "nsubj:pass" || token.deprel == "aux:pass" ||
        token.deprel == "nsubjpass" || token.deprel == "auxpass" ||
        token.deprel == "csubj:pass" || token.deprel == "csubjpass") {
      out.passive = true;
    } else if (rel == "nsubj") {
      out.subjects.push_back(dep);
    } else if (rel == "obj" || rel == "dobj") {
      out.objects.push_back(dep);
    } else if (rel == "iobj" || rel == "dative") {
      out.ditransitive = true;
    } else if (rel == "ccomp" || rel == "xcomp" || rel == "csubj") {
      out.clausal = true;
    }
  }
  return out;
}

}  // namespace

PseudoObjectLexicon PseudoObjectLexicon::parse(std::istream& in) {
  PseudoObjectLexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string verb, preposition, extra;
    if (!(fields >> verb)) continue;
    if (!(fields >> preposition) || (fields >> extra)) {
      throw ConfigError("pseudo-object lexicon line " +
                        std::to_string(line_no) +
                        ": expected 'verb<TAB>preposition'");
    }
    lexicon.add(verb, preposition);
  }
  return lexicon;
}

PseudoObjectLexicon PseudoObjectLexicon::load(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read pseudo-object lexicon " + path.string());
  }
  return parse(in);
}

void PseudoObjectLexicon::add(std::string verb_lemma,
                              std::string preposition) {
  pairs_.emplace(lower(verb_lemma), lower(preposition));
}

bool PseudoObjectLexicon::contains(std::string_view verb_lemma,
                                   std::string_view preposition) const {
  return pairs_.contains({lower(verb_lemma), lower(preposition)});
}

NPSpan expand_np(const Sentence& sentence, int head_index) {
  const int n = static_cast<int>(sentence.size());
  std::vector<bool> member(n, false);
  member[head_index] = true;
  std::vector<int> stack{head_index};
  while (!stack.empty()) {
    const int current = stack.back();
    stack.pop_back();
    for (int dep : sentence.dependents(current)) {
      if (!member[dep] && expands(sentence.tokens[dep])) {
        member[dep] = true;
        stack.push_back(dep);
      }
    }
  }
  NPSpan span{head_index, head_index, head_index};
  while (span.start > 0 && member[span.start - 1]) --span.start;
  while (span.end + 1 < n && member[span.end + 1]) ++span.end;
  return span;
}

std::optional<NPSpan> detect_pseudo_object(const Sentence& sentence,
                                           int predicate_index,
                                           const PseudoObjectLexicon& lexicon) {
  const Token& predicate = sentence.tokens[predicate_index];
  std::vector<NPSpan> candidates;

  auto consider = [&](int preposition, int nominal) {
    const Token& prep = sentence.tokens[preposition];
    const std::string& form = prep.lemma.empty() || prep.lemma == "_"
                                  ? prep.surface
                                  : prep.lemma;
    if (!lexicon.contains(predicate.lemma, form)) return;
    if (!is_nominal(sentence.tokens[nominal])) return;
    const NPSpan np = expand_np(sentence, nominal);
    // The unit must be contiguous: preposition immediately before the NP.
    if (preposition != np.start - 1) return;
    candidates.push_back({nominal, preposition, np.end});
  };

  for (int dep : sentence.dependents(predicate_index)) {
    const Token& token = sentence.tokens[dep];
    const std::string_view rel = token.base_deprel();
    if (rel == "obl") {
      // UD style: the nominal attaches to the verb, the preposition to it.
      for (int child : sentence.dependents(dep)) {
        if (sentence.tokens[child].base_deprel() == "case") {
          consider(child, dep);
        }
      }
    } else if (rel == "prep") {
      // Stanford/spaCy style: verb -> prep -> pobj.
      for (int child : sentence.dependents(dep)) {
        if (sentence.tokens[child].base_deprel() == "pobj") {
          consider(dep, child);
        }
      }
    }
  }
  if (candidates.size() != 1) return std::nullopt;
  return candidates.front();
}

std::vector<SvoFrame> extract_frames(const Sentence& sentence,
                                     const PseudoObjectLexicon& lexicon) {
  std::vector<SvoFrame> frames;
  for (const Token& token : sentence.tokens) {
    if (!is_predicate(token)) continue;
    const PredicateDependents deps = collect(sentence, token.index);
    if (deps.passive || deps.clausal || deps.ditransitive) continue;
    if (deps.subjects.size() != 1) continue;
    const int subject_head = deps.subjects.front();
    if (!is_nominal(sentence.tokens[subject_head])) continue;

    SvoFrame frame;
    frame.predicate_index = token.index;
    frame.subject = expand_np(sentence, subject_head);

    if (deps.objects.size() > 1) continue;
    if (deps.objects.size() == 1) {
      const int object_head = deps.objects.front();
      if (!is_nominal(sentence.tokens[object_head])) continue;
      frame.object = expand_np(sentence, object_head);
    } else {
      const auto pseudo = detect_pseudo_object(sentence, token.index, lexicon);
      if (!pseudo) continue;
      frame.object = *pseudo;
      frame.object_is_pseudo = true;
    }

    if (is_blocked_argument(sentence, frame.subject.head_index) ||
        is_blocked_argument(sentence, frame.object.head_index)) {
      continue;
    }
    if (frame.subject.overlaps(frame.object) ||
        frame.subject.contains(frame.predicate_index) ||
        frame.object.contains(frame.predicate_index)) {
      continue;
    }
    frames.push_back(frame);
  }
  return frames;
}

Validity classify_validity(const Sentence& /*sentence*/,
                           const std::vector<SvoFrame>& frames) {
  return frames.empty() ? Validity::kInvalid : Validity::kHasValidFrame;
}

}  // namespace damforge
