// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

// Small builders shared by the unit tests.

#ifndef DAMFORGE_TESTS_UNIT_UTIL_HPP_
#define DAMFORGE_TESTS_UNIT_UTIL_HPP_

#include <filesystem>
#include <fstream>
#include <unistd.h>
#include <sstream>
#include <string>
#include <vector>

#include "damforge/corpus.hpp"
#include "damforge/frames.hpp"
#include "damforge/ingest.hpp"
#include "damforge/semantics.hpp"

namespace damforge::unit {

inline const std::filesystem::path kSource = DAMFORGE_SOURCE_DIR;

// "form lemma UPOS head deprel|..." with 1-based heads (0 = root), as in
// CoNLL-U. Punctuation and "'s" attach to the previous token.
inline Sentence parse(const std::string& compact, const std::string& id = "t") {
  std::vector<std::vector<std::string>> rows;
  std::istringstream parts(compact);
  std::string part;
  while (std::getline(parts, part, '|')) {
    std::istringstream fields(part);
    std::vector<std::string> row;
    for (std::string f; fields >> f;) row.push_back(f);
    rows.push_back(row);
  }
  auto glued = [](const std::string& form) {
    return form == "." || form == "," || form == "'s";
  };
  std::ostringstream text;
  text << "# sent_id = " << id << "\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const bool no_space = i + 1 < rows.size() && glued(rows[i + 1][0]);
    text << i + 1 << '\t' << r[0] << '\t' << r[1] << '\t' << r[2] << "\t_\t_\t"
         << r[3] << '\t' << r[4] << "\t_\t" << (no_space ? "SpaceAfter=No" : "_")
         << '\n';
  }
  std::istringstream in(text.str());
  return read_conllu(in, /*strict=*/true).sentences.at(0);
}

inline const PseudoObjectLexicon& shipped_pseudo_objects() {
  static const PseudoObjectLexicon lexicon =
      PseudoObjectLexicon::load(kSource / "data/pseudo_objects.tsv");
  return lexicon;
}

inline const Annotator& shipped_annotator() {
  static const Annotator annotator = Annotator::load(
      kSource / "data/animate.txt", kSource / "data/definite_determiners.txt");
  return annotator;
}

// Frames plus labels under the shipped lexicons.
inline AnnotatedSentence analyze(const Sentence& sentence) {
  AnnotatedSentence out{sentence, extract_frames(sentence, shipped_pseudo_objects())};
  shipped_annotator().annotate(out);
  return out;
}

inline std::vector<Sentence> read_fixture(const std::string& name) {
  std::ifstream in(kSource / "tests/fixtures" / name);
  return read_conllu(in, true).sentences;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("damforge-unit-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  const std::filesystem::path& path() const { return path_; }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace damforge::unit

#endif  // DAMFORGE_TESTS_UNIT_UTIL_HPP_
