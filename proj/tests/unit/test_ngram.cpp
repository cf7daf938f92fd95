// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "damforge/errors.hpp"
#include "damforge/ngram.hpp"
#include "damforge/rules.hpp"

using namespace damforge;

namespace {

std::vector<std::string> words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

TEST_CASE("unigram discounting on a a b") {
  const auto model = NGramModel::train({words("a a b")}, 1, 0.75);
  CHECK(model.vocabulary_size() == 3);  // a, b, <unk>
  const double pa = model.probability("a", {});
  // (2 - 0.75)/3 + 0.75 * 2/3 * 1/3
  CHECK(pa == doctest::Approx(0.5833333333).epsilon(1e-9));
  CHECK(pa > 0.5);
  CHECK(pa < 2.0 / 3.0);
  CHECK(model.probability("b", {}) == doctest::Approx(0.25 / 3 + 1.0 / 6).epsilon(1e-9));
  CHECK(model.probability("zzz", {}) == model.probability("<unk>", {}));
}

TEST_CASE("distributions sum to one for every history") {
  const auto model = NGramModel::train(
      {words("the boy <P> saw the book"), words("a boy saw a dog <P>"), words("the dog ran")}, 3,
      0.75);
  const auto vocab = model.vocabulary();
  for (const auto& history : std::vector<std::vector<std::string>>{
           {}, {"the"}, {"the", "boy"}, {"boy", "<P>"}, {"never", "seen"}, {"<s>", "<s>"}}) {
    double total = 0;
    for (const auto& w : vocab) total += model.probability(w, history);
    CAPTURE(history.size());
    CHECK(std::abs(total - 1.0) < 1e-9);
  }
}

TEST_CASE("the model learns which words take a marker") {
  std::vector<std::vector<std::string>> corpus;
  for (int i = 0; i < 50; ++i) {
    corpus.push_back(words("the girl saw the boy <P> ."));
    corpus.push_back(words("the girl read the book ."));
  }
  const auto model = NGramModel::train(corpus, 3, 0.75);
  CHECK(model.probability("<P>", {"the", "boy"}) > model.probability("<P>", {"the", "book"}));
  CHECK(model.probability("<P>", {"boy"}) > model.probability("<P>", {"book"}));
}

TEST_CASE("token_logprobs skips the first token") {
  const auto model = NGramModel::train({words("x y z")}, 2, 0.5);
  const auto lp = model.token_logprobs(words("x y z"));
  REQUIRE(lp.size() == 2);
  CHECK(lp[0] == doctest::Approx(std::log(model.probability("y", {"x"}))));
  for (double v : lp) CHECK(v <= 0.0);
}

TEST_CASE("save and load reproduce every probability") {
  const auto model = NGramModel::train({words("a b c a b"), words("c b a")}, 3, 0.6);
  std::stringstream buffer;
  model.save(buffer);
  const auto copy = NGramModel::load(buffer);
  CHECK(copy.order() == 3);
  CHECK(copy.discount() == doctest::Approx(0.6));
  CHECK(copy.vocabulary() == model.vocabulary());
  for (const auto& w : model.vocabulary()) {
    CHECK(copy.probability(w, {"a", "b"}) == model.probability(w, {"a", "b"}));
  }
  std::istringstream junk("not a model\n");
  CHECK_THROWS(NGramModel::load(junk));
}

TEST_CASE("training arguments are checked") {
  CHECK_THROWS_AS(NGramModel::train({}, 3, 0.75), TrainingError);
  CHECK_THROWS_AS(NGramModel::train({words("a")}, 0, 0.75), TrainingError);
  CHECK_THROWS_AS(NGramModel::train({words("a")}, 3, 0.0), TrainingError);
  CHECK_THROWS_AS(NGramModel::train({words("a")}, 3, 1.5), TrainingError);
}

TEST_CASE("scorer tokenization splits markers and edge punctuation") {
  const MarkerStrings markers;
  CHECK(scorer_tokens("The dog <P>.", markers) ==
        std::vector<std::string>{"The", "dog", "<P>", "."});
  CHECK(scorer_tokens("The dog.", markers) == std::vector<std::string>{"The", "dog", "."});
  CHECK(scorer_tokens("I [AGT] ran", {"[AGT]", "[PAT]"}) ==
        std::vector<std::string>{"I", "[AGT]", "ran"});
}
