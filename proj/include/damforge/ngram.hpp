// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef DAMFORGE_NGRAM_HPP_
#define DAMFORGE_NGRAM_HPP_

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "damforge/rules.hpp"

namespace damforge {

// Whitespace tokenization for the built-in scorer. Marker strings and
// leading/trailing punctuation are split off into tokens of their own, so
// "dog <P>." and "dog." share the token "dog".
std::vector<std::string> scorer_tokens(std::string_view text,
                                       const MarkerStrings& markers);

// Interpolated absolute-discount n-gram model over whitespace tokens:
//
//   p_k(w | h) = max(c(h,w) - D, 0) / c(h) + D * N1+(h) / c(h) * p_{k-1}(w | h')
//   p_0(w)     = 1 / |V|
//
// where h' drops the oldest context token and contexts never seen fall
// straight through to the lower order. V holds every training token plus
// "<unk>"; contexts are padded with "<s>", which is never predicted.
class NGramModel {
 public:
  static constexpr std::string_view kUnknown = "<unk>";
  static constexpr std::string_view kStart = "<s>";

  // Throws TrainingError for an empty corpus, order < 1, or a discount
  // outside (0, 1].
  static NGramModel train(const std::vector<std::vector<std::string>>& corpus,
                          int order = 3, double discount = 0.75);

  int order() const { return order_; }
  double discount() const { return discount_; }
  std::size_t vocabulary_size() const { return vocab_.size() - 1; }

  // Token strings of V (excluding "<s>"), sorted.
  std::vector<std::string> vocabulary() const;

  // p(word | history); only the last order-1 history tokens matter.
  // Unknown tokens map to "<unk>".
  double probability(std::string_view word,
                     const std::vector<std::string>& history) const;

  // log p(x_t | x_<t) for t = 2..T, natural log.
  std::vector<double> token_logprobs(
      const std::vector<std::string>& tokens) const;

  // Text serialization of the raw counts.
  void save(std::ostream& out) const;
  static NGramModel load(std::istream& in);

 private:
  struct ContextCounts {
    std::uint64_t total = 0;
    std::unordered_map<int, std::uint64_t> next;
  };

  NGramModel(int order, double discount);

  int id_of(std::string_view token) const;
  int intern(const std::string& token);
  void count(const std::vector<int>& ids);
  double probability_ids(int word, const int* context, int context_len) const;
  static std::string key_of(const int* context, int len);

  int order_;
  double discount_;
  std::vector<std::string> vocab_;  // id -> token; 0 = <unk>, 1 = <s>
  std::unordered_map<std::string, int> ids_;
  // counts_[k] maps a packed context of k tokens to its continuations.
  std::vector<std::unordered_map<std::string, ContextCounts>> counts_;
};

}  // namespace damforge

#endif  // DAMFORGE_NGRAM_HPP_
