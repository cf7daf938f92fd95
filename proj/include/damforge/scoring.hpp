// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

// Minimal-pair scoring under the length-normalized NLL contract:
//
//   mean-NLL(x) = -1/(T-1) * sum_{t=2..T} log p(x_t | x_<t)
//
// A pair is judged correct iff the grammatical member scores strictly
// lower. Scorers hand back per-token natural-log conditionals, either from
// the built-in n-gram model or from an external process speaking the
// JSON-lines wire protocol.

#ifndef DAMFORGE_SCORING_HPP_
#define DAMFORGE_SCORING_HPP_

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "damforge/pairs.hpp"

namespace damforge {

class NGramModel;

struct TokenLogProbs {
  std::string id;
  std::vector<double> logprobs;  // T - 1 entries, each <= 0
};

// Throws InputError on an empty list (a one-token sentence).
double mean_nll(std::span<const double> logprobs);
inline double mean_nll(const TokenLogProbs& scored) {
  return mean_nll(scored.logprobs);
}

// True iff mean_nll(good) < mean_nll(bad). Ties are incorrect.
bool judge_pair(const TokenLogProbs& good, const TokenLogProbs& bad);

struct PairScore {
  std::string pair_id;
  double good_nll = 0;
  double bad_nll = 0;
  bool correct = false;
  std::string error;  // nonempty when the pair could not be scored
};

struct ScoreReport {
  std::string rule;
  PairKind kind = PairKind::kMastery;
  std::size_t n_pairs = 0;
  std::size_t n_correct = 0;
  std::size_t n_failed = 0;  // counted in n_pairs as incorrect
  std::vector<PairScore> pairs;

  double accuracy() const {
    return n_pairs == 0 ? 0.0 : static_cast<double>(n_correct) /
                                    static_cast<double>(n_pairs);
  }
};

// Request ids for the two members of a pair.
std::string good_request_id(const MinimalPair& pair);
std::string bad_request_id(const MinimalPair& pair);

// Scored members keyed by request id. A missing entry fails its pair.
using ScoreTable = std::map<std::string, std::vector<double>>;

// One report per (rule, kind), in order of first appearance.
std::vector<ScoreReport> build_reports(const std::vector<MinimalPair>& pairs,
                                       const ScoreTable& scores);

// Scores every pair member with the n-gram model, tokenizing with
// scorer_tokens().
ScoreTable score_with_ngram(const NGramModel& model,
                            const std::vector<MinimalPair>& pairs,
                            const MarkerStrings& markers = {});

// Wire protocol. Requests are {"id", "text"} per line; responses are
// {"id", "logprobs"} or {"id", "error"} per line, in any order.
void write_score_requests(std::ostream& out,
                          const std::vector<MinimalPair>& pairs);

struct ResponseParse {
  ScoreTable scores;
  std::vector<std::string> diagnostics;
};

// Malformed lines, error responses and invalid arrays (empty, or with a
// positive entry) are reported as diagnostics and left out of `scores`.
ResponseParse read_score_responses(std::istream& in);

struct Correlation {
  double r = 0;
  double p_value = 1;
  std::size_t n = 0;
};

// Sample Pearson r with a two-sided p-value from the t statistic
// t = r * sqrt((n-2)/(1-r^2)) on n-2 degrees of freedom. Throws InputError
// for mismatched lengths or n < 3, StatisticError for zero variance.
Correlation correlate(std::span<const double> xs, std::span<const double> ys);

}  // namespace damforge

#endif  // DAMFORGE_SCORING_HPP_
