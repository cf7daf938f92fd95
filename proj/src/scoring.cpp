// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "damforge/scoring.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/beta.hpp>
#include <json.hpp>

#include "damforge/errors.hpp"
#include "damforge/ngram.hpp"

namespace damforge {

double mean_nll(std::span<const double> logprobs) {
  if (logprobs.empty()) {
    throw InputError("mean-NLL is undefined for a one-token sentence");
  }
  double sum = 0;
  for (double lp : logprobs) sum -= lp;
  return sum / static_cast<double>(logprobs.size());
}

bool judge_pair(const TokenLogProbs& good, const TokenLogProbs& bad) {
  return mean_nll(good) < mean_nll(bad);
}

std::string good_request_id(const MinimalPair& pair) {
  return pair.pair_id + "#good";
}

std::string bad_request_id(const MinimalPair& pair) {
  return pair.pair_id + "#bad";
}

std::vector<ScoreReport> build_reports(const std::vector<MinimalPair>& pairs,
                                       const ScoreTable& scores) {
  std::vector<ScoreReport> reports;
  for (const MinimalPair& pair : pairs) {
    auto report = std::find_if(reports.begin(), reports.end(),
                               [&](const ScoreReport& r) {
                                 return r.rule == pair.rule && r.kind == pair.kind;
                               });
    if (report == reports.end()) {
      ScoreReport fresh;
      fresh.rule = pair.rule;
      fresh.kind = pair.kind;
      reports.push_back(std::move(fresh));
      report = reports.end() - 1;
    }
    PairScore score;
    score.pair_id = pair.pair_id;
    auto good = scores.find(good_request_id(pair));
    auto bad = scores.find(bad_request_id(pair));
    if (good == scores.end() || bad == scores.end()) {
      score.error = "missing score for " + (good == scores.end()
                                                ? good_request_id(pair)
                                                : bad_request_id(pair));
    } else if (good->second.empty() || bad->second.empty()) {
      score.error = "one-token member cannot be scored";
    } else {
      TokenLogProbs g{good->first, good->second};
      TokenLogProbs b{bad->first, bad->second};
      score.good_nll = mean_nll(g);
      score.bad_nll = mean_nll(b);
      score.correct = score.good_nll < score.bad_nll;
    }
    ++report->n_pairs;
    if (!score.error.empty()) ++report->n_failed;
    if (score.correct) ++report->n_correct;
    report->pairs.push_back(std::move(score));
  }
  return reports;
}

ScoreTable score_with_ngram(const NGramModel& model,
                            const std::vector<MinimalPair>& pairs,
                            const MarkerStrings& markers) {
  ScoreTable table;
  for (const MinimalPair& pair : pairs) {
    table[good_request_id(pair)] =
        model.token_logprobs(scorer_tokens(pair.good, markers));
    table[bad_request_id(pair)] =
        model.token_logprobs(scorer_tokens(pair.bad, markers));
  }
  return table;
}

void write_score_requests(std::ostream& out,
                          const std::vector<MinimalPair>& pairs) {
  for (const MinimalPair& pair : pairs) {
    out << nlohmann::json{{"id", good_request_id(pair)}, {"text", pair.good}}.dump()
        << '\n';
    out << nlohmann::json{{"id", bad_request_id(pair)}, {"text", pair.bad}}.dump()
        << '\n';
  }
}

ResponseParse read_score_responses(std::istream& in) {
  ResponseParse result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "response line " + std::to_string(line_no) + ": ";
    nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object() || !record.contains("id") ||
        !record["id"].is_string()) {
      result.diagnostics.push_back(where + "malformed record");
      continue;
    }
    const std::string id = record["id"];
    if (record.contains("error")) {
      result.diagnostics.push_back(where + id + ": scorer error: " +
                                   record["error"].dump());
      continue;
    }
    if (!record.contains("logprobs") || !record["logprobs"].is_array()) {
      result.diagnostics.push_back(where + id + ": missing logprobs array");
      continue;
    }
    std::vector<double> logprobs;
    bool ok = true;
    for (const auto& value : record["logprobs"]) {
      if (!value.is_number() || value.get<double>() > 0.0 ||
          std::isnan(value.get<double>())) {
        ok = false;
        break;
      }
      logprobs.push_back(value.get<double>());
    }
    if (!ok || logprobs.empty()) {
      result.diagnostics.push_back(where + id +
                                   ": logprobs must be a nonempty array of "
                                   "non-positive numbers");
      continue;
    }
    result.scores[id] = std::move(logprobs);
  }
  return result;
}

Correlation correlate(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    throw InputError("correlate needs equally many x and y values");
  }
  const std::size_t n = xs.size();
  if (n < 3) throw InputError("correlate needs at least 3 points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw StatisticError("correlation is undefined for zero variance");
  }
  Correlation out;
  out.n = n;
  out.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = static_cast<double>(n - 2);
  const double one_minus_r2 = 1.0 - out.r * out.r;
  if (one_minus_r2 <= 0.0) {
    out.p_value = 0.0;
    return out;
  }
  const double t2 = out.r * out.r * df / one_minus_r2;
  // Two-sided tail of Student's t: I_{df/(df+t^2)}(df/2, 1/2).
  out.p_value = boost::math::ibeta(df / 2.0, 0.5, df / (df + t2));
  return out;
}

}  // namespace damforge
