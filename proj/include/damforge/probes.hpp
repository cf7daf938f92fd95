// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

// Balanced semantic-probing sets and binary linear probes over argument-head
// representation vectors supplied by an external extractor.

#ifndef DAMFORGE_PROBES_HPP_
#define DAMFORGE_PROBES_HPP_

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "damforge/corpus.hpp"

namespace damforge {

enum class ArgumentPosition { kSubject, kObject };

std::string_view to_string(ArgumentPosition position);
ArgumentPosition parse_position(std::string_view name);

enum class ProbeSet { kTrain, kTest };

std::string_view to_string(ProbeSet set);
ProbeSet parse_probe_set(std::string_view name);

// One row of the request manifest. The extractor returns the vector of the
// rightmost model token whose character span overlaps
// [char_start, char_end) of `text`.
struct ProbeInstance {
  std::string instance_id;
  std::string sentence_id;
  int head_token_index = 0;
  bool label = false;  // true = hierarchy-high class
  ProbeSet set = ProbeSet::kTrain;
  std::string text;
  std::size_t char_start = 0;
  std::size_t char_end = 0;

  bool operator==(const ProbeInstance&) const = default;
};

struct ProbeSets {
  std::vector<ProbeInstance> train;
  std::vector<ProbeInstance> test;
};

// Samples exactly n_train_per_class + n_test_per_class instances of each
// class, without replacement, from the argument heads of annotated frames
// in the test split. Throws GenerationError naming the shortfall.
ProbeSets build_probe_sets(const std::vector<AnnotatedSentence>& corpus,
                           Trigger feature, ArgumentPosition position,
                           std::size_t n_train_per_class,
                           std::size_t n_test_per_class, std::uint64_t seed);

struct LabeledVector {
  std::vector<double> x;
  bool label = false;
};

struct LinearProbe {
  std::vector<double> weights;
  double bias = 0;

  double logit(const std::vector<double>& x) const;
  // Exact-zero logits resolve to the negative class.
  bool predict(const std::vector<double>& x) const { return logit(x) > 0.0; }
};

struct ProbeTraining {
  int epochs = 200;
  double learning_rate = 0.1;
  std::uint64_t seed = 0;
};

// Mean logistic loss and its gradient (weights..., bias last).
double logistic_loss(const LinearProbe& probe,
                     const std::vector<LabeledVector>& data);
std::vector<double> logistic_gradient(const LinearProbe& probe,
                                      const std::vector<LabeledVector>& data);

// Full-batch gradient descent on the mean logistic loss, no
// regularization. Weights start from N(0, 0.01^2) draws of the seeded
// generator; the bias starts at zero. Throws InputError on dimension
// mismatch or when a label class is missing.
LinearProbe train_probe(const std::vector<LabeledVector>& data,
                        const ProbeTraining& options = {});

// Per-epoch losses of the same run, for monitoring.
std::vector<double> training_curve(const std::vector<LabeledVector>& data,
                                   const ProbeTraining& options);

double eval_probe(const LinearProbe& probe,
                  const std::vector<LabeledVector>& data);

// Vector file: a header record {"dimension": d} followed by
// {"instance_id", "vector"} records, one JSON object per line. Throws
// InputError on a missing header or a vector of the wrong length.
std::map<std::string, std::vector<double>> read_vector_file(std::istream& in);

}  // namespace damforge

#endif  // DAMFORGE_PROBES_HPP_
