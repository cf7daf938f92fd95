// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "damforge/probes.hpp"

#include <cmath>
#include <set>

#include <json.hpp>

#include "damforge/errors.hpp"
#include "damforge/random.hpp"

namespace damforge {

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// log(1 + exp(-m)) without overflow.
double softplus_neg(double m) {
  return std::max(-m, 0.0) + std::log1p(std::exp(-std::abs(m)));
}

std::size_t check_data(const std::vector<LabeledVector>& data) {
  if (data.empty()) throw InputError("probe data is empty");
  const std::size_t dim = data.front().x.size();
  for (const LabeledVector& v : data) {
    if (v.x.size() != dim) {
      throw InputError("probe vectors differ in dimension (" +
                       std::to_string(dim) + " vs " +
                       std::to_string(v.x.size()) + ")");
    }
  }
  return dim;
}

// Character offsets of each token in Sentence::surface().
std::vector<std::pair<std::size_t, std::size_t>> token_offsets(
    const Sentence& sentence) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < sentence.tokens.size(); ++i) {
    const Token& token = sentence.tokens[i];
    out.emplace_back(pos, pos + token.surface.size());
    pos += token.surface.size();
    if (i + 1 < sentence.tokens.size() && token.space_after) ++pos;
  }
  return out;
}

}  // namespace

std::string_view to_string(ArgumentPosition position) {
  return position == ArgumentPosition::kSubject ? "subject" : "object";
}

ArgumentPosition parse_position(std::string_view name) {
  if (name == "subject") return ArgumentPosition::kSubject;
  if (name == "object") return ArgumentPosition::kObject;
  throw ConfigError("unknown argument position '" + std::string(name) +
                    "' (expected subject or object)");
}

std::string_view to_string(ProbeSet set) {
  return set == ProbeSet::kTrain ? "train" : "test";
}

ProbeSet parse_probe_set(std::string_view name) {
  if (name == "train") return ProbeSet::kTrain;
  if (name == "test") return ProbeSet::kTest;
  throw InputError("unknown probe set '" + std::string(name) + "'");
}

ProbeSets build_probe_sets(const std::vector<AnnotatedSentence>& corpus,
                           Trigger feature, ArgumentPosition position,
                           std::size_t n_train_per_class,
                           std::size_t n_test_per_class, std::uint64_t seed) {
  std::vector<ProbeInstance> classes[2];
  for (const AnnotatedSentence& annotated : corpus) {
    const Sentence& sentence = annotated.sentence;
    if (sentence.split != Split::kTest) continue;
    const auto offsets = token_offsets(sentence);
    std::set<int> seen;
    for (const SvoFrame& frame : annotated.frames) {
      const bool subject = position == ArgumentPosition::kSubject;
      const NPSpan& span = subject ? frame.subject : frame.object;
      const auto& labels = subject ? frame.subject_labels : frame.object_labels;
      if (!labels || !seen.insert(span.head_index).second) continue;
      ProbeInstance instance;
      instance.sentence_id = sentence.id;
      instance.head_token_index = span.head_index;
      instance.instance_id =
          sentence.id + ":" + std::to_string(span.head_index);
      instance.label = labels->is_high(feature);
      instance.text = sentence.surface();
      instance.char_start = offsets[span.head_index].first;
      instance.char_end = offsets[span.head_index].second;
      classes[instance.label ? 1 : 0].push_back(std::move(instance));
    }
  }

  const std::size_t need = n_train_per_class + n_test_per_class;
  for (int c = 0; c < 2; ++c) {
    if (classes[c].size() < need) {
      throw GenerationError(
          std::string(to_string(feature)) + "/" +
          std::string(to_string(position)) + ": class " +
          (c == 1 ? hierarchy(feature).high_value : hierarchy(feature).low_value)
              .data() +
          " has " + std::to_string(classes[c].size()) + " instances, " +
          std::to_string(need) + " needed");
    }
  }

  Rng rng(seed);
  ProbeSets sets;
  for (int c = 1; c >= 0; --c) {
    const auto picks = rng.sample_without_replacement(classes[c].size(), need);
    for (std::size_t k = 0; k < picks.size(); ++k) {
      ProbeInstance instance = classes[c][picks[k]];
      if (k < n_train_per_class) {
        instance.set = ProbeSet::kTrain;
        sets.train.push_back(std::move(instance));
      } else {
        instance.set = ProbeSet::kTest;
        sets.test.push_back(std::move(instance));
      }
    }
  }
  return sets;
}

double LinearProbe::logit(const std::vector<double>& x) const {
  if (x.size() != weights.size()) {
    throw InputError("probe expects dimension " +
                     std::to_string(weights.size()) + ", got " +
                     std::to_string(x.size()));
  }
  double z = bias;
  for (std::size_t i = 0; i < x.size(); ++i) z += weights[i] * x[i];
  return z;
}

double logistic_loss(const LinearProbe& probe,
                     const std::vector<LabeledVector>& data) {
  double loss = 0;
  for (const LabeledVector& v : data) {
    const double y = v.label ? 1.0 : -1.0;
    loss += softplus_neg(y * probe.logit(v.x));
  }
  return loss / static_cast<double>(data.size());
}

std::vector<double> logistic_gradient(const LinearProbe& probe,
                                      const std::vector<LabeledVector>& data) {
  const std::size_t dim = probe.weights.size();
  std::vector<double> grad(dim + 1, 0.0);
  for (const LabeledVector& v : data) {
    const double y = v.label ? 1.0 : -1.0;
    // d/dz log(1 + exp(-y z)) = -y * sigmoid(-y z)
    const double g = -y * sigmoid(-y * probe.logit(v.x));
    for (std::size_t i = 0; i < dim; ++i) grad[i] += g * v.x[i];
    grad[dim] += g;
  }
  for (double& g : grad) g /= static_cast<double>(data.size());
  return grad;
}

namespace {

LinearProbe run_descent(const std::vector<LabeledVector>& data,
                        const ProbeTraining& options,
                        std::vector<double>* curve) {
  const std::size_t dim = check_data(data);
  bool has_pos = false, has_neg = false;
  for (const LabeledVector& v : data) (v.label ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg) {
    throw InputError("probe training needs both labels");
  }
  Rng rng(options.seed);
  LinearProbe probe;
  probe.weights.resize(dim);
  for (double& w : probe.weights) w = 0.01 * rng.normal();
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    const std::vector<double> grad = logistic_gradient(probe, data);
    for (std::size_t i = 0; i < dim; ++i) {
      probe.weights[i] -= options.learning_rate * grad[i];
    }
    probe.bias -= options.learning_rate * grad[dim];
    if (curve) curve->push_back(logistic_loss(probe, data));
  }
  return probe;
}

}  // namespace

LinearProbe train_probe(const std::vector<LabeledVector>& data,
                        const ProbeTraining& options) {
  return run_descent(data, options, nullptr);
}

std::vector<double> training_curve(const std::vector<LabeledVector>& data,
                                   const ProbeTraining& options) {
  std::vector<double> curve;
  run_descent(data, options, &curve);
  return curve;
}

double eval_probe(const LinearProbe& probe,
                  const std::vector<LabeledVector>& data) {
  if (data.empty()) return 0.0;
  std::size_t correct = 0;
  for (const LabeledVector& v : data) correct += probe.predict(v.x) == v.label;
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

std::map<std::string, std::vector<double>> read_vector_file(std::istream& in) {
  std::map<std::string, std::vector<double>> vectors;
  std::string line;
  std::size_t line_no = 0;
  long dimension = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      throw ParseError(line_no, "vector file line is not a JSON object");
    }
    if (dimension < 0) {
      if (!record.contains("dimension") || !record["dimension"].is_number_integer()) {
        throw InputError("vector file must start with a {\"dimension\": d} header");
      }
      dimension = record["dimension"].get<long>();
      continue;
    }
    if (!record.contains("instance_id") || !record.contains("vector") ||
        !record["vector"].is_array()) {
      throw ParseError(line_no, "vector record needs instance_id and vector");
    }
    std::vector<double> x = record["vector"].get<std::vector<double>>();
    if (static_cast<long>(x.size()) != dimension) {
      throw InputError("vector for " + record["instance_id"].get<std::string>() +
                       " has dimension " + std::to_string(x.size()) +
                       ", header declares " + std::to_string(dimension));
    }
    vectors[record["instance_id"].get<std::string>()] = std::move(x);
  }
  if (dimension < 0) throw InputError("vector file is empty");
  return vectors;
}

}  // namespace damforge
