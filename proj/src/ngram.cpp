// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "damforge/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include "damforge/errors.hpp"

namespace damforge {

namespace {

constexpr std::string_view kPunctuation = ".,!?;:\"()[]{}";

bool is_punct(char c) { return kPunctuation.find(c) != std::string_view::npos; }

constexpr std::string_view kMagic = "damforge-ngram 1";

}  // namespace

std::vector<std::string> scorer_tokens(std::string_view text,
                                       const MarkerStrings& markers) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) {
      ++j;
    }
    std::string_view chunk = text.substr(i, j - i);
    i = j;
    if (chunk.empty()) continue;

    std::vector<std::string> tail;
    while (!chunk.empty()) {
      bool peeled = false;
      for (const std::string* m : {&markers.agent, &markers.patient}) {
        if (!m->empty() && chunk.starts_with(*m)) {
          out.push_back(*m);
          chunk.remove_prefix(m->size());
          peeled = true;
          break;
        }
      }
      if (!peeled && is_punct(chunk.front()) && chunk.size() > 1) {
        out.emplace_back(1, chunk.front());
        chunk.remove_prefix(1);
        peeled = true;
      }
      if (!peeled) break;
    }
    while (!chunk.empty()) {
      bool peeled = false;
      for (const std::string* m : {&markers.agent, &markers.patient}) {
        if (!m->empty() && chunk.size() > m->size() && chunk.ends_with(*m)) {
          tail.push_back(*m);
          chunk.remove_suffix(m->size());
          peeled = true;
          break;
        }
      }
      if (!peeled && chunk.size() > 1 && is_punct(chunk.back())) {
        tail.emplace_back(1, chunk.back());
        chunk.remove_suffix(1);
        peeled = true;
      }
      if (!peeled) break;
    }
    if (!chunk.empty()) out.emplace_back(chunk);
    out.insert(out.end(), tail.rbegin(), tail.rend());
  }
  return out;
}

NGramModel::NGramModel(int order, double discount)
    : order_(order), discount_(discount), counts_(order) {
  vocab_ = {std::string(kUnknown), std::string(kStart)};
  ids_[std::string(kUnknown)] = 0;
  ids_[std::string(kStart)] = 1;
}

int NGramModel::intern(const std::string& token) {
  auto [it, inserted] = ids_.try_emplace(token, static_cast<int>(vocab_.size()));
  if (inserted) vocab_.push_back(token);
  return it->second;
}

int NGramModel::id_of(std::string_view token) const {
  auto it = ids_.find(std::string(token));
  if (it == ids_.end() || it->second == 1) return 0;
  return it->second;
}

std::string NGramModel::key_of(const int* context, int len) {
  std::string key(static_cast<std::size_t>(len) * sizeof(int), '\0');
  if (len > 0) std::memcpy(key.data(), context, key.size());
  return key;
}

void NGramModel::count(const std::vector<int>& ids) {
  // Padded sequence: order-1 start symbols then the sentence.
  std::vector<int> padded(order_ - 1, 1);
  padded.insert(padded.end(), ids.begin(), ids.end());
  for (std::size_t pos = order_ - 1; pos < padded.size(); ++pos) {
    const int word = padded[pos];
    for (int k = 0; k < order_; ++k) {
      ContextCounts& ctx = counts_[k][key_of(padded.data() + pos - k, k)];
      ++ctx.total;
      ++ctx.next[word];
    }
  }
}

NGramModel NGramModel::train(
    const std::vector<std::vector<std::string>>& corpus, int order,
    double discount) {
  if (order < 1) throw TrainingError("n-gram order must be at least 1");
  if (!(discount > 0.0 && discount <= 1.0)) {
    throw TrainingError("absolute discount must lie in (0, 1]");
  }
  NGramModel model(order, discount);
  bool any = false;
  for (const auto& sentence : corpus) {
    if (sentence.empty()) continue;
    any = true;
    std::vector<int> ids;
    ids.reserve(sentence.size());
    for (const std::string& token : sentence) {
      if (token == kStart) {
        throw TrainingError("reserved token <s> in training data");
      }
      ids.push_back(model.intern(token));
    }
    model.count(ids);
  }
  if (!any) throw TrainingError("n-gram training corpus is empty");
  return model;
}

std::vector<std::string> NGramModel::vocabulary() const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    if (i != 1) out.push_back(vocab_[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double NGramModel::probability_ids(int word, const int* context,
                                   int context_len) const {
  double p = 1.0 / static_cast<double>(vocabulary_size());
  // Build up from the unigram level to the longest available context.
  for (int k = 0; k <= context_len; ++k) {
    const auto& table = counts_[k];
    auto it = table.find(key_of(context + context_len - k, k));
    if (it == table.end()) continue;
    const ContextCounts& ctx = it->second;
    const double total = static_cast<double>(ctx.total);
    auto w = ctx.next.find(word);
    const double c = w == ctx.next.end() ? 0.0 : static_cast<double>(w->second);
    const double types = static_cast<double>(ctx.next.size());
    p = std::max(c - discount_, 0.0) / total + discount_ * types / total * p;
  }
  return p;
}

double NGramModel::probability(std::string_view word,
                               const std::vector<std::string>& history) const {
  std::vector<int> context(order_ - 1, 1);
  const std::size_t keep =
      std::min<std::size_t>(history.size(), static_cast<std::size_t>(order_ - 1));
  for (std::size_t i = 0; i < keep; ++i) {
    context[order_ - 1 - keep + i] = id_of(history[history.size() - keep + i]);
  }
  return probability_ids(id_of(word), context.data(), order_ - 1);
}

std::vector<double> NGramModel::token_logprobs(
    const std::vector<std::string>& tokens) const {
  std::vector<int> padded(order_ - 1, 1);
  for (const std::string& token : tokens) padded.push_back(id_of(token));
  std::vector<double> out;
  for (std::size_t t = 1; t < tokens.size(); ++t) {
    const std::size_t pos = t + order_ - 1;
    out.push_back(std::log(probability_ids(
        padded[pos], padded.data() + pos - (order_ - 1), order_ - 1)));
  }
  return out;
}

void NGramModel::save(std::ostream& out) const {
  std::vector<std::string> lines;
  for (int k = 0; k < order_; ++k) {
    for (const auto& [key, ctx] : counts_[k]) {
      std::vector<int> context(k);
      if (k > 0) std::memcpy(context.data(), key.data(), key.size());
      std::string prefix;
      for (int id : context) prefix += vocab_[id] + ' ';
      for (const auto& [word, c] : ctx.next) {
        lines.push_back(std::to_string(k + 1) + '\t' + std::to_string(c) +
                        '\t' + prefix + vocab_[word]);
      }
    }
  }
  std::sort(lines.begin(), lines.end());
  std::ostringstream header;
  header.precision(17);
  header << kMagic << '\n' << "order\t" << order_ << '\n'
         << "discount\t" << discount_ << '\n';
  out << header.str();
  for (const std::string& line : lines) out << line << '\n';
}

NGramModel NGramModel::load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kMagic) {
    throw InputError("not a damforge n-gram model");
  }
  int order = 0;
  double discount = 0;
  std::string key;
  if (!(in >> key >> order) || key != "order" ||
      !(in >> key >> discount) || key != "discount") {
    throw InputError("n-gram model header is malformed");
  }
  if (order < 1 || !(discount > 0.0 && discount <= 1.0)) {
    throw InputError("n-gram model header has invalid order or discount");
  }
  std::getline(in, line);
  NGramModel model(order, discount);
  std::size_t line_no = 3;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    int k = 0;
    std::uint64_t c = 0;
    std::vector<std::string> tokens;
    std::string token;
    fields >> k >> c;
    while (fields >> token) tokens.push_back(token);
    if (k < 1 || k > order || static_cast<int>(tokens.size()) != k || c == 0) {
      throw ParseError(line_no, "malformed n-gram count line");
    }
    std::vector<int> ids;
    for (const std::string& t : tokens) ids.push_back(model.intern(t));
    ContextCounts& ctx = model.counts_[k - 1][key_of(ids.data(), k - 1)];
    ctx.total += c;
    ctx.next[ids.back()] += c;
  }
  return model;
}

}  // namespace damforge
