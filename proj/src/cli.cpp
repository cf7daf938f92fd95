// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "damforge/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "damforge/config.hpp"
#include "damforge/errors.hpp"
#include "damforge/frames.hpp"
#include "damforge/ingest.hpp"
#include "damforge/ngram.hpp"
#include "damforge/pairs.hpp"
#include "damforge/probes.hpp"
#include "damforge/random.hpp"
#include "damforge/records.hpp"
#include "damforge/rules.hpp"
#include "damforge/scoring.hpp"
#include "damforge/semantics.hpp"

namespace damforge {

namespace fs = std::filesystem;

namespace {

class OutputError : public Error {
 public:
  explicit OutputError(const std::string& message) : Error("output", message) {}
};

class ScorerError : public Error {
 public:
  explicit ScorerError(const std::string& message) : Error("scorer", message) {}
};

// Options every command shares.
struct Common {
  std::string config_path;
  std::vector<std::string> overrides;
  bool force = false;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  const std::map<std::string, std::string>& environment;
};

void add_common(CLI::App* command, Common& common) {
  command->add_option("--config", common.config_path, "Config file (INI)");
  command->add_option("--set", common.overrides,
                      "Override one key, section.key=value (repeatable)");
  command->add_flag("--force", common.force, "Overwrite existing outputs");
}

Config load(const Common& common, const Context& ctx) {
  if (!common.config_path.empty() && !fs::exists(common.config_path)) {
    throw ConfigError("config file " + common.config_path + " does not exist");
  }
  return load_config(common.config_path, ctx.environment, common.overrides);
}

// Missing upstream artifacts name the command that produces them.
void require_input(const std::string& path, const std::string& producer) {
  if (!fs::exists(path)) {
    throw InputError(path + " does not exist" +
                     (producer.empty() ? std::string()
                                       : "; produce it with `damforge " +
                                             producer + "`"));
  }
  if (fs::is_directory(path)) throw InputError(path + " is a directory");
}

void require_writable(const std::vector<std::string>& paths, bool force) {
  std::set<std::string> seen;
  for (const std::string& path : paths) {
    if (!seen.insert(path).second) {
      throw OutputError("output " + path + " is named twice");
    }
    if (fs::exists(path) && !force) {
      throw OutputError(path + " exists; pass --force to overwrite");
    }
  }
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  return in;
}

// Writes through a temporary sibling so a failed run leaves no partial file.
void write_file(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot write " + tmp.string());
    out << content;
    if (!out) throw OutputError("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

template <typename T>
std::string jsonl(const std::vector<T>& items) {
  std::ostringstream out;
  write_jsonl(out, items);
  return out.str();
}

// Reads records of one kind; `producer` names the command whose output
// carries the required fields.
template <typename T>
std::vector<T> read_records(const std::string& path, T (*decode)(const Json&),
                            const std::string& producer) {
  require_input(path, producer);
  std::ifstream in = open_input(path);
  try {
    return read_jsonl(in, decode);
  } catch (const ParseError& error) {
    throw ParseError(error.line(), std::string(error.what()).substr(
                                       std::string(error.what()).find(": ") + 2) +
                                       " in " + path + " (expected output of `damforge " +
                                       producer + "`)");
  }
}

std::string pct(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", value);
  return buffer;
}

std::string number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

const char* kStatsHeader =
    "rule\taffected\tunaffected\tinvalid\ttotal\tsvo_pct\tall_pct\t"
    "frames\tframes_marked\tframe_svo_pct\n";

std::string stats_row(const RuleStats& s) {
  std::ostringstream row;
  row << s.rule << '\t' << s.affected << '\t' << s.unaffected << '\t'
      << s.invalid << '\t' << s.total() << '\t' << pct(s.svo_pct()) << '\t'
      << pct(s.all_pct()) << '\t' << s.frames << '\t' << s.frames_marked
      << '\t' << pct(s.frame_svo_pct()) << '\n';
  return row.str();
}

std::uint64_t rule_seed(const Config& config, std::string_view stream,
                        const std::string& rule) {
  return substream_seed(substream_seed(config.seed, stream), rule);
}

Annotator load_annotator(const Config& config) {
  for (const std::string* path : {&config.animate, &config.definite}) {
    if (!fs::exists(*path)) {
      throw ConfigError("lexicon " + *path + " does not exist");
    }
  }
  return Annotator::load(config.animate, config.definite);
}

PseudoObjectLexicon load_pseudo(const Config& config) {
  if (!fs::exists(config.pseudo_objects)) {
    throw ConfigError("lexicon " + config.pseudo_objects + " does not exist");
  }
  return PseudoObjectLexicon::load(config.pseudo_objects);
}

void require_annotated(const std::vector<AnnotatedSentence>& corpus,
                       const std::string& path) {
  for (const AnnotatedSentence& s : corpus) {
    for (const SvoFrame& frame : s.frames) {
      if (!frame.annotated()) {
        throw InputError(path + ": sentence " + s.sentence.id +
                         " has unlabeled frames; run `damforge annotate` first");
      }
    }
  }
}

// ---------------------------------------------------------------- ingest

struct IngestArgs {
  Common common;
  std::string input;
  std::string output;
};

int run_ingest(const IngestArgs& a, const Context& ctx) {
  const Config config = load(a.common, ctx);
  require_input(a.input, "");
  require_writable({a.output}, a.common.force);
  std::ifstream in = open_input(a.input);
  ConlluReadResult read = read_conllu(in, config.strict);
  for (const Diagnostic& d : read.diagnostics) {
    ctx.err << "warning: parse: " << a.input << ": line " << d.line << ": "
            << d.message << '\n';
  }
  std::set<std::string> ids;
  for (const Sentence& s : read.sentences) {
    if (!ids.insert(s.id).second) {
      throw InputError("duplicate sentence id " + s.id + " in " + a.input);
    }
  }
  const std::size_t n_read = read.sentences.size();
  std::vector<Sentence> kept =
      filter_by_length(std::move(read.sentences), config.min_tokens, config.max_tokens);
  assign_splits(kept, config.ratios, substream_seed(config.seed, "split"));
  std::size_t counts[3] = {0, 0, 0};
  for (const Sentence& s : kept) ++counts[static_cast<int>(s.split)];
  write_file(a.output, jsonl(kept));
  ctx.out << "read " << n_read << " sentences, kept " << kept.size()
          << " (train " << counts[0] << ", validation " << counts[1]
          << ", test " << counts[2] << "), " << read.diagnostics.size()
          << " skipped\n";
  return kExitOk;
}

// ---------------------------------------------------------------- frames

struct StepArgs {
  Common common;
  std::string input;
  std::string output;
};

int run_frames(const StepArgs& a, const Context& ctx) {
  const Config config = load(a.common, ctx);
  const PseudoObjectLexicon lexicon = load_pseudo(config);
  const auto sentences = read_records(a.input, sentence_from_json, "ingest");
  require_writable({a.output}, a.common.force);
  std::vector<AnnotatedSentence> out;
  out.reserve(sentences.size());
  std::size_t valid = 0, frames = 0;
  for (const Sentence& s : sentences) {
    AnnotatedSentence annotated{s, extract_frames(s, lexicon)};
    valid += annotated.valid();
    frames += annotated.frames.size();
    out.push_back(std::move(annotated));
  }
  write_file(a.output, jsonl(out));
  ctx.out << sentences.size() << " sentences, " << valid << " with a valid frame, "
          << frames << " frames\n";
  return kExitOk;
}

int run_annotate(const StepArgs& a, const Context& ctx) {
  const Config config = load(a.common, ctx);
  const Annotator annotator = load_annotator(config);
  auto corpus = read_records(a.input, annotated_from_json, "frames");
  require_writable({a.output}, a.common.force);
  for (AnnotatedSentence& s : corpus) annotator.annotate(s);
  write_file(a.output, jsonl(corpus));
  ctx.out << "annotated " << corpus.size() << " sentences\n";
  return kExitOk;
}

// ---------------------------------------------------------------- inject

struct InjectArgs {
  Common common;
  std::string input;
  std::string rule;
  std::string output_dir;
};

int run_inject(const InjectArgs& a, const Context& ctx) {
  Config config = load(a.common, ctx);
  if (!a.rule.empty()) set_config_value(config, "rules.list", a.rule);
  const std::vector<DamRule> rules = configured_rules(config);
  const auto corpus = read_records(a.input, annotated_from_json, "annotate");
  require_annotated(corpus, a.input);

  const fs::path dir(a.output_dir);
  std::vector<std::string> outputs;
  for (const DamRule& rule : rules) {
    outputs.push_back((dir / (rule.name() + ".jsonl")).string());
    outputs.push_back((dir / (rule.name() + ".train.txt")).string());
  }
  outputs.push_back((dir / "stats.tsv").string());
  require_writable(outputs, a.common.force);

  std::vector<std::pair<std::string, std::string>> files;
  std::string stats = kStatsHeader;
  for (const DamRule& rule : rules) {
    std::vector<PerturbedSentence> perturbed;
    perturbed.reserve(corpus.size());
    std::string text;
    for (const AnnotatedSentence& s : corpus) {
      perturbed.push_back(apply_rule(rule, s, config.markers));
      if (s.sentence.split == Split::kTrain) text += perturbed.back().surface + '\n';
    }
    stats += stats_row(corpus_stats(rule, perturbed));
    files.emplace_back((dir / (rule.name() + ".jsonl")).string(), jsonl(perturbed));
    files.emplace_back((dir / (rule.name() + ".train.txt")).string(), std::move(text));
  }
  for (const auto& [path, content] : files) write_file(path, content);
  write_file((dir / "stats.tsv").string(), stats);
  ctx.out << stats;
  return kExitOk;
}

// ----------------------------------------------------------------- stats

struct StatsArgs {
  Common common;
  std::vector<std::string> inputs;
  std::string output;
};

int run_stats(const StatsArgs& a, const Context& ctx) {
  load(a.common, ctx);
  if (!a.output.empty()) require_writable({a.output}, a.common.force);
  std::string table = kStatsHeader;
  for (const std::string& path : a.inputs) {
    const auto perturbed = read_records(path, perturbed_from_json, "inject");
    if (perturbed.empty()) throw InputError(path + " holds no records");
    const std::string& name = perturbed.front().rule;
    for (const PerturbedSentence& p : perturbed) {
      if (p.rule != name) {
        throw InputError(path + " mixes rules " + name + " and " + p.rule);
      }
    }
    table += stats_row(corpus_stats(parse_rule(name), perturbed));
  }
  if (a.output.empty()) {
    ctx.out << table;
  } else {
    write_file(a.output, table);
  }
  return kExitOk;
}

// ----------------------------------------------------------------- pairs

struct PairsArgs {
  Common common;
  std::string input;
  std::string rule;
  std::string kind = "mastery";
  std::string output;
};

int run_pairs(const PairsArgs& a, const Context& ctx) {
  Config config = load(a.common, ctx);
  const PairKind kind = parse_pair_kind(a.kind);
  if (kind == PairKind::kBenchmark) {
    throw ConfigError("benchmark pairs come from `damforge perturb-benchmark`");
  }
  if (!a.rule.empty()) set_config_value(config, "rules.list", a.rule);
  const std::vector<DamRule> rules = configured_rules(config);
  const auto corpus = read_records(a.input, annotated_from_json, "annotate");
  require_annotated(corpus, a.input);
  require_writable({a.output}, a.common.force);

  std::vector<MinimalPair> pairs;
  for (const DamRule& rule : rules) {
    std::vector<MinimalPair> generated =
        kind == PairKind::kMastery
            ? generate_mastery_pairs(rule, corpus, config.markers,
                                     config.mastery_per_polarity,
                                     rule_seed(config, "pairs", rule.name()))
            : generate_placement_pairs(rule, corpus, config.markers,
                                       config.placement_count, config.max_shift,
                                       rule_seed(config, "placement", rule.name()));
    pairs.insert(pairs.end(), generated.begin(), generated.end());
  }
  write_file(a.output, jsonl(pairs));
  ctx.out << "wrote " << pairs.size() << " " << to_string(kind) << " pairs\n";
  return kExitOk;
}

// ------------------------------------------------------------ ngram-train

struct TrainArgs {
  Common common;
  std::string input;
  std::string split = "train";
  std::string output;
};

int run_ngram_train(const TrainArgs& a, const Context& ctx) {
  const Config config = load(a.common, ctx);
  const Split split = parse_split(a.split);
  const auto perturbed = read_records(a.input, perturbed_from_json, "inject");
  require_writable({a.output}, a.common.force);
  std::vector<std::vector<std::string>> corpus;
  for (const PerturbedSentence& p : perturbed) {
    if (p.split == split) corpus.push_back(scorer_tokens(p.surface, config.markers));
  }
  const NGramModel model =
      NGramModel::train(corpus, config.ngram_order, config.ngram_discount);
  std::ostringstream text;
  model.save(text);
  write_file(a.output, text.str());
  ctx.out << "trained order-" << model.order() << " model on " << corpus.size()
          << " sentences, vocabulary " << model.vocabulary_size() << '\n';
  return kExitOk;
}

// ----------------------------------------------------------------- score

struct ScoreArgs {
  Common common;
  std::string pairs;
  std::string scorer = "ngram";
  std::string model;
  std::string responses;
  std::string command;
  std::string emit_requests;
  std::string output;
  std::string details;
};

const char* kReportHeader = "rule\tkind\tn_pairs\tn_correct\tn_failed\taccuracy\n";

std::string report_table(const std::vector<ScoreReport>& reports) {
  std::ostringstream out;
  out << kReportHeader;
  for (const ScoreReport& r : reports) {
    out << r.rule << '\t' << to_string(r.kind) << '\t' << r.n_pairs << '\t'
        << r.n_correct << '\t' << r.n_failed << '\t' << number(r.accuracy())
        << '\n';
  }
  return out.str();
}

std::string report_details(const std::vector<ScoreReport>& reports) {
  std::ostringstream out;
  for (const ScoreReport& r : reports) {
    for (const PairScore& p : r.pairs) {
      Json entry{{"pair_id", p.pair_id},
                 {"rule", r.rule},
                 {"kind", to_string(r.kind)},
                 {"correct", p.correct}};
      if (p.error.empty()) {
        entry["good_nll"] = p.good_nll;
        entry["bad_nll"] = p.bad_nll;
      } else {
        entry["error"] = p.error;
      }
      out << entry.dump() << '\n';
    }
  }
  return out.str();
}

std::string details_path(const ScoreArgs& a) {
  if (!a.details.empty()) return a.details;
  fs::path path(a.output);
  path.replace_extension(".pairs.jsonl");
  return path.string();
}

ScoreTable run_external(const std::string& command,
                        const std::vector<MinimalPair>& pairs, const Context& ctx) {
  std::string pattern = (fs::temp_directory_path() / "damforge-XXXXXX").string();
  if (!mkdtemp(pattern.data())) throw ScorerError("cannot create a temporary directory");
  const fs::path dir(pattern);
  const fs::path requests = dir / "requests.jsonl";
  const fs::path responses = dir / "responses.jsonl";
  {
    std::ofstream out(requests);
    write_score_requests(out, pairs);
  }
  const std::string shell = "(" + command + ") < '" + requests.string() + "' > '" +
                            responses.string() + "'";
  const int status = std::system(shell.c_str());
  if (status != 0) {
    fs::remove_all(dir);
    throw ScorerError("scorer command exited with status " + std::to_string(status));
  }
  std::ifstream in(responses);
  ResponseParse parsed = read_score_responses(in);
  fs::remove_all(dir);
  for (const std::string& d : parsed.diagnostics) ctx.err << "warning: scorer: " << d << '\n';
  return std::move(parsed.scores);
}

int run_score(const ScoreArgs& a, const Context& ctx) {
  const Config config = load(a.common, ctx);
  const auto pairs = read_records(a.pairs, pair_from_json, "pairs");

  if (!a.emit_requests.empty()) {
    require_writable({a.emit_requests}, a.common.force);
    std::ostringstream requests;
    write_score_requests(requests, pairs);
    write_file(a.emit_requests, requests.str());
    ctx.out << "wrote " << 2 * pairs.size() << " requests\n";
    if (a.output.empty()) return kExitOk;
  }
  if (a.output.empty()) throw ConfigError("--output is required to score");

  ScoreTable scores;
  if (a.scorer == "ngram") {
    if (a.model.empty()) throw ConfigError("--scorer ngram needs --model");
    require_input(a.model, "ngram-train");
    require_writable({a.output, details_path(a)}, a.common.force);
    std::ifstream in = open_input(a.model);
    const NGramModel model = NGramModel::load(in);
    scores = score_with_ngram(model, pairs, config.markers);
  } else if (a.scorer == "external") {
    if (a.responses.empty() == a.command.empty()) {
      throw ConfigError("--scorer external needs exactly one of --responses, --command");
    }
    if (!a.responses.empty()) {
      require_input(a.responses, "");
      require_writable({a.output, details_path(a)}, a.common.force);
      std::ifstream in = open_input(a.responses);
      ResponseParse parsed = read_score_responses(in);
      for (const std::string& d : parsed.diagnostics) {
        ctx.err << "warning: scorer: " << d << '\n';
      }
      scores = std::move(parsed.scores);
    } else {
      require_writable({a.output, details_path(a)}, a.common.force);
      scores = run_external(a.command, pairs, ctx);
    }
  } else {
    throw ConfigError("unknown scorer '" + a.scorer + "' (expected ngram or external)");
  }

  const std::vector<ScoreReport> reports = build_reports(pairs, scores);
  const std::string table = report_table(reports);
  write_file(a.output, table);
  write_file(details_path(a), report_details(reports));
  ctx.out << table;
  return kExitOk;
}

// ------------------------------------------------------------- correlate

struct CorrelateArgs {
  Common common;
  std::string table;
  std::string x;
  std::string y;
  std::string stats;
  std::vector<std::string> reports;
  std::string kind = "mastery";
  std::string output;
};

std::vector<std::map<std::string, std::string>> read_tsv(const std::string& path,
                                                         const std::string& producer) {
  require_input(path, producer);
  std::ifstream in = open_input(path);
  std::string line;
  if (!std::getline(in, line)) throw InputError(path + " is empty");
  std::vector<std::string> header;
  {
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, '\t')) header.push_back(cell);
  }
  std::vector<std::map<std::string, std::string>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream split(line);
    std::string cell;
    while (std::getline(split, cell, '\t')) cells.push_back(cell);
    if (cells.size() != header.size()) {
      throw ParseError(line_no, path + ": expected " + std::to_string(header.size()) +
                                    " columns, found " + std::to_string(cells.size()));
    }
    std::map<std::string, std::string> row;
    for (std::size_t i = 0; i < cells.size(); ++i) row[header[i]] = cells[i];
    rows.push_back(std::move(row));
  }
  return rows;
}

double to_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw InputError(what + ": '" + text + "' is not a number");
  }
}

int run_correlate(const CorrelateArgs& a, const Context& ctx) {
  load(a.common, ctx);
  if (!a.output.empty()) require_writable({a.output}, a.common.force);
  std::vector<double> xs, ys;
  std::vector<std::string> labels;
  if (!a.table.empty()) {
    if (a.x.empty() || a.y.empty()) throw ConfigError("--table needs --x and --y");
    for (const auto& row : read_tsv(a.table, "")) {
      for (const std::string* column : {&a.x, &a.y}) {
        if (!row.count(*column)) throw InputError(a.table + " lacks column " + *column);
      }
      xs.push_back(to_double(row.at(a.x), a.x));
      ys.push_back(to_double(row.at(a.y), a.y));
    }
  } else {
    if (a.stats.empty() || a.reports.empty()) {
      throw ConfigError("give --table, or --stats with --report");
    }
    const std::string column = a.x.empty() ? "svo_pct" : a.x;
    std::map<std::string, double> x_by_rule;
    for (const auto& row : read_tsv(a.stats, "inject")) {
      if (!row.count(column) || !row.count("rule")) {
        throw InputError(a.stats + " lacks column " + column);
      }
      x_by_rule[row.at("rule")] = to_double(row.at(column), column);
    }
    const std::string kind(to_string(parse_pair_kind(a.kind)));
    for (const std::string& path : a.reports) {
      for (const auto& row : read_tsv(path, "score")) {
        if (!row.count("rule") || !row.count("kind") || !row.count("accuracy")) {
          throw InputError(path + " is not a score report");
        }
        if (row.at("kind") != kind) continue;
        const std::string& rule = row.at("rule");
        const auto it = x_by_rule.find(rule);
        if (it == x_by_rule.end()) {
          throw InputError("rule " + rule + " from " + path + " is not in " + a.stats);
        }
        labels.push_back(rule);
        xs.push_back(it->second);
        ys.push_back(to_double(row.at("accuracy"), "accuracy"));
      }
    }
  }
  const Correlation c = correlate(xs, ys);
  Json result{{"r", c.r}, {"p_value", c.p_value}, {"n", c.n}};
  if (!labels.empty()) result["rules"] = labels;
  if (!a.output.empty()) write_file(a.output, result.dump(2) + "\n");
  ctx.out << "r=" << number(c.r) << "\tp=" << number(c.p_value) << "\tn=" << c.n << '\n';
  return kExitOk;
}

// ------------------------------------------------------------ probe-build

struct ProbeBuildArgs {
  Common common;
  std::string input;
  std::string feature;
  std::string position;
  std::string output;
};

int run_probe_build(const ProbeBuildArgs& a, const Context& ctx) {
  const Config config = load(a.common, ctx);
  const Trigger feature = parse_trigger(a.feature);
  const ArgumentPosition position = parse_position(a.position);
  const auto corpus = read_records(a.input, annotated_from_json, "annotate");
  require_annotated(corpus, a.input);
  require_writable({a.output}, a.common.force);
  const std::string stream = "probes/" + std::string(to_string(feature)) + "/" +
                             std::string(to_string(position));
  const ProbeSets sets = build_probe_sets(
      corpus, feature, position, config.probe_train_per_class,
      config.probe_test_per_class, substream_seed(config.seed, stream));
  std::vector<ProbeInstance> all = sets.train;
  all.insert(all.end(), sets.test.begin(), sets.test.end());
  write_file(a.output, jsonl(all));
  ctx.out << "wrote " << sets.train.size() << " train and " << sets.test.size()
          << " test instances\n";
  return kExitOk;
}

// -------------------------------------------------------------- probe-run

struct ProbeRunArgs {
  Common common;
  std::vector<std::string> manifests;
  std::vector<std::string> vectors;
  std::string output;
};

Json run_one_probe(const std::string& manifest_path, const std::string& vector_path,
                   const Config& config) {
  const auto instances =
      read_records(manifest_path, probe_instance_from_json, "probe-build");
  require_input(vector_path, "");
  std::ifstream in = open_input(vector_path);
  const auto vectors = read_vector_file(in);
  std::vector<LabeledVector> train, test;
  for (const ProbeInstance& instance : instances) {
    const auto it = vectors.find(instance.instance_id);
    if (it == vectors.end()) {
      throw InputError(vector_path + " has no vector for " + instance.instance_id);
    }
    (instance.set == ProbeSet::kTrain ? train : test)
        .push_back({it->second, instance.label});
  }
  ProbeTraining options;
  options.epochs = config.probe_epochs;
  options.learning_rate = config.probe_learning_rate;
  options.seed = substream_seed(config.seed, "probes/" +
                                    fs::path(manifest_path).filename().string());
  const LinearProbe probe = train_probe(train, options);
  return Json{{"manifest", fs::path(manifest_path).filename().string()},
              {"n_train", train.size()},
              {"n_test", test.size()},
              {"dimension", probe.weights.size()},
              {"train_loss", logistic_loss(probe, train)},
              {"train_accuracy", eval_probe(probe, train)},
              {"test_accuracy", eval_probe(probe, test)}};
}

int run_probe_run(const ProbeRunArgs& a, const Context& ctx) {
  const Config config = load(a.common, ctx);
  if (a.vectors.size() != 1 && a.vectors.size() != a.manifests.size()) {
    throw ConfigError("give one --vectors file, or one per --manifest");
  }
  require_writable({a.output}, a.common.force);
  std::vector<std::future<Json>> jobs;
  for (std::size_t i = 0; i < a.manifests.size(); ++i) {
    const std::string& vectors = a.vectors.size() == 1 ? a.vectors[0] : a.vectors[i];
    jobs.push_back(std::async(std::launch::async, run_one_probe,
                              std::cref(a.manifests[i]), vectors, std::cref(config)));
  }
  Json results = Json::array();
  for (auto& job : jobs) results.push_back(job.get());
  write_file(a.output, results.dump(2) + "\n");
  for (const Json& r : results) {
    ctx.out << r["manifest"].get<std::string>() << "\ttest_accuracy="
            << number(r["test_accuracy"].get<double>()) << '\n';
  }
  return kExitOk;
}

// ------------------------------------------------------ perturb-benchmark

struct BenchmarkArgs {
  Common common;
  std::string input;
  std::string rule;
  std::string output;
};

Sentence parse_embedded(const Json& record, const char* field, const std::string& id) {
  if (!record.contains(field) || !record[field].is_string()) {
    throw InputError("benchmark item " + id + " lacks " + field);
  }
  std::istringstream in(record[field].get<std::string>());
  ConlluReadResult read = read_conllu(in, true);
  if (read.sentences.size() != 1) {
    throw InputError("benchmark item " + id + ": " + field +
                     " must hold exactly one sentence");
  }
  return std::move(read.sentences.front());
}

int run_perturb_benchmark(const BenchmarkArgs& a, const Context& ctx) {
  const Config config = load(a.common, ctx);
  const DamRule rule = parse_rule(a.rule);
  const Annotator annotator = load_annotator(config);
  const PseudoObjectLexicon lexicon = load_pseudo(config);
  require_input(a.input, "");
  require_writable({a.output}, a.common.force);

  std::vector<Json> records;
  std::vector<BenchmarkItem> items;
  std::ifstream in = open_input(a.input);
  for_each_json_line(in, [&](const Json& record) {
    BenchmarkItem item;
    if (!record.contains("id") || !record.contains("good") || !record.contains("bad")) {
      throw InputError("benchmark record needs id, good and bad");
    }
    item.id = record["id"].is_string() ? record["id"].get<std::string>()
                                       : record["id"].dump();
    item.good = record["good"].get<std::string>();
    item.bad = record["bad"].get<std::string>();
    item.good_parse = parse_embedded(record, "good_parse", item.id);
    item.bad_parse = parse_embedded(record, "bad_parse", item.id);
    records.push_back(record);
    items.push_back(std::move(item));
  });
  const auto perturbed = perturb_benchmark(rule, items, lexicon, annotator, config.markers);
  std::ostringstream out;
  std::size_t changed = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    Json record = records[i];
    changed += perturbed[i].good != items[i].good || perturbed[i].bad != items[i].bad;
    record["good"] = perturbed[i].good;
    record["bad"] = perturbed[i].bad;
    record["rule"] = rule.name();
    out << record.dump() << '\n';
  }
  write_file(a.output, out.str());
  ctx.out << "perturbed " << changed << " of " << records.size() << " items\n";
  return kExitOk;
}

// ----------------------------------------------------------------- config

int run_show_config(const Common& common, const Context& ctx) {
  ctx.out << render_config(load(common, ctx));
  return kExitOk;
}

}  // namespace

int exit_code_for(const std::string& kind) {
  static const std::map<std::string, int> codes = {
      {"usage", kExitUsage},           {"parse", kExitParse},
      {"config", kExitConfig},         {"input", kExitInput},
      {"output", kExitOutput},         {"generation", kExitGeneration},
      {"contract", kExitContract},     {"statistic", kExitStatistic},
      {"training", kExitTraining},     {"scorer", kExitScorer}};
  const auto it = codes.find(kind);
  return it == codes.end() ? kExitFailure : it->second;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err,
            const std::map<std::string, std::string>& environment) {
  CLI::App app{"damforge: differential argument marking corpus toolkit", "damforge"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every command");
  const Context ctx{out, err, environment};
  std::function<int()> action;

  IngestArgs ingest;
  auto* c = app.add_subcommand("ingest", "Read CoNLL-U, filter by length, assign splits");
  add_common(c, ingest.common);
  c->add_option("--input", ingest.input, "CoNLL-U file")->required();
  c->add_option("--output", ingest.output, "Sentence JSONL")->required();
  c->callback([&] { action = [&] { return run_ingest(ingest, ctx); }; });

  StepArgs frames;
  c = app.add_subcommand("frames", "Extract S-V-O frames");
  add_common(c, frames.common);
  c->add_option("--input", frames.input, "Sentence JSONL from ingest")->required();
  c->add_option("--output", frames.output, "Frame JSONL")->required();
  c->callback([&] { action = [&] { return run_frames(frames, ctx); }; });

  StepArgs annotate;
  c = app.add_subcommand("annotate", "Label frame arguments");
  add_common(c, annotate.common);
  c->add_option("--input", annotate.input, "Frame JSONL from frames")->required();
  c->add_option("--output", annotate.output, "Annotated JSONL")->required();
  c->callback([&] { action = [&] { return run_annotate(annotate, ctx); }; });

  InjectArgs inject;
  c = app.add_subcommand("inject", "Apply marking rules");
  add_common(c, inject.common);
  c->add_option("--input", inject.input, "Annotated JSONL")->required();
  c->add_option("--rule", inject.rule, "Rule name(s), comma-separated, or all");
  c->add_option("--output-dir", inject.output_dir, "Directory for per-rule files")
      ->required();
  c->callback([&] { action = [&] { return run_inject(inject, ctx); }; });

  StatsArgs stats;
  c = app.add_subcommand("stats", "Recompute statistics from perturbed files");
  add_common(c, stats.common);
  c->add_option("--input", stats.inputs, "Perturbed JSONL (repeatable)")->required();
  c->add_option("--output", stats.output, "TSV path (default stdout)");
  c->callback([&] { action = [&] { return run_stats(stats, ctx); }; });

  PairsArgs pairs;
  c = app.add_subcommand("pairs", "Generate minimal pairs");
  add_common(c, pairs.common);
  c->add_option("--input", pairs.input, "Annotated JSONL")->required();
  c->add_option("--rule", pairs.rule, "Rule name(s), comma-separated, or all");
  c->add_option("--kind", pairs.kind, "mastery or placement");
  c->add_option("--output", pairs.output, "Pair JSONL")->required();
  c->callback([&] { action = [&] { return run_pairs(pairs, ctx); }; });

  TrainArgs train;
  c = app.add_subcommand("ngram-train", "Train the n-gram scorer on a perturbed corpus");
  add_common(c, train.common);
  c->add_option("--input", train.input, "Perturbed JSONL from inject")->required();
  c->add_option("--split", train.split, "Split to train on");
  c->add_option("--output", train.output, "Model file")->required();
  c->callback([&] { action = [&] { return run_ngram_train(train, ctx); }; });

  ScoreArgs score;
  c = app.add_subcommand("score", "Score minimal pairs");
  add_common(c, score.common);
  c->add_option("--pairs", score.pairs, "Pair JSONL")->required();
  c->add_option("--scorer", score.scorer, "ngram or external");
  c->add_option("--model", score.model, "n-gram model file");
  c->add_option("--responses", score.responses, "Scorer response JSONL");
  c->add_option("--command", score.command, "Scorer process reading requests on stdin");
  c->add_option("--emit-requests", score.emit_requests, "Write scorer requests here");
  c->add_option("--output", score.output, "Report table (TSV)");
  c->add_option("--details", score.details,
                "Per-pair JSONL (default: next to --output)");
  c->callback([&] { action = [&] { return run_score(score, ctx); }; });

  CorrelateArgs correlate_args;
  c = app.add_subcommand("correlate", "Pearson correlation");
  add_common(c, correlate_args.common);
  c->add_option("--table", correlate_args.table, "TSV with a header row");
  c->add_option("--x", correlate_args.x, "x column");
  c->add_option("--y", correlate_args.y, "y column (with --table)");
  c->add_option("--stats", correlate_args.stats, "stats.tsv from inject");
  c->add_option("--report", correlate_args.reports, "Score report (repeatable)");
  c->add_option("--kind", correlate_args.kind, "Pair kind to read from reports");
  c->add_option("--output", correlate_args.output, "Result JSON");
  c->callback([&] { action = [&] { return run_correlate(correlate_args, ctx); }; });

  ProbeBuildArgs probe_build;
  c = app.add_subcommand("probe-build", "Write a balanced probing manifest");
  add_common(c, probe_build.common);
  c->add_option("--input", probe_build.input, "Annotated JSONL")->required();
  c->add_option("--feature", probe_build.feature, "animacy, definiteness or pronominality")
      ->required();
  c->add_option("--position", probe_build.position, "subject or object")->required();
  c->add_option("--output", probe_build.output, "Manifest JSONL")->required();
  c->callback([&] { action = [&] { return run_probe_build(probe_build, ctx); }; });

  ProbeRunArgs probe_run;
  c = app.add_subcommand("probe-run", "Train and evaluate linear probes");
  add_common(c, probe_run.common);
  c->add_option("--manifest", probe_run.manifests, "Manifest (repeatable)")->required();
  c->add_option("--vectors", probe_run.vectors, "Vector file (one, or one per manifest)")
      ->required();
  c->add_option("--output", probe_run.output, "Result JSON")->required();
  c->callback([&] { action = [&] { return run_probe_run(probe_run, ctx); }; });

  BenchmarkArgs bench;
  c = app.add_subcommand("perturb-benchmark", "Apply a rule to an external benchmark");
  add_common(c, bench.common);
  c->add_option("--input", bench.input, "Benchmark JSONL with embedded parses")->required();
  c->add_option("--rule", bench.rule, "Rule name")->required();
  c->add_option("--output", bench.output, "Perturbed benchmark JSONL")->required();
  c->callback([&] { action = [&] { return run_perturb_benchmark(bench, ctx); }; });

  Common show;
  c = app.add_subcommand("config", "Print the resolved configuration");
  add_common(c, show);
  c->callback([&] { action = [&] { return run_show_config(show, ctx); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& error) {
    if (error.get_exit_code() == 0) return app.exit(error, out, err);  // --help
    err << "error: usage: " << error.what() << '\n';
    return kExitUsage;
  }
  try {
    return action();
  } catch (const Error& error) {
    err << "error: " << error.kind() << ": " << error.what() << '\n';
    return exit_code_for(error.kind());
  } catch (const fs::filesystem_error& error) {
    err << "error: output: " << error.what() << '\n';
    return kExitOutput;
  } catch (const std::exception& error) {
    err << "error: internal: " << error.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace damforge
