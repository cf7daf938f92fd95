// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "damforge/cli.hpp"
#include "damforge/records.hpp"
#include "damforge/rules.hpp"
#include "util.hpp"

using namespace damforge;
using namespace damforge::unit;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::map<std::string, std::string>& env = {}) {
  // Point the lexicons at the shipped data so the working directory does not matter.
  if (!args.empty() && args[0] != "--help") {
    for (const char* key : {"animate", "definite", "pseudo_objects"}) {
      const std::string file = std::string(key) == "animate"    ? "animate.txt"
                               : std::string(key) == "definite" ? "definite_determiners.txt"
                                                                : "pseudo_objects.tsv";
      args.push_back("--set");
      args.push_back(std::string("lexicons.") + key + "=" + (kSource / "data" / file).string());
    }
  }
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(args, out, err, env);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string tiny() { return (kSource / "tests/fixtures/tiny.conllu").string(); }

// ingest, frames and annotate on the tiny fixture; returns the annotated path.
std::string prepare(const TempDir& dir) {
  REQUIRE(run({"ingest", "--input", tiny(), "--output", dir / "s.jsonl", "--set",
               "corpus.train=0", "--set",
               "corpus.validation=0", "--set", "corpus.test=1"})
              .code == 0);
  REQUIRE(run({"frames", "--input", dir / "s.jsonl", "--output", dir / "f.jsonl"}).code == 0);
  REQUIRE(run({"annotate", "--input", dir / "f.jsonl", "--output", dir / "a.jsonl"}).code == 0);
  return dir / "a.jsonl";
}

}  // namespace

TEST_CASE("exit codes per error class") {
  CHECK(exit_code_for("parse") == kExitParse);
  CHECK(exit_code_for("config") == kExitConfig);
  CHECK(exit_code_for("input") == kExitInput);
  CHECK(exit_code_for("output") == kExitOutput);
  CHECK(exit_code_for("generation") == kExitGeneration);
  CHECK(exit_code_for("contract") == kExitContract);
  CHECK(exit_code_for("statistic") == kExitStatistic);
  CHECK(exit_code_for("training") == kExitTraining);
  CHECK(exit_code_for("scorer") == kExitScorer);
  CHECK(exit_code_for("something-else") == kExitFailure);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"no-such-command"}).code == kExitUsage);
  const auto r = run({"ingest", "--input", tiny()});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.rfind("error: usage: ", 0) == 0);
}

TEST_CASE("a missing artifact names the command that produces it") {
  TempDir dir;
  const auto r = run({"frames", "--input", dir / "missing.jsonl", "--output", dir / "f.jsonl"});
  CHECK(r.code == kExitInput);
  CHECK(r.err.rfind("error: input: ", 0) == 0);
  CHECK(r.err.find("damforge ingest") != std::string::npos);

  const auto s = run({"score", "--pairs", dir / "p.jsonl", "--output", dir / "r.tsv"});
  CHECK(s.code == kExitInput);
  CHECK(s.err.find("damforge pairs") != std::string::npos);
}

TEST_CASE("wrong artifact type is a parse error pointing at the producer") {
  TempDir dir;
  const auto annotated = prepare(dir);
  const auto r = run({"pairs", "--input", dir / "s.jsonl", "--rule", "G-Ani", "--output",
                      dir / "p.jsonl"});
  CHECK(r.code == kExitParse);
  CHECK(r.err.find("damforge annotate") != std::string::npos);
  (void)annotated;
}

TEST_CASE("outputs are not overwritten without --force") {
  TempDir dir;
  prepare(dir);
  const auto again = run({"frames", "--input", dir / "s.jsonl", "--output", dir / "f.jsonl"});
  CHECK(again.code == kExitOutput);
  CHECK(again.err.find("--force") != std::string::npos);
  CHECK(run({"frames", "--input", dir / "s.jsonl", "--output", dir / "f.jsonl", "--force"}).code ==
        0);
}

TEST_CASE("config errors and unknown rules") {
  TempDir dir;
  const auto annotated = prepare(dir);
  const auto bad_rule =
      run({"inject", "--input", annotated, "--rule", "L-X-Ani", "--output-dir", dir / "out"});
  CHECK(bad_rule.code == kExitConfig);
  CHECK(bad_rule.err.find("G-Pro-inv") != std::string::npos);
  CHECK(run({"config", "--set", "random.seed=abc"}).code == kExitConfig);
  CHECK(run({"config"}, {{"DAMFORGE_RANDOM_SEED", "x"}}).code == kExitConfig);
  const auto shown = run({"config", "--set", "random.seed=77"});
  CHECK(shown.code == 0);
  CHECK(shown.out.find("77") != std::string::npos);
}

TEST_CASE("inject with Baseline inserts nothing") {
  TempDir dir;
  const auto annotated = prepare(dir);
  REQUIRE(run({"inject", "--input", annotated, "--rule", "Baseline", "--output-dir", dir / "b"})
              .code == 0);
  std::ifstream in(dir / "b/Baseline.jsonl");
  const auto perturbed = read_jsonl(in, perturbed_from_json);
  REQUIRE(perturbed.size() == 20);
  std::map<std::string, std::string> original;
  for (const auto& s : read_fixture("tiny.conllu")) original[s.id] = s.surface();
  for (const auto& p : perturbed) {
    CHECK(p.insertions.empty());
    CHECK(p.surface == original.at(p.sentence_id));
  }
}

TEST_CASE("inject all writes every condition and a stats table") {
  TempDir dir;
  const auto annotated = prepare(dir);
  REQUIRE(run({"inject", "--input", annotated, "--rule", "all", "--output-dir", dir / "all"})
              .code == 0);
  int jsonl = 0;
  for (const auto& e : fs::directory_iterator(dir.path() / "all")) {
    const auto name = e.path().filename().string();
    if (name.ends_with(".jsonl")) ++jsonl;
  }
  CHECK(jsonl == 20);
  for (const auto& rule : all_conditions()) {
    CHECK(fs::exists(dir.path() / "all" / (rule.name() + ".jsonl")));
    CHECK(fs::exists(dir.path() / "all" / (rule.name() + ".train.txt")));
  }
  const std::string stats = slurp(dir.path() / "all/stats.tsv");
  CHECK(stats.rfind("rule\taffected\tunaffected\tinvalid\ttotal\tsvo_pct", 0) == 0);
  CHECK(stats.find("\nFull\t13\t0\t7\t20\t100.00") != std::string::npos);

  const auto recomputed = run({"stats", "--input", dir / "all/Full.jsonl"});
  CHECK(recomputed.code == 0);
  CHECK(recomputed.out.find("Full\t13\t0\t7\t20") != std::string::npos);
}

TEST_CASE("pairs, training and scoring are deterministic") {
  TempDir dir;
  const auto annotated = prepare(dir);
  REQUIRE(run({"inject", "--input", annotated, "--rule", "L-P-Ani", "--output-dir", dir / "i"})
              .code == 0);
  REQUIRE(run({"pairs", "--input", annotated, "--rule", "L-P-Ani", "--kind", "mastery", "--output",
               dir / "p.jsonl", "--set", "pairs.mastery_per_polarity=3"})
              .code == 0);
  REQUIRE(run({"ngram-train", "--input", dir / "i/L-P-Ani.jsonl", "--split", "test", "--output",
               dir / "m.txt"})
              .code == 0);
  for (const char* name : {"r1.tsv", "r2.tsv"}) {
    REQUIRE(run({"score", "--pairs", dir / "p.jsonl", "--model", dir / "m.txt", "--output",
                 dir / name})
                .code == 0);
  }
  CHECK(slurp(dir / "r1.tsv") == slurp(dir / "r2.tsv"));
  CHECK(slurp(dir / "r1.pairs.jsonl") == slurp(dir / "r2.pairs.jsonl"));
  CHECK(slurp(dir / "r1.tsv").find("L-P-Ani\tmastery\t6\t") != std::string::npos);

  const auto shortfall = run({"pairs", "--input", annotated, "--rule", "L-P-Ani", "--kind",
                              "mastery", "--output", dir / "q.jsonl"});
  CHECK(shortfall.code == kExitGeneration);
}

TEST_CASE("external scorer responses go through the wire protocol") {
  TempDir dir;
  const auto annotated = prepare(dir);
  REQUIRE(run({"pairs", "--input", annotated, "--rule", "L-P-Ani", "--kind", "mastery", "--output",
               dir / "p.jsonl", "--set", "pairs.mastery_per_polarity=2"})
              .code == 0);
  REQUIRE(run({"score", "--pairs", dir / "p.jsonl", "--scorer", "external", "--emit-requests",
               dir / "req.jsonl"})
              .code == 0);
  std::ifstream requests(dir / "req.jsonl");
  std::ofstream responses(dir / "resp.jsonl");
  for_each_json_line(requests, [&](const Json& j) {
    const std::string id = j["id"];
    const bool good = id.ends_with("#good");
    responses << Json{{"id", id}, {"logprobs", {good ? -0.5 : -1.5}}}.dump() << '\n';
  });
  responses.close();
  const auto r = run({"score", "--pairs", dir / "p.jsonl", "--scorer", "external", "--responses",
                      dir / "resp.jsonl", "--output", dir / "r.tsv"});
  CHECK(r.code == 0);
  CHECK(slurp(dir / "r.tsv").find("L-P-Ani\tmastery\t4\t4\t0\t1.000000") != std::string::npos);

  const auto via_command =
      run({"score", "--pairs", dir / "p.jsonl", "--scorer", "external", "--command",
           "cat " + (dir / "resp.jsonl"), "--output", dir / "r2.tsv"});
  CHECK(via_command.code == 0);
  CHECK(slurp(dir / "r2.tsv") == slurp(dir / "r.tsv"));
}

TEST_CASE("correlate over a table") {
  TempDir dir;
  {
    std::ofstream t(dir / "t.tsv");
    t << "name\tx\ty\na\t1\t2\nb\t2\t4.1\nc\t3\t5.9\nd\t4\t8.2\n";
  }
  const auto r = run({"correlate", "--table", dir / "t.tsv", "--x", "x", "--y", "y"});
  CHECK(r.code == 0);
  CHECK(r.out.find("r=0.99") != std::string::npos);
  CHECK(run({"correlate", "--table", dir / "t.tsv", "--x", "x", "--y", "nope"}).code == kExitInput);
}
