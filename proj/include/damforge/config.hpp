// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

// Run configuration: one INI-style file with sections, every key
// defaulted. Precedence, lowest to highest: defaults, file,
// DAMFORGE_<SECTION>_<KEY> environment variables, --set overrides.

#ifndef DAMFORGE_CONFIG_HPP_
#define DAMFORGE_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "damforge/ingest.hpp"
#include "damforge/rules.hpp"

namespace damforge {

struct Config {
  // [corpus]
  std::size_t min_tokens = 3;
  std::size_t max_tokens = 30;
  SplitRatios ratios;
  bool strict = false;

  // [random]
  std::uint64_t seed = 42;

  // [markers]
  MarkerStrings markers;

  // [lexicons] paths; relative ones resolve against the config file.
  std::string animate = "data/animate.txt";
  std::string definite = "data/definite_determiners.txt";
  std::string pseudo_objects = "data/pseudo_objects.tsv";

  // [rules] list = "all" or comma-separated canonical names.
  std::vector<std::string> rules;

  // [pairs]
  std::size_t mastery_per_polarity = 500;
  std::size_t placement_count = 1000;
  int max_shift = 2;

  // [ngram]
  int ngram_order = 3;
  double ngram_discount = 0.75;

  // [probes]
  std::size_t probe_train_per_class = 2000;
  std::size_t probe_test_per_class = 1000;
  int probe_epochs = 200;
  double probe_learning_rate = 0.1;

  Config();
};

// All keys as "section.key", in a fixed order, with their default values.
std::vector<std::pair<std::string, std::string>> config_defaults();

// Sets one key from its textual value. Throws ConfigError for unknown keys
// or values that do not parse or are out of range.
void set_config_value(Config& config, const std::string& dotted_key,
                      const std::string& value);

// Reads INI text. Relative lexicon paths are resolved against `base_dir`.
Config parse_config(std::istream& in,
                    const std::filesystem::path& base_dir = {});

// Layers file (if nonempty path), environment and overrides ("a.b=c").
// `environment` maps variable names to values; pass the process
// environment from the caller.
Config load_config(const std::filesystem::path& path,
                   const std::map<std::string, std::string>& environment,
                   const std::vector<std::string>& overrides);

// Environment variables with the DAMFORGE_ prefix.
std::map<std::string, std::string> damforge_environment();

// Final validation shared by every loader.
void validate(const Config& config);

// Resolves the [rules] list to conditions; "all" gives all 20.
std::vector<DamRule> configured_rules(const Config& config);

// INI text with every key, suitable as a starting point.
std::string render_config(const Config& config);

}  // namespace damforge

#endif  // DAMFORGE_CONFIG_HPP_
