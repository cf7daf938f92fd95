// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "damforge/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <boost/algorithm/string.hpp>
#include <boost/lexical_cast.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "damforge/errors.hpp"

extern char** environ;

namespace damforge {

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  try {
    return boost::lexical_cast<T>(boost::trim_copy(value));
  } catch (const boost::bad_lexical_cast&) {
    throw ConfigError(key + ": cannot parse '" + value + "'");
  }
}

std::size_t parse_count(const std::string& key, const std::string& value) {
  const std::string v = boost::trim_copy(value);
  if (!v.empty() && v.front() == '-') {
    throw ConfigError(key + ": must be non-negative, got '" + value + "'");
  }
  return parse_number<std::size_t>(key, v);
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = boost::to_lower_copy(boost::trim_copy(value));
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(key + ": expected a boolean, got '" + value + "'");
}

template <typename T>
std::string show(const T& value) {
  std::ostringstream out;
  out.precision(17);
  out << value;
  return out.str();
}

struct Key {
  const char* name;
  std::function<std::string(const Config&)> get;
  std::function<void(Config&, const std::string&, const std::string&)> set;
};

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      {"corpus.min_tokens", [](const Config& c) { return show(c.min_tokens); },
       [](Config& c, const std::string& k, const std::string& v) {
         c.min_tokens = parse_count(k, v);
       }},
      {"corpus.max_tokens", [](const Config& c) { return show(c.max_tokens); },
       [](Config& c, const std::string& k, const std::string& v) {
         c.max_tokens = parse_count(k, v);
       }},
      {"corpus.train", [](const Config& c) { return show(c.ratios.train); },
       [](Config& c, const std::string& k, const std::string& v) {
         c.ratios.train = parse_number<double>(k, v);
       }},
      {"corpus.validation",
       [](const Config& c) { return show(c.ratios.validation); },
       [](Config& c, const std::string& k, const std::string& v) {
         c.ratios.validation = parse_number<double>(k, v);
       }},
      {"corpus.test", [](const Config& c) { return show(c.ratios.test); },
       [](Config& c, const std::string& k, const std::string& v) {
         c.ratios.test = parse_number<double>(k, v);
       }},
      {"corpus.strict",
       [](const Config& c) { return std::string(c.strict ? "true" : "false"); },
       [](Config& c, const std::string& k, const std::string& v) {
         c.strict = parse_bool(k, v);
       }},
      {"random.seed", [](const Config& c) { return show(c.seed); },
       [](Config& c, const std::string& k, const std::string& v) {
         const std::string t = boost::trim_copy(v);
         if (!t.empty() && t.front() == '-') {
           throw ConfigError(k + ": must be non-negative");
         }
         c.seed = parse_number<std::uint64_t>(k, t);
       }},
      {"markers.agent", [](const Config& c) { return c.markers.agent; },
       [](Config& c, const std::string&, const std::string& v) {
         c.markers.agent = boost::trim_copy(v);
       }},
      {"markers.patient", [](const Config& c) { return c.markers.patient; },
       [](Config& c, const std::string&, const std::string& v) {
         c.markers.patient = boost::trim_copy(v);
       }},
      {"lexicons.animate", [](const Config& c) { return c.animate; },
       [](Config& c, const std::string&, const std::string& v) {
         c.animate = boost::trim_copy(v);
       }},
      {"lexicons.definite", [](const Config& c) { return c.definite; },
       [](Config& c, const std::string&, const std::string& v) {
         c.definite = boost::trim_copy(v);
       }},
      {"lexicons.pseudo_objects",
       [](const Config& c) { return c.pseudo_objects; },
       [](Config& c, const std::string&, const std::string& v) {
         c.pseudo_objects = boost::trim_copy(v);
       }},
      {"rules.list",
       [](const Config& c) { return boost::join(c.rules, ","); },
       [](Config& c, const std::string&, const std::string& v) {
         c.rules.clear();
         std::vector<std::string> parts;
         boost::split(parts, v, boost::is_any_of(","));
         for (std::string& part : parts) {
           boost::trim(part);
           if (part.empty()) continue;
           if (part != "all") parse_rule(part);  // throws with the valid names
           c.rules.push_back(part);
         }
       }},
      {"pairs.mastery_per_polarity",
       [](const Config& c) { return show(c.mastery_per_polarity); },
       [](Config& c, const std::string& k, const std::string& v) {
         c.mastery_per_polarity = parse_count(k, v);
       }},
      {"pairs.placement_count",
       [](const Config& c) { return show(c.placement_count); },
       [](Config& c, const std::string& k, const std::string& v) {
         c.placement_count = parse_count(k, v);
       }},
      {"pairs.max_shift", [](const Config& c) { return show(c.max_shift); },
       [](Config& c, const std::string& k, const std::string& v) {
         c.max_shift = parse_number<int>(k, v);
       }},
      {"ngram.order", [](const Config& c) { return show(c.ngram_order); },
       [](Config& c, const std::string& k, const std::string& v) {
         c.ngram_order = parse_number<int>(k, v);
       }},
      {"ngram.discount", [](const Config& c) { return show(c.ngram_discount); },
       [](Config& c, const std::string& k, const std::string& v) {
         c.ngram_discount = parse_number<double>(k, v);
       }},
      {"probes.train_per_class",
       [](const Config& c) { return show(c.probe_train_per_class); },
       [](Config& c, const std::string& k, const std::string& v) {
         c.probe_train_per_class = parse_count(k, v);
       }},
      {"probes.test_per_class",
       [](const Config& c) { return show(c.probe_test_per_class); },
       [](Config& c, const std::string& k, const std::string& v) {
         c.probe_test_per_class = parse_count(k, v);
       }},
      {"probes.epochs", [](const Config& c) { return show(c.probe_epochs); },
       [](Config& c, const std::string& k, const std::string& v) {
         c.probe_epochs = parse_number<int>(k, v);
       }},
      {"probes.learning_rate",
       [](const Config& c) { return show(c.probe_learning_rate); },
       [](Config& c, const std::string& k, const std::string& v) {
         c.probe_learning_rate = parse_number<double>(k, v);
       }},
  };
  return table;
}

const Key& find_key(const std::string& dotted) {
  for (const Key& key : keys()) {
    if (dotted == key.name) return key;
  }
  std::string known;
  for (const Key& key : keys()) known += std::string(known.empty() ? "" : ", ") + key.name;
  throw ConfigError("unknown key '" + dotted + "' (known: " + known + ")");
}

// DAMFORGE_PAIRS_MAX_SHIFT -> pairs.max_shift, matched against the table
// because key names themselves contain underscores.
const Key* key_for_env(const std::string& variable) {
  for (const Key& key : keys()) {
    std::string name = std::string("DAMFORGE_") + key.name;
    std::replace(name.begin(), name.end(), '.', '_');
    if (boost::to_upper_copy(name) == variable) return &key;
  }
  return nullptr;
}

void resolve_paths(Config& config, const std::filesystem::path& base) {
  if (base.empty()) return;
  for (std::string* path : {&config.animate, &config.definite, &config.pseudo_objects}) {
    if (!path->empty() && std::filesystem::path(*path).is_relative()) {
      *path = (base / *path).lexically_normal().string();
    }
  }
}

void apply_tree(Config& config, const boost::property_tree::ptree& tree) {
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty()) {
      throw ConfigError("key '" + section + "' is outside any section");
    }
    for (const auto& [key, value] : body) {
      set_config_value(config, section + "." + key, value.data());
    }
  }
}

}  // namespace

Config::Config() : rules{"all"} {}

std::vector<std::pair<std::string, std::string>> config_defaults() {
  const Config defaults;
  std::vector<std::pair<std::string, std::string>> out;
  for (const Key& key : keys()) out.emplace_back(key.name, key.get(defaults));
  return out;
}

void set_config_value(Config& config, const std::string& dotted_key,
                      const std::string& value) {
  find_key(dotted_key).set(config, dotted_key, value);
}

Config parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& error) {
    throw ConfigError("line " + std::to_string(error.line()) + ": " +
                      error.message());
  }
  Config config;
  apply_tree(config, tree);
  resolve_paths(config, base_dir);
  return config;
}

Config load_config(const std::filesystem::path& path,
                   const std::map<std::string, std::string>& environment,
                   const std::vector<std::string>& overrides) {
  Config config;
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    config = parse_config(in, path.parent_path());
  }
  for (const auto& [variable, value] : environment) {
    if (!variable.starts_with("DAMFORGE_")) continue;
    const Key* key = key_for_env(variable);
    if (!key) throw ConfigError("unknown environment override " + variable);
    key->set(config, key->name, value);
  }
  for (const std::string& item : overrides) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("override '" + item + "' is not section.key=value");
    }
    set_config_value(config, boost::trim_copy(item.substr(0, eq)),
                     item.substr(eq + 1));
  }
  validate(config);
  return config;
}

std::map<std::string, std::string> damforge_environment() {
  std::map<std::string, std::string> out;
  for (char** entry = environ; entry && *entry; ++entry) {
    const std::string_view text(*entry);
    if (!text.starts_with("DAMFORGE_")) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) continue;
    out.emplace(std::string(text.substr(0, eq)), std::string(text.substr(eq + 1)));
  }
  return out;
}

void validate(const Config& config) {
  if (config.min_tokens == 0 || config.min_tokens > config.max_tokens) {
    throw ConfigError("corpus.min_tokens must be in [1, max_tokens]");
  }
  validate(config.ratios);
  const auto bad_marker = [](const std::string& m) {
    return m.empty() || m.find_first_of(" \t\r\n") != std::string::npos;
  };
  if (bad_marker(config.markers.agent) || bad_marker(config.markers.patient)) {
    throw ConfigError("marker strings must be nonempty and contain no whitespace");
  }
  if (config.markers.agent == config.markers.patient) {
    throw ConfigError("agent and patient markers must differ");
  }
  configured_rules(config);
  if (config.max_shift < 1) throw ConfigError("pairs.max_shift must be >= 1");
  if (config.ngram_order < 1) throw ConfigError("ngram.order must be >= 1");
  if (!(config.ngram_discount > 0 && config.ngram_discount <= 1)) {
    throw ConfigError("ngram.discount must be in (0, 1]");
  }
  if (config.probe_epochs < 1) throw ConfigError("probes.epochs must be >= 1");
  if (!(config.probe_learning_rate > 0)) {
    throw ConfigError("probes.learning_rate must be positive");
  }
}

std::vector<DamRule> configured_rules(const Config& config) {
  if (config.rules.empty()) throw ConfigError("rules.list is empty");
  if (config.rules.size() == 1 && config.rules.front() == "all") {
    return all_conditions();
  }
  std::vector<DamRule> out;
  for (const std::string& name : config.rules) {
    DamRule rule = parse_rule(name);
    if (std::find(out.begin(), out.end(), rule) == out.end()) out.push_back(rule);
  }
  return out;
}

std::string render_config(const Config& config) {
  std::ostringstream out;
  std::string current;
  for (const Key& key : keys()) {
    const std::string name = key.name;
    const auto dot = name.find('.');
    const std::string section = name.substr(0, dot);
    if (section != current) {
      if (!current.empty()) out << '\n';
      out << '[' << section << "]\n";
      current = section;
    }
    out << name.substr(dot + 1) << " = " << key.get(config) << '\n';
  }
  return out.str();
}

}  // namespace damforge
