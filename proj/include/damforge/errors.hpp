// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef DAMFORGE_ERRORS_HPP_
#define DAMFORGE_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace damforge {

// Base class for every error the toolkit raises. `kind()` is the short
// machine-parsable class printed by the CLI ("parse", "config", ...).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : Error("parse", "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& message) : Error("config", message) {}
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& message) : Error("input", message) {}
};

class GenerationError : public Error {
 public:
  explicit GenerationError(const std::string& message)
      : Error("generation", message) {}
};

class ContractError : public Error {
 public:
  explicit ContractError(const std::string& message)
      : Error("contract", message) {}
};

class StatisticError : public Error {
 public:
  explicit StatisticError(const std::string& message)
      : Error("statistic", message) {}
};

class TrainingError : public Error {
 public:
  explicit TrainingError(const std::string& message)
      : Error("training", message) {}
};

}  // namespace damforge

#endif  // DAMFORGE_ERRORS_HPP_
