// Copyright 2026 The damforge Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "damforge/cli.hpp"
#include "damforge/config.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  const std::vector<std::string> args(argv + 1, argv + argc);
  return damforge::run_cli(args, std::cout, std::cerr,
                           damforge::damforge_environment());
}
