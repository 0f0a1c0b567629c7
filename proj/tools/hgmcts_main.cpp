// Copyright 2026 The hgmcts Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "hgmcts/cli.hpp"

int main(int argc, char** argv) {
  return hgmcts::cli::main(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
