// Copyright The egpc Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>
#include <vector>

#include "egpc/cli/commands.hpp"

int main(int argc, char** argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  return egpc::cli::run(args, std::cout, std::cerr);
}
