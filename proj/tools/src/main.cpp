// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "stablespec_tools/cli.hpp"

int main(int argc, char** argv) { return stablespec::tools::run(argc, argv, std::cout, std::cerr); }
