// Copyright The stablespec Authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace stablespec::tools {

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitValidationFailed = 2 };

// One output table. Doubles print with 12 significant digits in CSV and 17
// in JSON.
struct Table {
  using Cell = std::variant<double, long, std::string>;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

void write_csv(std::ostream& os, const Table& t);
void write_json(std::ostream& os, const Table& t);

// The whole command line; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace stablespec::tools
