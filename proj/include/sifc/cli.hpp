// Copyright 2026 The sifc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SIFC_CLI_HPP_
#define SIFC_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include "sifc/io.hpp"

namespace sifc {

enum class Status { Pass, Fail, InputError };

int exit_code(Status s) noexcept;

struct Verdict {
  Status status = Status::Pass;
  Json report;          // null for help and usage errors
  std::string summary;  // one or more human-readable lines
  bool text = false;    // --format text
};

// `args` excludes the program name. Never throws for bad input; errors come
// back as InputError verdicts with the usage or error text in `summary`.
Verdict cli_dispatch(const std::vector<std::string>& args);

// Writes the report to `out` and the summary to `err`; returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sifc

#endif  // SIFC_CLI_HPP_
