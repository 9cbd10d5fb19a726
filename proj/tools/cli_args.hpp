// Copyright 2026 The finalstate Authors
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

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "finalstate/finalstate.h"

namespace finalstate::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitChecksFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

struct ConfigDeleter {
  void operator()(fs_config* cfg) const { fs_config_destroy(cfg); }
};
using ConfigHandle = std::unique_ptr<fs_config, ConfigDeleter>;

struct ParsedArgs {
  ConfigHandle config;
  fs_format format = FS_FORMAT_JSON;
  std::string out_path;
  // Set when the program should stop right away (help, usage error).
  std::optional<int> exit_code;
  std::string message;
};

/// Parses and validates the command line. Usage errors (unknown flags,
/// --dim with --qubits, resource caps) come back with exit_code = kExitUsage
/// and a message. default_workers is used when --workers is absent.
ParsedArgs parse_args(const std::vector<std::string>& args, unsigned default_workers = 1);

/// Worker count from FINALSTATE_WORKERS, or 1 when unset or malformed.
unsigned workers_from_environment();

/// Runs a parsed configuration and emits its output; returns the exit code.
int run(const ParsedArgs& parsed);

}  // namespace finalstate::cli
