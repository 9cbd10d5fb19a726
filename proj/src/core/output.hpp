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

#include <optional>
#include <string>
#include <string_view>

#include "experiments.hpp"

namespace finalstate::output {

enum class Format { kJson, kCsv };

std::optional<Format> parse_format(std::string_view name);

inline constexpr std::string_view kSchemaVersion = "1";

struct OutputDocument {
  experiments::Summary summary;
  bool per_trial = false;
  double wall_seconds = 0.0;
};

/// Everything except the "timing" object is a deterministic function of the
/// resolved configuration (worker count lives under "timing").
std::string render_json(const OutputDocument& doc);

/// Header, one row per trial, then a "#summary" row holding column means.
std::string render_csv(const OutputDocument& doc);

std::string render(const OutputDocument& doc, Format format);

/// Writes to path, or stdout when path is empty. Throws kIo on failure.
void emit(const OutputDocument& doc, Format format, const std::string& path);

}  // namespace finalstate::output
