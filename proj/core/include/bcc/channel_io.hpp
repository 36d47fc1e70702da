// Copyright 2026 The bcc Authors
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

// Channel files: versioned JSON documents.
//
//   {
//     "format": "bcc-channel",
//     "format_version": 1,
//     "kind": "dense" | "deterministic",
//     "sizes": {"x": 3, "y1": 2, "y2": 2},
//     "labels": {"x": [...], "y1": [...], "y2": [...]},      (optional, each optional)
//     "probs": [[[W(0 0|0), W(0 1|0)], [W(1 0|0), W(1 1|0)]], ...]    (dense)
//     "pairs": [[y1, y2], ...]                                       (deterministic)
//   }
//
// Dense entries are numbers or exact fractions written "p/q". Deterministic
// pairs hold indices or labels. The canonical form written by save_channel
// sorts keys and uses shortest round-trip numbers, so load/save is the
// identity on canonical files.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bcc/channel.hpp"

namespace bcc {

inline constexpr int kChannelFormatVersion = 1;

struct ChannelFile {
  enum class Kind { kDense, kDeterministic };

  Kind kind = Kind::kDense;
  // Empty when the file gives no labels for that alphabet.
  std::vector<std::string> x_labels, y1_labels, y2_labels;
  ChannelTable table;
  std::optional<DeterministicChannel> deterministic;

  // The channel as a deterministic one: the stored pairs, or the dense table
  // converted (throws NotDeterministic).
  DeterministicChannel as_deterministic() const;
};

// Throws ParseError naming the JSON location, or the ValidationError raised
// by channel validation (e.g. RowNotNormalized naming x).
ChannelFile parse_channel(const nlohmann::json& doc,
                          double tolerance = kNormalizationTolerance);
ChannelFile load_channel(const std::filesystem::path& path,
                         double tolerance = kNormalizationTolerance);

nlohmann::json channel_to_json(const ChannelFile& file);
// Canonical text: channel_to_json dumped with 2-space indent and a newline.
std::string canonical_channel_text(const ChannelFile& file);
void save_channel(const std::filesystem::path& path, const ChannelFile& file);

ChannelFile make_channel_file(const ChannelTable& w);
ChannelFile make_channel_file(const DeterministicChannel& w);

// Relative paths resolve against $BCC_WORKDIR when it is set.
std::filesystem::path resolve_path(const std::filesystem::path& path);

}  // namespace bcc
