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

#pragma once

#include <cstdint>
#include <functional>

namespace bcc {

// Splits [0, total) into `workers` contiguous chunks and runs
// body(chunk, begin, end) for each, on separate threads when workers > 1.
// Chunk c always covers indices before chunk c+1, so reducing per-chunk
// results in chunk order reproduces the sequential first-best tie-break.
// The first exception thrown by any chunk is rethrown after all join.
void for_each_chunk(std::uint64_t total, unsigned workers,
                    const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& body);

}  // namespace bcc
