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

#include "bcc/parallel.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace bcc {

void for_each_chunk(std::uint64_t total, unsigned workers,
                    const std::function<void(unsigned, std::uint64_t, std::uint64_t)>& body) {
  const unsigned chunks = std::max(1u, workers);
  auto bounds = [&](unsigned c) { return total * c / chunks; };
  if (chunks == 1) {
    body(0, 0, total);
    return;
  }
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> threads;
  threads.reserve(chunks);
  for (unsigned c = 0; c < chunks; ++c) {
    threads.emplace_back([&, c] {
      try {
        body(c, bounds(c), bounds(c + 1));
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace bcc
