// Copyright (c) 2026 The RIPS Authors
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

// Flags camera frames whose mean byte value is below a threshold (default 8),
// which is what a blinded or covered camera produces.
//
// Reads one JSON event line on stdin and exits 0 when the frame is flagged,
// 1 when it is not, and 2 on malformed input.

#include <cstdlib>
#include <iostream>
#include <string>

#include <nlohmann/json.hpp>

#include "rips/event_codec.hpp"

int main(int argc, char ** argv)
{
  double threshold = 8.0;
  if (argc > 1) {
    threshold = std::strtod(argv[1], nullptr);
  }
  std::string line;
  if (!std::getline(std::cin, line)) {
    return 2;
  }
  rips::Bytes payload;
  try {
    auto j = nlohmann::json::parse(line);
    payload = rips::from_hex(j.value("payload_hex", std::string()));
  } catch (const std::exception &) {
    return 2;
  }
  if (payload.empty()) {
    return 1;
  }
  double sum = 0;
  for (auto b : payload) {
    sum += b;
  }
  return sum / static_cast<double>(payload.size()) < threshold ? 0 : 1;
}
