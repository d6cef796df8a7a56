// Copyright 2026 The Biaslens Authors
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

#include "biaslens/core/types.hpp"

#include <fmt/format.h>

namespace biaslens {

LikertScore::LikertScore(int value) : value_(value) {
  if (!in_range(value)) {
    throw InvalidArgument(fmt::format("Likert score {} outside [{}, {}]", value, kMin, kMax));
  }
}

std::string SnapshotRef::key() const {
  return publisher_id + "@" + format_timestamp(captured_at);
}

}  // namespace biaslens
