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

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace biaslens::csv {

// RFC 4180 style: fields containing a comma, quote or newline are quoted.
std::string escape_field(std::string_view field);
std::string format_row(const std::vector<std::string>& fields);

// Parses a whole document. Blank lines are skipped.
std::vector<std::vector<std::string>> parse(std::string_view document);

}  // namespace biaslens::csv
