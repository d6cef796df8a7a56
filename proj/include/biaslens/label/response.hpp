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

#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "biaslens/util/error.hpp"

namespace biaslens {

// Provider text could not be turned into the expected document.
class ResponseError : public Error {
 public:
  using Error::Error;
};

// Strips code fences and any prose before the first '{' or '[' and after the
// matching close, then parses. Throws ResponseError.
nlohmann::json extract_json(std::string_view raw);

// Like extract_json but always yields an array: a top-level object holding
// exactly one array value is unwrapped, a lone object becomes [object].
nlohmann::json extract_json_array(std::string_view raw);

// Bare integer response ("3", "-1"). Throws ResponseError otherwise.
long long parse_integer_response(std::string_view raw);

// Comma-separated integers ("2,5", "-1"). Throws ResponseError otherwise.
std::vector<long long> parse_integer_list(std::string_view raw);

}  // namespace biaslens
