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

#include <chrono>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "biaslens/core/hierarchy.hpp"
#include "biaslens/store/store.hpp"

namespace biaslens {

struct HttpRequest {
  std::string method = "GET";
  std::string path;
  std::map<std::string, std::string> query;
  std::map<std::string, std::string> headers;  // lower-case names
  std::string body;
};

struct HttpResponse {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;

  Json json() const { return Json::parse(body); }
};

struct ServiceOptions {
  std::optional<std::string> api_token;  // when set, API calls need "Authorization: Bearer <token>"
  std::filesystem::path static_dir;      // optional UI bundle served at non-API paths
  std::chrono::seconds claim_lease = std::chrono::minutes(30);
};

// JSON read API plus the validation write API. Requests are serialized over
// one store connection; every read runs in one snapshot transaction.
class ApiService {
 public:
  ApiService(Store& store, TopicHierarchy hierarchy, ServiceOptions options = {});

  HttpResponse handle(const HttpRequest& request);
  // Machine-readable description of every endpoint and document.
  static Json schema();

 private:
  HttpResponse route(const HttpRequest& request);
  HttpResponse serve_static(const std::string& path) const;

  Store& store_;
  TopicHierarchy hierarchy_;
  ServiceOptions options_;
  std::mutex mu_;
};

// Blocks serving `service` on host:port until the process is stopped.
void serve_http(ApiService& service, const std::string& host, int port);

}  // namespace biaslens
