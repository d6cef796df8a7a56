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

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biaslens/core/schema.hpp"
#include "biaslens/core/validation_types.hpp"
#include "biaslens/util/time.hpp"

struct sqlite3;

namespace biaslens {

// Record kinds.
namespace kinds {
inline constexpr std::string_view kSnapshot = "snapshot";
inline constexpr std::string_view kArticle = "article";
inline constexpr std::string_view kDayArticles = "day_articles";  // per-date index of ingested ids
inline constexpr std::string_view kFetchFailure = "fetch_failure";
inline constexpr std::string_view kLabels = "labels";
inline constexpr std::string_view kSentences = "sentences";
inline constexpr std::string_view kQuotes = "quotes";
inline constexpr std::string_view kDeadLetter = "dead_letter";
inline constexpr std::string_view kEvent = "event";
inline constexpr std::string_view kFact = "fact";
inline constexpr std::string_view kClusterDay = "cluster_day";
inline constexpr std::string_view kResponse = "response";
inline constexpr std::string_view kOverlay = "overlay";
inline constexpr std::string_view kProposal = "topic_proposal";
}  // namespace kinds

struct StoredRecord {
  std::string kind;
  std::string id;
  int version = 0;
  Json body;
  std::string digest;
  Timestamp written_at{};
};

class CorruptRecord : public Error {
 public:
  using Error::Error;
};

enum class StageName { kIngest, kLabel, kCluster, kAnalyze };
enum class RunStatus { kPending, kRunning, kDone, kFailed };
std::string_view to_string(StageName stage);
std::string_view to_string(RunStatus status);

struct StageCounters {
  long long items_in = 0;
  long long items_out = 0;
  long long dead_lettered = 0;

  friend bool operator==(const StageCounters&, const StageCounters&) = default;
};

struct PipelineRun {
  std::string run_id;
  CivilDate date;
  StageName stage = StageName::kIngest;
  RunStatus status = RunStatus::kPending;
  StageCounters counters;
  std::optional<Timestamp> started_at;
  std::optional<Timestamp> finished_at;
  std::string error;
};

Json to_document(const PipelineRun& run);

// Only pending -> running -> {done, failed}.
bool transition_allowed(RunStatus from, RunStatus to);

enum class TaskState { kOpen, kClaimed, kDone };

struct StoredTask {
  ValidationTask task;
  std::string batch_id;
  int round = 0;  // independent annotator slot for the same item
  TaskState state = TaskState::kOpen;
  std::optional<Timestamp> claimed_at;
};

class ClaimConflict : public Error {
 public:
  using Error::Error;
};

// Append-only versioned document store over SQLite in WAL mode. Writing a body
// identical to the latest version is a no-op. Safe for one writer and many
// readers across threads; each thread uses its own connection.
class Store {
 public:
  static Store open(const std::filesystem::path& path, Clock clock = system_clock());
  Store(Store&&) noexcept;
  Store& operator=(Store&&) noexcept;
  ~Store();

  const std::filesystem::path& path() const { return path_; }
  Timestamp now() const { return clock_(); }

  // Runs `fn` in one IMMEDIATE transaction; rolls back if it throws. Nested
  // calls join the outer transaction.
  void transaction(const std::function<void()>& fn);
  // Runs `fn` against one consistent read snapshot.
  void read_transaction(const std::function<void()>& fn) const;

  // Returns true when a new version was written.
  bool put(std::string_view kind, std::string_view id, const Json& body);
  std::optional<StoredRecord> latest(std::string_view kind, std::string_view id) const;
  std::vector<StoredRecord> history(std::string_view kind, std::string_view id) const;
  // Latest version of every id of a kind, ordered by id.
  std::vector<StoredRecord> all_latest(std::string_view kind) const;
  // Latest versions whose id starts with `prefix`.
  std::vector<StoredRecord> latest_with_prefix(std::string_view kind, std::string_view prefix) const;

  // Content digest over every record's (kind, id, version, body digest) and
  // every task's state. Run history and timestamps are excluded.
  std::string state_digest() const;

  // Pipeline runs.
  PipelineRun create_run(CivilDate date, StageName stage);
  void update_run(PipelineRun& run, RunStatus status, const StageCounters& counters, std::string error = {});
  std::vector<PipelineRun> runs(std::optional<CivilDate> date = std::nullopt) const;

  // Validation tasks. Adding an existing task id is a no-op.
  void add_task(const StoredTask& task);
  std::optional<StoredTask> task(std::string_view task_id) const;
  std::vector<StoredTask> tasks(std::optional<TaskState> state = std::nullopt) const;
  // Atomically claims the oldest open task of `kind` (any kind when empty)
  // whose item this annotator has not already taken in another round. An
  // annotator's unfinished claim is returned first. Claims older than `lease`
  // are reopened.
  std::optional<StoredTask> claim_next(std::string_view annotator, std::optional<TaskKind> kind,
                                       std::chrono::seconds lease = std::chrono::minutes(30));
  // Marks a claimed task done. Throws NotFound or ClaimConflict.
  void complete_task(std::string_view task_id, std::string_view annotator);

 private:
  Store(std::filesystem::path path, sqlite3* db, Clock clock);
  void exec(const char* sql) const;
  void run_in(const char* begin, const std::function<void()>& fn) const;

  std::filesystem::path path_;
  sqlite3* db_ = nullptr;
  Clock clock_;
  mutable int depth_ = 0;
};

}  // namespace biaslens
