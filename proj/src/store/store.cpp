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

#include "biaslens/store/store.hpp"

#include <fmt/format.h>
#include <sqlite3.h>

#include <algorithm>

#include "biaslens/util/digest.hpp"

namespace biaslens {

namespace {

class Statement {
 public:
  Statement(sqlite3* db, const char* sql) : db_(db) {
    if (sqlite3_prepare_v2(db, sql, -1, &stmt_, nullptr) != SQLITE_OK) {
      throw Error(fmt::format("sqlite prepare failed: {} ({})", sqlite3_errmsg(db), sql));
    }
  }
  ~Statement() { sqlite3_finalize(stmt_); }
  Statement(const Statement&) = delete;
  Statement& operator=(const Statement&) = delete;

  Statement& bind(int i, std::string_view v) {
    sqlite3_bind_text(stmt_, i, v.data(), static_cast<int>(v.size()), SQLITE_TRANSIENT);
    return *this;
  }
  Statement& bind(int i, long long v) {
    sqlite3_bind_int64(stmt_, i, v);
    return *this;
  }
  Statement& bind_null(int i) {
    sqlite3_bind_null(stmt_, i);
    return *this;
  }
  bool step() {
    int rc = sqlite3_step(stmt_);
    if (rc == SQLITE_ROW) return true;
    if (rc == SQLITE_DONE) return false;
    throw Error(fmt::format("sqlite step failed: {}", sqlite3_errmsg(db_)));
  }
  std::string text(int col) const {
    const unsigned char* p = sqlite3_column_text(stmt_, col);
    return p ? std::string(reinterpret_cast<const char*>(p), static_cast<std::size_t>(sqlite3_column_bytes(stmt_, col)))
             : std::string();
  }
  long long integer(int col) const { return sqlite3_column_int64(stmt_, col); }
  bool is_null(int col) const { return sqlite3_column_type(stmt_, col) == SQLITE_NULL; }

 private:
  sqlite3* db_;
  sqlite3_stmt* stmt_ = nullptr;
};

constexpr const char* kSchema = R"sql(
CREATE TABLE IF NOT EXISTS records (
  kind TEXT NOT NULL,
  id TEXT NOT NULL,
  version INTEGER NOT NULL,
  body TEXT NOT NULL,
  digest TEXT NOT NULL,
  written_at TEXT NOT NULL,
  PRIMARY KEY (kind, id, version)
);
CREATE TABLE IF NOT EXISTS runs (
  run_id TEXT PRIMARY KEY,
  seq INTEGER NOT NULL,
  date TEXT NOT NULL,
  stage TEXT NOT NULL,
  status TEXT NOT NULL,
  counters TEXT NOT NULL,
  started_at TEXT,
  finished_at TEXT,
  error TEXT NOT NULL DEFAULT ''
);
CREATE TABLE IF NOT EXISTS tasks (
  task_id TEXT PRIMARY KEY,
  seq INTEGER NOT NULL,
  batch_id TEXT NOT NULL,
  round INTEGER NOT NULL,
  kind TEXT NOT NULL,
  item_id TEXT NOT NULL,
  payload TEXT NOT NULL,
  state TEXT NOT NULL,
  annotator_id TEXT NOT NULL DEFAULT '',
  claimed_at TEXT
);
CREATE INDEX IF NOT EXISTS tasks_open ON tasks (state, kind, seq);
)sql";

constexpr const char* kRecordColumns = "kind, id, version, body, digest, written_at";

StoredRecord read_record(const Statement& s) {
  StoredRecord r;
  r.kind = s.text(0);
  r.id = s.text(1);
  r.version = static_cast<int>(s.integer(2));
  std::string body = s.text(3);
  r.digest = s.text(4);
  if (sha256_hex(body) != r.digest) throw CorruptRecord(fmt::format("digest mismatch for {}/{} v{}", r.kind, r.id, r.version));
  try {
    r.body = Json::parse(body);
  } catch (const Json::exception& e) {
    throw CorruptRecord(fmt::format("unparseable body for {}/{}: {}", r.kind, r.id, e.what()));
  }
  r.written_at = parse_timestamp(s.text(5));
  return r;
}

constexpr std::pair<StageName, std::string_view> kStages[] = {
    {StageName::kIngest, "ingest"}, {StageName::kLabel, "label"}, {StageName::kCluster, "cluster"}, {StageName::kAnalyze, "analyze"}};
constexpr std::pair<RunStatus, std::string_view> kStatuses[] = {
    {RunStatus::kPending, "pending"}, {RunStatus::kRunning, "running"}, {RunStatus::kDone, "done"}, {RunStatus::kFailed, "failed"}};
constexpr std::pair<TaskState, std::string_view> kTaskStates[] = {
    {TaskState::kOpen, "open"}, {TaskState::kClaimed, "claimed"}, {TaskState::kDone, "done"}};

template <typename E, std::size_t N>
E lookup(const std::pair<E, std::string_view> (&table)[N], std::string_view name) {
  for (const auto& [e, n] : table) {
    if (n == name) return e;
  }
  throw CorruptRecord(fmt::format("unknown value '{}'", name));
}

template <typename E, std::size_t N>
std::string_view name_of(const std::pair<E, std::string_view> (&table)[N], E value) {
  for (const auto& [e, n] : table) {
    if (e == value) return n;
  }
  return "?";
}

Json counters_doc(const StageCounters& c) {
  return Json{{"items_in", c.items_in}, {"items_out", c.items_out}, {"dead_lettered", c.dead_lettered}};
}

StoredTask read_task(const Statement& s) {
  // task_id, batch_id, round, kind, item_id, payload, state, annotator_id, claimed_at
  StoredTask t;
  t.task.task_id = s.text(0);
  t.batch_id = s.text(1);
  t.round = static_cast<int>(s.integer(2));
  t.task.kind = parse_task_kind(s.text(3));
  t.task.item_id = s.text(4);
  t.task.payload = Json::parse(s.text(5));
  t.state = lookup(kTaskStates, s.text(6));
  t.task.annotator_id = s.text(7);
  if (!s.is_null(8)) t.claimed_at = parse_timestamp(s.text(8));
  return t;
}

constexpr const char* kTaskColumns = "task_id, batch_id, round, kind, item_id, payload, state, annotator_id, claimed_at";

}  // namespace

std::string_view to_string(StageName stage) { return name_of(kStages, stage); }
std::string_view to_string(RunStatus status) { return name_of(kStatuses, status); }

bool transition_allowed(RunStatus from, RunStatus to) {
  return (from == RunStatus::kPending && to == RunStatus::kRunning) ||
         (from == RunStatus::kRunning && (to == RunStatus::kDone || to == RunStatus::kFailed));
}

Json to_document(const PipelineRun& r) {
  Json doc{{"run_id", r.run_id},
           {"date", format_date(r.date)},
           {"stage", to_string(r.stage)},
           {"status", to_string(r.status)},
           {"counters", counters_doc(r.counters)},
           {"error", r.error}};
  doc["started_at"] = r.started_at ? Json(format_timestamp(*r.started_at)) : Json(nullptr);
  doc["finished_at"] = r.finished_at ? Json(format_timestamp(*r.finished_at)) : Json(nullptr);
  return doc;
}

Store::Store(std::filesystem::path path, sqlite3* db, Clock clock)
    : path_(std::move(path)), db_(db), clock_(std::move(clock)) {}

Store::Store(Store&& other) noexcept
    : path_(std::move(other.path_)), db_(std::exchange(other.db_, nullptr)), clock_(std::move(other.clock_)),
      depth_(other.depth_) {}

Store& Store::operator=(Store&& other) noexcept {
  if (this != &other) {
    if (db_) sqlite3_close_v2(db_);
    path_ = std::move(other.path_);
    db_ = std::exchange(other.db_, nullptr);
    clock_ = std::move(other.clock_);
    depth_ = other.depth_;
  }
  return *this;
}

Store::~Store() {
  if (db_) sqlite3_close_v2(db_);
}

Store Store::open(const std::filesystem::path& path, Clock clock) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  sqlite3* db = nullptr;
  if (sqlite3_open_v2(path.c_str(), &db, SQLITE_OPEN_READWRITE | SQLITE_OPEN_CREATE | SQLITE_OPEN_FULLMUTEX, nullptr) !=
      SQLITE_OK) {
    std::string msg = db ? sqlite3_errmsg(db) : "out of memory";
    sqlite3_close_v2(db);
    throw Error(fmt::format("cannot open store {}: {}", path.string(), msg));
  }
  sqlite3_busy_timeout(db, 10000);
  Store store(path, db, std::move(clock));
  store.exec("PRAGMA journal_mode=WAL;");
  store.exec("PRAGMA synchronous=FULL;");
  store.exec(kSchema);
  return store;
}

void Store::exec(const char* sql) const {
  char* err = nullptr;
  if (sqlite3_exec(db_, sql, nullptr, nullptr, &err) != SQLITE_OK) {
    std::string msg = err ? err : "unknown error";
    sqlite3_free(err);
    throw Error(fmt::format("sqlite: {}", msg));
  }
}

void Store::transaction(const std::function<void()>& fn) { run_in("BEGIN IMMEDIATE;", fn); }

void Store::read_transaction(const std::function<void()>& fn) const { run_in("BEGIN DEFERRED;", fn); }

void Store::run_in(const char* begin, const std::function<void()>& fn) const {
  if (depth_ > 0) {
    fn();
    return;
  }
  exec(begin);
  depth_ = 1;
  try {
    fn();
  } catch (...) {
    depth_ = 0;
    exec("ROLLBACK;");
    throw;
  }
  depth_ = 0;
  exec("COMMIT;");
}

bool Store::put(std::string_view kind, std::string_view id, const Json& body) {
  if (kind.empty() || id.empty()) throw InvalidArgument("record kind and id must be non-empty");
  std::string text = body.dump();
  std::string digest = sha256_hex(text);
  bool written = false;
  transaction([&] {
    Statement q(db_, "SELECT version, digest FROM records WHERE kind = ? AND id = ? ORDER BY version DESC LIMIT 1");
    q.bind(1, kind).bind(2, id);
    int version = 0;
    if (q.step()) {
      if (q.text(1) == digest) return;
      version = static_cast<int>(q.integer(0));
    }
    Statement ins(db_, "INSERT INTO records (kind, id, version, body, digest, written_at) VALUES (?, ?, ?, ?, ?, ?)");
    ins.bind(1, kind).bind(2, id).bind(3, version + 1).bind(4, text).bind(5, digest).bind(6, format_timestamp(clock_()));
    ins.step();
    written = true;
  });
  return written;
}

std::optional<StoredRecord> Store::latest(std::string_view kind, std::string_view id) const {
  Statement q(db_, fmt::format("SELECT {} FROM records WHERE kind = ? AND id = ? ORDER BY version DESC LIMIT 1",
                               kRecordColumns).c_str());
  q.bind(1, kind).bind(2, id);
  if (!q.step()) return std::nullopt;
  return read_record(q);
}

std::vector<StoredRecord> Store::history(std::string_view kind, std::string_view id) const {
  Statement q(db_, fmt::format("SELECT {} FROM records WHERE kind = ? AND id = ? ORDER BY version", kRecordColumns).c_str());
  q.bind(1, kind).bind(2, id);
  std::vector<StoredRecord> out;
  while (q.step()) out.push_back(read_record(q));
  return out;
}

std::vector<StoredRecord> Store::all_latest(std::string_view kind) const { return latest_with_prefix(kind, ""); }

std::vector<StoredRecord> Store::latest_with_prefix(std::string_view kind, std::string_view prefix) const {
  Statement q(db_, fmt::format("SELECT {} FROM records r WHERE kind = ?1 AND substr(id, 1, length(?2)) = ?2 "
                               "AND version = (SELECT MAX(version) FROM records WHERE kind = r.kind AND id = r.id) "
                               "ORDER BY id",
                               kRecordColumns)
                       .c_str());
  q.bind(1, kind).bind(2, prefix);
  std::vector<StoredRecord> out;
  while (q.step()) out.push_back(read_record(q));
  return out;
}

std::string Store::state_digest() const {
  std::string acc;
  {
    Statement q(db_, "SELECT kind, id, version, digest FROM records ORDER BY kind, id, version");
    while (q.step()) acc += fmt::format("r\t{}\t{}\t{}\t{}\n", q.text(0), q.text(1), q.integer(2), q.text(3));
  }
  {
    Statement q(db_, "SELECT task_id, batch_id, round, kind, item_id, payload, state, annotator_id FROM tasks ORDER BY task_id");
    while (q.step()) {
      acc += fmt::format("t\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", q.text(0), q.text(1), q.integer(2), q.text(3), q.text(4),
                         sha256_hex(q.text(5)), q.text(6), q.text(7));
    }
  }
  return sha256_hex(acc);
}

PipelineRun Store::create_run(CivilDate date, StageName stage) {
  PipelineRun run;
  run.date = date;
  run.stage = stage;
  transaction([&] {
    Statement seq(db_, "SELECT COALESCE(MAX(seq), 0) + 1 FROM runs");
    seq.step();
    long long n = seq.integer(0);
    run.run_id = fmt::format("{}-{}-{}", format_date(date), to_string(stage), n);
    Statement ins(db_, "INSERT INTO runs (run_id, seq, date, stage, status, counters) VALUES (?, ?, ?, ?, ?, ?)");
    ins.bind(1, run.run_id).bind(2, n).bind(3, format_date(date)).bind(4, to_string(stage));
    ins.bind(5, to_string(run.status)).bind(6, counters_doc(run.counters).dump());
    ins.step();
  });
  return run;
}

void Store::update_run(PipelineRun& run, RunStatus status, const StageCounters& counters, std::string error) {
  if (!transition_allowed(run.status, status)) {
    throw InvalidArgument(fmt::format("run {} cannot go from {} to {}", run.run_id, to_string(run.status), to_string(status)));
  }
  if (counters.items_in < 0 || counters.items_out < 0 || counters.dead_lettered < 0) {
    throw InvalidArgument("run counters must be non-negative");
  }
  Timestamp now = clock_();
  if (status == RunStatus::kRunning) run.started_at = now;
  if (status == RunStatus::kDone || status == RunStatus::kFailed) run.finished_at = now;
  run.status = status;
  run.counters = counters;
  run.error = std::move(error);
  Statement up(db_, "UPDATE runs SET status = ?, counters = ?, started_at = ?, finished_at = ?, error = ? WHERE run_id = ?");
  up.bind(1, to_string(status)).bind(2, counters_doc(counters).dump());
  if (run.started_at) {
    up.bind(3, format_timestamp(*run.started_at));
  } else {
    up.bind_null(3);
  }
  if (run.finished_at) {
    up.bind(4, format_timestamp(*run.finished_at));
  } else {
    up.bind_null(4);
  }
  up.bind(5, run.error).bind(6, run.run_id);
  up.step();
}

std::vector<PipelineRun> Store::runs(std::optional<CivilDate> date) const {
  Statement q(db_, "SELECT run_id, date, stage, status, counters, started_at, finished_at, error FROM runs "
                   "WHERE ?1 IS NULL OR date = ?1 ORDER BY seq");
  if (date) {
    q.bind(1, format_date(*date));
  } else {
    q.bind_null(1);
  }
  std::vector<PipelineRun> out;
  while (q.step()) {
    PipelineRun r;
    r.run_id = q.text(0);
    r.date = parse_date(q.text(1));
    r.stage = lookup(kStages, q.text(2));
    r.status = lookup(kStatuses, q.text(3));
    Json c = Json::parse(q.text(4));
    r.counters = {c.at("items_in").get<long long>(), c.at("items_out").get<long long>(),
                  c.at("dead_lettered").get<long long>()};
    if (!q.is_null(5)) r.started_at = parse_timestamp(q.text(5));
    if (!q.is_null(6)) r.finished_at = parse_timestamp(q.text(6));
    r.error = q.text(7);
    out.push_back(std::move(r));
  }
  return out;
}

void Store::add_task(const StoredTask& t) {
  transaction([&] {
    Statement seq(db_, "SELECT COALESCE(MAX(seq), 0) + 1 FROM tasks");
    seq.step();
    Statement ins(db_, "INSERT OR IGNORE INTO tasks (task_id, seq, batch_id, round, kind, item_id, payload, state, "
                       "annotator_id) VALUES (?, ?, ?, ?, ?, ?, ?, 'open', '')");
    ins.bind(1, t.task.task_id).bind(2, seq.integer(0)).bind(3, t.batch_id).bind(4, t.round);
    ins.bind(5, to_string(t.task.kind)).bind(6, t.task.item_id).bind(7, t.task.payload.dump());
    ins.step();
  });
}

std::optional<StoredTask> Store::task(std::string_view task_id) const {
  Statement q(db_, fmt::format("SELECT {} FROM tasks WHERE task_id = ?", kTaskColumns).c_str());
  q.bind(1, task_id);
  if (!q.step()) return std::nullopt;
  return read_task(q);
}

std::vector<StoredTask> Store::tasks(std::optional<TaskState> state) const {
  Statement q(db_, fmt::format("SELECT {} FROM tasks WHERE ?1 IS NULL OR state = ?1 ORDER BY seq", kTaskColumns).c_str());
  if (state) {
    q.bind(1, name_of(kTaskStates, *state));
  } else {
    q.bind_null(1);
  }
  std::vector<StoredTask> out;
  while (q.step()) out.push_back(read_task(q));
  return out;
}

std::optional<StoredTask> Store::claim_next(std::string_view annotator, std::optional<TaskKind> kind,
                                            std::chrono::seconds lease) {
  if (annotator.empty()) throw InvalidArgument("annotator id is required");
  std::optional<StoredTask> out;
  transaction([&] {
    Timestamp now = clock_();
    Statement expire(db_, "UPDATE tasks SET state = 'open', annotator_id = '', claimed_at = NULL "
                          "WHERE state = 'claimed' AND claimed_at < ?");
    expire.bind(1, format_timestamp(now - lease));
    expire.step();

    std::string kind_name = kind ? std::string(to_string(*kind)) : std::string();
    Statement mine(db_, fmt::format("SELECT {} FROM tasks WHERE state = 'claimed' AND annotator_id = ?1 "
                                    "AND (?2 = '' OR kind = ?2) ORDER BY seq LIMIT 1",
                                    kTaskColumns)
                            .c_str());
    mine.bind(1, annotator).bind(2, kind_name);
    if (mine.step()) {
      out = read_task(mine);
      return;
    }
    Statement pick(db_, fmt::format("SELECT {} FROM tasks t WHERE state = 'open' AND (?2 = '' OR kind = ?2) "
                                    "AND NOT EXISTS (SELECT 1 FROM tasks o WHERE o.item_id = t.item_id "
                                    "AND o.kind = t.kind AND o.batch_id = t.batch_id AND o.annotator_id = ?1) "
                                    "ORDER BY seq LIMIT 1",
                                    kTaskColumns)
                            .c_str());
    pick.bind(1, annotator).bind(2, kind_name);
    if (!pick.step()) return;
    StoredTask t = read_task(pick);
    Statement claim(db_, "UPDATE tasks SET state = 'claimed', annotator_id = ?, claimed_at = ? "
                         "WHERE task_id = ? AND state = 'open'");
    claim.bind(1, annotator).bind(2, format_timestamp(now)).bind(3, t.task.task_id);
    claim.step();
    if (sqlite3_changes(db_) != 1) throw ClaimConflict(fmt::format("task {} was claimed concurrently", t.task.task_id));
    t.state = TaskState::kClaimed;
    t.task.annotator_id = std::string(annotator);
    t.claimed_at = now;
    out = std::move(t);
  });
  return out;
}

void Store::complete_task(std::string_view task_id, std::string_view annotator) {
  transaction([&] {
    std::optional<StoredTask> t = task(task_id);
    if (!t) throw NotFound(fmt::format("unknown task '{}'", task_id));
    if (t->state == TaskState::kDone) throw ClaimConflict(fmt::format("task {} is already answered", task_id));
    if (t->state != TaskState::kClaimed || t->task.annotator_id != annotator) {
      throw ClaimConflict(fmt::format("task {} is not claimed by {}", task_id, annotator));
    }
    Statement up(db_, "UPDATE tasks SET state = 'done' WHERE task_id = ?");
    up.bind(1, task_id);
    up.step();
  });
}

}  // namespace biaslens
