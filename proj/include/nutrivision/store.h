/* Copyright 2026 The NutriVision Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef NUTRIVISION_STORE_H_
#define NUTRIVISION_STORE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nutrivision/factorization.h"
#include "nutrivision/profile.h"

namespace nutrivision {

enum class EventKind { kProfileUpsert, kMealLogged, kFeedback };

std::string_view EventKindName(EventKind kind);

struct MealLogged {
  std::string user_id;
  PlateReport report;
};

using EventPayload = std::variant<UserProfile, MealLogged, FeedbackEvent>;

struct EventRecord {
  uint64_t sequence = 0;
  Timestamp timestamp = 0;
  EventPayload payload;

  EventKind kind() const { return static_cast<EventKind>(payload.index()); }
};

// Everything the log materializes into.
struct StoreState {
  uint64_t last_sequence = 0;
  // Profiles carry an empty meal_log; see ProfileWithHistory.
  std::map<std::string, UserProfile, std::less<>> profiles;
  std::map<std::string, std::vector<MealLogEntry>, std::less<>> meal_logs;
  // user -> recipe -> latest rating
  std::map<std::string, std::map<std::string, int>, std::less<>> ratings;
  std::map<std::string, std::vector<SkipRecord>, std::less<>> skips;

  // Profile with its meal log attached. Throws Error(kUnknownUser).
  UserProfile ProfileWithHistory(std::string_view user_id) const;
  std::vector<Rating> AllRatings() const;
  std::vector<SkipRecord> SkipsFor(std::string_view user_id) const;

  friend bool operator==(const StoreState& a, const StoreState& b);
};

// The fold: applies one record to `state`. Later profile upserts replace
// earlier ones, ratings upsert per (user, recipe), skips and meals append.
void ApplyEvent(StoreState& state, const EventRecord& record);

// One line of the log file (no trailing newline).
std::string EncodeRecord(const EventRecord& record);
// Throws Error(kCorruptLog) on malformed lines.
EventRecord DecodeRecord(std::string_view line);

struct ReplayResult {
  StoreState state;
  size_t records = 0;
  // Partial final record found (and ignored) at the end of the log.
  size_t ignored_tail_records = 0;
  // Byte length of the valid prefix.
  uint64_t valid_bytes = 0;
};

// Replays the log at `path` (a missing file is an empty log). When
// `snapshot_path` names an existing snapshot, replay starts from it.
//
// Throws Error(kCorruptLog) for damage anywhere except a truncated final
// record, and for sequence gaps.
ReplayResult ReplayLog(const std::string& path,
                       const std::string& snapshot_path = "");

struct EventStoreOptions {
  std::string path;
  // Empty disables snapshots.
  std::string snapshot_path;
  // Appends that would grow the log past this size fail with kStorageFull.
  // 0 means unlimited.
  uint64_t max_bytes = 0;
  // fsync after every append.
  bool sync = true;
};

// Append-only, newline-delimited JSON event log with single-writer appends.
// Readers get immutable state snapshots that are never mutated in place.
class EventStore {
 public:
  // Opens (creating if needed) and replays the log. A truncated final record
  // is cut off so new appends start on a clean line.
  explicit EventStore(EventStoreOptions options);
  ~EventStore();

  EventStore(const EventStore&) = delete;
  EventStore& operator=(const EventStore&) = delete;

  // Durably appends and returns the new sequence number. Throws
  // Error(kStorageFull) or Error(kIoError).
  uint64_t Append(EventPayload payload, Timestamp timestamp);

  std::shared_ptr<const StoreState> state() const;

  // Writes the current state to the snapshot path (atomic rename).
  void WriteSnapshot();

  size_t ignored_tail_records() const { return ignored_tail_records_; }
  const EventStoreOptions& options() const { return options_; }

 private:
  EventStoreOptions options_;
  mutable std::mutex mu_;
  int fd_ = -1;
  uint64_t size_bytes_ = 0;
  size_t ignored_tail_records_ = 0;
  std::shared_ptr<const StoreState> state_;
};

}  // namespace nutrivision

#endif  // NUTRIVISION_STORE_H_
