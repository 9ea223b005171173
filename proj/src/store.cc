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

#include "nutrivision/store.h"

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <utility>

#include "nutrivision/error.h"
#include "nutrivision/serialization.h"

namespace nutrivision {

std::string_view EventKindName(EventKind kind) {
  switch (kind) {
    case EventKind::kProfileUpsert: return "profile_upsert";
    case EventKind::kMealLogged: return "meal_logged";
    case EventKind::kFeedback: return "feedback";
  }
  return "unknown";
}

UserProfile StoreState::ProfileWithHistory(std::string_view user_id) const {
  auto it = profiles.find(user_id);
  if (it == profiles.end()) {
    throw Error(ErrorCode::kUnknownUser,
                "unknown user '" + std::string(user_id) + "'");
  }
  UserProfile p = it->second;
  if (auto log = meal_logs.find(user_id); log != meal_logs.end()) {
    p.meal_log = log->second;
  }
  return p;
}

std::vector<Rating> StoreState::AllRatings() const {
  std::vector<Rating> out;
  for (const auto& [user, by_recipe] : ratings) {
    for (const auto& [recipe, value] : by_recipe) {
      out.push_back({user, recipe, static_cast<double>(value)});
    }
  }
  return out;
}

std::vector<SkipRecord> StoreState::SkipsFor(std::string_view user_id) const {
  auto it = skips.find(user_id);
  return it == skips.end() ? std::vector<SkipRecord>{} : it->second;
}

namespace {

Json StateToJson(const StoreState& s) {
  Json profiles = Json::object();
  for (const auto& [id, p] : s.profiles) profiles[id] = ToJson(p);
  Json meals = Json::object();
  for (const auto& [id, log] : s.meal_logs) {
    Json entries = Json::array();
    for (const MealLogEntry& m : log) {
      entries.push_back({{"timestamp", m.timestamp}, {"report", ToJson(m.report)}});
    }
    meals[id] = std::move(entries);
  }
  Json ratings = Json::object();
  for (const auto& [id, by_recipe] : s.ratings) ratings[id] = by_recipe;
  Json skips = Json::object();
  for (const auto& [id, list] : s.skips) {
    Json entries = Json::array();
    for (const SkipRecord& r : list) {
      entries.push_back({{"recipe_id", r.recipe_id}, {"timestamp", r.timestamp}});
    }
    skips[id] = std::move(entries);
  }
  return {{"last_sequence", s.last_sequence},
          {"profiles", std::move(profiles)},
          {"meal_logs", std::move(meals)},
          {"ratings", std::move(ratings)},
          {"skips", std::move(skips)}};
}

StoreState StateFromJson(const Json& j) {
  StoreState s;
  s.last_sequence = j.at("last_sequence").get<uint64_t>();
  for (const auto& [id, p] : j.at("profiles").items()) {
    s.profiles[id] = UserProfileFromJson(p);
  }
  for (const auto& [id, entries] : j.at("meal_logs").items()) {
    for (const Json& e : entries) {
      s.meal_logs[id].push_back({e.at("timestamp").get<Timestamp>(),
                                 PlateReportFromJson(e.at("report"))});
    }
  }
  for (const auto& [id, by_recipe] : j.at("ratings").items()) {
    s.ratings[id] = by_recipe.get<std::map<std::string, int>>();
  }
  for (const auto& [id, entries] : j.at("skips").items()) {
    for (const Json& e : entries) {
      s.skips[id].push_back({e.at("recipe_id").get<std::string>(),
                             e.at("timestamp").get<Timestamp>()});
    }
  }
  return s;
}

}  // namespace

bool operator==(const StoreState& a, const StoreState& b) {
  return StateToJson(a) == StateToJson(b);
}

void ApplyEvent(StoreState& state, const EventRecord& record) {
  state.last_sequence = record.sequence;
  std::visit(
      [&](const auto& payload) {
        using T = std::decay_t<decltype(payload)>;
        if constexpr (std::is_same_v<T, UserProfile>) {
          UserProfile p = payload;
          p.meal_log.clear();
          state.profiles[p.user_id] = std::move(p);
        } else if constexpr (std::is_same_v<T, MealLogged>) {
          state.meal_logs[payload.user_id].push_back(
              {record.timestamp, payload.report});
        } else {
          if (payload.tried && payload.rating) {
            state.ratings[payload.user_id][payload.recipe_id] = *payload.rating;
          } else if (!payload.tried) {
            state.skips[payload.user_id].push_back(
                {payload.recipe_id, payload.timestamp});
          }
        }
      },
      record.payload);
}

std::string EncodeRecord(const EventRecord& record) {
  Json payload = std::visit(
      [](const auto& p) -> Json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, MealLogged>) {
          return {{"user_id", p.user_id}, {"report", ToJson(p.report)}};
        } else {
          return ToJson(p);
        }
      },
      record.payload);
  const Json line = {{"seq", record.sequence},
                     {"kind", std::string(EventKindName(record.kind()))},
                     {"ts", record.timestamp},
                     {"payload", std::move(payload)}};
  return line.dump();
}

EventRecord DecodeRecord(std::string_view line) {
  try {
    const Json j = Json::parse(line);
    EventRecord r;
    r.sequence = j.at("seq").get<uint64_t>();
    r.timestamp = j.at("ts").get<Timestamp>();
    const std::string kind = j.at("kind").get<std::string>();
    const Json& payload = j.at("payload");
    if (kind == "profile_upsert") {
      r.payload = UserProfileFromJson(payload);
    } else if (kind == "meal_logged") {
      r.payload = MealLogged{payload.at("user_id").get<std::string>(),
                             PlateReportFromJson(payload.at("report"))};
    } else if (kind == "feedback") {
      r.payload = FeedbackEventFromJson(payload);
    } else {
      throw Error(ErrorCode::kCorruptLog, "unknown record kind '" + kind + "'");
    }
    return r;
  } catch (const Error& e) {
    throw Error(ErrorCode::kCorruptLog, std::string("bad record: ") + e.what());
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kCorruptLog, std::string("bad record: ") + e.what());
  }
}

namespace {

struct Snapshot {
  StoreState state;
  uint64_t log_offset = 0;
};

std::optional<Snapshot> LoadSnapshot(const std::string& path) {
  if (path.empty()) return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    const Json j = Json::parse(ss.str());
    Snapshot s;
    s.log_offset = j.at("log_offset").get<uint64_t>();
    s.state = StateFromJson(j.at("state"));
    return s;
  } catch (const std::exception&) {
    // An unreadable snapshot only costs replay time.
    return std::nullopt;
  }
}

std::string ReadAll(const std::string& path, bool& exists) {
  std::ifstream in(path, std::ios::binary);
  exists = static_cast<bool>(in);
  if (!exists) return {};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ReplayResult ReplayLog(const std::string& path,
                       const std::string& snapshot_path) {
  bool exists = false;
  const std::string data = ReadAll(path, exists);
  ReplayResult result;

  size_t pos = 0;
  if (std::optional<Snapshot> snap = LoadSnapshot(snapshot_path);
      snap && snap->log_offset <= data.size()) {
    result.state = std::move(snap->state);
    pos = snap->log_offset;
  }
  result.valid_bytes = pos;

  int line_number = 0;
  while (pos < data.size()) {
    const size_t nl = data.find('\n', pos);
    const bool last = nl == std::string::npos || nl + 1 == data.size();
    ++line_number;
    if (nl == std::string::npos) {
      ++result.ignored_tail_records;  // torn write
      break;
    }
    const std::string_view line(data.data() + pos, nl - pos);
    EventRecord record;
    try {
      record = DecodeRecord(line);
    } catch (const Error& e) {
      if (last) {
        ++result.ignored_tail_records;
        break;
      }
      throw Error(ErrorCode::kCorruptLog,
                  path + ": line " + std::to_string(line_number) + ": " +
                      e.what());
    }
    if (record.sequence != result.state.last_sequence + 1) {
      throw Error(ErrorCode::kCorruptLog,
                  path + ": sequence " + std::to_string(record.sequence) +
                      " follows " +
                      std::to_string(result.state.last_sequence));
    }
    ApplyEvent(result.state, record);
    ++result.records;
    pos = nl + 1;
    result.valid_bytes = pos;
  }
  return result;
}

EventStore::EventStore(EventStoreOptions options) : options_(std::move(options)) {
  ReplayResult replay = ReplayLog(options_.path, options_.snapshot_path);
  ignored_tail_records_ = replay.ignored_tail_records;
  state_ = std::make_shared<const StoreState>(std::move(replay.state));

  fd_ = ::open(options_.path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC,
               0644);
  if (fd_ < 0) {
    throw Error(ErrorCode::kIoError,
                "cannot open " + options_.path + ": " + std::strerror(errno));
  }
  if (::ftruncate(fd_, static_cast<off_t>(replay.valid_bytes)) != 0) {
    const int err = errno;
    ::close(fd_);
    throw Error(ErrorCode::kIoError,
                "cannot trim torn tail of " + options_.path + ": " +
                    std::strerror(err));
  }
  size_bytes_ = replay.valid_bytes;
}

EventStore::~EventStore() {
  if (fd_ >= 0) ::close(fd_);
}

uint64_t EventStore::Append(EventPayload payload, Timestamp timestamp) {
  std::lock_guard<std::mutex> lock(mu_);
  EventRecord record;
  record.sequence = state_->last_sequence + 1;
  record.timestamp = timestamp;
  record.payload = std::move(payload);

  const std::string line = EncodeRecord(record) + "\n";
  if (options_.max_bytes > 0 && size_bytes_ + line.size() > options_.max_bytes) {
    throw Error(ErrorCode::kStorageFull,
                "event log would exceed " + std::to_string(options_.max_bytes) +
                    " bytes");
  }
  size_t written = 0;
  while (written < line.size()) {
    const ssize_t n = ::write(fd_, line.data() + written, line.size() - written);
    if (n < 0) {
      if (errno == EINTR) continue;
      const int err = errno;
      // Drop whatever partial bytes made it so the log stays line-aligned.
      if (::ftruncate(fd_, static_cast<off_t>(size_bytes_)) != 0) {
        // Replay tolerates a torn tail, so a failed trim is still recoverable.
      }
      if (err == ENOSPC || err == EDQUOT) {
        throw Error(ErrorCode::kStorageFull, "event log device is full");
      }
      throw Error(ErrorCode::kIoError,
                  std::string("event log write failed: ") + std::strerror(err));
    }
    written += static_cast<size_t>(n);
  }
  if (options_.sync && ::fsync(fd_) != 0) {
    throw Error(ErrorCode::kIoError,
                std::string("event log fsync failed: ") + std::strerror(errno));
  }
  size_bytes_ += line.size();

  auto next = std::make_shared<StoreState>(*state_);
  ApplyEvent(*next, record);
  state_ = std::move(next);
  return record.sequence;
}

std::shared_ptr<const StoreState> EventStore::state() const {
  std::lock_guard<std::mutex> lock(mu_);
  return state_;
}

void EventStore::WriteSnapshot() {
  if (options_.snapshot_path.empty()) return;
  std::shared_ptr<const StoreState> state;
  uint64_t offset;
  {
    std::lock_guard<std::mutex> lock(mu_);
    state = state_;
    offset = size_bytes_;
  }
  const Json doc = {{"log_offset", offset}, {"state", StateToJson(*state)}};
  const std::string tmp = options_.snapshot_path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp);
    out << doc.dump() << '\n';
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp);
  }
  if (std::rename(tmp.c_str(), options_.snapshot_path.c_str()) != 0) {
    throw Error(ErrorCode::kIoError,
                "cannot install snapshot " + options_.snapshot_path);
  }
}

}  // namespace nutrivision
