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

#include "nutrivision/api_service.h"

#include <chrono>
#include <cstdint>
#include <exception>
#include <span>
#include <string>
#include <utility>

#include "httplib.h"
#include "nutrivision/error.h"
#include "nutrivision/serialization.h"

namespace nutrivision {

namespace {

constexpr char kJsonType[] = "application/json";
constexpr char kUserPath[] = R"(/v1/users/([^/]+))";

void Reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(CanonicalDump(body), kJsonType);
}

void ReplyError(httplib::Response& res, const Error& e) {
  Reply(res, HttpStatusFor(e.code()), ErrorJson(e));
}

// Runs `body` and converts library errors into JSON error replies.
template <typename Fn>
httplib::Server::Handler Guarded(Fn body) {
  return [body](const httplib::Request& req, httplib::Response& res) {
    try {
      body(req, res);
    } catch (const Error& e) {
      ReplyError(res, e);
    } catch (const std::exception& e) {
      ReplyError(res, Error(ErrorCode::kIoError, e.what()));
    }
  };
}

Json ParseBody(const httplib::Request& req, std::string_view what) {
  return ParseJson(req.body, what);
}

size_t ParseCount(const httplib::Request& req) {
  if (!req.has_param("count")) return 5;
  const std::string text = req.get_param_value("count");
  size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || used == 0 || value < 1) {
    throw Error(ErrorCode::kSchemaError,
                "count must be a positive integer, got '" + text + "'");
  }
  return static_cast<size_t>(value);
}

// Fills `field` from the path when the body omits it; rejects a mismatch.
void BindPathId(Json& body, const char* field, const std::string& id) {
  if (!body.is_object()) return;
  auto it = body.find(field);
  if (it == body.end()) {
    body[field] = id;
  } else if (!it->is_string() || it->get<std::string>() != id) {
    throw Error(ErrorCode::kSchemaError,
                std::string(field) + " in body does not match the path");
  }
}

Json Sequence(uint64_t sequence) { return Json{{"sequence", sequence}}; }

}  // namespace

Timestamp SystemNow() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

class ApiServer::Impl {
 public:
  Impl(std::shared_ptr<Engine> engine, Clock clock)
      : engine_(std::move(engine)), clock_(std::move(clock)) {
    Route();
  }

  httplib::Server server;

 private:
  void Route() {
    server.Post("/v1/analyze", Guarded([this](const httplib::Request& req,
                                              httplib::Response& res) {
      if (!req.is_multipart_form_data() || !req.has_file("image") ||
          !req.has_file("detections")) {
        throw Error(ErrorCode::kSchemaError,
                    "expected multipart fields 'image' and 'detections'");
      }
      const std::string image = req.get_file_value("image").content;
      const std::string detections = req.get_file_value("detections").content;
      const PlateReport report = engine_->AnalyzeImage(
          std::span<const uint8_t>(
              reinterpret_cast<const uint8_t*>(image.data()), image.size()),
          detections);
      Reply(res, 200, ToJson(report));
    }));

    server.Post("/v1/users", Guarded([this](const httplib::Request& req,
                                            httplib::Response& res) {
      const UserProfile profile =
          UserProfileFromJson(ParseBody(req, "profile"));
      const uint64_t seq = engine_->UpsertProfile(profile, clock_());
      Json body = Sequence(seq);
      body["user_id"] = profile.user_id;
      Reply(res, 200, body);
    }));

    server.Get(std::string(kUserPath) + "/bmi",
               Guarded([this](const httplib::Request& req,
                              httplib::Response& res) {
                 Reply(res, 200, ToJson(engine_->Bmi(req.matches[1].str())));
               }));

    server.Post(std::string(kUserPath) + "/meals",
                Guarded([this](const httplib::Request& req,
                               httplib::Response& res) {
                  const PlateReport report =
                      PlateReportFromJson(ParseBody(req, "plate report"));
                  Reply(res, 200,
                        Sequence(engine_->LogMeal(req.matches[1].str(), report,
                                                  clock_())));
                }));

    server.Post(std::string(kUserPath) + "/feedback",
                Guarded([this](const httplib::Request& req,
                               httplib::Response& res) {
                  Json body = ParseBody(req, "feedback");
                  BindPathId(body, "user_id", req.matches[1].str());
                  if (body.is_object() && !body.contains("timestamp")) {
                    body["timestamp"] = clock_();
                  }
                  const FeedbackEvent event = FeedbackEventFromJson(body);
                  Reply(res, 200, Sequence(engine_->IngestFeedback(event)));
                }));

    server.Get(std::string(kUserPath) + "/recommendations",
               Guarded([this](const httplib::Request& req,
                              httplib::Response& res) {
                 const size_t count = ParseCount(req);
                 Reply(res, 200,
                       ToJson(engine_->Recommend(req.matches[1].str(), count,
                                                 clock_())));
               }));

    server.Get(R"(/v1/recipes/([^/]+))",
               Guarded([this](const httplib::Request& req,
                              httplib::Response& res) {
                 Reply(res, 200, ToJson(engine_->GetRecipe(req.matches[1].str())));
               }));

    server.set_error_handler(
        [](const httplib::Request& req, httplib::Response& res) {
          if (!res.body.empty()) return;
          Reply(res, res.status,
                Json{{"code", res.status == 404 ? "NOT_FOUND" : "HTTP_ERROR"},
                     {"message", req.method + " " + req.path}});
        });
  }

  std::shared_ptr<Engine> engine_;
  Clock clock_;
};

ApiServer::ApiServer(std::shared_ptr<Engine> engine, Clock clock)
    : impl_(std::make_unique<Impl>(std::move(engine), std::move(clock))) {}

ApiServer::~ApiServer() { Stop(); }

int ApiServer::Bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool ApiServer::Serve() { return impl_->server.listen_after_bind(); }

void ApiServer::Stop() { impl_->server.stop(); }

void ApiServer::WaitUntilReady() const { impl_->server.wait_until_ready(); }

}  // namespace nutrivision
