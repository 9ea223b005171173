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

#ifndef NUTRIVISION_API_SERVICE_H_
#define NUTRIVISION_API_SERVICE_H_

#include <functional>
#include <memory>
#include <string>

#include "nutrivision/engine.h"
#include "nutrivision/profile.h"

namespace nutrivision {

using Clock = std::function<Timestamp()>;

// Wall-clock seconds.
Timestamp SystemNow();

// JSON over HTTP:
//
//   POST /v1/analyze                      multipart: image, detections
//   POST /v1/users                        UserProfile
//   GET  /v1/users/{id}/bmi
//   POST /v1/users/{id}/meals             PlateReport
//   POST /v1/users/{id}/feedback          FeedbackEvent
//   GET  /v1/users/{id}/recommendations   ?count=N (default 5)
//   GET  /v1/recipes/{id}
//
// Success bodies are the canonical serialization of the matching Engine
// call. Failures carry {"code", "message"} with the status from
// HttpStatusFor().
class ApiServer {
 public:
  explicit ApiServer(std::shared_ptr<Engine> engine, Clock clock = SystemNow);
  ~ApiServer();

  ApiServer(const ApiServer&) = delete;
  ApiServer& operator=(const ApiServer&) = delete;

  // Binds without serving. Port 0 picks a free port. Returns the bound port
  // or -1.
  int Bind(const std::string& host, int port);
  // Blocks until Stop().
  bool Serve();
  void Stop();
  // Blocks until Serve() is accepting connections.
  void WaitUntilReady() const;

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace nutrivision

#endif  // NUTRIVISION_API_SERVICE_H_
