/*
 * Copyright 2026 The crickpred Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "crickpred/ingest.hpp"
#include "crickpred/learners/model.hpp"
#include "crickpred/predictor.hpp"
#include "crickpred/weights.hpp"

namespace crickpred::serve {

inline constexpr int kDefaultPort = 8096;
inline constexpr std::size_t kMaxLineup = 11;

struct Response {
  int status = 200;
  std::string body;  // JSON
};

/// JSON body of one prediction, as returned by POST /api/predict.
std::string prediction_json(const predict::PredictionResult& r);

/// Request handlers over immutable state. Every handler is const and
/// thread-safe; the same input always yields the same body.
class Service {
 public:
  Service(const ingest::History& history, const ingest::RosterBook& rosters,
          const features::WeightVectors& weights, std::optional<learn::TrainedModel> runs_model,
          std::optional<learn::TrainedModel> wickets_model);

  /// GET /api/health
  Response health() const;
  /// GET /api/teams: teams named in rosters or histories, sorted.
  Response teams() const;
  /// GET /api/squad?team=X: latest roster sorted by role then name, with
  /// career batting and bowling figures. A team known only from histories
  /// has an empty squad; a team known nowhere is a 404.
  Response squad(std::string_view team) const;
  /// POST /api/predict
  Response predict(std::string_view body) const;
  /// POST /api/lineup/evaluate: one entry per player in request order, each
  /// holding the prediction of every requested target (default both).
  Response evaluate_lineup(std::string_view body) const;

  const learn::TrainedModel* model(features::Target t) const;

 private:
  const ingest::History& history_;
  const ingest::RosterBook& rosters_;
  std::optional<learn::TrainedModel> runs_model_;
  std::optional<learn::TrainedModel> wickets_model_;
  predict::Predictor predictor_;
};

/// HTTP front end for a Service. Adds CORS headers for `cors_origin` and
/// answers preflight requests.
class HttpServer {
 public:
  HttpServer(const Service& service, std::string cors_origin = "*");
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds and serves until stop(). Returns false if the port cannot be bound.
  bool listen(const std::string& host, int port);
  /// Binds an ephemeral port and returns it (or -1); call serve() afterwards.
  int bind_any_port(const std::string& host);
  /// Serves on a port bound by bind_any_port until stop().
  bool serve();
  void stop();
  /// Blocks until the server accepts connections.
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace crickpred::serve
