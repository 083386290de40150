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

#include "crickpred/serve.hpp"

#include <algorithm>
#include <climits>
#include <set>

#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>

namespace crickpred::serve {

namespace {

using nlohmann::json;

class BadRequest : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Response error(int status, const std::string& message) {
  return {status, json{{"error", message}}.dump()};
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

const json& require(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) {
    throw BadRequest(fmt::format("missing field '{}'", key));
  }
  return *it;
}

std::string require_string(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_string()) throw BadRequest(fmt::format("field '{}' must be a string", key));
  return v.get<std::string>();
}

template <typename E>
std::optional<E> optional_enum(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw BadRequest(fmt::format("field '{}' must be a string", key));
  const auto value = parse_token<E>(it->get<std::string>());
  if (!value) {
    throw BadRequest(fmt::format("field '{}' has unknown value '{}'", key, it->get<std::string>()));
  }
  return value;
}

std::optional<bool> optional_bool(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_boolean()) throw BadRequest(fmt::format("field '{}' must be a boolean", key));
  return it->get<bool>();
}

std::optional<int> optional_int(const json& obj, const char* key, int lo, int hi) {
  const auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer()) throw BadRequest(fmt::format("field '{}' must be an integer", key));
  const auto v = it->get<long long>();
  if (v < lo || v > hi) {
    throw BadRequest(fmt::format("field '{}' must be in [{}, {}]", key, lo, hi));
  }
  return static_cast<int>(v);
}

features::Target parse_target_field(const json& v) {
  if (!v.is_string()) throw BadRequest("field 'target' must be a string");
  const auto t = features::parse_target(v.get<std::string>());
  if (!t) throw BadRequest(fmt::format("unknown target '{}'", v.get<std::string>()));
  return *t;
}

// Reads the shared match context fields into `req`.
void read_context(const json& obj, predict::MatchRequest& req) {
  if (!obj.is_object()) throw BadRequest("match context must be an object");
  req.opposition = require_string(obj, "opposition");
  req.ground = require_string(obj, "ground");
  req.host = require_string(obj, "host");
  const std::string date = require_string(obj, "date");
  const auto parsed = Date::parse(date);
  if (!parsed) throw BadRequest(fmt::format("field 'date' is not a YYYY-MM-DD date: '{}'", date));
  req.date = *parsed;
  if (auto v = optional_enum<MatchType>(obj, "match_type")) req.match_type = *v;
  if (auto v = optional_enum<MatchTime>(obj, "match_time")) req.match_time = *v;
  if (auto v = optional_enum<Tournament>(obj, "tournament")) req.tournament = *v;
  req.venue_relation = optional_enum<VenueRelation>(obj, "venue_relation");
  if (auto v = optional_bool(obj, "toss_won")) req.toss_won = *v;
  if (auto v = optional_int(obj, "innings_no", 1, 2)) req.innings_no = *v;
  if (auto v = optional_int(obj, "position", 1, 11)) req.position = *v;
  if (auto v = optional_bool(obj, "captain")) req.captain = *v;
  if (auto v = optional_bool(obj, "wicketkeeper")) req.wicketkeeper = *v;
}

json parse_body(std::string_view body) {
  json j = json::parse(body.begin(), body.end(), nullptr, false);
  if (j.is_discarded()) throw BadRequest("request body is not valid JSON");
  if (!j.is_object()) throw BadRequest("request body must be a JSON object");
  return j;
}

json to_json(const predict::PredictionResult& r) {
  return json{
      {"player_id", r.player_id},
      {"target", std::string(features::to_string(r.target))},
      {"predicted_class", r.predicted_class},
      {"band", r.band},
      {"probabilities", r.probabilities},
      {"derived",
       {{"consistency", optional_number(r.derived.consistency)},
        {"form", optional_number(r.derived.form)},
        {"opposition", optional_number(r.derived.opposition)},
        {"venue", optional_number(r.derived.venue)}}},
      {"opposition_strength", optional_number(r.opposition_strength)},
      {"cold_start", r.cold_start},
  };
}

}  // namespace

std::string prediction_json(const predict::PredictionResult& r) { return to_json(r).dump(); }

Service::Service(const ingest::History& history, const ingest::RosterBook& rosters,
                 const features::WeightVectors& weights, std::optional<learn::TrainedModel> runs_model,
                 std::optional<learn::TrainedModel> wickets_model)
    : history_(history),
      rosters_(rosters),
      runs_model_(std::move(runs_model)),
      wickets_model_(std::move(wickets_model)),
      predictor_(history, rosters, weights) {
  if (runs_model_ && runs_model_->schema.num_classes != features::num_classes(features::Target::Runs)) {
    throw PreconditionError("runs model does not have 5 classes");
  }
  if (wickets_model_ &&
      wickets_model_->schema.num_classes != features::num_classes(features::Target::Wickets)) {
    throw PreconditionError("wickets model does not have 3 classes");
  }
}

const learn::TrainedModel* Service::model(features::Target t) const {
  const auto& m = t == features::Target::Runs ? runs_model_ : wickets_model_;
  return m ? &*m : nullptr;
}

Response Service::health() const {
  json j{{"status", "ok"},
         {"models", {{"runs", runs_model_.has_value()}, {"wickets", wickets_model_.has_value()}}}};
  return {200, j.dump()};
}

Response Service::teams() const {
  std::set<std::string> names;
  for (const auto& t : rosters_.teams()) names.insert(t);
  for (const auto& t : history_.teams()) names.insert(t);
  return {200, json{{"teams", std::vector<std::string>(names.begin(), names.end())}}.dump()};
}

Response Service::squad(std::string_view team_view) const {
  const std::string team(team_view);
  if (team.empty()) return error(400, "missing query parameter 'team'");
  const Roster* roster = rosters_.find(team, Date::from_days(INT_MAX));
  if (!roster) {
    const auto known = history_.teams();
    if (std::find(known.begin(), known.end(), team) == known.end()) {
      return error(404, fmt::format("unknown team '{}'", team));
    }
    return {200, json{{"team", team}, {"players", json::array()}}.dump()};
  }

  std::vector<const RosterEntry*> players;
  for (const auto& p : roster->players) players.push_back(&p);
  std::stable_sort(players.begin(), players.end(), [](const RosterEntry* a, const RosterEntry* b) {
    if (a->role != b->role) return a->role < b->role;
    return a->player_name < b->player_name;
  });

  json list = json::array();
  for (const RosterEntry* p : players) {
    int innings = 0, runs = 0, balls = 0, outs = 0;
    for (const auto& b : history_.batting(p->player_id)) {
      ++innings;
      runs += b.runs;
      balls += b.balls_faced;
      outs += b.dismissed ? 1 : 0;
    }
    int spells = 0, wickets = 0, bowled = 0, conceded = 0;
    for (const auto& w : history_.bowling(p->player_id)) {
      ++spells;
      wickets += w.wickets;
      bowled += w.balls_bowled;
      conceded += w.runs_conceded;
    }
    auto ratio = [](double num, double den, double scale) {
      return den > 0 ? json(num * scale / den) : json(nullptr);
    };
    list.push_back({
        {"player_id", p->player_id},
        {"player_name", p->player_name},
        {"role", std::string(to_token(p->role))},
        {"batting_hand", std::string(to_token(p->batting_hand))},
        {"bowling_hand", std::string(to_token(p->bowling_hand))},
        {"batting",
         {{"innings", innings},
          {"runs", runs},
          {"average", ratio(runs, outs, 1.0)},
          {"strike_rate", ratio(runs, balls, 100.0)}}},
        {"bowling",
         {{"innings", spells},
          {"wickets", wickets},
          {"economy", ratio(conceded, bowled, 6.0)}}},
    });
  }
  return {200, json{{"team", team}, {"players", std::move(list)}}.dump()};
}

Response Service::predict(std::string_view body) const {
  try {
    const json j = parse_body(body);
    predict::MatchRequest req;
    req.player_id = require_string(j, "player_id");
    req.target = parse_target_field(require(j, "target"));
    read_context(j, req);
    const learn::TrainedModel* m = model(req.target);
    if (!m) {
      return error(503, fmt::format("no {} model loaded", features::to_string(req.target)));
    }
    return {200, to_json(predictor_.predict(*m, req)).dump()};
  } catch (const BadRequest& e) {
    return error(400, e.what());
  } catch (const predict::UnknownPlayer& e) {
    return error(404, e.what());
  }
}

Response Service::evaluate_lineup(std::string_view body) const {
  try {
    const json j = parse_body(body);
    const json& players = require(j, "players");
    if (!players.is_array()) throw BadRequest("field 'players' must be an array");
    if (players.empty()) throw BadRequest("lineup is empty");
    if (players.size() > kMaxLineup) {
      throw BadRequest(fmt::format("lineup has {} players; at most {} may be selected",
                                   players.size(), kMaxLineup));
    }
    std::vector<std::string> ids;
    std::set<std::string> seen;
    for (const auto& p : players) {
      if (!p.is_string()) throw BadRequest("player ids must be strings");
      if (!seen.insert(p.get<std::string>()).second) {
        throw BadRequest(fmt::format("player '{}' selected twice", p.get<std::string>()));
      }
      ids.push_back(p.get<std::string>());
    }
    std::vector<features::Target> targets{features::Target::Runs, features::Target::Wickets};
    if (const auto it = j.find("targets"); it != j.end() && !it->is_null()) {
      if (!it->is_array() || it->empty()) throw BadRequest("field 'targets' must be a non-empty array");
      targets.clear();
      for (const auto& t : *it) targets.push_back(parse_target_field(t));
    }
    predict::MatchRequest shared;
    read_context(require(j, "context"), shared);
    for (const auto t : targets) {
      if (!model(t)) return error(503, fmt::format("no {} model loaded", features::to_string(t)));
    }

    json out = json::array();
    for (std::size_t i = 0; i < ids.size(); ++i) {
      json entry{{"player_id", ids[i]}, {"position", static_cast<int>(i) + 1}};
      for (const auto t : targets) {
        predict::MatchRequest req = shared;
        req.player_id = ids[i];
        req.target = t;
        req.position = static_cast<int>(i) + 1;
        entry[std::string(features::to_string(t))] = to_json(predictor_.predict(*model(t), req));
      }
      out.push_back(std::move(entry));
    }
    return {200, json{{"predictions", std::move(out)}}.dump()};
  } catch (const BadRequest& e) {
    return error(400, e.what());
  } catch (const predict::UnknownPlayer& e) {
    return error(404, e.what());
  }
}

struct HttpServer::Impl {
  httplib::Server server;
  int bound_port = -1;
};

HttpServer::HttpServer(const Service& service, std::string cors_origin)
    : impl_(std::make_unique<Impl>()) {
  auto& s = impl_->server;
  s.set_default_headers({{"Access-Control-Allow-Origin", cors_origin},
                         {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                         {"Access-Control-Allow-Headers", "Content-Type"}});
  auto reply = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  auto guarded = [reply](auto&& fn) {
    return [reply, fn](const httplib::Request& req, httplib::Response& res) {
      try {
        reply(res, fn(req));
      } catch (const std::exception& e) {
        reply(res, error(500, e.what()));
      }
    };
  };
  s.Get("/api/health", guarded([&service](const httplib::Request&) { return service.health(); }));
  s.Get("/api/teams", guarded([&service](const httplib::Request&) { return service.teams(); }));
  s.Get("/api/squad", guarded([&service](const httplib::Request& req) {
          return service.squad(req.get_param_value("team"));
        }));
  s.Post("/api/predict", guarded([&service](const httplib::Request& req) {
           return service.predict(req.body);
         }));
  s.Post("/api/lineup/evaluate", guarded([&service](const httplib::Request& req) {
           return service.evaluate_lineup(req.body);
         }));
  s.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
}

HttpServer::~HttpServer() = default;

bool HttpServer::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }

int HttpServer::bind_any_port(const std::string& host) {
  impl_->bound_port = impl_->server.bind_to_any_port(host);
  return impl_->bound_port;
}

bool HttpServer::serve() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace crickpred::serve
