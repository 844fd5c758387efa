#include "lopart/service.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "httplib.h"
#include "lopart/errors.hpp"
#include "lopart/io.hpp"
#include "lopart/metrics.hpp"

namespace lopart::service {

using nlohmann::json;

namespace {

constexpr const char* kJson = "application/json";

constexpr const char* kIndexPage = R"(<!doctype html>
<html><head><meta charset="utf-8"><title>lopart</title></head>
<body>
<h1>lopart labeling service</h1>
<p>No UI assets were found. The JSON API is available:</p>
<ul>
<li>POST /api/sequences {"values": [...]}</li>
<li>GET /api/sequences/{id}</li>
<li>PUT /api/sequences/{id}/labels {"labels": [{"start", "end", "changes"}]}</li>
<li>GET /api/sequences/{id}/fit?penalty=P&amp;algorithm=lopart|opart</li>
<li>GET /api/health</li>
</ul>
</body></html>
)";

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void send_error(httplib::Response& res, int status, const std::string& error,
                const std::string& detail, const json& extra = json::object()) {
  json body = {{"error", error}, {"detail", detail}};
  body.update(extra);
  send_json(res, status, body);
}

// Runs a handler, mapping exceptions to the documented error bodies.
template <typename Handler>
void guarded(httplib::Response& res, Handler&& handler) {
  try {
    handler();
  } catch (const json::exception& e) {
    send_error(res, 400, "bad_request", e.what());
  } catch (const InvalidInput& e) {
    json extra = json::object();
    if (e.index()) extra["index"] = *e.index();
    send_error(res, 400, "validation", e.what(), extra);
  } catch (const NotFound& e) {
    send_error(res, 404, "not_found", e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, "internal", e.what());
  }
}

std::string random_token(std::uint64_t counter) {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  std::ostringstream out;
  out << "s" << counter << "-" << std::hex << (rng() & 0xffffffffffULL);
  return out.str();
}

json number_or_inf(double value) {
  if (std::isinf(value)) return "inf";
  return value;
}

}  // namespace

SessionStore::SessionStore(Position max_size) : max_size_(max_size) {}

DataSequence SessionStore::checked_sequence(std::vector<double> values) const {
  if (static_cast<Position>(values.size()) > max_size_) {
    throw InvalidInput("sequence has " + std::to_string(values.size()) +
                       " values, above the cap of " + std::to_string(max_size_));
  }
  return DataSequence(std::move(values));
}

void SessionStore::insert(SessionSnapshot snapshot) {
  const std::string id = snapshot.id;
  auto shared = std::make_shared<const SessionSnapshot>(std::move(snapshot));
  std::lock_guard lock(mutex_);
  sessions_[id] = std::move(shared);
}

std::string SessionStore::create(std::vector<double> values) {
  auto sequence = std::make_shared<const DataSequence>(
      checked_sequence(std::move(values)));
  std::uint64_t counter = 0;
  {
    std::lock_guard lock(mutex_);
    counter = next_id_++;
  }
  SessionSnapshot snapshot{random_token(counter), sequence,
                           validate_labels({}, sequence->size()), 0};
  const std::string id = snapshot.id;
  insert(std::move(snapshot));
  return id;
}

void SessionStore::create_with_id(const std::string& id,
                                  std::vector<double> values) {
  auto sequence = std::make_shared<const DataSequence>(
      checked_sequence(std::move(values)));
  insert({id, sequence, validate_labels({}, sequence->size()), 0});
}

SessionSnapshot SessionStore::get(const std::string& id) const {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFound("no session '" + id + "'");
  return *it->second;
}

std::uint64_t SessionStore::put_labels(const std::string& id,
                                       std::vector<Label> labels) {
  // The sequence length never changes, so validation can run unlocked.
  const SessionSnapshot current = get(id);
  LabelSet validated = validate_labels(std::move(labels), current.sequence->size());

  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFound("no session '" + id + "'");
  const std::uint64_t version = it->second->version + 1;
  it->second = std::make_shared<const SessionSnapshot>(
      SessionSnapshot{id, it->second->sequence, std::move(validated), version});
  return version;
}

std::vector<std::string> SessionStore::ids() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, session] : sessions_) out.push_back(id);
  return out;
}

void SessionStore::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  for (const std::string& id : ids()) {
    const SessionSnapshot snapshot = get(id);
    std::ofstream out(dir / (id + ".json"));
    out << session_json(snapshot).dump() << '\n';
  }
}

void SessionStore::load(const std::filesystem::path& dir) {
  for (const auto& file : std::filesystem::directory_iterator(dir)) {
    if (file.path().extension() != ".json") continue;
    std::ifstream in(file.path());
    const json body = json::parse(in);
    auto sequence = std::make_shared<const DataSequence>(
        checked_sequence(body.at("values").get<std::vector<double>>()));
    LabelSet labels = validate_labels(labels_from_json(body.at("labels")),
                                      sequence->size());
    insert({body.at("id").get<std::string>(), sequence, std::move(labels),
            body.at("version").get<std::uint64_t>()});
  }
}

std::vector<Label> labels_from_json(const json& body) {
  if (!body.is_array()) throw InvalidInput("labels must be an array");
  std::vector<Label> labels;
  for (std::size_t j = 0; j < body.size(); ++j) {
    const json& item = body[j];
    if (!item.is_object() || !item.contains("start") || !item.contains("end") ||
        !item.contains("changes") || !item["start"].is_number_integer() ||
        !item["end"].is_number_integer() || !item["changes"].is_number_integer()) {
      throw InvalidInput("label " + std::to_string(j) +
                             " needs integer start, end and changes",
                         j);
    }
    labels.push_back({item["start"].get<Position>(), item["end"].get<Position>(),
                      item["changes"].get<int>()});
  }
  return labels;
}

json session_json(const SessionSnapshot& snapshot) {
  json labels = json::array();
  for (const Label& label : snapshot.labels.labels()) {
    labels.push_back(
        {{"start", label.start}, {"end", label.end}, {"changes", label.changes}});
  }
  const auto values = snapshot.sequence->values();
  return {{"id", snapshot.id},
          {"values", std::vector<double>(values.begin(), values.end())},
          {"labels", labels},
          {"version", snapshot.version}};
}

json fit_json(const SessionSnapshot& snapshot, double penalty,
              Algorithm algorithm) {
  const Segmentation fit =
      solve(*snapshot.sequence, snapshot.labels, penalty, algorithm);
  json segments = json::array();
  for (const Segment& segment : fit.segments()) {
    segments.push_back(
        {{"start", segment.start}, {"end", segment.end}, {"mean", segment.mean}});
  }
  json outcomes = json::array();
  for (const LabelOutcome& outcome :
       classify_labels(snapshot.labels, fit.changepoints)) {
    const Label& label = snapshot.labels[outcome.label_index];
    outcomes.push_back({{"label_index", outcome.label_index + 1},
                        {"start", label.start},
                        {"end", label.end},
                        {"changes", label.changes},
                        {"predicted_changes", outcome.predicted_changes},
                        {"status", to_string(outcome.status)},
                        {"true_positive", outcome.true_positive}});
  }
  return {{"algorithm", to_string(algorithm)},
          {"penalty", number_or_inf(penalty)},
          {"infinite_penalty", fit.infinite_penalty()},
          {"changepoints", fit.changepoints},
          {"segments", segments},
          {"cost", fit.cost},
          {"loss", fit.loss},
          {"label_outcomes", outcomes},
          {"version", snapshot.version}};
}

Server::Server(SessionStore& store, ServerOptions options)
    : store_(store),
      options_(std::move(options)),
      http_(std::make_unique<httplib::Server>()) {
  install_routes();
}

Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  if (port == 0) return http_->bind_to_any_port(host);
  return http_->bind_to_port(host, port) ? port : -1;
}

bool Server::listen() { return http_->listen_after_bind(); }

void Server::stop() {
  if (http_) http_->stop();
}

void Server::wait_until_ready() const { http_->wait_until_ready(); }

void Server::install_routes() {
  httplib::Server& http = *http_;

  http.Get("/api/health", [](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, {{"status", "ok"}});
  });

  http.Post("/api/sequences",
            [this](const httplib::Request& req, httplib::Response& res) {
              guarded(res, [&] {
                const json body = json::parse(req.body);
                if (!body.is_object() || !body.contains("values") ||
                    !body["values"].is_array()) {
                  throw InvalidInput("body must be {\"values\": [numbers]}");
                }
                std::vector<double> values;
                for (std::size_t i = 0; i < body["values"].size(); ++i) {
                  const json& v = body["values"][i];
                  if (!v.is_number()) {
                    throw InvalidInput(
                        "value " + std::to_string(i) + " is not a finite number", i);
                  }
                  values.push_back(v.get<double>());
                }
                send_json(res, 201, {{"id", store_.create(std::move(values))}});
              });
            });

  http.Get("/api/sequences/:id",
           [this](const httplib::Request& req, httplib::Response& res) {
             guarded(res, [&] {
               send_json(res, 200, session_json(store_.get(req.path_params.at("id"))));
             });
           });

  http.Put("/api/sequences/:id/labels",
           [this](const httplib::Request& req, httplib::Response& res) {
             guarded(res, [&] {
               const json body = json::parse(req.body);
               if (!body.is_object() || !body.contains("labels")) {
                 throw InvalidInput("body must be {\"labels\": [...]}");
               }
               const std::uint64_t version = store_.put_labels(
                   req.path_params.at("id"), labels_from_json(body["labels"]));
               send_json(res, 200, {{"version", version}});
             });
           });

  http.Get("/api/sequences/:id/fit",
           [this](const httplib::Request& req, httplib::Response& res) {
             guarded(res, [&] {
               const SessionSnapshot snapshot = store_.get(req.path_params.at("id"));
               if (!req.has_param("penalty")) {
                 throw InvalidInput("query parameter 'penalty' is required");
               }
               const double penalty = io::parse_penalty(req.get_param_value("penalty"));
               const Algorithm algorithm =
                   req.has_param("algorithm")
                       ? parse_algorithm(req.get_param_value("algorithm"))
                       : Algorithm::lopart;
               if (algorithm == Algorithm::segannot) {
                 throw InvalidInput("algorithm must be opart or lopart");
               }
               send_json(res, 200, fit_json(snapshot, penalty, algorithm));
             });
           });

  const bool has_assets =
      !options_.static_dir.empty() &&
      std::filesystem::exists(options_.static_dir / "index.html");
  if (has_assets) {
    http.set_mount_point("/", options_.static_dir.string());
  } else {
    http.Get("/", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(kIndexPage, "text/html");
    });
  }
}

}  // namespace lopart::service
