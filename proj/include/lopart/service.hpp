#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "lopart/labels.hpp"
#include "lopart/sequence.hpp"
#include "lopart/solver.hpp"

namespace httplib {
class Server;
}

namespace lopart::service {

class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Immutable view of a session at one version. Fits run on these so they
// never observe a half-applied label update.
struct SessionSnapshot {
  std::string id;
  std::shared_ptr<const DataSequence> sequence;
  LabelSet labels;
  std::uint64_t version = 0;
};

inline constexpr Position kDefaultMaxSize = 1'000'000;

// In-memory session table. All members are safe to call concurrently.
class SessionStore {
 public:
  explicit SessionStore(Position max_size = kDefaultMaxSize);

  // Throws InvalidInput on empty, non-finite or oversized input.
  std::string create(std::vector<double> values);
  // Same, under a caller-chosen id (replaces any existing session).
  void create_with_id(const std::string& id, std::vector<double> values);

  SessionSnapshot get(const std::string& id) const;

  // Validates, then swaps in the new labels and bumps the version. On
  // failure the session is untouched.
  std::uint64_t put_labels(const std::string& id, std::vector<Label> labels);

  std::vector<std::string> ids() const;

  // One JSON file per session: {id, values, labels, version}.
  void save(const std::filesystem::path& dir) const;
  void load(const std::filesystem::path& dir);

 private:
  void insert(SessionSnapshot snapshot);
  DataSequence checked_sequence(std::vector<double> values) const;

  Position max_size_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const SessionSnapshot>> sessions_;
  std::uint64_t next_id_ = 1;
};

// Fit response body: changepoints, segments, cost, loss, penalty,
// infinite_penalty, algorithm, label_outcomes, version.
nlohmann::json fit_json(const SessionSnapshot& snapshot, double penalty,
                        Algorithm algorithm);

nlohmann::json session_json(const SessionSnapshot& snapshot);

// Parses [{start, end, changes}, ...]; throws InvalidInput on bad shapes.
std::vector<Label> labels_from_json(const nlohmann::json& body);

struct ServerOptions {
  // Served at "/" when it holds an index.html; otherwise "/" answers with a
  // short page describing the API.
  std::filesystem::path static_dir;
};

// Binds the HTTP+JSON API to a SessionStore.
class Server {
 public:
  Server(SessionStore& store, ServerOptions options = {});
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Returns the bound port (a free one when port == 0), or -1 on failure.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  bool listen();
  void stop();
  void wait_until_ready() const;

 private:
  void install_routes();

  SessionStore& store_;
  ServerOptions options_;
  std::unique_ptr<httplib::Server> http_;
};

}  // namespace lopart::service
