#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pcm/analysis.hpp"
#include "pcm/core.hpp"
#include "pcm/report.hpp"

namespace pcm {

inline constexpr std::size_t kMaxSessionElements = 50;

enum class ResultsMethod { GMM, EM, BOTH };

inline ResultsMethod results_method_from_string(const std::string& s) {
  if (s == "gmm") return ResultsMethod::GMM;
  if (s == "em") return ResultsMethod::EM;
  if (s == "both" || s.empty()) return ResultsMethod::BOTH;
  throw Error(ErrorCode::ParseError, "method must be gmm, em or both");
}

struct Override {
  std::size_t i = 0;
  std::size_t k = 0;
  double value = 1.0;
};

/// Read-only view of one session at a single revision.
struct SessionState {
  std::string id;
  ElementLabels labels;
  Grid matrix;
  std::uint64_t revision = 0;
};

/// Both estimates, both rankings and the method comparison for one matrix,
/// as a JSON payload. `method` selects which parts are included.
inline json results_payload(const SessionState& s, const MethodComparison& mc, ResultsMethod method) {
  json out = {{"schema_version", kSchemaVersion},
              {"kind", "results"},
              {"id", s.id},
              {"revision", s.revision},
              {"labels", s.labels.names()},
              {"matrix", s.matrix}};
  if (method != ResultsMethod::EM) {
    out["gmm"] = to_json(mc.gmm, s.labels);
    out["gmm_ranking"] = to_json(mc.gmm_report);
  }
  if (method != ResultsMethod::GMM) {
    out["em"] = to_json(mc.em, s.labels);
    out["em_ranking"] = to_json(mc.em_report);
  }
  if (method == ResultsMethod::BOTH) out["comparison"] = to_json(mc, s.labels);
  return out;
}

/// In-memory sessions, each holding a reciprocal matrix edited one judgment
/// at a time.
///
/// Thread safety: the session map is guarded by a shared mutex; each session
/// has its own mutex, so mutations of one session are serialized while
/// different sessions proceed independently. Results are cached per revision.
class SessionStore {
 public:
  SessionStore() : rng_(std::random_device{}()) {}

  std::string create(std::vector<std::string> names) {
    if (names.size() < 2 || names.size() > kMaxSessionElements)
      throw Error(ErrorCode::BadLabels, "sessions need between 2 and " + std::to_string(kMaxSessionElements) +
                                            " elements");
    ElementLabels labels(std::move(names));
    auto entry = std::make_shared<Entry>();
    entry->matrix.assign(labels.size(), std::vector<double>(labels.size(), 1.0));
    entry->labels = std::move(labels);

    std::unique_lock lock(map_mutex_);
    std::string id;
    do id = new_id();
    while (sessions_.count(id));
    entry->id = id;
    sessions_.emplace(id, std::move(entry));
    return id;
  }

  SessionState get(const std::string& id) const {
    auto e = find(id);
    std::lock_guard lock(e->mutex);
    return e->state();
  }

  bool remove(const std::string& id) {
    std::unique_lock lock(map_mutex_);
    return sessions_.erase(id) > 0;
  }

  std::size_t size() const {
    std::shared_lock lock(map_mutex_);
    return sessions_.size();
  }

  /// Writes a_ik = value and a_ki = 1/value, bumps the revision, and
  /// returns the recomputed results. Nothing is committed if the
  /// recomputation fails.
  json set_comparison(const std::string& id, std::size_t i, std::size_t k, double value) {
    auto e = find(id);
    std::lock_guard lock(e->mutex);
    check_override(e->matrix.size(), {i, k, value});
    SessionState next = e->state();
    apply(next.matrix, {i, k, value});
    next.revision += 1;
    auto mc = compute(next.matrix);
    e->matrix = next.matrix;
    e->revision = next.revision;
    e->cache = Cache{next.revision, mc};
    return results_payload(next, mc, ResultsMethod::BOTH);
  }

  /// Results for a copy of the session with overrides applied. The session
  /// itself is left untouched; the payload carries the current revision.
  json what_if(const std::string& id, const std::vector<Override>& overrides) const {
    SessionState s = get(id);
    for (const auto& o : overrides) check_override(s.matrix.size(), o);
    for (const auto& o : overrides) apply(s.matrix, o);
    return results_payload(s, compute(s.matrix), ResultsMethod::BOTH);
  }

  json results(const std::string& id, ResultsMethod method = ResultsMethod::BOTH) {
    auto e = find(id);
    SessionState s;
    {
      std::lock_guard lock(e->mutex);
      s = e->state();
      if (e->cache && e->cache->revision == s.revision) return results_payload(s, e->cache->comparison, method);
    }
    auto mc = compute(s.matrix);
    {
      std::lock_guard lock(e->mutex);
      if (e->revision == s.revision) e->cache = Cache{s.revision, mc};
    }
    return results_payload(s, mc, method);
  }

  json to_snapshot() const {
    json sessions = json::array();
    std::shared_lock lock(map_mutex_);
    for (const auto& [id, e] : sessions_) {
      std::lock_guard elock(e->mutex);
      sessions.push_back({{"id", id}, {"labels", e->labels.names()}, {"matrix", e->matrix}, {"revision", e->revision}});
    }
    return {{"schema_version", kSchemaVersion}, {"sessions", std::move(sessions)}};
  }

  void restore(const json& snapshot) {
    std::map<std::string, std::shared_ptr<Entry>> loaded;
    for (const auto& s : snapshot.at("sessions")) {
      auto e = std::make_shared<Entry>();
      e->id = s.at("id").get<std::string>();
      e->labels = ElementLabels(s.at("labels").get<std::vector<std::string>>());
      e->matrix = s.at("matrix").get<Grid>();
      e->revision = s.at("revision").get<std::uint64_t>();
      const auto m = validate_matrix(e->matrix);
      if (m.size() != e->labels.size() || !m.reciprocal())
        throw Error(ErrorCode::ParseError, "snapshot session " + e->id + " is malformed");
      loaded.emplace(e->id, std::move(e));
    }
    std::unique_lock lock(map_mutex_);
    sessions_ = std::move(loaded);
  }

  void save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write snapshot " + path);
    out << to_snapshot().dump() << "\n";
  }

  /// Returns false when the file does not exist.
  bool load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      restore(json::parse(buf.str()));
    } catch (const json::exception& ex) {
      throw Error(ErrorCode::ParseError, std::string("bad snapshot: ") + ex.what());
    }
    return true;
  }

 private:
  struct Cache {
    std::uint64_t revision;
    MethodComparison comparison;
  };

  struct Entry {
    mutable std::mutex mutex;
    std::string id;
    ElementLabels labels;
    Grid matrix;
    std::uint64_t revision = 0;
    std::optional<Cache> cache;

    SessionState state() const { return {id, labels, matrix, revision}; }
  };

  static void check_override(std::size_t n, const Override& o) {
    if (o.i >= n || o.k >= n) throw Error(ErrorCode::BadIndex, "element index out of range");
    if (o.i == o.k) throw Error(ErrorCode::BadIndex, "diagonal entries are fixed at 1");
    if (!std::isfinite(o.value) || o.value <= 0.0) throw NonPositiveEntry(o.i, o.k);
  }

  static void apply(Grid& m, const Override& o) {
    m[o.i][o.k] = o.value;
    m[o.k][o.i] = 1.0 / o.value;
  }

  static MethodComparison compute(const Grid& grid) { return compare_methods(validate_matrix(grid)); }

  std::shared_ptr<Entry> find(const std::string& id) const {
    std::shared_lock lock(map_mutex_);
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) throw Error(ErrorCode::NotFound, "no session " + id);
    return it->second;
  }

  std::string new_id() {
    static constexpr char hex[] = "0123456789abcdef";
    std::string id;
    for (int word = 0; word < 2; ++word) {
      auto bits = rng_();
      for (int j = 0; j < 16; ++j, bits >>= 4) id.push_back(hex[bits & 0xF]);
    }
    return id;
  }

  mutable std::shared_mutex map_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::mt19937_64 rng_;  // guarded by map_mutex_ (exclusive)
};

}  // namespace pcm
