#pragma once

#include <filesystem>
#include <memory>

#include "prorac/reasoner.hpp"

namespace prorac {

enum class CacheMode { Record, Replay };

/// Content-addressed record/replay cache: one JSON file per cache key under
/// the cache directory. Record mode forwards to the inner reasoner and
/// persists (request, responses, latency) with an atomic write-rename.
/// Replay mode never touches the network; a missing key is a ReplayMiss.
class CacheReasoner : public Reasoner {
 public:
  CacheReasoner(std::filesystem::path dir, CacheMode mode,
                std::shared_ptr<Reasoner> inner = nullptr);

  std::vector<std::string> complete(const ReasonerRequest& req) override;

  /// Latency recorded for the last served request (0 for fresh cache hits in
  /// record mode, the stored value in replay mode).
  long last_latency_ms() const { return last_latency_ms_; }
  bool last_from_cache() const { return last_from_cache_; }

 private:
  std::filesystem::path dir_;
  CacheMode mode_;
  std::shared_ptr<Reasoner> inner_;
  long last_latency_ms_ = 0;
  bool last_from_cache_ = false;
};

}  // namespace prorac
