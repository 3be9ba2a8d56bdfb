#pragma once

#include <condition_variable>
#include <mutex>

#include "prorac/reasoner.hpp"

namespace prorac {

/// Live chat-completion client: provider-agnostic role/content JSON posted
/// to {base_url}/v1/chat/completions. Transient failures (connection errors,
/// 429, 5xx) retry with exponential backoff up to retry_max attempts. A
/// counting semaphore caps concurrent in-flight requests.
class HttpReasoner : public Reasoner {
 public:
  explicit HttpReasoner(ReasonerConfig cfg);

  std::vector<std::string> complete(const ReasonerRequest& req) override;

  /// Backoff delay before attempt `attempt` (1-based), in milliseconds.
  static long backoff_ms(int attempt);

 private:
  ReasonerConfig cfg_;
  std::string api_key_;
  std::mutex mu_;
  std::condition_variable cv_;
  int in_flight_ = 0;
};

}  // namespace prorac
