#pragma once

#include <memory>
#include <string>
#include <vector>

#include "prorac/errors.hpp"

namespace prorac {

struct Message {
  std::string role;  // "system" | "user" | "assistant"
  std::string text;
};

struct ReasonerRequest {
  std::vector<Message> messages;
  std::string model;
  double temperature = 0.0;
  int max_tokens = 2048;
  int n = 1;
};

/// Fixed-field-order, whitespace-normalized serialization used for cache
/// keying. Trailing whitespace in message texts does not affect the result.
std::string canonical_request_json(const ReasonerRequest& req);

/// 64-hex-digit SHA-256 of canonical_request_json.
std::string cache_key(const ReasonerRequest& req);

struct TranscriptEntry {
  ReasonerRequest request;
  std::vector<std::string> responses;
  long latency_ms = 0;
  bool from_cache = false;
};

struct Transcript {
  std::vector<TranscriptEntry> entries;

  void append(TranscriptEntry e) { entries.push_back(std::move(e)); }
  std::size_t call_count() const { return entries.size(); }
};

class Reasoner {
 public:
  virtual ~Reasoner() = default;
  /// Returns exactly req.n texts.
  virtual std::vector<std::string> complete(const ReasonerRequest& req) = 0;
};

struct ReasonerConfig {
  std::string base_url = "http://localhost:8080";
  std::string model = "gpt-4o";
  double temperature = 0.0;
  double sc_temperature = 0.7;  // self-consistency sampling temperature
  int max_tokens = 2048;
  int parallelism = 1;
  int retry_max = 5;
  std::string mode = "mock";  // live | record | replay | mock
  std::string api_key_env = "PRORAC_API_KEY";
  std::string cache_dir;

  static ReasonerConfig from_json_text(const std::string& text);
};

}  // namespace prorac
