#include "prorac/http_reasoner.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace prorac {

namespace {

// Split "http://host:8080" into (scheme://host:port, "") or return as-is;
// httplib::Client accepts the full origin.
std::string origin_of(const std::string& base_url) {
  // strip any path suffix after the authority
  auto scheme = base_url.find("://");
  if (scheme == std::string::npos) return base_url;
  auto path = base_url.find('/', scheme + 3);
  return path == std::string::npos ? base_url : base_url.substr(0, path);
}

std::string path_of(const std::string& base_url) {
  auto scheme = base_url.find("://");
  if (scheme == std::string::npos) return "";
  auto path = base_url.find('/', scheme + 3);
  return path == std::string::npos ? "" : base_url.substr(path);
}

}  // namespace

HttpReasoner::HttpReasoner(ReasonerConfig cfg) : cfg_(std::move(cfg)) {
  if (const char* key = std::getenv(cfg_.api_key_env.c_str())) api_key_ = key;
  if (api_key_.empty())
    throw ReasonerError("live mode requires the API key env var " +
                        cfg_.api_key_env + " to be set");
}

long HttpReasoner::backoff_ms(int attempt) {
  long base = 250;
  for (int i = 1; i < attempt; ++i) base *= 2;
  return base;
}

std::vector<std::string> HttpReasoner::complete(const ReasonerRequest& req) {
  nlohmann::json body;
  body["model"] = req.model.empty() ? cfg_.model : req.model;
  body["temperature"] = req.temperature;
  body["max_tokens"] = req.max_tokens;
  body["n"] = req.n;
  body["messages"] = nlohmann::json::array();
  for (const auto& m : req.messages)
    body["messages"].push_back({{"role", m.role}, {"content", m.text}});

  {
    std::unique_lock<std::mutex> lk(mu_);
    cv_.wait(lk, [&] { return in_flight_ < std::max(1, cfg_.parallelism); });
    ++in_flight_;
  }
  struct Release {
    HttpReasoner* self;
    ~Release() {
      std::lock_guard<std::mutex> lk(self->mu_);
      --self->in_flight_;
      self->cv_.notify_one();
    }
  } release{this};

  std::string last_error;
  for (int attempt = 1; attempt <= std::max(1, cfg_.retry_max); ++attempt) {
    if (attempt > 1)
      std::this_thread::sleep_for(
          std::chrono::milliseconds(backoff_ms(attempt)));

    httplib::Client client(origin_of(cfg_.base_url));
    client.set_read_timeout(120, 0);
    httplib::Headers headers = {
        {"Authorization", "Bearer " + api_key_},
    };
    auto res = client.Post(path_of(cfg_.base_url) + "/v1/chat/completions",
                           headers, body.dump(), "application/json");
    if (!res) {
      last_error = "connection failure";
      continue;
    }
    if (res->status == 401 || res->status == 403)
      throw ReasonerError("authentication failed (HTTP " +
                          std::to_string(res->status) + ")");
    if (res->status == 429 || res->status >= 500) {
      last_error = "HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200)
      throw ReasonerError("chat completion failed with HTTP " +
                          std::to_string(res->status) + ": " + res->body);

    nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
    if (j.is_discarded() || !j.contains("choices"))
      throw ReasonerError("malformed completion response: " + res->body);
    std::vector<std::string> texts;
    for (const auto& choice : j["choices"])
      texts.push_back(choice.at("message").at("content").get<std::string>());
    if (static_cast<int>(texts.size()) != req.n)
      throw ReasonerError("provider returned " + std::to_string(texts.size()) +
                          " choices, expected " + std::to_string(req.n));
    return texts;
  }
  throw ReasonerError("exhausted retries (" + std::to_string(cfg_.retry_max) +
                      " attempts): " + last_error);
}

}  // namespace prorac
