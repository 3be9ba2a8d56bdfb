#include "prorac/cache_reasoner.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace prorac {

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

CacheReasoner::CacheReasoner(std::filesystem::path dir, CacheMode mode,
                             std::shared_ptr<Reasoner> inner)
    : dir_(std::move(dir)), mode_(mode), inner_(std::move(inner)) {
  if (mode_ == CacheMode::Record && !inner_)
    throw ReasonerError("record mode needs an inner reasoner");
  std::filesystem::create_directories(dir_);
}

std::vector<std::string> CacheReasoner::complete(const ReasonerRequest& req) {
  std::string key = cache_key(req);
  std::filesystem::path file = dir_ / (key + ".json");
  std::string canonical = canonical_request_json(req);

  if (std::filesystem::exists(file)) {
    nlohmann::json j = nlohmann::json::parse(read_file(file));
    if (j.at("request").dump() != nlohmann::json::parse(canonical).dump())
      throw ReasonerError("cache key collision on " + key);
    last_from_cache_ = true;
    last_latency_ms_ = j.value("latency_ms", 0L);
    return j.at("responses").get<std::vector<std::string>>();
  }

  if (mode_ == CacheMode::Replay)
    throw ReplayMiss("no cached responses for key " + key);

  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> responses = inner_->complete(req);
  long latency = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - t0)
                     .count();

  nlohmann::ordered_json j;
  j["request"] = nlohmann::json::parse(canonical);
  j["responses"] = responses;
  j["latency_ms"] = latency;

  std::filesystem::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, file);

  last_from_cache_ = false;
  last_latency_ms_ = latency;
  return responses;
}

}  // namespace prorac
