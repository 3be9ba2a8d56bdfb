#include "prorac/reasoner.hpp"

#include <openssl/evp.h>

#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace prorac {

namespace {

std::string strip_trailing_ws(const std::string& s) {
  auto end = s.find_last_not_of(" \t\r\n");
  if (end == std::string::npos) return "";
  return s.substr(0, end + 1);
}

}  // namespace

std::string canonical_request_json(const ReasonerRequest& req) {
  nlohmann::ordered_json j;
  j["model"] = req.model;
  j["temperature"] = req.temperature;
  j["max_tokens"] = req.max_tokens;
  j["n"] = req.n;
  j["messages"] = nlohmann::ordered_json::array();
  for (const auto& m : req.messages) {
    nlohmann::ordered_json jm;
    jm["role"] = m.role;
    jm["content"] = strip_trailing_ws(m.text);
    j["messages"].push_back(std::move(jm));
  }
  return j.dump();
}

std::string cache_key(const ReasonerRequest& req) {
  std::string payload = canonical_request_json(req);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(payload.data(), payload.size(), digest, &len, EVP_sha256(),
             nullptr);
  std::ostringstream os;
  os << std::hex << std::setfill('0');
  for (unsigned int i = 0; i < len; ++i)
    os << std::setw(2) << static_cast<int>(digest[i]);
  return os.str();
}

ReasonerConfig ReasonerConfig::from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ReasonerConfig c;
  if (j.contains("base_url")) c.base_url = j["base_url"].get<std::string>();
  if (j.contains("model")) c.model = j["model"].get<std::string>();
  if (j.contains("temperature")) c.temperature = j["temperature"].get<double>();
  if (j.contains("sc_temperature"))
    c.sc_temperature = j["sc_temperature"].get<double>();
  if (j.contains("max_tokens")) c.max_tokens = j["max_tokens"].get<int>();
  if (j.contains("parallelism")) c.parallelism = j["parallelism"].get<int>();
  if (j.contains("retry_max")) c.retry_max = j["retry_max"].get<int>();
  if (j.contains("mode")) c.mode = j["mode"].get<std::string>();
  if (j.contains("api_key_env")) c.api_key_env = j["api_key_env"].get<std::string>();
  if (j.contains("cache_dir")) c.cache_dir = j["cache_dir"].get<std::string>();
  return c;
}

}  // namespace prorac
