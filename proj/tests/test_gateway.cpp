#include <unistd.h>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "prorac/cache_reasoner.hpp"
#include "prorac/http_reasoner.hpp"
#include "prorac/mock_reasoner.hpp"

using namespace prorac;

namespace {

ReasonerRequest make_request(const std::string& text, int n = 1) {
  ReasonerRequest req;
  req.messages = {{"user", text}};
  req.model = "test-model";
  req.temperature = 0.0;
  req.max_tokens = 64;
  req.n = n;
  return req;
}

std::filesystem::path temp_dir(const std::string& tag) {
  auto p = std::filesystem::temp_directory_path() /
           ("prorac-test-" + tag + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  return p;
}

// test server speaking the chat-completions shape
struct StubServer {
  httplib::Server svr;
  int port = 0;
  std::thread thread;
  std::atomic<int> hits{0};
  int fail_first = 0;  // respond 500 to this many requests before succeeding

  StubServer() {
    svr.Post("/v1/chat/completions",
             [this](const httplib::Request& req, httplib::Response& res) {
               int hit = ++hits;
               if (hit <= fail_first) {
                 res.status = 500;
                 return;
               }
               if (req.get_header_value("Authorization") !=
                   "Bearer test-key") {
                 res.status = 401;
                 return;
               }
               auto body = nlohmann::json::parse(req.body);
               int n = body.value("n", 1);
               nlohmann::json out;
               out["choices"] = nlohmann::json::array();
               for (int i = 0; i < n; ++i) {
                 out["choices"].push_back(
                     {{"message",
                       {{"role", "assistant"},
                        {"content", "reply " + std::to_string(i) + " to: " +
                                        body["messages"][0]["content"]
                                            .get<std::string>()}}}});
               }
               res.set_content(out.dump(), "application/json");
             });
    port = svr.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    thread = std::thread([this] { svr.listen_after_bind(); });
    svr.wait_until_ready();
  }

  ~StubServer() {
    svr.stop();
    thread.join();
  }

  ReasonerConfig config() const {
    ReasonerConfig cfg;
    cfg.base_url = "http://127.0.0.1:" + std::to_string(port);
    cfg.model = "test-model";
    cfg.retry_max = 3;
    cfg.api_key_env = "PRORAC_TEST_KEY";
    return cfg;
  }
};

}  // namespace

TEST_CASE("canonical request json has a fixed field order") {
  ReasonerRequest req = make_request("hello");
  CHECK(canonical_request_json(req) ==
        R"({"model":"test-model","temperature":0.0,"max_tokens":64,"n":1,)"
        R"("messages":[{"role":"user","content":"hello"}]})");
}

TEST_CASE("cache keys ignore trailing whitespace but nothing else") {
  ReasonerRequest a = make_request("prompt text");
  ReasonerRequest b = make_request("prompt text   \n\t\n");
  ReasonerRequest c = make_request("prompt  text");
  std::string ka = cache_key(a);
  CHECK(ka.size() == 64);
  CHECK(ka.find_first_not_of("0123456789abcdef") == std::string::npos);
  CHECK(cache_key(b) == ka);
  CHECK(cache_key(c) != ka);

  ReasonerRequest d = a;
  d.n = 5;
  CHECK(cache_key(d) != ka);
  ReasonerRequest e = a;
  e.temperature = 0.7;
  CHECK(cache_key(e) != ka);
  ReasonerRequest f = a;
  f.model = "other";
  CHECK(cache_key(f) != ka);
}

TEST_CASE("record then replay round-trips without touching the inner reasoner") {
  auto dir = temp_dir("cache");
  ReasonerRequest req = make_request("what is the state");

  auto inner = std::make_shared<CountingReasoner>(
      std::make_shared<ScriptedReasoner>(
          std::vector<std::string>{"the state is fine"}));
  {
    CacheReasoner rec(dir, CacheMode::Record, inner);
    auto out = rec.complete(req);
    REQUIRE(out.size() == 1);
    CHECK(out[0] == "the state is fine");
    CHECK(inner->calls() == 1);
    CHECK_FALSE(rec.last_from_cache());

    // a second identical request is served from the cache
    auto again = rec.complete(req);
    CHECK(again == out);
    CHECK(inner->calls() == 1);
    CHECK(rec.last_from_cache());
  }

  CHECK(std::filesystem::exists(dir / (cache_key(req) + ".json")));

  {
    CacheReasoner rep(dir, CacheMode::Replay);
    auto out = rep.complete(req);
    REQUIRE(out.size() == 1);
    CHECK(out[0] == "the state is fine");
    CHECK(rep.last_from_cache());

    CHECK_THROWS_AS(rep.complete(make_request("different prompt")), ReplayMiss);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("a cache file whose stored request mismatches is a hard error") {
  auto dir = temp_dir("collision");
  std::filesystem::create_directories(dir);
  ReasonerRequest req = make_request("original");
  nlohmann::ordered_json j;
  j["request"] =
      nlohmann::json::parse(canonical_request_json(make_request("tampered")));
  j["responses"] = std::vector<std::string>{"bogus"};
  j["latency_ms"] = 3;
  std::ofstream(dir / (cache_key(req) + ".json")) << j.dump();

  CacheReasoner rep(dir, CacheMode::Replay);
  CHECK_THROWS_AS(rep.complete(req), ReasonerError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("record mode requires an inner reasoner") {
  CHECK_THROWS_AS(CacheReasoner(temp_dir("noinner"), CacheMode::Record),
                  ReasonerError);
}

TEST_CASE("replayed latency comes from the cache file") {
  auto dir = temp_dir("latency");
  std::filesystem::create_directories(dir);
  ReasonerRequest req = make_request("latency probe");
  nlohmann::ordered_json j;
  j["request"] = nlohmann::json::parse(canonical_request_json(req));
  j["responses"] = std::vector<std::string>{"ok"};
  j["latency_ms"] = 1234;
  std::ofstream(dir / (cache_key(req) + ".json")) << j.dump();

  CacheReasoner rep(dir, CacheMode::Replay);
  rep.complete(req);
  CHECK(rep.last_latency_ms() == 1234);
  std::filesystem::remove_all(dir);
}

TEST_CASE("backoff doubles from a 250ms base") {
  CHECK(HttpReasoner::backoff_ms(1) == 250);
  CHECK(HttpReasoner::backoff_ms(2) == 500);
  CHECK(HttpReasoner::backoff_ms(3) == 1000);
  CHECK(HttpReasoner::backoff_ms(4) == 2000);
  CHECK(HttpReasoner::backoff_ms(5) == 4000);
}

TEST_CASE("live mode requires the API key environment variable") {
  ::unsetenv("PRORAC_TEST_KEY");
  ReasonerConfig cfg;
  cfg.api_key_env = "PRORAC_TEST_KEY";
  CHECK_THROWS_AS(HttpReasoner{cfg}, ReasonerError);
}

TEST_CASE("live completions against a local server") {
  StubServer server;
  ::setenv("PRORAC_TEST_KEY", "test-key", 1);

  SUBCASE("single and multi-sample requests") {
    HttpReasoner r(server.config());
    auto one = r.complete(make_request("ping"));
    REQUIRE(one.size() == 1);
    CHECK(one[0] == "reply 0 to: ping");

    auto five = r.complete(make_request("vote", 5));
    REQUIRE(five.size() == 5);
    CHECK(five[4] == "reply 4 to: vote");
  }

  SUBCASE("transient 500s are retried") {
    server.fail_first = 2;
    HttpReasoner r(server.config());
    auto out = r.complete(make_request("retry me"));
    REQUIRE(out.size() == 1);
    CHECK(server.hits == 3);
  }

  SUBCASE("retries exhaust eventually") {
    server.fail_first = 1000;
    ReasonerConfig cfg = server.config();
    cfg.retry_max = 2;
    HttpReasoner r(cfg);
    CHECK_THROWS_AS(r.complete(make_request("always down")), ReasonerError);
    CHECK(server.hits == 2);
  }

  SUBCASE("auth failures do not retry") {
    ::setenv("PRORAC_TEST_KEY", "wrong-key", 1);
    HttpReasoner r(server.config());
    CHECK_THROWS_AS(r.complete(make_request("who am i")), ReasonerError);
    CHECK(server.hits == 1);
    ::setenv("PRORAC_TEST_KEY", "test-key", 1);
  }
}

TEST_CASE("reasoner config parses overrides and keeps defaults") {
  ReasonerConfig c = ReasonerConfig::from_json_text(
      R"({"base_url": "http://example.test", "model": "m1",
          "sc_temperature": 0.9, "retry_max": 2, "mode": "replay",
          "cache_dir": "/tmp/x"})");
  CHECK(c.base_url == "http://example.test");
  CHECK(c.model == "m1");
  CHECK(c.sc_temperature == doctest::Approx(0.9));
  CHECK(c.retry_max == 2);
  CHECK(c.mode == "replay");
  CHECK(c.cache_dir == "/tmp/x");
  CHECK(c.temperature == doctest::Approx(0.0));
  CHECK(c.max_tokens == 2048);
  CHECK(c.parallelism == 1);
  CHECK(c.api_key_env == "PRORAC_API_KEY");
}
