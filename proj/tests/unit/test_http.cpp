#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include "dispute/gateway_http.hpp"

using namespace dispute;
using nlohmann::json;

namespace {

/// Local HTTP server on an ephemeral port, stopped on scope exit.
class LocalServer {
 public:
  LocalServer() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::jthread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LocalServer() { server_.stop(); }

  httplib::Server& server() { return server_; }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::jthread thread_;
};

RetryPolicy fast_retry(int n) { return RetryPolicy{n, std::chrono::milliseconds(1), std::chrono::milliseconds(2)}; }

CompletionRequest request() {
  return CompletionRequest{"You summarize.", "Complaint text", GenerationParams{}, "test-model", "overview:c1"};
}

EndpointConfig endpoint(const std::string& base, const std::string& path) {
  return EndpointConfig{base, path, "secret", "embed-model", std::chrono::seconds{2}, std::chrono::seconds{5}};
}

}  // namespace

TEST(HttpChat, SendsOpenAiShapeAndParsesReply) {
  LocalServer srv;
  json seen;
  std::string auth;
  srv.server().Post("/api/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    seen = json::parse(req.body);
    auth = req.get_header_value("Authorization");
    res.set_content(R"({"choices":[{"message":{"content":"Overview text"}}],"usage":{"prompt_tokens":12,"completion_tokens":3}})",
                    "application/json");
  });
  HttpChatProvider chat(endpoint(srv.url() + "/api/", "/v1/chat/completions"), fast_retry(0), nullptr);
  const auto result = chat.complete(request());
  EXPECT_EQ(result.text, "Overview text");
  ASSERT_TRUE(result.token_usage);
  EXPECT_EQ(result.token_usage->prompt_tokens, 12);
  EXPECT_EQ(auth, "Bearer secret");
  EXPECT_EQ(seen["model"], "test-model");
  EXPECT_EQ(seen["messages"].size(), 2u);
  EXPECT_EQ(seen["messages"][0]["role"], "system");
  EXPECT_EQ(seen["messages"][1]["content"], "Complaint text");
  EXPECT_EQ(seen["max_tokens"], 512);
  EXPECT_FALSE(seen.contains("tag"));
}

TEST(HttpChat, RetriesRateLimits) {
  LocalServer srv;
  std::atomic<int> hits{0};
  srv.server().Post("/v1/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
    if (++hits < 3) {
      res.status = 429;
      res.set_content("slow down", "text/plain");
      return;
    }
    res.set_content(R"({"choices":[{"message":{"content":"ok"}}]})", "application/json");
  });
  HttpChatProvider chat(endpoint(srv.url(), "/v1/chat/completions"), fast_retry(3), nullptr);
  EXPECT_EQ(chat.complete(request()).text, "ok");
  EXPECT_EQ(hits.load(), 3);
}

TEST(HttpChat, ClientErrorsAreNotRetried) {
  LocalServer srv;
  std::atomic<int> hits{0};
  srv.server().Post("/v1/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    res.status = 400;
    res.set_content(R"({"error":"bad"})", "application/json");
  });
  HttpChatProvider chat(endpoint(srv.url(), "/v1/chat/completions"), fast_retry(3), nullptr);
  try {
    chat.complete(request());
    FAIL();
  } catch (const ProviderStatusError& e) {
    EXPECT_EQ(e.status(), 400);
    EXPECT_EQ(e.code(), ErrorCode::ProviderError);
  }
  EXPECT_EQ(hits.load(), 1);
}

TEST(HttpChat, ServerErrorsExhaustRetries) {
  LocalServer srv;
  std::atomic<int> hits{0};
  srv.server().Post("/v1/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
    ++hits;
    res.status = 503;
  });
  HttpChatProvider chat(endpoint(srv.url(), "/v1/chat/completions"), fast_retry(2), nullptr);
  EXPECT_THROW(chat.complete(request()), ProviderStatusError);
  EXPECT_EQ(hits.load(), 3);
}

TEST(HttpChat, MalformedReply) {
  LocalServer srv;
  srv.server().Post("/v1/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"unexpected":true})", "application/json");
  });
  HttpChatProvider chat(endpoint(srv.url(), "/v1/chat/completions"), fast_retry(0), nullptr);
  EXPECT_THROW(chat.complete(request()), ProviderStatusError);
}

TEST(HttpChat, UnreachableHostIsTransportError) {
  // nothing listens on port 1 locally, so the connect is refused at once
  HttpChatProvider chat(endpoint("http://127.0.0.1:1", "/v1/chat/completions"),
                        fast_retry(1), nullptr);
  try {
    chat.complete(request());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(error_family(e.code()), ErrorFamily::Upstream);
    EXPECT_TRUE(e.code() == ErrorCode::TransportError || e.code() == ErrorCode::Timeout) << e.what();
  }
}

TEST(HttpChat, LimiterCapsConcurrency) {
  LocalServer srv;
  std::atomic<int> current{0};
  std::atomic<int> worst{0};
  srv.server().new_task_queue = [] { return new httplib::ThreadPool(8); };
  srv.server().Post("/v1/chat/completions", [&](const httplib::Request&, httplib::Response& res) {
    const int now = ++current;
    int seen = worst.load();
    while (now > seen && !worst.compare_exchange_weak(seen, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    --current;
    res.set_content(R"({"choices":[{"message":{"content":"ok"}}]})", "application/json");
  });
  auto limiter = std::make_shared<InFlightLimiter>(2);
  HttpChatProvider chat(endpoint(srv.url(), "/v1/chat/completions"), fast_retry(0), limiter);
  {
    std::vector<std::jthread> threads;
    for (int i = 0; i < 6; ++i) threads.emplace_back([&] { chat.complete(request()); });
  }
  EXPECT_LE(worst.load(), 2);
  EXPECT_LE(limiter->peak(), 2u);
}

TEST(HttpEmbedding, OrdersByIndexAndChecksDims) {
  LocalServer srv;
  std::atomic<int> mode{0};
  srv.server().Post("/v1/embeddings", [&](const httplib::Request& req, httplib::Response& res) {
    const auto body = json::parse(req.body);
    EXPECT_EQ(body["model"], "embed-model");
    json out{{"data", json::array()}};
    if (mode == 0) {
      out["data"].push_back({{"index", 1}, {"embedding", {0.0, 1.0}}});
      out["data"].push_back({{"index", 0}, {"embedding", {1.0, 0.0}}});
    } else if (mode == 1) {
      out["data"].push_back({{"index", 0}, {"embedding", {1.0, 0.0, 0.0}}});
      out["data"].push_back({{"index", 1}, {"embedding", {0.0, 1.0, 0.0}}});
    } else {
      out["data"].push_back({{"index", 0}, {"embedding", {1.0}}});
    }
    res.set_content(out.dump(), "application/json");
  });
  HttpEmbeddingProvider embedder(endpoint(srv.url(), "/v1/embeddings"), fast_retry(0), nullptr);
  const auto v = embedder.embed({"a", "b"});
  EXPECT_EQ(v[0].values, (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(v[1].values, (std::vector<double>{0.0, 1.0}));
  mode = 1;
  try {
    embedder.embed({"a", "b"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
  }
  mode = 2;
  EXPECT_THROW(embedder.embed({"a", "b"}), Error);
  EXPECT_THROW(embedder.embed({}), Error);
}

TEST(GatewayConfig, FromEnvironment) {
  std::map<std::string, std::string> env{{"LLM_BASE_URL", "http://llm:8000"},
                                         {"LLM_API_KEY", "k"},
                                         {"LLM_MODEL", "m"},
                                         {"EMBED_BASE_URL", "http://emb:8001"},
                                         {"EMBED_MODEL", "e"},
                                         {"MAX_IN_FLIGHT", "3"},
                                         {"RETRY_MAX", "0"}};
  auto lookup = [&](const char* name) -> std::optional<std::string> {
    const auto it = env.find(name);
    if (it == env.end()) return std::nullopt;
    return it->second;
  };
  const auto cfg = GatewayConfig::from_env(lookup);
  EXPECT_EQ(cfg.llm.base_url, "http://llm:8000");
  EXPECT_EQ(cfg.embed.api_key, "k");
  EXPECT_EQ(cfg.embed.model, "e");
  EXPECT_EQ(cfg.max_in_flight, 3u);
  EXPECT_EQ(cfg.retry.max_retries, 0);

  env["MAX_IN_FLIGHT"] = "0";
  EXPECT_THROW(GatewayConfig::from_env(lookup), Error);
  env["MAX_IN_FLIGHT"] = "two";
  try {
    GatewayConfig::from_env(lookup);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ConfigError);
  }
}

TEST(GatewayConfig, BadBaseUrl) {
  EXPECT_THROW(HttpChatProvider(endpoint("llm-host", "/x"), fast_retry(0), nullptr), Error);
  EXPECT_THROW(HttpChatProvider(endpoint("", "/x"), fast_retry(0), nullptr), Error);
}
