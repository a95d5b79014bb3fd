#pragma once

// JSON-over-HTTP providers for chat-completion and embedding endpoints.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>
#include <json.hpp>

#include "dispute/gateway.hpp"

namespace dispute {

struct EndpointConfig {
  std::string base_url;  // scheme://host[:port][/prefix]
  std::string path;
  std::string api_key;
  std::string model;
  std::chrono::seconds connect_timeout{10};
  std::chrono::seconds read_timeout{120};
};

struct GatewayConfig {
  EndpointConfig llm{"", "/v1/chat/completions", "", "", std::chrono::seconds{10},
                     std::chrono::seconds{120}};
  EndpointConfig embed{"", "/v1/embeddings", "", "", std::chrono::seconds{10},
                       std::chrono::seconds{120}};
  std::size_t max_in_flight = 4;
  RetryPolicy retry;
  bool verbose = false;

  /// Reads LLM_BASE_URL, LLM_API_KEY, LLM_MODEL, EMBED_BASE_URL, EMBED_MODEL,
  /// MAX_IN_FLIGHT and RETRY_MAX. `lookup` defaults to std::getenv.
  static GatewayConfig from_env(
      const std::function<std::optional<std::string>(const char*)>& lookup = {}) {
    auto get = [&](const char* name) -> std::optional<std::string> {
      if (lookup) return lookup(name);
      if (const char* v = std::getenv(name)) return std::string(v);
      return std::nullopt;
    };
    auto to_int = [](const std::string& value, const char* name) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
      } catch (const std::exception&) {
        throw Error(ErrorCode::ConfigError, std::string(name) + " is not an integer: " + value);
      }
    };
    GatewayConfig cfg;
    if (auto v = get("LLM_BASE_URL")) cfg.llm.base_url = *v;
    if (auto v = get("LLM_API_KEY")) cfg.llm.api_key = *v;
    if (auto v = get("LLM_MODEL")) cfg.llm.model = *v;
    if (auto v = get("EMBED_BASE_URL")) cfg.embed.base_url = *v;
    if (auto v = get("EMBED_MODEL")) cfg.embed.model = *v;
    cfg.embed.api_key = cfg.llm.api_key;
    if (auto v = get("EMBED_API_KEY")) cfg.embed.api_key = *v;
    if (auto v = get("MAX_IN_FLIGHT")) {
      const int n = to_int(*v, "MAX_IN_FLIGHT");
      if (n < 1) throw Error(ErrorCode::ConfigError, "MAX_IN_FLIGHT must be >= 1");
      cfg.max_in_flight = static_cast<std::size_t>(n);
    }
    if (auto v = get("RETRY_MAX")) {
      const int n = to_int(*v, "RETRY_MAX");
      if (n < 0) throw Error(ErrorCode::ConfigError, "RETRY_MAX must be >= 0");
      cfg.retry.max_retries = n;
    }
    return cfg;
  }
};

namespace detail {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string prefix;  // path prefix without trailing '/'
};

inline SplitUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (url.empty() || scheme_end == std::string::npos) {
    throw Error(ErrorCode::ConfigError, "base URL must look like http(s)://host[:port]: '" +
                                            url + "'");
  }
  const auto path_start = url.find('/', scheme_end + 3);
  SplitUrl out;
  out.origin = url.substr(0, path_start);
  if (path_start != std::string::npos) out.prefix = url.substr(path_start);
  while (!out.prefix.empty() && out.prefix.back() == '/') out.prefix.pop_back();
  return out;
}

class JsonPoster {
 public:
  JsonPoster(EndpointConfig endpoint, bool verbose)
      : endpoint_(std::move(endpoint)), url_(split_url(endpoint_.base_url)), verbose_(verbose) {}

  /// One POST; throws TransportError/Timeout/ProviderStatusError.
  nlohmann::json post(const nlohmann::json& body) const {
    httplib::Client client(url_.origin);
    client.set_connection_timeout(endpoint_.connect_timeout);
    client.set_read_timeout(endpoint_.read_timeout);
    client.set_write_timeout(endpoint_.read_timeout);
    httplib::Headers headers;
    if (!endpoint_.api_key.empty()) {
      headers.emplace("Authorization", "Bearer " + endpoint_.api_key);
    }
    const std::string path = url_.prefix + endpoint_.path;
    const std::string payload = body.dump();
    if (verbose_) {
      std::lock_guard lock(log_mutex());
      std::clog << "[gateway] POST " << url_.origin << path
                << (endpoint_.api_key.empty() ? "" : " (Authorization: Bearer ***)") << "\n"
                << "[gateway] request " << payload << "\n";
    }
    auto res = client.Post(path, headers, payload, "application/json");
    if (!res) {
      const auto err = res.error();
      const auto message = httplib::to_string(err) + " (" + url_.origin + path + ")";
      if (err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read) {
        throw Error(ErrorCode::Timeout, message);
      }
      throw Error(ErrorCode::TransportError, message);
    }
    if (verbose_) {
      std::lock_guard lock(log_mutex());
      std::clog << "[gateway] response " << res->status << " " << res->body << "\n";
    }
    if (res->status < 200 || res->status >= 300) {
      throw ProviderStatusError(res->status, res->body);
    }
    try {
      return nlohmann::json::parse(res->body);
    } catch (const nlohmann::json::exception&) {
      throw ProviderStatusError(res->status, "response is not JSON: " + res->body.substr(0, 200));
    }
  }

  const EndpointConfig& endpoint() const { return endpoint_; }

 private:
  static std::mutex& log_mutex() {
    static std::mutex m;
    return m;
  }

  EndpointConfig endpoint_;
  SplitUrl url_;
  bool verbose_;
};

}  // namespace detail

/// Chat-completion endpoint (OpenAI-compatible request/response shape).
class HttpChatProvider : public CompletionProvider {
 public:
  HttpChatProvider(EndpointConfig endpoint, RetryPolicy retry,
                   std::shared_ptr<InFlightLimiter> limiter, bool verbose = false)
      : poster_(std::move(endpoint), verbose), retry_(retry), limiter_(std::move(limiter)) {
    if (!limiter_) limiter_ = std::make_shared<InFlightLimiter>(4);
  }

  CompletionResult complete(const CompletionRequest& request) override {
    validate(request);
    nlohmann::json body = {
        {"model", request.model_name},
        {"messages", nlohmann::json::array()},
        {"temperature", request.params.temperature},
        {"top_p", request.params.top_p},
        {"top_k", request.params.top_k},
        {"max_tokens", request.params.max_new_tokens},
    };
    if (!request.system_prompt.empty()) {
      body["messages"].push_back({{"role", "system"}, {"content", request.system_prompt}});
    }
    body["messages"].push_back({{"role", "user"}, {"content", request.user_prompt}});

    const auto start = std::chrono::steady_clock::now();
    const auto response = with_retries(retry_, [&] {
      InFlightLimiter::Slot slot(*limiter_);
      return poster_.post(body);
    });
    CompletionResult result;
    try {
      result.text = response.at("choices").at(0).at("message").at("content").get<std::string>();
      if (response.contains("usage") && response["usage"].is_object()) {
        const auto& usage = response["usage"];
        result.token_usage = TokenUsage{usage.value("prompt_tokens", 0),
                                        usage.value("completion_tokens", 0)};
      }
    } catch (const nlohmann::json::exception& e) {
      throw ProviderStatusError(200, std::string("unexpected completion shape: ") + e.what());
    }
    result.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    return result;
  }

  std::string id() const override { return "http:" + poster_.endpoint().base_url; }

 private:
  detail::JsonPoster poster_;
  RetryPolicy retry_;
  std::shared_ptr<InFlightLimiter> limiter_;
};

/// Embedding endpoint: POST {model, input:[...]} -> {data:[{index, embedding}]}.
class HttpEmbeddingProvider : public EmbeddingProvider {
 public:
  HttpEmbeddingProvider(EndpointConfig endpoint, RetryPolicy retry,
                        std::shared_ptr<InFlightLimiter> limiter, bool verbose = false)
      : poster_(std::move(endpoint), verbose), retry_(retry), limiter_(std::move(limiter)) {
    if (!limiter_) limiter_ = std::make_shared<InFlightLimiter>(4);
  }

  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override {
    check_embed_input(texts);
    const nlohmann::json body = {{"model", poster_.endpoint().model}, {"input", texts}};
    const auto response = with_retries(retry_, [&] {
      InFlightLimiter::Slot slot(*limiter_);
      return poster_.post(body);
    });
    std::vector<EmbeddingVector> out(texts.size());
    try {
      const auto& data = response.at("data");
      if (data.size() != texts.size()) {
        throw Error(ErrorCode::DimensionMismatch, "provider returned " +
                                                      std::to_string(data.size()) +
                                                      " embeddings for " +
                                                      std::to_string(texts.size()) + " inputs");
      }
      for (std::size_t i = 0; i < data.size(); ++i) {
        const auto index = data[i].value("index", i);
        if (index >= out.size()) throw Error(ErrorCode::DimensionMismatch, "bad embedding index");
        out[index].values = data[i].at("embedding").get<std::vector<double>>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw ProviderStatusError(200, std::string("unexpected embedding shape: ") + e.what());
    }
    std::lock_guard lock(dim_mutex_);
    check_embed_output(out, texts.size(), dim_);
    dim_ = out.front().dim();
    return out;
  }

  std::string id() const override { return "http:" + poster_.endpoint().base_url; }
  std::string model() const override { return poster_.endpoint().model; }

 private:
  detail::JsonPoster poster_;
  RetryPolicy retry_;
  std::shared_ptr<InFlightLimiter> limiter_;
  std::optional<std::size_t> dim_;
  std::mutex dim_mutex_;
};

}  // namespace dispute
