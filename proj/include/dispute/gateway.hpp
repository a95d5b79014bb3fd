#pragma once

#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "dispute/domain.hpp"
#include "dispute/error.hpp"
#include "dispute/text.hpp"

namespace dispute {

struct CompletionRequest {
  std::string system_prompt;
  std::string user_prompt;
  GenerationParams params;
  std::string model_name;
  /// Routing key for scripted providers, e.g. "sector:case-17". Never sent
  /// over the wire.
  std::string tag;
};

inline void validate(const CompletionRequest& r) {
  if (text::trim(r.system_prompt).empty() && text::trim(r.user_prompt).empty()) {
    throw Error(ErrorCode::InvalidArgument, "completion request has empty prompts");
  }
  if (text::trim(r.user_prompt).empty()) {
    throw Error(ErrorCode::InvalidArgument, "completion request has an empty user prompt");
  }
  if (r.model_name.empty()) throw Error(ErrorCode::InvalidArgument, "model_name is empty");
  validate(r.params);
}

struct TokenUsage {
  int prompt_tokens = 0;
  int completion_tokens = 0;
};

struct CompletionResult {
  std::string text;
  std::optional<TokenUsage> token_usage;
  std::int64_t latency_ms = 0;
};

struct EmbeddingVector {
  std::vector<double> values;

  std::size_t dim() const { return values.size(); }
  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;
};

class CompletionProvider {
 public:
  virtual ~CompletionProvider() = default;
  virtual CompletionResult complete(const CompletionRequest& request) = 0;
  virtual std::string id() const = 0;
};

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) = 0;
  /// Identifies provider and model; part of the embedding cache key.
  virtual std::string id() const = 0;
  virtual std::string model() const = 0;
};

inline void check_embed_input(const std::vector<std::string>& texts) {
  if (texts.empty()) throw Error(ErrorCode::InvalidArgument, "embed() needs at least one text");
  for (std::size_t i = 0; i < texts.size(); ++i) {
    if (text::trim(texts[i]).empty()) {
      throw Error(ErrorCode::InvalidArgument, "embed() input " + std::to_string(i) + " is empty");
    }
  }
}

inline void check_embed_output(const std::vector<EmbeddingVector>& vectors, std::size_t expected,
                               std::optional<std::size_t> known_dim) {
  if (vectors.size() != expected) {
    throw Error(ErrorCode::DimensionMismatch, "provider returned " +
                                                  std::to_string(vectors.size()) +
                                                  " vectors for " + std::to_string(expected) +
                                                  " inputs");
  }
  const std::size_t dim = known_dim.value_or(vectors.empty() ? 0 : vectors.front().dim());
  for (const auto& v : vectors) {
    if (v.dim() == 0 || v.dim() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "provider returned ragged embedding vectors");
    }
  }
}

/// Caps the number of outbound requests in flight across every provider that
/// shares the limiter.
class InFlightLimiter {
 public:
  explicit InFlightLimiter(std::size_t max_in_flight) : capacity_(max_in_flight) {
    if (capacity_ == 0) throw Error(ErrorCode::ConfigError, "MAX_IN_FLIGHT must be >= 1");
  }

  class Slot {
   public:
    explicit Slot(InFlightLimiter& owner) : owner_(&owner) { owner_->acquire(); }
    Slot(const Slot&) = delete;
    Slot& operator=(const Slot&) = delete;
    ~Slot() { owner_->release(); }

   private:
    InFlightLimiter* owner_;
  };

  std::size_t capacity() const { return capacity_; }
  std::size_t peak() const {
    std::lock_guard lock(mutex_);
    return peak_;
  }

 private:
  void acquire() {
    std::unique_lock lock(mutex_);
    cv_.wait(lock, [this] { return in_flight_ < capacity_; });
    ++in_flight_;
    peak_ = std::max(peak_, in_flight_);
  }
  void release() {
    {
      std::lock_guard lock(mutex_);
      --in_flight_;
    }
    cv_.notify_one();
  }

  std::size_t capacity_;
  std::size_t in_flight_ = 0;
  std::size_t peak_ = 0;
  mutable std::mutex mutex_;
  std::condition_variable cv_;
};

struct RetryPolicy {
  int max_retries = 3;
  std::chrono::milliseconds base_delay{250};
  std::chrono::milliseconds max_delay{8000};

  std::chrono::milliseconds delay_for(int attempt) const {
    const double scaled = static_cast<double>(base_delay.count()) * std::pow(2.0, attempt);
    return std::chrono::milliseconds(
        static_cast<std::int64_t>(std::min(scaled, static_cast<double>(max_delay.count()))));
  }
};

/// Transport failures, timeouts, 429 and 5xx are transient; other 4xx are
/// the caller's fault and are never retried.
inline bool is_transient(const Error& e) {
  if (e.code() == ErrorCode::TransportError || e.code() == ErrorCode::Timeout) return true;
  if (const auto* status = dynamic_cast<const ProviderStatusError*>(&e)) {
    return status->status() == 429 || status->status() >= 500;
  }
  return false;
}

/// Runs `call`, retrying transient errors with exponential backoff.
template <typename Fn>
auto with_retries(const RetryPolicy& policy, Fn&& call) -> decltype(call()) {
  for (int attempt = 0;; ++attempt) {
    try {
      return call();
    } catch (const Error& e) {
      if (!is_transient(e) || attempt >= policy.max_retries) throw;
      std::this_thread::sleep_for(policy.delay_for(attempt));
    }
  }
}

// ---------------------------------------------------------------------------
// Deterministic test doubles

/// Answers completions from a script keyed by request tag. A key's value is
/// a list of responses handed out in order, the last one repeating. Lookup
/// falls back from "a:b:c" to "a:b:*", "a:*" and finally "*".
class MockProvider : public CompletionProvider {
 public:
  using Script = std::map<std::string, std::vector<std::string>>;

  explicit MockProvider(Script script) : script_(std::move(script)) {}

  static std::shared_ptr<MockProvider> from_texts(const std::map<std::string, std::string>& texts) {
    Script script;
    for (const auto& [key, value] : texts) script[key] = {value};
    return std::make_shared<MockProvider>(std::move(script));
  }

  CompletionResult complete(const CompletionRequest& request) override {
    validate(request);
    std::lock_guard lock(mutex_);
    calls_.push_back(request);
    const auto key = resolve(request.tag);
    if (!key) {
      throw Error(ErrorCode::UnscriptedRequest, "no scripted response for '" + request.tag + "'");
    }
    const auto& responses = script_.at(*key);
    auto& served = served_[request.tag];
    const auto& text = responses[std::min(served, responses.size() - 1)];
    ++served;
    return CompletionResult{text, TokenUsage{0, 0}, 0};
  }

  std::string id() const override { return "mock"; }

  std::vector<CompletionRequest> calls() const {
    std::lock_guard lock(mutex_);
    return calls_;
  }

  std::size_t call_count() const {
    std::lock_guard lock(mutex_);
    return calls_.size();
  }

 private:
  std::optional<std::string> resolve(const std::string& tag) const {
    auto usable = [this](const std::string& k) {
      const auto it = script_.find(k);
      return it != script_.end() && !it->second.empty();
    };
    if (usable(tag)) return tag;
    auto pos = tag.rfind(':');
    while (pos != std::string::npos) {
      const auto wildcard = tag.substr(0, pos + 1) + "*";
      if (usable(wildcard)) return wildcard;
      if (pos == 0) break;
      pos = tag.rfind(':', pos - 1);
    }
    if (usable("*")) return std::string("*");
    return std::nullopt;
  }

  Script script_;
  std::map<std::string, std::size_t> served_;
  std::vector<CompletionRequest> calls_;
  mutable std::mutex mutex_;
};

inline std::shared_ptr<MockProvider> mock_provider(MockProvider::Script script) {
  return std::make_shared<MockProvider>(std::move(script));
}

/// Hashed bag-of-words embedder: each token adds 1 to bucket
/// fnv1a(token) % dim, then the vector is L2-normalized. Text without tokens
/// maps to the zero vector.
class HashingEmbedder : public EmbeddingProvider {
 public:
  explicit HashingEmbedder(std::size_t dim = 64) : dim_(dim) {
    if (dim_ == 0) throw Error(ErrorCode::ConfigError, "embedding dim must be > 0");
  }

  std::vector<EmbeddingVector> embed(const std::vector<std::string>& texts) override {
    check_embed_input(texts);
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (const auto& t : texts) out.push_back(embed_one(t));
    return out;
  }

  EmbeddingVector embed_one(std::string_view t) const {
    EmbeddingVector v{std::vector<double>(dim_, 0.0)};
    for (const auto& token : text::tokenize(t)) v.values[text::fnv1a64(token) % dim_] += 1.0;
    double norm = 0.0;
    for (double x : v.values) norm += x * x;
    if (norm > 0.0) {
      norm = std::sqrt(norm);
      for (double& x : v.values) x /= norm;
    }
    return v;
  }

  std::size_t dim() const { return dim_; }
  std::string id() const override { return "hash-bow"; }
  std::string model() const override { return "hash-bow-" + std::to_string(dim_); }

 private:
  std::size_t dim_;
};

}  // namespace dispute
