#pragma once

// Runtime configuration and the wiring shared by the CLI and the HTTP
// service: providers, the summarizer and the precedent retriever.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dispute/corpus.hpp"
#include "dispute/gateway_http.hpp"
#include "dispute/pipeline.hpp"
#include "dispute/retrieval.hpp"

namespace dispute {

using EnvLookup = std::function<std::optional<std::string>(const char*)>;

struct AppConfig {
  fs::path root = ".";
  std::string provider = "mock";  // mock | http
  fs::path mock_script;
  std::string embedder = "hashing";  // hashing | http
  std::size_t embed_dim = 64;
  PromptStrategy strategy = PromptStrategy::PartwiseCoT;
  fs::path prompt_dir;
  std::string model = "default";
  std::string judge_model = "judge";
  int max_retries = 2;
  std::size_t max_case_chars = 0;
  std::size_t parallelism = 1;
  GenerationParams decoding = default_decoding();
  double lexical_weight = 0.5;
  int top_k = 5;
  IndexField field = IndexField::Brief;
  Bm25Params bm25;
  std::string addr = "127.0.0.1:8080";
  std::string cors_origin = "*";
  fs::path static_dir;
  GatewayConfig gateway;

  CorpusLayout layout() const { return CorpusLayout{root}; }
};

namespace detail {

inline std::optional<std::string> getenv_lookup(const EnvLookup& lookup, const char* name) {
  if (lookup) return lookup(name);
  if (const char* v = std::getenv(name)) return std::string(v);
  return std::nullopt;
}

inline fs::path resolve_path(const fs::path& base, const std::string& value) {
  if (value.empty()) return {};
  const fs::path p(value);
  return p.is_absolute() || base.empty() ? p : base / p;
}

inline IndexField parse_field(std::string_view name) {
  if (name == "brief") return IndexField::Brief;
  if (name == "full_text") return IndexField::FullText;
  throw Error(ErrorCode::ConfigError, "index field must be 'brief' or 'full_text', got '" + std::string(name) + "'");
}

inline std::size_t positive_size(const json& v, const char* name) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw Error(ErrorCode::ConfigError, std::string(name) + " must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace detail

/// Applies the keys present in `j` on top of `cfg`. Relative paths are taken
/// relative to `base`.
inline void apply_config_json(AppConfig& cfg, const json& j, const fs::path& base = {}) {
  if (!j.is_object()) throw Error(ErrorCode::ConfigError, "config must be a JSON object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "root") cfg.root = detail::resolve_path(base, v.get<std::string>());
      else if (key == "provider") cfg.provider = v.get<std::string>();
      else if (key == "mock_script") cfg.mock_script = detail::resolve_path(base, v.get<std::string>());
      else if (key == "embedder") cfg.embedder = v.get<std::string>();
      else if (key == "embed_dim") cfg.embed_dim = detail::positive_size(v, "embed_dim");
      else if (key == "strategy") cfg.strategy = parse_strategy(v.get<std::string>());
      else if (key == "prompt_dir") cfg.prompt_dir = detail::resolve_path(base, v.get<std::string>());
      else if (key == "model") cfg.model = v.get<std::string>();
      else if (key == "judge_model") cfg.judge_model = v.get<std::string>();
      else if (key == "max_retries") cfg.max_retries = static_cast<int>(detail::positive_size(v, "max_retries"));
      else if (key == "max_case_chars") cfg.max_case_chars = detail::positive_size(v, "max_case_chars");
      else if (key == "parallelism") cfg.parallelism = detail::positive_size(v, "parallelism");
      else if (key == "temperature") cfg.decoding.temperature = v.get<double>();
      else if (key == "top_p") cfg.decoding.top_p = v.get<double>();
      else if (key == "top_k_sampling") cfg.decoding.top_k = v.get<int>();
      else if (key == "lexical_weight") cfg.lexical_weight = v.get<double>();
      else if (key == "top_k") cfg.top_k = v.get<int>();
      else if (key == "field") cfg.field = detail::parse_field(v.get<std::string>());
      else if (key == "k1") cfg.bm25.k1 = v.get<double>();
      else if (key == "b") cfg.bm25.b = v.get<double>();
      else if (key == "addr") cfg.addr = v.get<std::string>();
      else if (key == "cors_origin") cfg.cors_origin = v.get<std::string>();
      else if (key == "static_dir") cfg.static_dir = detail::resolve_path(base, v.get<std::string>());
      else if (key == "llm_base_url") cfg.gateway.llm.base_url = v.get<std::string>();
      else if (key == "llm_model") cfg.gateway.llm.model = v.get<std::string>();
      else if (key == "embed_base_url") cfg.gateway.embed.base_url = v.get<std::string>();
      else if (key == "embed_model") cfg.gateway.embed.model = v.get<std::string>();
      else if (key == "max_in_flight") cfg.gateway.max_in_flight = detail::positive_size(v, "max_in_flight");
      else if (key == "retry_max") cfg.gateway.retry.max_retries = static_cast<int>(detail::positive_size(v, "retry_max"));
      else throw Error(ErrorCode::ConfigError, "unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError, std::string("bad config value: ") + e.what());
  }
}

/// Defaults, then the optional JSON file, then environment overrides:
/// DISPUTE_ROOT, DISPUTE_PROVIDER, DISPUTE_MOCK_SCRIPT, DISPUTE_ADDR,
/// DISPUTE_CORS_ORIGIN plus the gateway variables (LLM_BASE_URL, ...).
inline AppConfig load_config(const std::optional<fs::path>& file, const EnvLookup& lookup = {}) {
  AppConfig cfg;
  cfg.gateway = GatewayConfig::from_env(lookup);
  if (file) {
    json j;
    try {
      j = json::parse(read_text_file(*file));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::ConfigError, "config file is not JSON: " + std::string(e.what()));
    } catch (const Error& e) {
      throw Error(ErrorCode::ConfigError, e.detail());
    }
    apply_config_json(cfg, j, file->parent_path());
  }
  auto env = [&](const char* name) { return detail::getenv_lookup(lookup, name); };
  if (auto v = env("DISPUTE_ROOT")) cfg.root = *v;
  if (auto v = env("DISPUTE_PROVIDER")) cfg.provider = *v;
  if (auto v = env("DISPUTE_MOCK_SCRIPT")) cfg.mock_script = *v;
  if (auto v = env("DISPUTE_ADDR")) cfg.addr = *v;
  if (auto v = env("DISPUTE_CORS_ORIGIN")) cfg.cors_origin = *v;
  if (auto v = env("LLM_MODEL")) cfg.model = *v;
  return cfg;
}

inline std::pair<std::string, int> split_addr(const std::string& addr) {
  const auto colon = addr.rfind(':');
  if (colon == std::string::npos || colon + 1 == addr.size()) {
    throw Error(ErrorCode::ConfigError, "address must be host:port, got '" + addr + "'");
  }
  const auto port_text = addr.substr(colon + 1);
  if (!std::all_of(port_text.begin(), port_text.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
      port_text.size() > 5 || std::stoi(port_text) > 65535) {
    throw Error(ErrorCode::ConfigError, "bad port in '" + addr + "'");
  }
  return {addr.substr(0, colon), std::stoi(port_text)};
}

inline std::shared_ptr<CompletionProvider> make_completion_provider(const AppConfig& cfg) {
  if (cfg.provider == "mock") {
    if (cfg.mock_script.empty()) throw Error(ErrorCode::ConfigError, "the mock provider needs a mock_script file");
    json j;
    try {
      j = json::parse(read_text_file(cfg.mock_script));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::ParseError, "mock script is not JSON: " + std::string(e.what()));
    }
    return mock_provider(mock_script_from_json(j));
  }
  if (cfg.provider == "http") {
    auto endpoint = cfg.gateway.llm;
    if (endpoint.model.empty()) endpoint.model = cfg.model;
    return std::make_shared<HttpChatProvider>(endpoint, cfg.gateway.retry,
                                              std::make_shared<InFlightLimiter>(cfg.gateway.max_in_flight),
                                              cfg.gateway.verbose);
  }
  throw Error(ErrorCode::ConfigError, "provider must be 'mock' or 'http', got '" + cfg.provider + "'");
}

inline std::shared_ptr<EmbeddingProvider> make_embedder(const AppConfig& cfg) {
  if (cfg.embedder == "hashing") return std::make_shared<HashingEmbedder>(cfg.embed_dim);
  if (cfg.embedder == "http") {
    return std::make_shared<HttpEmbeddingProvider>(cfg.gateway.embed, cfg.gateway.retry,
                                                   std::make_shared<InFlightLimiter>(cfg.gateway.max_in_flight),
                                                   cfg.gateway.verbose);
  }
  throw Error(ErrorCode::ConfigError, "embedder must be 'hashing' or 'http', got '" + cfg.embedder + "'");
}

inline SummarizerConfig summarizer_config(const AppConfig& cfg) {
  SummarizerConfig s;
  s.strategy = cfg.strategy;
  s.model = cfg.model;
  s.decoding = cfg.decoding;
  s.max_retries = cfg.max_retries;
  s.max_case_chars = cfg.max_case_chars;
  return s;
}

inline Summarizer make_summarizer(const AppConfig& cfg, std::shared_ptr<CompletionProvider> provider) {
  auto library = cfg.prompt_dir.empty() ? PromptLibrary::builtin() : PromptLibrary::from_directory(cfg.prompt_dir);
  return Summarizer(std::move(provider), summarizer_config(cfg), std::move(library));
}

inline EvalOptions eval_options(const AppConfig& cfg) {
  EvalOptions o;
  o.judge.model = cfg.judge_model;
  o.parallelism = std::max<std::size_t>(1, cfg.parallelism);
  return o;
}

/// Judgments from the corpus file; any bad line is fatal here (ingest is
/// where partial files get cleaned up).
inline std::vector<JudgmentRecord> load_corpus_strict(const CorpusLayout& layout) {
  auto loaded = load_judgments(layout.judgments());
  loaded.or_throw();
  if (loaded.records.empty()) throw Error(ErrorCode::InvalidArgument, "judgment corpus is empty");
  return std::move(loaded.records);
}

struct IndexStats {
  std::size_t documents = 0;
  std::size_t terms = 0;
  std::string corpus_hash;
  bool embeddings_cached = false;
};

/// Builds the BM25 index and embeddings for the corpus and writes both.
inline IndexStats build_indexes(const AppConfig& cfg) {
  const auto layout = cfg.layout();
  const auto docs = load_corpus_strict(layout);
  const auto hash = corpus_hash(docs, cfg.field);
  const auto index = build_index(docs, cfg.bm25, cfg.field);
  save_index(layout.bm25_index(), index, hash, cfg.field);

  auto embedder = make_embedder(cfg);
  const EmbeddingCacheKey key{embedder->id(), embedder->model(), hash};
  IndexStats stats{docs.size(), index.postings().size(), hash, false};
  if (load_embeddings(layout.embeddings(), key)) {
    stats.embeddings_cached = true;
  } else {
    save_embeddings(layout.embeddings(), key, PrecedentRetriever::embed_corpus(docs, *embedder, cfg.field));
  }
  return stats;
}

/// Loads the corpus and its indexes. A missing index file is rebuilt in
/// memory; one built from a different corpus is refused with StaleIndex.
inline std::shared_ptr<const PrecedentRetriever> open_retriever(const AppConfig& cfg,
                                                               std::shared_ptr<EmbeddingProvider> embedder = nullptr) {
  const auto layout = cfg.layout();
  auto docs = load_corpus_strict(layout);
  if (!embedder) embedder = make_embedder(cfg);
  const auto hash = corpus_hash(docs, cfg.field);
  auto index = fs::exists(layout.bm25_index()) ? load_index(layout.bm25_index(), hash, cfg.field)
                                               : build_index(docs, cfg.bm25, cfg.field);
  const EmbeddingCacheKey key{embedder->id(), embedder->model(), hash};
  auto vectors = load_embeddings(layout.embeddings(), key);
  if (!vectors) vectors = PrecedentRetriever::embed_corpus(docs, *embedder, cfg.field);
  return std::make_shared<const PrecedentRetriever>(std::move(docs), std::move(index), std::move(*vectors),
                                                    std::move(embedder));
}

/// Ranked rows joined with their judgment records, as served and printed.
inline json similar_to_json(const PrecedentRetriever& r, const SimilarResult& result, const HybridConfig& hc) {
  json rows = json::array();
  for (const auto& ranked : result.results) {
    json row = to_json(ranked);
    if (const auto* j = r.find(ranked.judgment_id)) {
      row["title"] = j->title;
      row["citation"] = j->citation;
      row["sector"] = to_json(j->sector);
      row["brief"] = j->brief;
    }
    rows.push_back(std::move(row));
  }
  json out{{"weight", hc.lexical_weight}, {"k", hc.top_k}, {"results", rows}, {"warnings", result.warnings}};
  out["sector"] = result.sector_code ? to_json(sector_from_code(*result.sector_code)) : json(nullptr);
  return out;
}

/// Generated summaries paired with gold summaries by case id. Failed or
/// unmatched records are skipped; no pair at all is an error.
inline std::vector<EvalPair> make_eval_pairs(const std::vector<SummaryRecord>& run,
                                             const std::vector<GoldSummary>& gold) {
  std::map<std::string, const MaterialSummary*> by_id;
  for (const auto& g : gold) by_id.emplace(g.case_id, &g.summary);
  std::vector<EvalPair> pairs;
  for (const auto& rec : run) {
    const auto it = by_id.find(rec.case_id);
    if (!rec.summary || it == by_id.end()) continue;
    pairs.push_back({rec.case_id, *it->second, *rec.summary});
  }
  if (pairs.empty()) throw Error(ErrorCode::InvalidRecord, "no generated summary has a matching gold summary");
  return pairs;
}

/// Pairs a stored run (out/runs/<id>.jsonl) with corpus/gold.jsonl.
inline std::vector<EvalPair> run_pairs(const CorpusLayout& layout, const std::string& run_id) {
  if (run_id.empty() || run_id.find('/') != std::string::npos || run_id.find("..") != std::string::npos) {
    throw Error(ErrorCode::InvalidArgument, "bad run_id '" + run_id + "'");
  }
  if (!fs::exists(layout.run(run_id))) throw Error(ErrorCode::NotFound, "no run '" + run_id + "'");
  auto run = load_summary_records(layout.run(run_id));
  run.or_throw();
  auto gold = load_gold_summaries(layout.gold());
  gold.or_throw();
  return make_eval_pairs(run.records, gold.records);
}

}  // namespace dispute
