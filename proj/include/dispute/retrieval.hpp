#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "dispute/bm25.hpp"
#include "dispute/domain.hpp"
#include "dispute/error.hpp"
#include "dispute/gateway.hpp"

namespace dispute {

inline double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "cosine of vectors with dims " +
                                                  std::to_string(a.dim()) + " and " +
                                                  std::to_string(b.dim()));
  }
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    dot += a.values[i] * b.values[i];
    na += a.values[i] * a.values[i];
    nb += b.values[i] * b.values[i];
  }
  if (na == 0.0 || nb == 0.0) throw Error(ErrorCode::ZeroVector, "cosine of a zero vector");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

inline bool is_zero(const EmbeddingVector& v) {
  return std::all_of(v.values.begin(), v.values.end(), [](double x) { return x == 0.0; });
}

struct HybridConfig {
  double lexical_weight = 0.5;
  int top_k = 5;
};

inline void validate(const HybridConfig& cfg) {
  if (!(cfg.lexical_weight >= 0.0 && cfg.lexical_weight <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "lexical weight must be in [0, 1]");
  }
  if (cfg.top_k < 1) throw Error(ErrorCode::InvalidArgument, "top_k must be >= 1");
}

/// Min-max scaling to [0, 1]; a constant family maps to 0.5 throughout.
inline std::vector<double> min_max_normalize(const std::vector<double>& raw) {
  if (raw.empty()) return {};
  const auto [lo, hi] = std::minmax_element(raw.begin(), raw.end());
  std::vector<double> out(raw.size(), 0.5);
  if (*hi > *lo) {
    const double span = *hi - *lo;
    for (std::size_t i = 0; i < raw.size(); ++i) out[i] = (raw[i] - *lo) / span;
  }
  return out;
}

struct SimilarResult {
  std::vector<RankedJudgment> results;
  std::vector<std::string> warnings;
  std::optional<int> sector_code;
};

/// Sector-filtered precedent search over a fixed judgment corpus: BM25,
/// embedding cosine, and their min-max normalized weighted fusion. The object
/// is immutable after construction and safe to query from many threads as
/// long as the embedding provider is.
class PrecedentRetriever {
 public:
  /// `vectors` must align with `corpus` (one embedding per judgment).
  PrecedentRetriever(std::vector<JudgmentRecord> corpus, Bm25Index index,
                     std::vector<EmbeddingVector> vectors,
                     std::shared_ptr<EmbeddingProvider> embedder)
      : corpus_(std::move(corpus)),
        index_(std::move(index)),
        vectors_(std::move(vectors)),
        embedder_(std::move(embedder)) {
    if (!embedder_) throw Error(ErrorCode::ConfigError, "retriever needs an embedding provider");
    if (corpus_.size() != index_.size() || corpus_.size() != vectors_.size()) {
      throw Error(ErrorCode::InvalidArgument, "corpus, index and embeddings differ in size");
    }
    for (std::size_t i = 0; i < corpus_.size(); ++i) {
      if (index_.doc_ids()[i] != corpus_[i].id) {
        throw Error(ErrorCode::StaleIndex, "index document order does not match the corpus");
      }
      if (vectors_[i].dim() != vectors_.front().dim()) {
        throw Error(ErrorCode::DimensionMismatch, "corpus embeddings have mixed dimensions");
      }
      positions_.emplace(corpus_[i].id, i);
      ++sector_counts_[corpus_[i].sector.code()];
    }
  }

  /// Embeds every indexed text in batches of `batch` and builds both indexes.
  static PrecedentRetriever build(std::vector<JudgmentRecord> corpus,
                                  std::shared_ptr<EmbeddingProvider> embedder,
                                  Bm25Params params = {}, IndexField field = IndexField::Brief,
                                  std::size_t batch = 32) {
    auto index = build_index(corpus, params, field);
    auto vectors = embed_corpus(corpus, *embedder, field, batch);
    return PrecedentRetriever(std::move(corpus), std::move(index), std::move(vectors),
                              std::move(embedder));
  }

  static std::vector<EmbeddingVector> embed_corpus(const std::vector<JudgmentRecord>& corpus,
                                                   EmbeddingProvider& embedder, IndexField field,
                                                   std::size_t batch = 32) {
    std::vector<EmbeddingVector> vectors;
    vectors.reserve(corpus.size());
    for (std::size_t start = 0; start < corpus.size(); start += batch) {
      std::vector<std::string> texts;
      for (std::size_t i = start; i < std::min(corpus.size(), start + batch); ++i) {
        texts.push_back(indexed_text(corpus[i], field));
      }
      auto out = embedder.embed(texts);
      check_embed_output(out, texts.size(),
                         vectors.empty() ? std::nullopt : std::optional(vectors.front().dim()));
      for (auto& v : out) vectors.push_back(std::move(v));
    }
    return vectors;
  }

  const std::vector<JudgmentRecord>& corpus() const { return corpus_; }
  const Bm25Index& index() const { return index_; }
  const std::vector<EmbeddingVector>& vectors() const { return vectors_; }
  const EmbeddingProvider& embedder() const { return *embedder_; }

  const JudgmentRecord* find(std::string_view id) const {
    const auto it = positions_.find(std::string(id));
    return it == positions_.end() ? nullptr : &corpus_[it->second];
  }

  std::size_t sector_size(int code) const {
    const auto it = sector_counts_.find(code);
    return it == sector_counts_.end() ? 0 : it->second;
  }

  EmbeddingVector embed_query(std::string_view query) const {
    auto out = embedder_->embed({std::string(query)});
    check_embed_output(out, 1, vectors_.empty() ? std::nullopt : std::optional(vectors_.front().dim()));
    if (is_zero(out.front())) throw Error(ErrorCode::ZeroVector, "query embedding is all zeros");
    return std::move(out.front());
  }

  /// Cosine against every candidate with a nonzero embedding, ranked.
  std::vector<ScoredDoc> semantic_scores(const EmbeddingVector& query,
                                         std::optional<int> sector) const {
    std::vector<ScoredDoc> out;
    for (std::size_t i = 0; i < corpus_.size(); ++i) {
      if (sector && corpus_[i].sector.code() != *sector) continue;
      if (is_zero(vectors_[i])) continue;
      out.push_back({corpus_[i].id, cosine(query, vectors_[i])});
    }
    std::sort(out.begin(), out.end(), ranks_before);
    return out;
  }

  std::vector<ScoredDoc> lexical_topk(std::string_view query, int k,
                                      std::optional<int> sector = std::nullopt) const {
    return dispute::lexical_topk(index_, query, k, sector);
  }

  std::vector<ScoredDoc> semantic_topk(std::string_view query, int k,
                                       std::optional<int> sector = std::nullopt) const {
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
    if (sector && sector_size(*sector) == 0) return {};
    auto scored = semantic_scores(embed_query(query), sector);
    if (scored.size() > static_cast<std::size_t>(k)) scored.resize(static_cast<std::size_t>(k));
    return scored;
  }

  /// Fuses both families over the union of their candidates. A candidate the
  /// lexical retriever did not return has BM25 score 0 (no shared term); one
  /// missing from the semantic family takes that family's raw minimum.
  std::vector<RankedJudgment> hybrid_topk(std::string_view query, const HybridConfig& cfg,
                                          std::optional<int> sector = std::nullopt) const {
    validate(cfg);
    if (sector && sector_size(*sector) == 0) return {};
    const auto lexical = lexical_scores(index_, query, sector);
    const auto semantic = semantic_scores(embed_query(query), sector);

    std::map<std::string, std::pair<std::optional<double>, std::optional<double>>> pool;
    for (const auto& d : lexical) pool[d.doc_id].first = d.score;
    for (const auto& d : semantic) pool[d.doc_id].second = d.score;
    if (pool.empty()) return {};

    // semantic is sorted descending
    const double sem_min = semantic.empty() ? 0.0 : semantic.back().score;

    std::vector<std::string> ids;
    std::vector<double> lex_raw, sem_raw;
    for (const auto& [id, scores] : pool) {
      ids.push_back(id);
      lex_raw.push_back(scores.first.value_or(0.0));
      sem_raw.push_back(scores.second.value_or(sem_min));
    }
    const auto lex_norm = min_max_normalize(lex_raw);
    const auto sem_norm = min_max_normalize(sem_raw);
    const double w = cfg.lexical_weight;

    std::vector<RankedJudgment> ranked;
    ranked.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      RankedJudgment r;
      r.judgment_id = ids[i];
      r.lexical_score = lex_raw[i];
      r.semantic_score = sem_raw[i];
      r.fused_score = w * lex_norm[i] + (1.0 - w) * sem_norm[i];
      ranked.push_back(std::move(r));
    }
    std::sort(ranked.begin(), ranked.end(), [](const RankedJudgment& a, const RankedJudgment& b) {
      if (a.fused_score != b.fused_score) return a.fused_score > b.fused_score;
      return a.judgment_id < b.judgment_id;
    });
    if (ranked.size() > static_cast<std::size_t>(cfg.top_k)) {
      ranked.resize(static_cast<std::size_t>(cfg.top_k));
    }
    for (std::size_t i = 0; i < ranked.size(); ++i) ranked[i].rank = static_cast<int>(i + 1);
    return ranked;
  }

  /// Similar-case prediction for a finished summary: the summary's sector
  /// (or `sector_override`) filters, its overview is the query.
  SimilarResult predict_similar(const MaterialSummary& summary, const HybridConfig& cfg = {},
                                std::optional<int> sector_override = std::nullopt) const {
    validate(summary);
    const int code = sector_override.value_or(summary.sector.code());
    sector_from_code(code);
    SimilarResult out;
    out.sector_code = code;
    if (sector_size(code) == 0) {
      out.warnings.push_back(std::string(error_code_name(ErrorCode::EmptySector)) +
                             ": no judgments in sector " + std::to_string(code));
      return out;
    }
    out.results = hybrid_topk(summary.overview, cfg, code);
    return out;
  }

 private:
  std::vector<JudgmentRecord> corpus_;
  Bm25Index index_;
  std::vector<EmbeddingVector> vectors_;
  std::shared_ptr<EmbeddingProvider> embedder_;
  std::unordered_map<std::string, std::size_t> positions_;
  std::map<int, std::size_t> sector_counts_;
};

}  // namespace dispute
