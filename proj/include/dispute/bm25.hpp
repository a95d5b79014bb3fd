#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dispute/domain.hpp"
#include "dispute/error.hpp"
#include "dispute/text.hpp"

namespace dispute {

struct Bm25Params {
  double k1 = 1.2;
  double b = 0.75;

  friend bool operator==(const Bm25Params&, const Bm25Params&) = default;
};

inline void validate(const Bm25Params& p) {
  if (!(p.k1 >= 0.0)) throw Error(ErrorCode::InvalidArgument, "BM25 k1 must be >= 0");
  if (!(p.b >= 0.0 && p.b <= 1.0)) throw Error(ErrorCode::InvalidArgument, "BM25 b must be in [0, 1]");
}

/// Which judgment field gets indexed.
enum class IndexField { Brief, FullText };

struct Posting {
  std::size_t doc;  // position in Bm25Index::doc_ids()
  std::size_t tf;

  friend bool operator==(const Posting&, const Posting&) = default;
};

struct ScoredDoc {
  std::string doc_id;
  double score = 0.0;

  friend bool operator==(const ScoredDoc&, const ScoredDoc&) = default;
};

/// Ranking order shared by every retriever: score descending, then doc id
/// ascending.
inline bool ranks_before(const ScoredDoc& a, const ScoredDoc& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.doc_id < b.doc_id;
}

/// Okapi BM25 inverted index over one text field per document. Immutable
/// once built.
class Bm25Index {
 public:
  using PostingMap = std::map<std::string, std::vector<Posting>>;

  /// Rebuilds an index from stored parts, checking the structural invariants.
  static Bm25Index from_parts(Bm25Params params, std::vector<std::string> doc_ids,
                              std::vector<std::size_t> doc_lengths, std::vector<int> doc_sectors,
                              PostingMap postings) {
    validate(params);
    const std::size_t n = doc_ids.size();
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "index has no documents");
    if (doc_lengths.size() != n || doc_sectors.size() != n) {
      throw Error(ErrorCode::InvalidRecord, "index arrays have inconsistent sizes");
    }
    Bm25Index index;
    index.params_ = params;
    index.doc_ids_ = std::move(doc_ids);
    index.doc_lengths_ = std::move(doc_lengths);
    index.doc_sectors_ = std::move(doc_sectors);
    index.postings_ = std::move(postings);
    for (std::size_t i = 0; i < n; ++i) {
      if (!index.positions_.emplace(index.doc_ids_[i], i).second) {
        throw Error(ErrorCode::DuplicateDocId, "duplicate document id '" + index.doc_ids_[i] + "'");
      }
      if (!is_sector_code(index.doc_sectors_[i])) {
        throw Error(ErrorCode::InvalidSector,
                    "document '" + index.doc_ids_[i] + "' has unknown sector code");
      }
    }
    for (const auto& [term, list] : index.postings_) {
      for (std::size_t j = 0; j < list.size(); ++j) {
        if (list[j].doc >= n || list[j].tf == 0 || (j > 0 && list[j - 1].doc >= list[j].doc)) {
          throw Error(ErrorCode::InvalidRecord, "malformed postings for term '" + term + "'");
        }
      }
    }
    double total = 0.0;
    for (auto len : index.doc_lengths_) total += static_cast<double>(len);
    index.avgdl_ = total / static_cast<double>(n);
    return index;
  }

  const Bm25Params& params() const { return params_; }
  std::size_t size() const { return doc_ids_.size(); }
  double avgdl() const { return avgdl_; }
  const std::vector<std::string>& doc_ids() const { return doc_ids_; }
  const std::vector<std::size_t>& doc_lengths() const { return doc_lengths_; }
  const std::vector<int>& doc_sectors() const { return doc_sectors_; }
  const PostingMap& postings() const { return postings_; }

  std::optional<std::size_t> position(std::string_view doc_id) const {
    const auto it = positions_.find(std::string(doc_id));
    if (it == positions_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t document_frequency(const std::string& term) const {
    const auto it = postings_.find(term);
    return it == postings_.end() ? 0 : it->second.size();
  }

  /// ln(1 + (N - n + 0.5) / (n + 0.5)); never negative.
  double idf(const std::string& term) const {
    const double n_q = static_cast<double>(document_frequency(term));
    const double n = static_cast<double>(size());
    return std::log(1.0 + (n - n_q + 0.5) / (n_q + 0.5));
  }

  double term_weight(std::size_t tf, std::size_t doc) const {
    const double f = static_cast<double>(tf);
    const double norm = 1.0 - params_.b +
                        params_.b * static_cast<double>(doc_lengths_[doc]) / avgdl_;
    return f * (params_.k1 + 1.0) / (f + params_.k1 * norm);
  }

  std::size_t term_frequency(const std::string& term, std::size_t doc) const {
    const auto it = postings_.find(term);
    if (it == postings_.end()) return 0;
    const auto& list = it->second;
    const auto hit = std::lower_bound(list.begin(), list.end(), doc,
                                      [](const Posting& p, std::size_t d) { return p.doc < d; });
    return (hit != list.end() && hit->doc == doc) ? hit->tf : 0;
  }

 private:
  Bm25Index() = default;

  Bm25Params params_;
  std::vector<std::string> doc_ids_;
  std::vector<std::size_t> doc_lengths_;
  std::vector<int> doc_sectors_;
  PostingMap postings_;
  std::unordered_map<std::string, std::size_t> positions_;
  double avgdl_ = 0.0;
};

inline const std::string& indexed_text(const JudgmentRecord& doc, IndexField field) {
  if (field == IndexField::FullText && doc.full_text && !doc.full_text->empty()) {
    return *doc.full_text;
  }
  return doc.brief;
}

inline Bm25Index build_index(const std::vector<JudgmentRecord>& docs, Bm25Params params = {},
                             IndexField field = IndexField::Brief) {
  validate(params);
  if (docs.empty()) throw Error(ErrorCode::InvalidArgument, "cannot index an empty corpus");
  std::vector<std::string> ids;
  std::vector<std::size_t> lengths;
  std::vector<int> sectors;
  Bm25Index::PostingMap postings;
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const auto& doc = docs[i];
    if (!seen.emplace(doc.id, i).second) {
      throw Error(ErrorCode::DuplicateDocId, "duplicate document id '" + doc.id + "'");
    }
    const auto terms = text::tokenize(indexed_text(doc, field));
    std::map<std::string, std::size_t> counts;
    for (const auto& t : terms) ++counts[t];
    for (const auto& [term, tf] : counts) postings[term].push_back({i, tf});
    ids.push_back(doc.id);
    lengths.push_back(terms.size());
    sectors.push_back(doc.sector.code());
  }
  return Bm25Index::from_parts(params, std::move(ids), std::move(lengths), std::move(sectors),
                               std::move(postings));
}

/// Sum over query terms (repeats count again) of idf * saturated tf.
inline double bm25_score(const Bm25Index& index, const std::vector<std::string>& query_terms,
                         std::string_view doc_id) {
  const auto doc = index.position(doc_id);
  if (!doc) throw Error(ErrorCode::UnknownDocId, "unknown document id '" + std::string(doc_id) + "'");
  double score = 0.0;
  for (const auto& term : query_terms) {
    const auto tf = index.term_frequency(term, *doc);
    if (tf == 0) continue;
    score += index.idf(term) * index.term_weight(tf, *doc);
  }
  return score;
}

/// Scores every document in the sector (or the whole index) that shares at
/// least one term with the query; zero-score documents are left out.
inline std::vector<ScoredDoc> lexical_scores(const Bm25Index& index, std::string_view query_text,
                                             std::optional<int> sector = std::nullopt) {
  const auto terms = text::tokenize(query_text);
  std::vector<double> acc(index.size(), 0.0);
  std::vector<bool> touched(index.size(), false);
  for (const auto& term : terms) {
    const auto it = index.postings().find(term);
    if (it == index.postings().end()) continue;
    const double idf = index.idf(term);
    for (const auto& posting : it->second) {
      if (sector && index.doc_sectors()[posting.doc] != *sector) continue;
      acc[posting.doc] += idf * index.term_weight(posting.tf, posting.doc);
      touched[posting.doc] = true;
    }
  }
  std::vector<ScoredDoc> out;
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (touched[i] && acc[i] > 0.0) out.push_back({index.doc_ids()[i], acc[i]});
  }
  std::sort(out.begin(), out.end(), ranks_before);
  return out;
}

inline std::vector<ScoredDoc> lexical_topk(const Bm25Index& index, std::string_view query_text,
                                           int k, std::optional<int> sector = std::nullopt) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  auto scored = lexical_scores(index, query_text, sector);
  if (scored.size() > static_cast<std::size_t>(k)) scored.resize(static_cast<std::size_t>(k));
  return scored;
}

}  // namespace dispute
