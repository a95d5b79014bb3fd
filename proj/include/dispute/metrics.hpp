#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "dispute/error.hpp"
#include "dispute/text.hpp"

namespace dispute::metrics {

struct PrfScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  friend bool operator==(const PrfScore&, const PrfScore&) = default;
};

inline double harmonic_mean(double p, double r) { return (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

using Tokens = std::vector<std::string>;

namespace detail {

inline std::map<std::vector<std::string>, std::size_t> ngram_counts(const Tokens& tokens,
                                                                    std::size_t n) {
  std::map<std::vector<std::string>, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                      tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

}  // namespace detail

/// ROUGE-N with clipped n-gram overlap.
inline PrfScore rouge_n(const Tokens& candidate, const Tokens& reference, int n) {
  if (n != 1 && n != 2) throw Error(ErrorCode::InvalidArgument, "rouge_n supports n = 1 or 2");
  const auto size = static_cast<std::size_t>(n);
  const auto cand = detail::ngram_counts(candidate, size);
  const auto ref = detail::ngram_counts(reference, size);
  const std::size_t cand_total = candidate.size() >= size ? candidate.size() - size + 1 : 0;
  const std::size_t ref_total = reference.size() >= size ? reference.size() - size + 1 : 0;
  if (cand_total == 0 || ref_total == 0) return {};
  std::size_t overlap = 0;
  for (const auto& [gram, count] : cand) {
    const auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(count, it->second);
  }
  PrfScore s;
  s.precision = static_cast<double>(overlap) / static_cast<double>(cand_total);
  s.recall = static_cast<double>(overlap) / static_cast<double>(ref_total);
  s.f1 = harmonic_mean(s.precision, s.recall);
  return s;
}

inline std::size_t lcs_length(const Tokens& a, const Tokens& b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

/// ROUGE-L on the longest common token subsequence.
inline PrfScore rouge_l(const Tokens& candidate, const Tokens& reference) {
  if (candidate.empty() || reference.empty()) return {};
  const auto lcs = static_cast<double>(lcs_length(candidate, reference));
  PrfScore s;
  s.precision = lcs / static_cast<double>(candidate.size());
  s.recall = lcs / static_cast<double>(reference.size());
  s.f1 = harmonic_mean(s.precision, s.recall);
  return s;
}

/// Sentence-level BLEU-1: clipped unigram precision times the brevity
/// penalty, no smoothing.
inline double bleu1(const Tokens& candidate, const Tokens& reference) {
  if (candidate.empty()) return 0.0;
  std::map<std::string, std::size_t> ref_counts, cand_counts;
  for (const auto& t : reference) ++ref_counts[t];
  for (const auto& t : candidate) ++cand_counts[t];
  std::size_t clipped = 0;
  for (const auto& [tok, count] : cand_counts) {
    const auto it = ref_counts.find(tok);
    if (it != ref_counts.end()) clipped += std::min(count, it->second);
  }
  const double p1 = static_cast<double>(clipped) / static_cast<double>(candidate.size());
  const double ratio = static_cast<double>(reference.size()) / static_cast<double>(candidate.size());
  const double bp = std::min(1.0, std::exp(1.0 - ratio));
  return p1 * bp;
}

inline PrfScore rouge_n(const std::string& candidate, const std::string& reference, int n) {
  return rouge_n(text::tokenize(candidate), text::tokenize(reference), n);
}
inline PrfScore rouge_l(const std::string& candidate, const std::string& reference) {
  return rouge_l(text::tokenize(candidate), text::tokenize(reference));
}
inline double bleu1(const std::string& candidate, const std::string& reference) {
  return bleu1(text::tokenize(candidate), text::tokenize(reference));
}

/// 1-based ranks, ties get the average of the positions they span.
inline std::vector<double> average_ranks(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

/// Spearman's rho as the Pearson correlation of average ranks.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::LengthMismatch, "spearman inputs have lengths " +
                                               std::to_string(x.size()) + " and " +
                                               std::to_string(y.size()));
  }
  if (x.size() < 2) throw Error(ErrorCode::LengthMismatch, "spearman needs at least 2 pairs");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) {
    throw Error(ErrorCode::ConstantInput, "spearman is undefined for a constant input");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

/// Fraction of the first min(k, |retrieved|) ids that are relevant.
inline double precision_at_k(const std::vector<std::string>& retrieved,
                             const std::set<std::string>& relevant, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  if (retrieved.empty()) throw Error(ErrorCode::EmptyRetrieval, "nothing was retrieved");
  const std::size_t depth = std::min(static_cast<std::size_t>(k), retrieved.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < depth; ++i) hits += relevant.count(retrieved[i]);
  return static_cast<double>(hits) / static_cast<double>(depth);
}

}  // namespace dispute::metrics
