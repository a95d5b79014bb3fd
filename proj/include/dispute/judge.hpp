#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dispute/detail/assets.hpp"
#include "dispute/domain.hpp"
#include "dispute/error.hpp"
#include "dispute/gateway.hpp"
#include "dispute/metrics.hpp"
#include "dispute/parallel.hpp"
#include "dispute/parsing.hpp"

namespace dispute {

enum class MetricKind {
  OverviewAccuracy,
  Oversimplification,
  OverviewRetrieval,
  IssuesAccuracy,
  EvidenceAccuracy,
  IssueFormatting,
  SectorRelevance,
  ReliefAccuracy,
};

enum class MetricScale { Likert, Binary };

/// Report column order.
inline constexpr std::array<MetricKind, 8> kAllMetrics{
    MetricKind::OverviewAccuracy, MetricKind::Oversimplification, MetricKind::OverviewRetrieval,
    MetricKind::IssuesAccuracy,   MetricKind::EvidenceAccuracy,   MetricKind::IssueFormatting,
    MetricKind::SectorRelevance,  MetricKind::ReliefAccuracy,
};

inline MetricScale metric_scale(MetricKind k) {
  switch (k) {
    case MetricKind::OverviewAccuracy:
    case MetricKind::Oversimplification:
    case MetricKind::OverviewRetrieval:
    case MetricKind::IssuesAccuracy:
      return MetricScale::Likert;
    default:
      return MetricScale::Binary;
  }
}

inline std::string_view metric_name(MetricKind k) {
  switch (k) {
    case MetricKind::OverviewAccuracy: return "OverviewAccuracy";
    case MetricKind::Oversimplification: return "Oversimplification";
    case MetricKind::OverviewRetrieval: return "OverviewRetrieval";
    case MetricKind::IssuesAccuracy: return "IssuesAccuracy";
    case MetricKind::EvidenceAccuracy: return "EvidenceAccuracy";
    case MetricKind::IssueFormatting: return "IssueFormatting";
    case MetricKind::SectorRelevance: return "SectorRelevance";
    case MetricKind::ReliefAccuracy: return "ReliefAccuracy";
  }
  return "OverviewAccuracy";
}

/// snake_case key used for template files and mock tags.
inline std::string_view metric_key(MetricKind k) {
  switch (k) {
    case MetricKind::OverviewAccuracy: return "overview_accuracy";
    case MetricKind::Oversimplification: return "oversimplification";
    case MetricKind::OverviewRetrieval: return "overview_retrieval";
    case MetricKind::IssuesAccuracy: return "issues_accuracy";
    case MetricKind::EvidenceAccuracy: return "evidence_accuracy";
    case MetricKind::IssueFormatting: return "issue_formatting";
    case MetricKind::SectorRelevance: return "sector_relevance";
    case MetricKind::ReliefAccuracy: return "relief_accuracy";
  }
  return "overview_accuracy";
}

inline std::string_view metric_column(MetricKind k) {
  switch (k) {
    case MetricKind::OverviewAccuracy: return "Over. Acc.";
    case MetricKind::Oversimplification: return "Oversimp.";
    case MetricKind::OverviewRetrieval: return "Over. Retr.";
    case MetricKind::IssuesAccuracy: return "Iss. Acc.";
    case MetricKind::EvidenceAccuracy: return "Evid. Acc.";
    case MetricKind::IssueFormatting: return "Iss. Form.";
    case MetricKind::SectorRelevance: return "Sect. Rel.";
    case MetricKind::ReliefAccuracy: return "Rel. Acc.";
  }
  return "";
}

/// Accepts the CamelCase name or the snake_case key, ASCII case-insensitive.
inline MetricKind parse_metric(std::string_view name) {
  const auto trimmed = text::trim(name);
  for (auto k : kAllMetrics) {
    if (text::iequals_ascii(trimmed, metric_name(k)) || text::iequals_ascii(trimmed, metric_key(k))) {
      return k;
    }
  }
  throw Error(ErrorCode::UnknownMetric, "unknown metric '" + std::string(name) + "'");
}

inline bool in_scale(MetricKind k, double value) {
  if (metric_scale(k) == MetricScale::Likert) {
    return value >= 1.0 && value <= 5.0 && value == std::floor(value);
  }
  return value == 0.0 || value == 1.0;
}

struct MetricScore {
  MetricKind kind = MetricKind::OverviewAccuracy;
  double value = 0.0;
  std::optional<std::string> rationale_text;
};

struct ScoreTag {
  std::string content;
  std::size_t start = 0;  // offset of the opening tag
};

/// Last complete <score>...</score> span (tags matched ASCII
/// case-insensitively).
inline std::optional<ScoreTag> find_last_score_tag(std::string_view body) {
  constexpr std::string_view open = "<score>";
  constexpr std::string_view close = "</score>";
  std::optional<ScoreTag> last;
  std::size_t pos = 0;
  auto matches_at = [&](std::size_t at, std::string_view tag) {
    return at + tag.size() <= body.size() && text::iequals_ascii(body.substr(at, tag.size()), tag);
  };
  while (pos < body.size()) {
    if (!matches_at(pos, open)) {
      ++pos;
      continue;
    }
    const std::size_t content_start = pos + open.size();
    std::size_t end = content_start;
    while (end < body.size() && !matches_at(end, close)) ++end;
    if (end >= body.size()) break;
    last = ScoreTag{std::string(body.substr(content_start, end - content_start)), pos};
    pos = content_start;
  }
  return last;
}

inline double parse_score_tag(std::string_view body, MetricScale scale) {
  const auto tag = find_last_score_tag(body);
  if (!tag) throw Error(ErrorCode::NoScoreTag, "no <score></score> tag in judge output");
  const auto content = text::trim(tag->content);
  if (scale == MetricScale::Binary) {
    if (text::iequals_ascii(content, "yes")) return 1.0;
    if (text::iequals_ascii(content, "no")) return 0.0;
    throw Error(ErrorCode::OutOfScale, "binary score must be Yes or No, got '" +
                                           std::string(content.substr(0, 40)) + "'");
  }
  const bool digits = !content.empty() && content.size() <= 3 &&
                      std::all_of(content.begin(), content.end(),
                                  [](char c) { return c >= '0' && c <= '9'; });
  if (!digits) {
    throw Error(ErrorCode::OutOfScale,
                "Likert score must be an integer 1-5, got '" + std::string(content.substr(0, 40)) + "'");
  }
  const int value = std::stoi(std::string(content));
  if (value < 1 || value > 5) {
    throw Error(ErrorCode::OutOfScale, "Likert score " + std::to_string(value) + " is outside 1-5");
  }
  return value;
}

inline double parse_score_tag(std::string_view body, MetricKind kind) {
  return parse_score_tag(body, metric_scale(kind));
}

class JudgeFailure : public Error {
 public:
  JudgeFailure(MetricKind kind, int attempts, const Error& last)
      : Error(ErrorCode::JudgeFailure, std::string(metric_name(kind)) + " failed after " +
                                           std::to_string(attempts) + " attempt(s): " + last.what()),
        kind_(kind),
        attempts_(attempts),
        last_code_(last.code()) {}

  MetricKind kind() const noexcept { return kind_; }
  int attempts() const noexcept { return attempts_; }
  ErrorCode last_code() const noexcept { return last_code_; }

 private:
  MetricKind kind_;
  int attempts_;
  ErrorCode last_code_;
};

inline const std::string& judge_template(MetricKind kind) {
  static const std::map<MetricKind, std::string> templates = [] {
    std::map<MetricKind, std::string> out;
    for (auto k : kAllMetrics) {
      const std::string key = "judge/" + std::string(metric_key(k));
      for (const auto& [asset, body] : detail::kEmbeddedAssets) {
        if (asset == key) out.emplace(k, std::string(body));
      }
    }
    return out;
  }();
  return templates.at(kind);
}

inline std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

/// Rubric with {original} and {generated} replaced by the rendered
/// summaries. Substitution is single-pass so summary text containing the
/// placeholders is left alone.
inline std::string render_judge_prompt(MetricKind kind, const MaterialSummary& original,
                                       const MaterialSummary& generated) {
  const std::string& tpl = judge_template(kind);
  const std::string orig = render_summary(original);
  const std::string gen = render_summary(generated);
  std::string out;
  std::size_t pos = 0;
  while (pos < tpl.size()) {
    const auto a = tpl.find("{original}", pos);
    const auto b = tpl.find("{generated}", pos);
    const auto next = std::min(a, b);
    if (next == std::string::npos) {
      out.append(tpl, pos, std::string::npos);
      break;
    }
    out.append(tpl, pos, next - pos);
    if (next == a) {
      out += orig;
      pos = a + std::string_view("{original}").size();
    } else {
      out += gen;
      pos = b + std::string_view("{generated}").size();
    }
  }
  return out;
}

struct JudgeOptions {
  std::string model = "judge";
  int max_retries = 2;
  /// Judging runs deterministic decoding.
  GenerationParams params{0.0, 1.0, 1, 1024};
  std::string pair_id = "pair";
};

inline MetricScore judge_summary(MetricKind kind, const MaterialSummary& original,
                                 const MaterialSummary& generated, CompletionProvider& judge,
                                 const JudgeOptions& options = {}) {
  CompletionRequest request;
  request.user_prompt = render_judge_prompt(kind, original, generated);
  request.params = options.params;
  request.model_name = options.model;
  request.tag = "judge:" + std::string(metric_key(kind)) + ":" + options.pair_id;

  const int attempts = options.max_retries + 1;
  for (int attempt = 1;; ++attempt) {
    CompletionResult result;
    try {
      result = judge.complete(request);
    } catch (const Error& e) {
      throw JudgeFailure(kind, attempt, e);
    }
    try {
      MetricScore score{kind, parse_score_tag(result.text, kind), std::nullopt};
      const auto tag = find_last_score_tag(result.text);
      const auto rationale = text::trim(std::string_view(result.text).substr(0, tag->start));
      if (!rationale.empty()) score.rationale_text = std::string(rationale);
      return score;
    } catch (const Error& e) {
      if (attempt >= attempts) throw JudgeFailure(kind, attempt, e);
    }
  }
}

// ---------------------------------------------------------------------------

struct EvalPair {
  std::string id;
  MaterialSummary original;
  MaterialSummary generated;
};

struct ReferenceScores {
  double rouge1 = 0.0;
  double rouge2 = 0.0;
  double rougeL = 0.0;
  double bleu1 = 0.0;
};

inline ReferenceScores reference_scores(const std::string& candidate, const std::string& reference) {
  const auto c = text::tokenize(candidate);
  const auto r = text::tokenize(reference);
  return {metrics::rouge_n(c, r, 1).f1, metrics::rouge_n(c, r, 2).f1, metrics::rouge_l(c, r).f1,
          metrics::bleu1(c, r)};
}

struct CaseScores {
  std::string pair_id;
  std::map<MetricKind, MetricScore> scores;
  std::map<MetricKind, std::string> failures;  // kind -> error text
  ReferenceScores overview_reference;
  ReferenceScores summary_reference;
};

struct KindSummary {
  std::optional<double> mean;
  std::size_t n = 0;
  std::size_t failures = 0;
};

struct MetricReport {
  std::vector<MetricKind> kinds;
  std::map<MetricKind, KindSummary> per_kind;
  std::vector<CaseScores> cases;
  ReferenceScores overview_reference_mean;
  ReferenceScores summary_reference_mean;
  std::size_t pairs = 0;
};

struct EvalOptions {
  JudgeOptions judge;
  std::size_t parallelism = 1;
};

/// Judges every pair on every requested kind and aggregates. A failed
/// judgment is counted against its kind and never aborts the run.
inline MetricReport evaluate_run(const std::vector<EvalPair>& pairs,
                                 const std::vector<MetricKind>& kinds, CompletionProvider& judge,
                                 const EvalOptions& options = {}) {
  if (pairs.empty()) throw Error(ErrorCode::InvalidArgument, "evaluate_run needs at least one pair");
  MetricReport report;
  report.kinds = kinds.empty() ? std::vector<MetricKind>(kAllMetrics.begin(), kAllMetrics.end())
                               : kinds;
  report.pairs = pairs.size();
  report.cases.resize(pairs.size());

  const std::size_t jobs = pairs.size() * report.kinds.size();
  std::vector<std::optional<MetricScore>> results(jobs);
  std::vector<std::string> errors(jobs);
  parallel_for(jobs, options.parallelism, [&](std::size_t job) {
    const auto& pair = pairs[job / report.kinds.size()];
    const auto kind = report.kinds[job % report.kinds.size()];
    JudgeOptions jo = options.judge;
    jo.pair_id = pair.id;
    try {
      results[job] = judge_summary(kind, pair.original, pair.generated, judge, jo);
    } catch (const std::exception& e) {
      errors[job] = e.what();
    }
  });

  for (auto kind : report.kinds) report.per_kind[kind] = {};
  std::map<MetricKind, double> sums;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    auto& cs = report.cases[p];
    cs.pair_id = pairs[p].id;
    for (std::size_t k = 0; k < report.kinds.size(); ++k) {
      const auto kind = report.kinds[k];
      const std::size_t job = p * report.kinds.size() + k;
      auto& summary = report.per_kind[kind];
      if (results[job]) {
        cs.scores.emplace(kind, *results[job]);
        sums[kind] += results[job]->value;
        ++summary.n;
      } else {
        cs.failures.emplace(kind, errors[job]);
        ++summary.failures;
      }
    }
    cs.overview_reference =
        reference_scores(pairs[p].generated.overview, pairs[p].original.overview);
    cs.summary_reference =
        reference_scores(render_summary(pairs[p].generated), render_summary(pairs[p].original));
  }
  for (auto& [kind, summary] : report.per_kind) {
    if (summary.n > 0) summary.mean = sums[kind] / static_cast<double>(summary.n);
  }

  auto average = [&](auto member, bool overview) {
    double total = 0.0;
    for (const auto& cs : report.cases) {
      total += (overview ? cs.overview_reference : cs.summary_reference).*member;
    }
    return total / static_cast<double>(report.cases.size());
  };
  for (bool overview : {true, false}) {
    auto& target = overview ? report.overview_reference_mean : report.summary_reference_mean;
    target.rouge1 = average(&ReferenceScores::rouge1, overview);
    target.rouge2 = average(&ReferenceScores::rouge2, overview);
    target.rougeL = average(&ReferenceScores::rougeL, overview);
    target.bleu1 = average(&ReferenceScores::bleu1, overview);
  }
  return report;
}

// ---------------------------------------------------------------------------

/// Human ratings keyed by case id and metric.
using HumanScoreTable = std::map<std::string, std::map<MetricKind, double>>;

struct Correlation {
  MetricKind kind;
  std::size_t n = 0;
  std::optional<double> rho;
  std::optional<std::string> error;
};

/// Spearman between human and judge scores per kind, over the cases that
/// have both.
inline std::vector<Correlation> correlate_with_human(const MetricReport& report,
                                                     const HumanScoreTable& human) {
  std::vector<Correlation> out;
  for (auto kind : report.kinds) {
    std::vector<double> h, j;
    for (const auto& cs : report.cases) {
      const auto judged = cs.scores.find(kind);
      const auto row = human.find(cs.pair_id);
      if (judged == cs.scores.end() || row == human.end()) continue;
      const auto rated = row->second.find(kind);
      if (rated == row->second.end()) continue;
      h.push_back(rated->second);
      j.push_back(judged->second.value);
    }
    Correlation c{kind, h.size(), std::nullopt, std::nullopt};
    try {
      c.rho = metrics::spearman(h, j);
    } catch (const Error& e) {
      c.error = std::string(e.code_name());
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace dispute
