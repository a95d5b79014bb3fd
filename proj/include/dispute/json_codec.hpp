#pragma once

// JSON shapes for the domain records. Field names follow the corpus files.

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dispute/domain.hpp"
#include "dispute/error.hpp"
#include "dispute/gateway.hpp"
#include "dispute/judge.hpp"

namespace dispute {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

namespace detail {

inline const json& field(const json& j, const char* name) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "expected a JSON object");
  const auto it = j.find(name);
  if (it == j.end()) throw Error(ErrorCode::ParseError, std::string("missing field '") + name + "'");
  return *it;
}

inline std::string string_field(const json& j, const char* name) {
  const auto& v = field(j, name);
  if (!v.is_string()) throw Error(ErrorCode::ParseError, std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

inline std::string optional_string(const json& j, const char* name, std::string fallback = {}) {
  const auto it = j.find(name);
  if (it == j.end() || it->is_null()) return fallback;
  if (!it->is_string()) throw Error(ErrorCode::ParseError, std::string("field '") + name + "' must be a string");
  return it->get<std::string>();
}

inline int int_field(const json& j, const char* name) {
  const auto& v = field(j, name);
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_string()) {
    const auto s = std::string(text::trim(v.get<std::string>()));
    if (!s.empty() && s.size() < 10 && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      return std::stoi(s);
    }
  }
  throw Error(ErrorCode::ParseError, std::string("field '") + name + "' must be an integer");
}

inline std::vector<std::string> string_list(const json& j, const char* name) {
  const auto& v = field(j, name);
  if (!v.is_array()) throw Error(ErrorCode::ParseError, std::string("field '") + name + "' must be an array");
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) throw Error(ErrorCode::ParseError, std::string("'") + name + "' items must be strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

inline void check_schema_version(const json& j) {
  const auto it = j.find("schema_version");
  if (it == j.end()) return;
  if (!it->is_number_integer() || it->get<int>() != kSchemaVersion) {
    throw Error(ErrorCode::ParseError, "unsupported schema_version " + it->dump());
  }
}

}  // namespace detail

inline json to_json(const SectorLabel& s) { return json{{"name", std::string(s.name())}, {"code", s.code()}}; }

/// {name, code} object or a bare code.
inline SectorLabel sector_from_json(const json& j) {
  if (j.is_number_integer()) return sector_from_code(j.get<int>());
  const auto code = detail::int_field(j, "code");
  const auto label = sector_from_code(code);
  const auto name = detail::optional_string(j, "name");
  if (!name.empty()) {
    const auto by_name = find_sector_by_name(name);
    if (!by_name || by_name->code() != code) {
      throw Error(ErrorCode::InvalidSector, "sector name '" + name + "' does not match code " + std::to_string(code));
    }
  }
  return label;
}

inline json taxonomy_json() {
  json out = json::array();
  for (std::size_t i = 0; i < kSectorTaxonomy.size(); ++i) out.push_back(to_json(SectorLabel::from_index(i)));
  return out;
}

inline json to_json(const std::vector<EvidenceItem>& items) {
  json out = json::array();
  for (const auto& e : items) out.push_back({{"label", e.label}, {"description", e.description}});
  return out;
}

inline json to_json(const MaterialSummary& s) {
  return json{{"schema_version", kSchemaVersion},
              {"overview", s.overview},
              {"sector", to_json(s.sector)},
              {"issues", s.issues},
              {"evidence_complainant", to_json(s.evidence_complainant)},
              {"evidence_opposite", to_json(s.evidence_opposite)},
              {"reliefs", s.reliefs}};
}

inline std::vector<EvidenceItem> evidence_from_json(const json& j, const char* name) {
  const auto& v = detail::field(j, name);
  if (!v.is_array()) throw Error(ErrorCode::ParseError, std::string("field '") + name + "' must be an array");
  std::vector<EvidenceItem> out;
  for (const auto& item : v) {
    out.push_back({detail::string_field(item, "label"), detail::string_field(item, "description")});
  }
  return out;
}

inline MaterialSummary summary_from_json(const json& j) {
  detail::check_schema_version(j);
  MaterialSummary s;
  s.overview = detail::string_field(j, "overview");
  s.sector = sector_from_json(detail::field(j, "sector"));
  s.issues = detail::string_list(j, "issues");
  s.evidence_complainant = evidence_from_json(j, "evidence_complainant");
  s.evidence_opposite = evidence_from_json(j, "evidence_opposite");
  s.reliefs = detail::string_list(j, "reliefs");
  try {
    validate(s);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.detail());
  }
  return s;
}

inline json to_json(const CaseFile& c) {
  return json{{"schema_version", kSchemaVersion},
              {"id", c.id},
              {"complaint_text", c.complaint_text},
              {"written_statement_text", c.written_statement_text},
              {"metadata", c.metadata}};
}

inline CaseFile case_from_json(const json& j) {
  detail::check_schema_version(j);
  CaseFile c;
  c.id = detail::string_field(j, "id");
  c.complaint_text = detail::string_field(j, "complaint_text");
  c.written_statement_text = detail::optional_string(j, "written_statement_text");
  if (const auto it = j.find("metadata"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) throw Error(ErrorCode::ParseError, "field 'metadata' must be an object");
    for (const auto& [k, v] : it->items()) {
      if (!v.is_string()) throw Error(ErrorCode::ParseError, "metadata value '" + k + "' must be a string");
      c.metadata[k] = v.get<std::string>();
    }
  }
  try {
    validate(c);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.detail());
  }
  return c;
}

inline json to_json(const JudgmentRecord& r) {
  json j{{"schema_version", kSchemaVersion},
         {"id", r.id},
         {"title", r.title},
         {"citation", r.citation},
         {"sector_name", std::string(r.sector.name())},
         {"sector_code", r.sector.code()},
         {"brief", r.brief}};
  if (r.full_text) j["full_text"] = *r.full_text;
  return j;
}

/// Structural problems raise ParseError; a code outside the taxonomy or a
/// name that contradicts the code raises InvalidSector.
inline JudgmentRecord judgment_from_json(const json& j) {
  detail::check_schema_version(j);
  JudgmentRecord r;
  r.id = detail::string_field(j, "id");
  r.title = detail::optional_string(j, "title");
  r.citation = detail::optional_string(j, "citation");
  r.brief = detail::string_field(j, "brief");
  if (const auto it = j.find("full_text"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw Error(ErrorCode::ParseError, "field 'full_text' must be a string");
    r.full_text = it->get<std::string>();
  }
  const auto code = detail::int_field(j, "sector_code");
  if (!is_sector_code(code)) {
    throw Error(ErrorCode::InvalidSector, "sector code " + std::to_string(code) + " is not in the taxonomy");
  }
  r.sector = sector_from_code(code);
  const auto name = detail::optional_string(j, "sector_name");
  if (!name.empty()) {
    const auto by_name = find_sector_by_name(name);
    if (!by_name || by_name->code() != code) {
      throw Error(ErrorCode::InvalidSector, "sector name '" + name + "' does not match code " + std::to_string(code));
    }
  }
  try {
    validate(r);
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.detail());
  }
  return r;
}

inline json to_json(const RankedJudgment& r) {
  return json{{"judgment_id", r.judgment_id},
              {"lexical_score", r.lexical_score},
              {"semantic_score", r.semantic_score},
              {"fused_score", r.fused_score},
              {"rank", r.rank}};
}

inline json to_json(const std::vector<RankedJudgment>& rows) {
  json out = json::array();
  for (const auto& r : rows) out.push_back(to_json(r));
  return out;
}

inline json error_json(const Error& e) {
  json j{{"error", std::string(e.code_name())}, {"message", e.detail()}};
  if (e.line()) j["line"] = *e.line();
  return j;
}

/// {"key": "text"} or {"key": ["first", "second", ...]}.
inline MockProvider::Script mock_script_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "mock script must be a JSON object");
  MockProvider::Script script;
  for (const auto& [key, value] : j.items()) {
    if (value.is_string()) {
      script[key] = {value.get<std::string>()};
    } else if (value.is_array() && !value.empty()) {
      for (const auto& v : value) {
        if (!v.is_string()) throw Error(ErrorCode::ParseError, "mock responses for '" + key + "' must be strings");
        script[key].push_back(v.get<std::string>());
      }
    } else {
      throw Error(ErrorCode::ParseError, "mock entry '" + key + "' must be a string or nonempty array");
    }
  }
  return script;
}

// ---------------------------------------------------------------------------
// Metric reports

inline json to_json(const ReferenceScores& r) {
  return json{{"rouge1_f1", r.rouge1}, {"rouge2_f1", r.rouge2}, {"rougeL_f1", r.rougeL}, {"bleu1", r.bleu1}};
}

inline json to_json(const MetricReport& report) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["pairs"] = report.pairs;
  j["settings"] = {
      {"rouge", "F1 per pair, averaged over pairs; tokens from the retrieval tokenizer"},
      {"bleu1", "sentence-level, clipped unigram precision times brevity penalty, no smoothing"},
      {"judge_temperature", 0.0},
  };
  json metrics = json::array();
  for (auto kind : report.kinds) {
    const auto& s = report.per_kind.at(kind);
    json m{{"metric", std::string(metric_name(kind))},
           {"column", std::string(metric_column(kind))},
           {"scale", metric_scale(kind) == MetricScale::Likert ? "likert" : "binary"},
           {"n", s.n},
           {"failures", s.failures}};
    m["mean"] = s.mean ? json(*s.mean) : json(nullptr);
    metrics.push_back(std::move(m));
  }
  j["metrics"] = std::move(metrics);
  j["reference"] = {{"overview", to_json(report.overview_reference_mean)},
                    {"summary", to_json(report.summary_reference_mean)}};
  json cases = json::array();
  for (const auto& cs : report.cases) {
    json c{{"pair_id", cs.pair_id}};
    json scores = json::object();
    for (const auto& [kind, score] : cs.scores) {
      json s{{"value", score.value}};
      if (score.rationale_text) s["rationale"] = *score.rationale_text;
      scores[std::string(metric_name(kind))] = std::move(s);
    }
    c["scores"] = std::move(scores);
    json failures = json::object();
    for (const auto& [kind, message] : cs.failures) failures[std::string(metric_name(kind))] = message;
    c["failures"] = std::move(failures);
    c["reference"] = {{"overview", to_json(cs.overview_reference)}, {"summary", to_json(cs.summary_reference)}};
    cases.push_back(std::move(c));
  }
  j["cases"] = std::move(cases);
  return j;
}

inline ReferenceScores reference_from_json(const json& j) {
  return ReferenceScores{j.at("rouge1_f1").get<double>(), j.at("rouge2_f1").get<double>(), j.at("rougeL_f1").get<double>(),
                         j.at("bleu1").get<double>()};
}

/// Inverse of to_json(MetricReport); settings notes are not read back.
inline MetricReport report_from_json(const json& j) {
  try {
    detail::check_schema_version(j);
    MetricReport r;
    r.pairs = j.at("pairs").get<std::size_t>();
    for (const auto& m : j.at("metrics")) {
      const auto kind = parse_metric(m.at("metric").get<std::string>());
      r.kinds.push_back(kind);
      KindSummary s;
      s.n = m.at("n").get<std::size_t>();
      s.failures = m.at("failures").get<std::size_t>();
      if (!m.at("mean").is_null()) s.mean = m.at("mean").get<double>();
      r.per_kind[kind] = s;
    }
    r.overview_reference_mean = reference_from_json(j.at("reference").at("overview"));
    r.summary_reference_mean = reference_from_json(j.at("reference").at("summary"));
    for (const auto& c : j.at("cases")) {
      CaseScores cs;
      cs.pair_id = c.at("pair_id").get<std::string>();
      for (const auto& [name, s] : c.at("scores").items()) {
        const auto kind = parse_metric(name);
        MetricScore score{kind, s.at("value").get<double>(), std::nullopt};
        if (s.contains("rationale")) score.rationale_text = s["rationale"].get<std::string>();
        cs.scores.emplace(kind, std::move(score));
      }
      for (const auto& [name, message] : c.at("failures").items()) {
        cs.failures[parse_metric(name)] = message.get<std::string>();
      }
      cs.overview_reference = reference_from_json(c.at("reference").at("overview"));
      cs.summary_reference = reference_from_json(c.at("reference").at("summary"));
      r.cases.push_back(std::move(cs));
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed report: ") + e.what());
  }
}

inline json to_json(const Correlation& c) {
  json j{{"metric", std::string(metric_name(c.kind))}, {"n", c.n}};
  j["rho"] = c.rho ? json(*c.rho) : json(nullptr);
  if (c.error) j["error"] = *c.error;
  return j;
}

inline std::string format_number(double v) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(4) << v;
  return ss.str();
}

/// One column per metric in report order, whether or not it was requested.
/// Rows: mean, n, failures, then one row per pair.
inline std::string to_csv(const MetricReport& report) {
  std::ostringstream out;
  out << "row";
  for (auto kind : kAllMetrics) out << ',' << metric_column(kind);
  out << '\n';
  auto summary_row = [&](const char* label, auto cell) {
    out << label;
    for (auto kind : kAllMetrics) {
      out << ',';
      const auto it = report.per_kind.find(kind);
      if (it != report.per_kind.end()) out << cell(it->second);
    }
    out << '\n';
  };
  summary_row("mean", [](const KindSummary& s) { return s.mean ? format_number(*s.mean) : std::string(); });
  summary_row("n", [](const KindSummary& s) { return std::to_string(s.n); });
  summary_row("failures", [](const KindSummary& s) { return std::to_string(s.failures); });
  for (const auto& cs : report.cases) {
    std::string id = cs.pair_id;
    if (id.find_first_of(",\"\n") != std::string::npos) {
      id = "\"" + replace_all(id, "\"", "\"\"") + "\"";
    }
    out << id;
    for (auto kind : kAllMetrics) {
      out << ',';
      const auto it = cs.scores.find(kind);
      if (it != cs.scores.end()) out << format_number(it->second.value);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace dispute
