#pragma once

// File formats: JSONL corpora, summary records, human score CSV, the BM25
// index file and the embedding cache.

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <unordered_set>
#include <vector>

#include "dispute/bm25.hpp"
#include "dispute/json_codec.hpp"
#include "dispute/judge.hpp"

namespace dispute {

namespace fs = std::filesystem;

/// Default layout under a workspace root.
struct CorpusLayout {
  fs::path root = ".";

  fs::path judgments() const { return root / "corpus" / "judgments.jsonl"; }
  fs::path cases() const { return root / "corpus" / "cases.jsonl"; }
  fs::path gold() const { return root / "corpus" / "gold.jsonl"; }
  fs::path summaries() const { return root / "out" / "summaries.jsonl"; }
  fs::path run(const std::string& run_id) const { return root / "out" / "runs" / (run_id + ".jsonl"); }
  fs::path report_json() const { return root / "out" / "report.json"; }
  fs::path report_csv() const { return root / "out" / "report.csv"; }
  fs::path bm25_index() const { return root / "index" / "bm25.idx"; }
  fs::path embeddings() const { return root / "index" / "embeddings.bin"; }
};

inline std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Writes to a sibling temp file and renames it over `path`.
inline void atomic_write(const fs::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::random_device rd;
  const fs::path tmp = path.string() + ".tmp" + std::to_string(rd());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      fs::remove(tmp, ec);
      throw Error(ErrorCode::IoError, "short write to " + tmp.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::IoError, "cannot replace " + path.string() + ": " + ec.message());
  }
}

// ---------------------------------------------------------------------------
// JSONL corpora

template <typename T>
struct LoadResult {
  std::vector<T> records;
  std::vector<Error> errors;  // each carries its 1-based line
  std::vector<std::string> warnings;

  bool ok() const { return errors.empty(); }

  /// First error, if any, rethrown.
  const LoadResult& or_throw() const {
    if (!errors.empty()) throw errors.front();
    return *this;
  }
};

namespace detail {

inline Error at_line(const Error& e, std::size_t line) { return Error(e.code(), e.detail(), line); }

template <typename T, typename Decode>
LoadResult<T> load_jsonl(std::string_view content, Decode&& decode,
                         const std::function<std::string(const T&)>& id_of) {
  LoadResult<T> out;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t blank = 0;
  for (auto line : text::split_lines(content)) {
    ++line_no;
    if (text::trim(line).empty()) {
      ++blank;
      continue;
    }
    try {
      json j;
      try {
        j = json::parse(line);
      } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
      }
      T record = decode(j);
      if (!seen.insert(id_of(record)).second) {
        throw Error(ErrorCode::DuplicateId, "duplicate id '" + id_of(record) + "'");
      }
      out.records.push_back(std::move(record));
    } catch (const Error& e) {
      out.errors.push_back(at_line(e, line_no));
    } catch (const json::exception& e) {
      out.errors.push_back(Error(ErrorCode::ParseError, e.what(), line_no));
    }
  }
  // a trailing newline yields one empty final line; that is not a skip
  if (!content.empty() && content.back() == '\n' && blank > 0) --blank;
  if (text::trim(content).empty()) blank = 0;
  if (blank > 0) out.warnings.push_back("skipped " + std::to_string(blank) + " blank line(s)");
  if (out.records.empty() && out.errors.empty()) out.warnings.push_back("file has no records");
  return out;
}

}  // namespace detail

inline LoadResult<JudgmentRecord> parse_judgments(std::string_view content) {
  return detail::load_jsonl<JudgmentRecord>(content, judgment_from_json,
                                            [](const JudgmentRecord& r) { return r.id; });
}

inline LoadResult<CaseFile> parse_case_files(std::string_view content) {
  return detail::load_jsonl<CaseFile>(content, case_from_json, [](const CaseFile& c) { return c.id; });
}

inline LoadResult<JudgmentRecord> load_judgments(const fs::path& path) {
  return parse_judgments(read_text_file(path));
}

inline LoadResult<CaseFile> load_case_files(const fs::path& path) {
  return parse_case_files(read_text_file(path));
}

template <typename T>
std::string to_jsonl(const std::vector<T>& records) {
  std::string out;
  for (const auto& r : records) {
    out += to_json(r).dump();
    out += '\n';
  }
  return out;
}

inline void save_judgments(const fs::path& path, const std::vector<JudgmentRecord>& records) {
  atomic_write(path, to_jsonl(records));
}

inline void save_case_files(const fs::path& path, const std::vector<CaseFile>& records) {
  atomic_write(path, to_jsonl(records));
}

// ---------------------------------------------------------------------------
// Summaries

inline void save_summary(const fs::path& path, const MaterialSummary& s) {
  atomic_write(path, to_json(s).dump(2) + "\n");
}

inline MaterialSummary parse_summary(std::string_view content) {
  json j;
  try {
    j = json::parse(content);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed summary JSON: ") + e.what());
  }
  try {
    return summary_from_json(j);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.detail());
  }
}

inline MaterialSummary load_summary(const fs::path& path) { return parse_summary(read_text_file(path)); }

/// One line of out/summaries.jsonl: a case's summary or its failure.
struct SummaryRecord {
  std::string case_id;
  PromptStrategy strategy = PromptStrategy::PartwiseCoT;
  std::optional<MaterialSummary> summary;
  std::optional<std::string> error_code;
  std::optional<std::string> error_message;
  std::vector<std::string> warnings;
};

inline json to_json(const SummaryRecord& r) {
  json j{{"schema_version", kSchemaVersion},
         {"case_id", r.case_id},
         {"strategy", std::string(strategy_name(r.strategy))},
         {"warnings", r.warnings}};
  if (r.summary) j["summary"] = to_json(*r.summary);
  if (r.error_code) j["error"] = {{"error", *r.error_code}, {"message", r.error_message.value_or("")}};
  return j;
}

inline SummaryRecord summary_record_from_json(const json& j) {
  detail::check_schema_version(j);
  SummaryRecord r;
  r.case_id = detail::string_field(j, "case_id");
  r.strategy = parse_strategy(detail::string_field(j, "strategy"));
  if (const auto it = j.find("summary"); it != j.end() && !it->is_null()) r.summary = summary_from_json(*it);
  if (const auto it = j.find("error"); it != j.end() && it->is_object()) {
    r.error_code = detail::string_field(*it, "error");
    r.error_message = detail::optional_string(*it, "message");
  }
  if (const auto it = j.find("warnings"); it != j.end() && it->is_array()) {
    for (const auto& w : *it) {
      if (w.is_string()) r.warnings.push_back(w.get<std::string>());
    }
  }
  if (!r.summary && !r.error_code) throw Error(ErrorCode::ParseError, "record has neither summary nor error");
  return r;
}

inline LoadResult<SummaryRecord> parse_summary_records(std::string_view content) {
  return detail::load_jsonl<SummaryRecord>(content, summary_record_from_json,
                                           [](const SummaryRecord& r) { return r.case_id; });
}

/// Reference summary for one case: {"case_id": ..., "summary": {...}}.
struct GoldSummary {
  std::string case_id;
  MaterialSummary summary;
};

inline json to_json(const GoldSummary& g) { return json{{"case_id", g.case_id}, {"summary", to_json(g.summary)}}; }

inline LoadResult<GoldSummary> parse_gold_summaries(std::string_view content) {
  return detail::load_jsonl<GoldSummary>(
      content,
      [](const json& j) {
        return GoldSummary{detail::string_field(j, "case_id"), summary_from_json(detail::field(j, "summary"))};
      },
      [](const GoldSummary& g) { return g.case_id; });
}

inline LoadResult<SummaryRecord> load_summary_records(const fs::path& path) {
  return parse_summary_records(read_text_file(path));
}

inline LoadResult<GoldSummary> load_gold_summaries(const fs::path& path) {
  return parse_gold_summaries(read_text_file(path));
}

// ---------------------------------------------------------------------------
// Human scores

struct HumanScores {
  HumanScoreTable table;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::string(text::trim(cell)));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(std::string(text::trim(cell)));
  return cells;
}

inline double parse_human_value(MetricKind kind, const std::string& cell, std::size_t line) {
  if (metric_scale(kind) == MetricScale::Binary) {
    if (text::iequals_ascii(cell, "yes")) return 1.0;
    if (text::iequals_ascii(cell, "no")) return 0.0;
  }
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ParseError, "score '" + cell + "' is not a number", line);
  }
  if (!in_scale(kind, value)) {
    throw Error(ErrorCode::OutOfScale,
                "score " + cell + " is outside the scale of " + std::string(metric_name(kind)), line);
  }
  return value;
}

}  // namespace detail

/// CSV with header case_id,metric,score. Duplicate (case, metric) rows keep
/// the last value and add a warning.
inline HumanScores parse_human_scores(std::string_view content) {
  HumanScores out;
  std::size_t line_no = 0;
  bool header = false;
  for (auto line : text::split_lines(content)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    auto cells = detail::split_csv_line(line);
    if (!header) {
      if (!cells.empty() && !cells[0].empty() && cells[0].substr(0, 3) == "\xEF\xBB\xBF") {
        cells[0] = cells[0].substr(3);
      }
      if (cells.size() != 3 || cells[0] != "case_id" || cells[1] != "metric" || cells[2] != "score") {
        throw Error(ErrorCode::ParseError, "expected header case_id,metric,score", line_no);
      }
      header = true;
      continue;
    }
    if (cells.size() != 3) throw Error(ErrorCode::ParseError, "expected 3 columns", line_no);
    if (cells[0].empty()) throw Error(ErrorCode::ParseError, "empty case_id", line_no);
    MetricKind kind;
    try {
      kind = parse_metric(cells[1]);
    } catch (const Error& e) {
      throw Error(e.code(), e.detail(), line_no);
    }
    const double value = detail::parse_human_value(kind, cells[2], line_no);
    auto& row = out.table[cells[0]];
    if (row.count(kind)) {
      out.warnings.push_back("line " + std::to_string(line_no) + ": duplicate score for (" + cells[0] + ", " +
                             std::string(metric_name(kind)) + "), keeping the last");
    }
    row[kind] = value;
  }
  if (!header) throw Error(ErrorCode::ParseError, "human score file is empty");
  return out;
}

inline HumanScores load_human_scores(const fs::path& path) { return parse_human_scores(read_text_file(path)); }

// ---------------------------------------------------------------------------
// BM25 index file

inline constexpr int kIndexFormatVersion = 1;

/// Hash over everything the index depends on: ids, indexed text and sectors,
/// in corpus order.
inline std::string corpus_hash(const std::vector<JudgmentRecord>& docs, IndexField field = IndexField::Brief) {
  std::uint64_t h = text::fnv1a64("");
  for (const auto& d : docs) {
    h = text::fnv1a64(d.id, h);
    h = text::fnv1a64("\x1f", h);
    h = text::fnv1a64(indexed_text(d, field), h);
    h = text::fnv1a64("\x1f" + std::to_string(d.sector.code()) + "\x1e", h);
  }
  return text::hex64(h);
}

inline std::string_view field_name(IndexField f) { return f == IndexField::Brief ? "brief" : "full_text"; }

inline json index_to_json(const Bm25Index& index, const std::string& hash, IndexField field) {
  json postings = json::object();
  for (const auto& [term, list] : index.postings()) {
    json arr = json::array();
    for (const auto& p : list) arr.push_back({p.doc, p.tf});
    postings[term] = std::move(arr);
  }
  return json{{"format", "bm25"},
              {"version", kIndexFormatVersion},
              {"params", {{"k1", index.params().k1}, {"b", index.params().b}}},
              {"field", std::string(field_name(field))},
              {"corpus_hash", hash},
              {"doc_ids", index.doc_ids()},
              {"doc_lengths", index.doc_lengths()},
              {"doc_sectors", index.doc_sectors()},
              {"postings", std::move(postings)}};
}

inline void save_index(const fs::path& path, const Bm25Index& index, const std::string& hash,
                       IndexField field = IndexField::Brief) {
  atomic_write(path, index_to_json(index, hash, field).dump());
}

/// Rejects a file built from a different corpus with StaleIndex.
inline Bm25Index load_index(const fs::path& path, const std::string& expected_hash,
                            IndexField field = IndexField::Brief) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed index file: ") + e.what());
  }
  try {
    if (j.value("format", "") != "bm25" || j.value("version", 0) != kIndexFormatVersion) {
      throw Error(ErrorCode::ParseError, "unsupported index format or version");
    }
    if (j.at("corpus_hash").get<std::string>() != expected_hash) {
      throw Error(ErrorCode::StaleIndex, "index was built from a different corpus; rebuild it");
    }
    if (j.at("field").get<std::string>() != field_name(field)) {
      throw Error(ErrorCode::StaleIndex, "index was built over a different field");
    }
    Bm25Params params{j.at("params").at("k1").get<double>(), j.at("params").at("b").get<double>()};
    Bm25Index::PostingMap postings;
    for (const auto& [term, arr] : j.at("postings").items()) {
      auto& list = postings[term];
      for (const auto& p : arr) list.push_back({p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>()});
    }
    return Bm25Index::from_parts(params, j.at("doc_ids").get<std::vector<std::string>>(),
                                 j.at("doc_lengths").get<std::vector<std::size_t>>(),
                                 j.at("doc_sectors").get<std::vector<int>>(), std::move(postings));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed index file: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Embedding cache: a one-line JSON header, then count * dim little-endian
// float64 values.

struct EmbeddingCacheKey {
  std::string provider;
  std::string model;
  std::string content_hash;

  friend bool operator==(const EmbeddingCacheKey&, const EmbeddingCacheKey&) = default;
};

inline void save_embeddings(const fs::path& path, const EmbeddingCacheKey& key,
                            const std::vector<EmbeddingVector>& vectors) {
  const std::size_t dim = vectors.empty() ? 0 : vectors.front().dim();
  json header{{"format", "embeddings"},
              {"version", 1},
              {"provider", key.provider},
              {"model", key.model},
              {"content_hash", key.content_hash},
              {"count", vectors.size()},
              {"dim", dim}};
  std::string out = header.dump() + "\n";
  out.reserve(out.size() + vectors.size() * dim * 8);
  for (const auto& v : vectors) {
    if (v.dim() != dim) throw Error(ErrorCode::DimensionMismatch, "cannot cache ragged embeddings");
    for (double x : v.values) {
      std::uint64_t bits;
      std::memcpy(&bits, &x, sizeof bits);
      for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xFF));
    }
  }
  atomic_write(path, out);
}

/// Cached vectors when the file exists and was written under `key`;
/// nullopt when absent or keyed differently. A damaged file is an error.
inline std::optional<std::vector<EmbeddingVector>> load_embeddings(const fs::path& path,
                                                                   const EmbeddingCacheKey& key) {
  if (!fs::exists(path)) return std::nullopt;
  const std::string content = read_text_file(path);
  const auto newline = content.find('\n');
  if (newline == std::string::npos) throw Error(ErrorCode::ParseError, "embedding cache has no header");
  json header;
  try {
    header = json::parse(content.substr(0, newline));
  } catch (const json::parse_error&) {
    throw Error(ErrorCode::ParseError, "embedding cache header is not JSON");
  }
  if (header.value("format", "") != "embeddings" || header.value("version", 0) != 1) {
    throw Error(ErrorCode::ParseError, "unsupported embedding cache format");
  }
  const EmbeddingCacheKey stored{header.value("provider", ""), header.value("model", ""),
                                 header.value("content_hash", "")};
  if (!(stored == key)) return std::nullopt;
  const auto count = header.value("count", std::size_t{0});
  const auto dim = header.value("dim", std::size_t{0});
  const std::size_t body = content.size() - newline - 1;
  if (body != count * dim * 8) throw Error(ErrorCode::ParseError, "embedding cache is truncated");
  std::vector<EmbeddingVector> out(count, EmbeddingVector{std::vector<double>(dim)});
  const auto* p = reinterpret_cast<const unsigned char*>(content.data() + newline + 1);
  for (auto& v : out) {
    for (auto& x : v.values) {
      std::uint64_t bits = 0;
      for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(p[b]) << (8 * b);
      std::memcpy(&x, &bits, sizeof x);
      p += 8;
    }
  }
  return out;
}

}  // namespace dispute
