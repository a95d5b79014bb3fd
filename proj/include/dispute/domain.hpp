#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dispute/error.hpp"
#include "dispute/text.hpp"

namespace dispute {

inline constexpr int kTaxonomyVersion = 1;

struct SectorEntry {
  std::string_view name;
  int code;
};

/// Consumer-protection sector taxonomy, version 1 (29 entries).
inline constexpr std::array<SectorEntry, 29> kSectorTaxonomy{{
    {"Banking and Financial Services", 101},
    {"Insurance", 102},
    {"Retail - Clothing", 103},
    {"Retail - Electronics", 104},
    {"Retail - Home & Furniture", 105},
    {"Retail - Groceries and FMCG", 106},
    {"Retail - Beauty & Personal Care", 107},
    {"E-commerce", 108},
    {"Telecommunications", 109},
    {"Consumer Electronics", 110},
    {"Healthcare and Pharmaceuticals", 111},
    {"Medical Services (including Negligence)", 112},
    {"Transport - Airlines", 113},
    {"Transport - Railways", 114},
    {"Real Estate", 115},
    {"Utilities (Electricity, Water)", 116},
    {"Automobiles", 117},
    {"Food Services", 118},
    {"Travel and Tourism", 119},
    {"Education", 120},
    {"Entertainment and Media", 121},
    {"Legal Services", 122},
    {"Home Services", 123},
    {"Sports and Recreation", 124},
    {"Technology Services", 125},
    {"Legal Metrology", 126},
    {"Petroleum", 127},
    {"Postal and Courier", 128},
    {"Others", 999},
}};

/// A (name, code) pair that is always one of the taxonomy entries.
class SectorLabel {
 public:
  /// Defaults to "Others, 999".
  SectorLabel() : index_(kSectorTaxonomy.size() - 1) {}

  std::string_view name() const { return kSectorTaxonomy[index_].name; }
  int code() const { return kSectorTaxonomy[index_].code; }

  friend bool operator==(const SectorLabel&, const SectorLabel&) = default;

  static SectorLabel from_index(std::size_t index) { return SectorLabel(index); }

 private:
  explicit SectorLabel(std::size_t index) : index_(index) {}
  std::size_t index_;
};

inline SectorLabel sector_from_code(int code) {
  for (std::size_t i = 0; i < kSectorTaxonomy.size(); ++i) {
    if (kSectorTaxonomy[i].code == code) return SectorLabel::from_index(i);
  }
  throw Error(ErrorCode::UnknownSectorCode,
              "sector code " + std::to_string(code) + " is not in the taxonomy");
}

inline bool is_sector_code(int code) {
  return std::any_of(kSectorTaxonomy.begin(), kSectorTaxonomy.end(),
                     [code](const SectorEntry& e) { return e.code == code; });
}

/// Lowercased, whitespace-collapsed form used for name comparison.
inline std::string normalize_sector_name(std::string_view name) {
  return text::lowercase(text::collapse_whitespace(name));
}

namespace detail {

/// "Medical Services (including Negligence)" -> "Medical Services".
inline std::string strip_parenthetical(std::string_view name) {
  const auto open = name.find(" (");
  if (open == std::string_view::npos || name.back() != ')') return std::string(name);
  return std::string(name.substr(0, open));
}

}  // namespace detail

/// Accepted spellings for each taxonomy entry, normalized.
inline std::vector<std::pair<std::string, std::size_t>> sector_name_variants() {
  std::vector<std::pair<std::string, std::size_t>> variants;
  for (std::size_t i = 0; i < kSectorTaxonomy.size(); ++i) {
    const auto name = kSectorTaxonomy[i].name;
    variants.emplace_back(normalize_sector_name(name), i);
    const auto stripped = detail::strip_parenthetical(name);
    if (stripped != name) variants.emplace_back(normalize_sector_name(stripped), i);
  }
  return variants;
}

inline std::optional<SectorLabel> find_sector_by_name(std::string_view name) {
  const std::string key = normalize_sector_name(name);
  for (const auto& [variant, index] : sector_name_variants()) {
    if (variant == key) return SectorLabel::from_index(index);
  }
  return std::nullopt;
}

inline SectorLabel sector_from_name(std::string_view name) {
  if (auto found = find_sector_by_name(name)) return *found;
  throw Error(ErrorCode::UnknownSectorName,
              "sector name '" + std::string(name) + "' is not in the taxonomy");
}

// ---------------------------------------------------------------------------

struct CaseFile {
  std::string id;
  std::string complaint_text;
  std::string written_statement_text;
  std::map<std::string, std::string> metadata;

  friend bool operator==(const CaseFile&, const CaseFile&) = default;
};

inline void validate(const CaseFile& c) {
  if (c.id.empty()) throw Error(ErrorCode::InvalidRecord, "case id is empty");
  if (text::trim(c.complaint_text).empty()) {
    throw Error(ErrorCode::InvalidRecord, "case '" + c.id + "' has empty complaint_text");
  }
}

struct EvidenceItem {
  std::string label;
  std::string description;

  friend bool operator==(const EvidenceItem&, const EvidenceItem&) = default;
};

enum class EvidenceSide { Complainant, Opposite };

inline std::string_view evidence_prefix(EvidenceSide side) {
  return side == EvidenceSide::Complainant ? "CE" : "OPE";
}

/// The six-part material summary. An empty evidence list stands for "Nil".
struct MaterialSummary {
  std::string overview;
  SectorLabel sector;
  std::vector<std::string> issues;
  std::vector<EvidenceItem> evidence_complainant;
  std::vector<EvidenceItem> evidence_opposite;
  std::vector<std::string> reliefs;

  friend bool operator==(const MaterialSummary&, const MaterialSummary&) = default;
};

inline bool has_consecutive_labels(const std::vector<EvidenceItem>& items,
                                   EvidenceSide side) {
  const std::string prefix(evidence_prefix(side));
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].label != prefix + std::to_string(i + 1)) return false;
  }
  return true;
}

/// Throws InvalidRecord on the first violated invariant. `complete` also
/// demands a nonempty overview, issues and reliefs.
inline void validate(const MaterialSummary& s, bool complete = true) {
  if (!has_consecutive_labels(s.evidence_complainant, EvidenceSide::Complainant)) {
    throw Error(ErrorCode::InvalidRecord, "complainant evidence labels are not CE1..CEn");
  }
  if (!has_consecutive_labels(s.evidence_opposite, EvidenceSide::Opposite)) {
    throw Error(ErrorCode::InvalidRecord, "opposite party evidence labels are not OPE1..OPEn");
  }
  if (!complete) return;
  if (text::trim(s.overview).empty()) {
    throw Error(ErrorCode::InvalidRecord, "overview is empty");
  }
  if (s.issues.empty()) throw Error(ErrorCode::InvalidRecord, "issues list is empty");
  if (s.reliefs.empty()) throw Error(ErrorCode::InvalidRecord, "reliefs list is empty");
}

struct JudgmentRecord {
  std::string id;
  std::string title;
  std::string citation;
  SectorLabel sector;
  std::string brief;
  std::optional<std::string> full_text;

  friend bool operator==(const JudgmentRecord&, const JudgmentRecord&) = default;
};

inline void validate(const JudgmentRecord& j) {
  if (j.id.empty()) throw Error(ErrorCode::InvalidRecord, "judgment id is empty");
  if (text::trim(j.brief).empty()) {
    throw Error(ErrorCode::InvalidRecord, "judgment '" + j.id + "' has an empty brief");
  }
}

struct RankedJudgment {
  std::string judgment_id;
  double lexical_score = 0.0;
  double semantic_score = 0.0;
  double fused_score = 0.0;
  int rank = 0;

  friend bool operator==(const RankedJudgment&, const RankedJudgment&) = default;
};

enum class PromptStrategy { SinglePrompt, PartwiseSR, PartwiseCoT };

inline std::string_view strategy_name(PromptStrategy s) {
  switch (s) {
    case PromptStrategy::SinglePrompt: return "single";
    case PromptStrategy::PartwiseSR: return "partwise-sr";
    case PromptStrategy::PartwiseCoT: return "partwise-cot";
  }
  return "single";
}

inline PromptStrategy parse_strategy(std::string_view name) {
  for (auto s : {PromptStrategy::SinglePrompt, PromptStrategy::PartwiseSR,
                 PromptStrategy::PartwiseCoT}) {
    if (text::iequals_ascii(name, strategy_name(s))) return s;
  }
  throw Error(ErrorCode::InvalidArgument,
              "unknown strategy '" + std::string(name) +
                  "' (expected single, partwise-sr or partwise-cot)");
}

struct GenerationParams {
  double temperature = 0.7;
  double top_p = 0.95;
  int top_k = 50;
  int max_new_tokens = 512;

  friend bool operator==(const GenerationParams&, const GenerationParams&) = default;
};

inline void validate(const GenerationParams& p) {
  if (!(p.temperature >= 0.0)) throw Error(ErrorCode::InvalidArgument, "temperature must be >= 0");
  if (!(p.top_p > 0.0 && p.top_p <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "top_p must be in (0, 1]");
  }
  if (p.top_k < 1) throw Error(ErrorCode::InvalidArgument, "top_k must be >= 1");
  if (p.max_new_tokens < 1) throw Error(ErrorCode::InvalidArgument, "max_new_tokens must be >= 1");
}

}  // namespace dispute
