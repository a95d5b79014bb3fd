#pragma once

#include <array>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include "dispute/detail/assets.hpp"
#include "dispute/domain.hpp"
#include "dispute/error.hpp"

namespace dispute {

enum class SummaryPart {
  Overview,
  Sector,
  Issues,
  EvidenceComplainant,
  EvidenceOpposite,
  Reliefs,
  WholeSummary,
};

/// Generation order for the part-wise strategies.
inline constexpr std::array<SummaryPart, 6> kSummaryParts{
    SummaryPart::Overview,           SummaryPart::Sector,
    SummaryPart::Issues,             SummaryPart::EvidenceComplainant,
    SummaryPart::EvidenceOpposite,   SummaryPart::Reliefs,
};

inline std::string_view part_key(SummaryPart p) {
  switch (p) {
    case SummaryPart::Overview: return "overview";
    case SummaryPart::Sector: return "sector";
    case SummaryPart::Issues: return "issues";
    case SummaryPart::EvidenceComplainant: return "evidence_complainant";
    case SummaryPart::EvidenceOpposite: return "evidence_opposite";
    case SummaryPart::Reliefs: return "reliefs";
    case SummaryPart::WholeSummary: return "whole_summary";
  }
  return "whole_summary";
}

inline std::string_view part_title(SummaryPart p) {
  switch (p) {
    case SummaryPart::Overview: return "Overview";
    case SummaryPart::Sector: return "Sector";
    case SummaryPart::Issues: return "Issues";
    case SummaryPart::EvidenceComplainant: return "Evidence (Complainant)";
    case SummaryPart::EvidenceOpposite: return "Evidence (Opposite Party)";
    case SummaryPart::Reliefs: return "Reliefs";
    case SummaryPart::WholeSummary: return "Whole Summary";
  }
  return "Whole Summary";
}

/// max_new_tokens per part.
inline int part_budget(SummaryPart p) {
  switch (p) {
    case SummaryPart::Sector: return 16;
    case SummaryPart::Reliefs: return 256;
    case SummaryPart::Overview: return 512;
    case SummaryPart::Issues: return 512;
    case SummaryPart::EvidenceComplainant: return 256;
    case SummaryPart::EvidenceOpposite: return 256;
    case SummaryPart::WholeSummary: return 2048;
  }
  return 512;
}

inline bool is_supported(SummaryPart part, PromptStrategy strategy) {
  return (part == SummaryPart::WholeSummary) == (strategy == PromptStrategy::SinglePrompt);
}

struct PromptBundle {
  std::string system_prompt;
  std::string user_prompt;
  SummaryPart part = SummaryPart::Overview;
  GenerationParams params;

  friend bool operator==(const PromptBundle&, const PromptBundle&) = default;
};

/// Template text keyed by (strategy, part). Starts from the built-in set and
/// can be overridden from a directory laid out as `<strategy>/<part>.txt`,
/// the same layout as the shipped `assets/prompts/` tree.
class PromptLibrary {
 public:
  static PromptLibrary builtin() {
    PromptLibrary lib;
    for (const auto& [key, body] : detail::kEmbeddedAssets) {
      constexpr std::string_view prefix = "prompts/";
      if (key.substr(0, prefix.size()) == prefix) {
        lib.templates_.emplace(std::string(key.substr(prefix.size())), std::string(body));
      }
    }
    return lib;
  }

  /// Built-ins overlaid with whatever template files exist under `dir`.
  static PromptLibrary from_directory(const std::filesystem::path& dir) {
    PromptLibrary lib = builtin();
    if (!std::filesystem::is_directory(dir)) {
      throw Error(ErrorCode::ConfigError, "prompt directory not found: " + dir.string());
    }
    for (auto& [key, body] : lib.templates_) {
      const auto file = dir / (key + ".txt");
      if (!std::filesystem::exists(file)) continue;
      std::ifstream in(file, std::ios::binary);
      std::ostringstream ss;
      ss << in.rdbuf();
      body = ss.str();
    }
    return lib;
  }

  const std::string& get(PromptStrategy strategy, SummaryPart part) const {
    const auto it = templates_.find(key(strategy, part));
    if (it == templates_.end()) {
      throw Error(ErrorCode::UnsupportedCombination,
                  "no template for " + key(strategy, part));
    }
    return it->second;
  }

  static std::string key(PromptStrategy strategy, SummaryPart part) {
    return std::string(strategy_name(strategy)) + "/" + std::string(part_key(part));
  }

 private:
  std::map<std::string, std::string> templates_;
};

/// The case text as sent in the user turn.
inline std::string render_case_text(const CaseFile& c) {
  std::string out = "Complaint:\n";
  out += text::trim(c.complaint_text);
  if (!text::trim(c.written_statement_text).empty()) {
    out += "\n\nWritten statement:\n";
    out += text::trim(c.written_statement_text);
  }
  out += '\n';
  return out;
}

/// Decoding defaults shared by every part; only max_new_tokens varies.
inline GenerationParams default_decoding() { return GenerationParams{}; }

inline PromptBundle build_part_prompt(SummaryPart part, PromptStrategy strategy,
                                      const CaseFile& c, const PromptLibrary& library,
                                      const GenerationParams& decoding = default_decoding()) {
  if (!is_supported(part, strategy)) {
    throw Error(ErrorCode::UnsupportedCombination,
                std::string(part_key(part)) + " is not generated under strategy " +
                    std::string(strategy_name(strategy)));
  }
  PromptBundle bundle;
  bundle.system_prompt = library.get(strategy, part);
  bundle.user_prompt = render_case_text(c);
  bundle.part = part;
  bundle.params = decoding;
  bundle.params.max_new_tokens = part_budget(part);
  return bundle;
}

inline PromptBundle build_part_prompt(SummaryPart part, PromptStrategy strategy,
                                      const CaseFile& c) {
  static const PromptLibrary library = PromptLibrary::builtin();
  return build_part_prompt(part, strategy, c, library);
}

}  // namespace dispute
