#pragma once

#include <algorithm>
#include <optional>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "dispute/domain.hpp"
#include "dispute/error.hpp"
#include "dispute/prompts.hpp"
#include "dispute/text.hpp"

namespace dispute {

/// Thrown by parse_whole_summary; lists every heading that was not found.
class MissingPartError : public Error {
 public:
  explicit MissingPartError(std::vector<SummaryPart> parts)
      : Error(ErrorCode::MissingPartError, describe(parts)), parts_(std::move(parts)) {}

  const std::vector<SummaryPart>& parts() const noexcept { return parts_; }

 private:
  static std::string describe(const std::vector<SummaryPart>& parts) {
    std::string msg = "missing part(s):";
    for (auto p : parts) {
      msg += ' ';
      msg += part_key(p);
    }
    return msg;
  }
  std::vector<SummaryPart> parts_;
};

struct SectorParseResult {
  SectorLabel sector;
  std::vector<std::string> warnings;
};

struct ParsedSummary {
  MaterialSummary summary;
  std::vector<std::string> warnings;
};

namespace detail {

inline bool is_ascii_alnum(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

/// Strips trailing separators (spaces, ',', ':', ';', '-', en/em dash).
inline std::string_view strip_trailing_separators(std::string_view s) {
  for (;;) {
    const auto before = s.size();
    while (!s.empty() && (text::is_space(s.back()) || s.back() == ',' || s.back() == ':' ||
                          s.back() == ';' || s.back() == '-')) {
      s.remove_suffix(1);
    }
    for (std::string_view dash : {"–", "—"}) {
      if (s.size() >= dash.size() && s.substr(s.size() - dash.size()) == dash) {
        s.remove_suffix(dash.size());
      }
    }
    if (s.size() == before) return s;
  }
}

/// Finds a taxonomy name that ends `prefix` on a word boundary. Longest
/// variant wins so "Retail - Electronics" beats "Electronics"-like overlaps.
inline std::optional<std::pair<SectorLabel, std::string>> sector_name_suffix(
    std::string_view prefix) {
  const std::string norm = normalize_sector_name(strip_trailing_separators(prefix));
  auto variants = sector_name_variants();
  std::stable_sort(variants.begin(), variants.end(), [](const auto& a, const auto& b) {
    return a.first.size() > b.first.size();
  });
  for (const auto& [variant, index] : variants) {
    if (norm.size() < variant.size()) continue;
    if (norm.compare(norm.size() - variant.size(), variant.size(), variant) != 0) continue;
    const std::size_t start = norm.size() - variant.size();
    if (start > 0 && is_ascii_alnum(norm[start - 1])) continue;
    return std::make_pair(SectorLabel::from_index(index), variant);
  }
  return std::nullopt;
}

/// Matches "Sector:-", "Sector:", "Sector & Code:", "SECTOR AND SECTOR CODE:",
/// "The sector is" and returns whatever follows on the line.
inline std::optional<std::string> after_sector_prefix(std::string_view line) {
  static const std::regex re(
      R"(^\s*[*#]*\s*(?:the\s+)?sector(?:\s*(?:&|and)\s*(?:sector\s+)?code)?(?:\s+name)?\s*\**\s*(?::-|:|-|is\b)\s*(.*)$)",
      std::regex::icase);
  std::match_results<std::string_view::const_iterator> m;
  if (std::regex_match(line.begin(), line.end(), m, re)) return m[1].str();
  return std::nullopt;
}

}  // namespace detail

/// Extracts "<Sector Name>, <Sector Code>" from model output. Tolerates a
/// missing "Sector:-" prefix and surrounding prose; when name and code
/// disagree the code wins and a warning is recorded.
inline SectorParseResult parse_sector_line(std::string_view body) {
  static const std::regex code_re(R"((?:^|[^0-9])([0-9]{3})(?![0-9]))");
  const auto lines = text::split_lines(body);

  for (auto line : lines) {
    const auto prefixed = detail::after_sector_prefix(line);
    auto it = std::regex_iterator<std::string_view::const_iterator>(line.begin(), line.end(),
                                                                   code_re);
    for (; it != decltype(it){}; ++it) {
      const auto& m = *it;
      const auto code_pos = static_cast<std::size_t>(m.position(1));
      const int code = std::stoi(m[1].str());
      const auto named = detail::sector_name_suffix(line.substr(0, code_pos));
      if (!named && !prefixed) continue;

      if (!is_sector_code(code)) {
        throw Error(ErrorCode::UnknownSectorCode,
                    "sector code " + std::to_string(code) + " is not in the taxonomy");
      }
      SectorParseResult result{sector_from_code(code), {}};
      if (named && named->first != result.sector) {
        result.warnings.push_back("sector name '" + std::string(named->first.name()) +
                                  "' conflicts with code " + std::to_string(code) +
                                  "; using code");
      } else if (!named) {
        const auto name_part =
            detail::strip_trailing_separators(text::trim(line.substr(0, code_pos)));
        const auto tail = detail::strip_trailing_separators(text::trim(*prefixed));
        if (tail.size() > 3) {
          result.warnings.push_back("sector name in '" + std::string(name_part) +
                                    "' is not in the taxonomy; using code");
        }
      }
      return result;
    }
  }

  for (auto line : lines) {
    std::string candidate;
    if (auto prefixed = detail::after_sector_prefix(line)) {
      candidate = *prefixed;
    } else {
      candidate = std::string(line);
    }
    auto trimmed = detail::strip_trailing_separators(text::trim(candidate));
    while (!trimmed.empty() && trimmed.back() == '.') trimmed.remove_suffix(1);
    if (trimmed.empty()) continue;
    if (auto found = find_sector_by_name(trimmed)) return {*found, {}};
  }
  throw Error(ErrorCode::SectorParseError, "no sector line found in model output");
}

/// Reads CE<n>/OPE<n> labeled lines ("." or ":" after the label), joins
/// wrapped continuation lines and relabels 1..n in order. "Nil" means none.
inline std::vector<EvidenceItem> parse_evidence_list(std::string_view body, EvidenceSide side) {
  static const std::regex label_re(R"(^\s*[*]*\s*(OPE|CE)\s*(\d+)\s*[*]*\s*[.:]\s*(.*)$)",
                                   std::regex::icase);
  const std::string wanted(evidence_prefix(side));
  std::vector<std::string> descriptions;
  bool in_item = false;
  for (auto line : text::split_lines(body)) {
    if (text::trim(line).empty()) {
      in_item = false;
      continue;
    }
    std::match_results<std::string_view::const_iterator> m;
    if (std::regex_match(line.begin(), line.end(), m, label_re)) {
      in_item = text::iequals_ascii(m[1].str(), wanted);
      if (in_item) descriptions.push_back(text::collapse_whitespace(m[3].str()));
      continue;
    }
    if (in_item) {
      auto& last = descriptions.back();
      const auto extra = text::collapse_whitespace(line);
      if (!last.empty()) last.push_back(' ');
      last += extra;
    }
  }

  if (descriptions.empty()) {
    const auto tokens = text::tokenize(body);
    if (std::find(tokens.begin(), tokens.end(), "nil") != tokens.end()) return {};
    throw Error(ErrorCode::EvidenceParseError,
                "no " + wanted + "<n> lines and no 'Nil' in model output");
  }
  std::vector<EvidenceItem> items;
  items.reserve(descriptions.size());
  for (std::size_t i = 0; i < descriptions.size(); ++i) {
    items.push_back({wanted + std::to_string(i + 1), std::move(descriptions[i])});
  }
  return items;
}

namespace detail {

/// A wrapped line continues an item when the item has no sentence-final
/// punctuation yet or the line starts in lowercase or with a digit.
inline bool continues_item(std::string_view item, std::string_view line) {
  if (item.empty() || line.empty()) return true;
  const char last = item.back();
  if (last != '.' && last != '?' && last != '!' && last != ';') return true;
  const char first = line.front();
  return (first >= 'a' && first <= 'z') || (first >= '0' && first <= '9');
}

}  // namespace detail

/// Splits "1." / "1)" / "-" marked lines into items. Unmarked lines right
/// after an item continue it; unmarked lines elsewhere are prose and are
/// dropped. Output with no markers at all is read one item per line.
inline std::vector<std::string> parse_numbered_list(std::string_view body) {
  static const std::regex marker_re(R"(^\s*(?:\d{1,3}[.)](?![0-9])|-(?=\s))\s*(.*)$)");
  std::vector<std::string> items;
  std::vector<std::string> unmarked;
  bool in_item = false;
  bool saw_marker = false;
  for (auto line : text::split_lines(body)) {
    const auto trimmed = text::trim(line);
    if (trimmed.empty()) {
      in_item = false;
      continue;
    }
    std::match_results<std::string_view::const_iterator> m;
    if (std::regex_match(line.begin(), line.end(), m, marker_re)) {
      items.push_back(text::collapse_whitespace(m[1].str()));
      in_item = true;
      saw_marker = true;
      continue;
    }
    if (in_item && detail::continues_item(items.back(), trimmed)) {
      auto& last = items.back();
      if (!last.empty()) last.push_back(' ');
      last += text::collapse_whitespace(trimmed);
      continue;
    }
    in_item = false;
    const bool heading_like = trimmed.back() == ':' ||
                              (trimmed.size() >= 2 && trimmed.substr(trimmed.size() - 2) == ":-");
    if (!heading_like) unmarked.push_back(text::collapse_whitespace(trimmed));
  }
  if (!saw_marker) items = std::move(unmarked);
  std::erase_if(items, [](const std::string& s) { return s.empty(); });
  if (items.empty()) throw Error(ErrorCode::EmptyListError, "no list items found");
  return items;
}

/// Takes the text after an "Overview:" heading when present, otherwise the
/// whole output, and normalizes it into paragraphs.
inline std::string parse_overview(std::string_view body) {
  static const std::regex heading_re(
      R"(^\s*[*#]*\s*(?:\d+\s*[.)]\s*)?overview\s*\**\s*(?::-|:|-)\s*\**\s*(.*)$)",
      std::regex::icase);
  const auto lines = text::split_lines(body);
  std::string content;
  bool found = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::match_results<std::string_view::const_iterator> m;
    if (!found && std::regex_match(lines[i].begin(), lines[i].end(), m, heading_re)) {
      found = true;
      content = m[1].str();
      continue;
    }
    if (found) {
      content += '\n';
      content += lines[i];
    }
  }
  std::string overview = text::normalize_paragraphs(found ? std::string_view(content) : body);
  if (overview.empty()) throw Error(ErrorCode::OverviewParseError, "overview is empty");
  return overview;
}

namespace detail {

struct HeadingHit {
  SummaryPart part;
  std::string rest;
};

inline std::optional<HeadingHit> match_heading(std::string_view line) {
  static const std::string dash = R"((?:--|-|–|—|:)?)";
  static const std::vector<std::pair<SummaryPart, std::regex>> headings = [] {
    auto make = [](const std::string& alt) {
      return std::regex(R"(^\s*(?:#+\s*)?(?:\*\*)?\s*(?:\d+\s*[.)]\s*)?(?:\*\*)?\s*(?:)" + alt +
                            R"()\s*(?:\*\*)?\s*(:-|:|-)?\s*(?:\*\*)?\s*(.*)$)",
                        std::regex::icase);
    };
    const std::string evidence =
        R"(evidences?\s*)" + dash + R"(\s*(?:presented\s+)?(?:by\s+)?(?:the\s+)?)";
    return std::vector<std::pair<SummaryPart, std::regex>>{
        {SummaryPart::Overview, make("overview")},
        {SummaryPart::Sector,
         make(R"(sector\s*(?:&|and)\s*(?:sector\s+)?code|sector\s+name|sector)")},
        {SummaryPart::Issues, make("issues")},
        {SummaryPart::EvidenceComplainant, make(evidence + R"(complainants?)")},
        {SummaryPart::EvidenceOpposite, make(evidence + R"(opposite\s+part(?:y|ies))")},
        {SummaryPart::Reliefs, make(R"(reliefs?\s+sought|reliefs?)")},
    };
  }();
  for (const auto& [part, re] : headings) {
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_match(line.begin(), line.end(), m, re)) continue;
    const bool has_separator = m[1].matched;
    std::string rest = m[2].str();
    if (has_separator || text::trim(rest).empty()) return HeadingHit{part, std::move(rest)};
  }
  return std::nullopt;
}

}  // namespace detail

/// Segments single-prompt output by its six headings and hands each segment
/// to the matching part parser.
inline ParsedSummary parse_whole_summary(std::string_view body) {
  std::array<std::optional<std::string>, 6> segments;
  std::optional<std::size_t> current;
  for (auto line : text::split_lines(body)) {
    if (auto hit = detail::match_heading(line)) {
      const auto idx = static_cast<std::size_t>(hit->part);
      if (!segments[idx]) {
        segments[idx] = hit->rest;
        current = idx;
        continue;
      }
    }
    if (current) {
      *segments[*current] += '\n';
      *segments[*current] += line;
    }
  }

  std::vector<SummaryPart> missing;
  for (auto part : kSummaryParts) {
    if (!segments[static_cast<std::size_t>(part)]) missing.push_back(part);
  }
  if (!missing.empty()) throw MissingPartError(std::move(missing));

  auto segment = [&](SummaryPart p) -> const std::string& {
    return *segments[static_cast<std::size_t>(p)];
  };
  ParsedSummary out;
  out.summary.overview = text::normalize_paragraphs(segment(SummaryPart::Overview));
  if (out.summary.overview.empty()) {
    throw Error(ErrorCode::OverviewParseError, "overview section is empty");
  }
  auto sector = parse_sector_line(segment(SummaryPart::Sector));
  out.summary.sector = sector.sector;
  out.warnings = std::move(sector.warnings);
  out.summary.issues = parse_numbered_list(segment(SummaryPart::Issues));
  out.summary.evidence_complainant =
      parse_evidence_list(segment(SummaryPart::EvidenceComplainant), EvidenceSide::Complainant);
  out.summary.evidence_opposite =
      parse_evidence_list(segment(SummaryPart::EvidenceOpposite), EvidenceSide::Opposite);
  out.summary.reliefs = parse_numbered_list(segment(SummaryPart::Reliefs));
  return out;
}

/// Corpus text format for a material summary; parse_whole_summary reads it
/// back to an equal value.
inline std::string render_summary(const MaterialSummary& s) {
  std::string out = "Overview:\n" + s.overview + "\n\n";
  out += "Sector & Code: " + std::string(s.sector.name()) + ", " +
         std::to_string(s.sector.code()) + "\n\n";
  out += "Issues:\n";
  for (std::size_t i = 0; i < s.issues.size(); ++i) {
    out += std::to_string(i + 1) + ". " + s.issues[i] + "\n";
  }
  auto evidence = [&out](std::string_view heading, const std::vector<EvidenceItem>& items) {
    out += "\n";
    out += heading;
    out += ":\n";
    if (items.empty()) out += "Nil\n";
    for (const auto& item : items) out += item.label + ": " + item.description + "\n";
  };
  evidence("Evidence -- Complainant", s.evidence_complainant);
  evidence("Evidence -- Opposite Party", s.evidence_opposite);
  out += "\nReliefs Sought:\n";
  for (std::size_t i = 0; i < s.reliefs.size(); ++i) {
    out += std::to_string(i + 1) + ". " + s.reliefs[i] + "\n";
  }
  return out;
}

}  // namespace dispute
