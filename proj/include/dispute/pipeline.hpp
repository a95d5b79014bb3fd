#pragma once

#include <array>
#include <chrono>
#include <exception>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dispute/error.hpp"
#include "dispute/gateway.hpp"
#include "dispute/json_codec.hpp"
#include "dispute/parallel.hpp"
#include "dispute/parsing.hpp"
#include "dispute/prompts.hpp"

namespace dispute {

class PartFailure : public Error {
 public:
  PartFailure(SummaryPart part, int attempts, const Error& last)
      : Error(ErrorCode::PartFailure, std::string(part_key(part)) + " failed after " +
                                          std::to_string(attempts) + " attempt(s): " + last.what()),
        part_(part),
        attempts_(attempts),
        last_code_(last.code()),
        last_message_(last.what()) {}

  SummaryPart part() const noexcept { return part_; }
  int attempts() const noexcept { return attempts_; }
  ErrorCode last_code() const noexcept { return last_code_; }
  const std::string& last_message() const noexcept { return last_message_; }

 private:
  SummaryPart part_;
  int attempts_;
  ErrorCode last_code_;
  std::string last_message_;
};

struct SummarizerConfig {
  PromptStrategy strategy = PromptStrategy::PartwiseCoT;
  std::string model = "default";
  GenerationParams decoding = default_decoding();
  int max_retries = 2;
  /// Combined character budget for complaint + written statement; 0 = none.
  std::size_t max_case_chars = 0;
  /// Parts generated concurrently per case (assembly order is fixed).
  std::size_t part_parallelism = 1;
};

struct PartProvenance {
  std::string prompt_hash;
  int attempts = 0;
  std::int64_t elapsed_ms = 0;
};

struct Provenance {
  std::string case_id;
  PromptStrategy strategy = PromptStrategy::PartwiseCoT;
  std::string model;
  std::map<SummaryPart, PartProvenance> parts;
  bool truncated = false;
};

struct SummaryOutcome {
  MaterialSummary summary;
  std::vector<std::string> warnings;
  Provenance provenance;
};

struct BatchItem {
  std::string case_id;
  std::optional<SummaryOutcome> outcome;
  std::optional<Error> error;
  std::optional<SummaryPart> failed_part;
};

/// Case text cut to `budget` bytes: the complaint keeps its head, the written
/// statement keeps its tail. The statement gets at most half the budget when
/// both are long. Cuts never split a UTF-8 sequence.
inline CaseFile truncate_case(const CaseFile& c, std::size_t budget, std::vector<std::string>* warnings = nullptr) {
  const std::size_t total = c.complaint_text.size() + c.written_statement_text.size();
  if (budget == 0 || total <= budget) return c;
  CaseFile out = c;
  const std::size_t ws_keep = std::min(c.written_statement_text.size(),
                                       std::max(budget / 2, budget - std::min(budget, c.complaint_text.size())));
  const std::size_t complaint_keep = std::min(c.complaint_text.size(), budget - ws_keep);
  out.complaint_text = c.complaint_text.substr(0, text::utf8_floor(c.complaint_text, complaint_keep));
  std::size_t start = c.written_statement_text.size() - ws_keep;
  while (start < c.written_statement_text.size() &&
         (static_cast<unsigned char>(c.written_statement_text[start]) & 0xC0) == 0x80) {
    ++start;
  }
  out.written_statement_text = c.written_statement_text.substr(start);
  if (warnings) {
    warnings->push_back("truncated case '" + c.id + "' from " + std::to_string(total) + " to " +
                        std::to_string(out.complaint_text.size() + out.written_statement_text.size()) +
                        " bytes (complaint head " + std::to_string(out.complaint_text.size()) +
                        ", written statement tail " + std::to_string(out.written_statement_text.size()) + ")");
  }
  return out;
}

/// Turns a case file into a validated MaterialSummary, either with one
/// completion (single prompt) or with six part completions.
class Summarizer {
 public:
  Summarizer(std::shared_ptr<CompletionProvider> provider, SummarizerConfig config = {},
             PromptLibrary library = PromptLibrary::builtin())
      : provider_(std::move(provider)), config_(std::move(config)), library_(std::move(library)) {
    if (!provider_) throw Error(ErrorCode::ConfigError, "summarizer needs a completion provider");
    if (config_.max_retries < 0) throw Error(ErrorCode::ConfigError, "max_retries must be >= 0");
    validate(config_.decoding);
  }

  const SummarizerConfig& config() const { return config_; }

  SummaryOutcome summarize_case(const CaseFile& input,
                                std::optional<PromptStrategy> strategy_override = std::nullopt) const {
    validate(input);
    const auto strategy = strategy_override.value_or(config_.strategy);
    SummaryOutcome out;
    out.provenance.case_id = input.id;
    out.provenance.strategy = strategy;
    out.provenance.model = config_.model;
    const CaseFile c = truncate_case(input, config_.max_case_chars, &out.warnings);
    out.provenance.truncated = out.warnings.size() > 0;

    if (strategy == PromptStrategy::SinglePrompt) {
      auto parsed = run_part<ParsedSummary>(SummaryPart::WholeSummary, strategy, c, out.provenance,
                                            [](const std::string& t) { return parse_whole_summary(t); });
      out.summary = std::move(parsed.summary);
      for (auto& w : parsed.warnings) out.warnings.push_back(std::move(w));
    } else {
      run_partwise(strategy, c, out);
    }
    validate(out.summary);
    return out;
  }

  /// Per-case outcomes in input order; a failing case never stops the rest.
  std::vector<BatchItem> summarize_batch(const std::vector<CaseFile>& cases, std::size_t parallelism,
                                         std::optional<PromptStrategy> strategy = std::nullopt) const {
    if (parallelism < 1) throw Error(ErrorCode::InvalidArgument, "parallelism must be >= 1");
    std::vector<BatchItem> items(cases.size());
    parallel_for(cases.size(), parallelism, [&](std::size_t i) {
      items[i].case_id = cases[i].id;
      try {
        items[i].outcome = summarize_case(cases[i], strategy);
      } catch (const PartFailure& e) {
        items[i].error = e;
        items[i].failed_part = e.part();
      } catch (const Error& e) {
        items[i].error = e;
      } catch (const std::exception& e) {
        items[i].error = Error(ErrorCode::InvalidArgument, e.what());
      }
    });
    return items;
  }

 private:
  static bool is_parse_failure(const Error& e) {
    switch (e.code()) {
      case ErrorCode::SectorParseError:
      case ErrorCode::EvidenceParseError:
      case ErrorCode::EmptyListError:
      case ErrorCode::OverviewParseError:
      case ErrorCode::MissingPartError:
      case ErrorCode::UnknownSectorCode:
      case ErrorCode::UnknownSectorName:
        return true;
      default:
        return false;
    }
  }

  /// Calls the provider for one part and parses the answer, re-sending the
  /// same prompt on parse failures. Provider errors pass through.
  template <typename T, typename Parse>
  T run_part(SummaryPart part, PromptStrategy strategy, const CaseFile& c, Provenance& provenance,
             Parse&& parse) const {
    const auto bundle = build_part_prompt(part, strategy, c, library_, config_.decoding);
    CompletionRequest request{bundle.system_prompt, bundle.user_prompt, bundle.params, config_.model,
                              std::string(part_key(part)) + ":" + c.id};
    PartProvenance record;
    record.prompt_hash = text::content_hash(bundle.system_prompt + "\x1e" + bundle.user_prompt);
    const auto started = std::chrono::steady_clock::now();
    auto finish = [&] {
      record.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - started)
                              .count();
      provenance.parts[part] = record;
    };
    for (int attempt = 1;; ++attempt) {
      record.attempts = attempt;
      const auto result = provider_->complete(request);
      try {
        T value = parse(result.text);
        finish();
        return value;
      } catch (const Error& e) {
        if (!is_parse_failure(e)) throw;
        if (attempt > config_.max_retries) {
          finish();
          throw PartFailure(part, attempt, e);
        }
      }
    }
  }

  void run_partwise(PromptStrategy strategy, const CaseFile& c, SummaryOutcome& out) const {
    std::vector<std::string> sector_warnings;
    std::array<std::exception_ptr, 6> failures{};
    std::array<Provenance, 6> records{};
    auto& s = out.summary;
    parallel_for(kSummaryParts.size(), config_.part_parallelism, [&](std::size_t i) {
      const auto part = kSummaryParts[i];
      try {
        switch (part) {
          case SummaryPart::Overview:
            s.overview = run_part<std::string>(part, strategy, c, records[i],
                                               [](const std::string& t) { return parse_overview(t); });
            break;
          case SummaryPart::Sector: {
            auto r = run_part<SectorParseResult>(part, strategy, c, records[i],
                                                 [](const std::string& t) { return parse_sector_line(t); });
            s.sector = r.sector;
            sector_warnings = std::move(r.warnings);
            break;
          }
          case SummaryPart::Issues:
            s.issues = run_part<std::vector<std::string>>(
                part, strategy, c, records[i], [](const std::string& t) { return parse_numbered_list(t); });
            break;
          case SummaryPart::EvidenceComplainant:
            s.evidence_complainant = run_part<std::vector<EvidenceItem>>(
                part, strategy, c, records[i],
                [](const std::string& t) { return parse_evidence_list(t, EvidenceSide::Complainant); });
            break;
          case SummaryPart::EvidenceOpposite:
            s.evidence_opposite = run_part<std::vector<EvidenceItem>>(
                part, strategy, c, records[i],
                [](const std::string& t) { return parse_evidence_list(t, EvidenceSide::Opposite); });
            break;
          case SummaryPart::Reliefs:
            s.reliefs = run_part<std::vector<std::string>>(
                part, strategy, c, records[i], [](const std::string& t) { return parse_numbered_list(t); });
            break;
          case SummaryPart::WholeSummary:
            break;
        }
      } catch (...) {
        failures[i] = std::current_exception();
      }
    });
    for (std::size_t i = 0; i < kSummaryParts.size(); ++i) {
      for (auto& [part, record] : records[i].parts) out.provenance.parts[part] = record;
    }
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
    for (auto& w : sector_warnings) out.warnings.push_back(std::move(w));
  }

  std::shared_ptr<CompletionProvider> provider_;
  SummarizerConfig config_;
  PromptLibrary library_;
};

/// Timings vary run to run; leave them out where output must be reproducible.
inline json to_json(const Provenance& p, bool with_timings = true) {
  json parts = json::object();
  for (const auto& [part, record] : p.parts) {
    json entry{{"prompt_hash", record.prompt_hash}, {"attempts", record.attempts}, {"retries", record.attempts - 1}};
    if (with_timings) entry["elapsed_ms"] = record.elapsed_ms;
    parts[std::string(part_key(part))] = std::move(entry);
  }
  return json{{"case_id", p.case_id},
              {"strategy", std::string(strategy_name(p.strategy))},
              {"model", p.model},
              {"truncated", p.truncated},
              {"parts", std::move(parts)}};
}

}  // namespace dispute
