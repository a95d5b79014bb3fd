#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dispute {

/// Stable machine-readable error codes. The string form (error_code_name) is
/// what the HTTP service and `--json` CLI output expose, so never rename one.
enum class ErrorCode {
  InvalidArgument,
  // domain-model
  UnknownSectorCode,
  UnknownSectorName,
  InvalidRecord,
  // prompt-engine
  UnsupportedCombination,
  SectorParseError,
  EvidenceParseError,
  EmptyListError,
  OverviewParseError,
  MissingPartError,
  // llm-gateway
  TransportError,
  ProviderError,
  Timeout,
  DimensionMismatch,
  UnscriptedRequest,
  // summarizer-pipeline
  PartFailure,
  // retrieval-engine
  DuplicateDocId,
  UnknownDocId,
  ZeroVector,
  EmptySector,
  StaleIndex,
  // eval-suite
  LengthMismatch,
  ConstantInput,
  EmptyRetrieval,
  NoScoreTag,
  OutOfScale,
  JudgeFailure,
  UnknownMetric,
  // corpus-store
  ParseError,
  InvalidSector,
  DuplicateId,
  IoError,
  // api-cli
  NotFound,
  ConfigError,
  BindError,
};

constexpr std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnknownSectorCode: return "UnknownSectorCode";
    case ErrorCode::UnknownSectorName: return "UnknownSectorName";
    case ErrorCode::InvalidRecord: return "InvalidRecord";
    case ErrorCode::UnsupportedCombination: return "UnsupportedCombination";
    case ErrorCode::SectorParseError: return "SectorParseError";
    case ErrorCode::EvidenceParseError: return "EvidenceParseError";
    case ErrorCode::EmptyListError: return "EmptyListError";
    case ErrorCode::OverviewParseError: return "OverviewParseError";
    case ErrorCode::MissingPartError: return "MissingPartError";
    case ErrorCode::TransportError: return "TransportError";
    case ErrorCode::ProviderError: return "ProviderError";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnscriptedRequest: return "UnscriptedRequest";
    case ErrorCode::PartFailure: return "PartFailure";
    case ErrorCode::DuplicateDocId: return "DuplicateDocId";
    case ErrorCode::UnknownDocId: return "UnknownDocId";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::EmptySector: return "EmptySector";
    case ErrorCode::StaleIndex: return "StaleIndex";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::ConstantInput: return "ConstantInput";
    case ErrorCode::EmptyRetrieval: return "EmptyRetrieval";
    case ErrorCode::NoScoreTag: return "NoScoreTag";
    case ErrorCode::OutOfScale: return "OutOfScale";
    case ErrorCode::JudgeFailure: return "JudgeFailure";
    case ErrorCode::UnknownMetric: return "UnknownMetric";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidSector: return "InvalidSector";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::BindError: return "BindError";
  }
  return "Unknown";
}

/// Coarse error families. The CLI maps each family to its own exit code.
enum class ErrorFamily { Usage, Data, Upstream, Io, Pipeline, Internal };

constexpr ErrorFamily error_family(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::ConfigError:
      return ErrorFamily::Usage;
    case ErrorCode::TransportError:
    case ErrorCode::ProviderError:
    case ErrorCode::Timeout:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::UnscriptedRequest:
      return ErrorFamily::Upstream;
    case ErrorCode::IoError:
    case ErrorCode::BindError:
      return ErrorFamily::Io;
    case ErrorCode::PartFailure:
    case ErrorCode::JudgeFailure:
      return ErrorFamily::Pipeline;
    default:
      return ErrorFamily::Data;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        detail_(std::move(message)) {}

  Error(ErrorCode code, std::string message, std::size_t line)
      : std::runtime_error(std::string(error_code_name(code)) + " (line " +
                           std::to_string(line) + "): " + message),
        code_(code),
        detail_(std::move(message)),
        line_(line) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view code_name() const noexcept { return error_code_name(code_); }
  const std::string& detail() const noexcept { return detail_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::optional<std::size_t> line_;
};

/// Raised by provider calls that reached the server but got a failure status.
class ProviderStatusError : public Error {
 public:
  ProviderStatusError(int status, std::string body)
      : Error(ErrorCode::ProviderError,
              "status " + std::to_string(status) + ": " + body),
        status_(status),
        body_(std::move(body)) {}

  int status() const noexcept { return status_; }
  const std::string& body() const noexcept { return body_; }

 private:
  int status_;
  std::string body_;
};

}  // namespace dispute
