#pragma once

// JSON HTTP API over the summarizer, the precedent retriever and the judge.
// `Service::handle` is the whole request -> response mapping; `mount` wires
// it into an httplib server.

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <ostream>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "dispute/app.hpp"

namespace dispute {

struct ServiceResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

inline int http_status(const Error& e) {
  switch (e.code()) {
    case ErrorCode::NotFound:
      return 404;
    case ErrorCode::DuplicateId:
    case ErrorCode::DuplicateDocId:
      return 409;
    default:
      break;
  }
  switch (error_family(e.code())) {
    case ErrorFamily::Usage:
      return 400;
    case ErrorFamily::Data:
      return 422;
    case ErrorFamily::Upstream:
    case ErrorFamily::Pipeline:
      return 502;
    case ErrorFamily::Io:
    case ErrorFamily::Internal:
      return 500;
  }
  return 500;
}

/// Answered with 503: the request is fine but the service lacks the data.
class ServiceUnavailable : public Error {
 public:
  using Error::Error;
};

inline const std::string& openapi_document() {
  static const std::string doc = [] {
    for (const auto& [key, body] : detail::kEmbeddedAssets) {
      if (key == "api/openapi") return std::string(body);
    }
    return std::string("{}");
  }();
  return doc;
}

class Service {
 public:
  /// `retriever` may be null; /v1/similar and /v1/judgments then answer 503.
  Service(AppConfig cfg, std::shared_ptr<CompletionProvider> llm,
          std::shared_ptr<const PrecedentRetriever> retriever, std::vector<CaseFile> cases = {})
      : cfg_(std::move(cfg)),
        llm_(std::move(llm)),
        summarizer_(make_summarizer(cfg_, llm_)),
        retriever_(std::move(retriever)) {
    for (auto& c : cases) cases_.emplace(c.id, std::move(c));
  }

  /// Everything `serve` needs, loaded from the configured workspace.
  static std::unique_ptr<Service> open(const AppConfig& cfg) {
    auto llm = make_completion_provider(cfg);
    const auto layout = cfg.layout();
    std::shared_ptr<const PrecedentRetriever> retriever;
    if (fs::exists(layout.judgments())) retriever = open_retriever(cfg);
    std::vector<CaseFile> cases;
    if (fs::exists(layout.cases())) {
      auto loaded = load_case_files(layout.cases());
      loaded.or_throw();
      cases = std::move(loaded.records);
    }
    return std::make_unique<Service>(cfg, std::move(llm), std::move(retriever), std::move(cases));
  }

  const AppConfig& config() const { return cfg_; }

  ServiceResponse handle(std::string_view method, std::string_view path, std::string_view body) {
    try {
      return route(method, path, body);
    } catch (const ServiceUnavailable& e) {
      return {503, error_json(e).dump()};
    } catch (const PartFailure& e) {
      auto j = error_json(e);
      j["part"] = std::string(part_key(e.part()));
      j["attempts"] = e.attempts();
      return {http_status(e), j.dump()};
    } catch (const Error& e) {
      return {http_status(e), error_json(e).dump()};
    } catch (const std::exception& e) {
      return {500, json{{"error", "Internal"}, {"message", e.what()}}.dump()};
    }
  }

  /// Registers the /v1 routes, CORS headers, the static mount and a
  /// one-line JSON request log on `log` (null disables logging).
  void mount(httplib::Server& server, std::ostream* log = nullptr) {
    if (!cfg_.cors_origin.empty()) {
      server.set_default_headers({{"Access-Control-Allow-Origin", cfg_.cors_origin},
                                  {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                  {"Access-Control-Allow-Headers", "Content-Type"}});
    }
    if (!cfg_.static_dir.empty() && !server.set_mount_point("/", cfg_.static_dir.string())) {
      throw Error(ErrorCode::ConfigError, "static_dir does not exist: " + cfg_.static_dir.string());
    }
    auto forward = [this](const httplib::Request& req, httplib::Response& res) {
      const auto out = handle(req.method, req.path, req.body);
      res.status = out.status;
      res.set_content(out.body, out.content_type);
    };
    server.Get(R"(/v1/.*)", forward);
    server.Post(R"(/v1/.*)", forward);
    server.Options(R"(/v1/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    if (log) {
      server.set_logger([log](const httplib::Request& req, const httplib::Response& res) {
        static std::mutex m;
        std::lock_guard lock(m);
        *log << json{{"method", req.method}, {"path", req.path}, {"status", res.status},
                     {"remote", req.remote_addr}}
                    .dump()
             << "\n";
        log->flush();
      });
    }
  }

 private:
  static json parse_body(std::string_view body) {
    if (text::trim(body).empty()) return json::object();
    try {
      auto j = json::parse(body);
      if (!j.is_object()) throw Error(ErrorCode::InvalidArgument, "request body must be a JSON object");
      return j;
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::InvalidArgument, std::string("request body is not JSON: ") + e.what());
    }
  }

  static ServiceResponse ok(const json& j, int status = 200) { return {status, j.dump()}; }

  ServiceResponse route(std::string_view method, std::string_view path, std::string_view body) {
    constexpr std::string_view judgments_prefix = "/v1/judgments/";
    constexpr std::string_view cases_prefix = "/v1/cases/";
    if (method == "GET") {
      if (path == "/v1/sectors") return ok(taxonomy_json());
      if (path == "/v1/openapi.json") return {200, openapi_document()};
      if (path == "/v1/health") return ok(health());
      if (path.substr(0, judgments_prefix.size()) == judgments_prefix) {
        return ok(judgment(std::string(path.substr(judgments_prefix.size()))));
      }
      if (path.substr(0, cases_prefix.size()) == cases_prefix) {
        return ok(to_json(find_case(std::string(path.substr(cases_prefix.size())))));
      }
    } else if (method == "POST") {
      if (path == "/v1/cases") return ok(add_cases(parse_body(body)), 201);
      if (path == "/v1/summarize") return ok(summarize(parse_body(body)));
      if (path == "/v1/similar") return ok(similar(parse_body(body)));
      if (path == "/v1/evaluate") return ok(evaluate(parse_body(body)));
    }
    throw Error(ErrorCode::NotFound, "no route for " + std::string(method) + " " + std::string(path));
  }

  json health() const {
    std::shared_lock lock(mutex_);
    return json{{"status", "ok"},
                {"judgments", retriever_ ? retriever_->corpus().size() : 0},
                {"cases", cases_.size()},
                {"taxonomy_version", kTaxonomyVersion}};
  }

  const PrecedentRetriever& retriever() const {
    if (!retriever_) throw ServiceUnavailable(ErrorCode::ConfigError, "no judgment corpus is loaded");
    return *retriever_;
  }

  json judgment(const std::string& id) const {
    const auto* j = retriever().find(id);
    if (!j) throw Error(ErrorCode::NotFound, "no judgment '" + id + "'");
    return to_json(*j);
  }

  CaseFile find_case(const std::string& id) const {
    std::shared_lock lock(mutex_);
    const auto it = cases_.find(id);
    if (it == cases_.end()) throw Error(ErrorCode::NotFound, "no case '" + id + "'");
    return it->second;
  }

  /// One case object, or {"cases": [...]}; all are validated before any is stored.
  json add_cases(const json& body) {
    std::vector<CaseFile> incoming;
    if (body.contains("cases")) {
      if (!body["cases"].is_array()) throw Error(ErrorCode::InvalidArgument, "'cases' must be an array");
      for (const auto& c : body["cases"]) incoming.push_back(case_from_json(c));
    } else {
      incoming.push_back(case_from_json(body));
    }
    std::unique_lock lock(mutex_);
    std::set<std::string> batch;
    for (const auto& c : incoming) {
      if (cases_.count(c.id) || !batch.insert(c.id).second) {
        throw Error(ErrorCode::DuplicateId, "case '" + c.id + "' already exists");
      }
    }
    json ids = json::array();
    for (auto& c : incoming) {
      ids.push_back(c.id);
      cases_.emplace(c.id, std::move(c));
    }
    return json{{"ids", ids}};
  }

  json summarize(const json& body) {
    CaseFile c;
    if (body.contains("case_id")) {
      c = find_case(detail::string_field(body, "case_id"));
    } else if (body.contains("case_text")) {
      c.complaint_text = detail::string_field(body, "case_text");
      c.written_statement_text = detail::optional_string(body, "written_statement_text");
      c.id = detail::optional_string(body, "id", "adhoc-" + text::content_hash(c.complaint_text + "\x1e" +
                                                                               c.written_statement_text));
      if (text::trim(c.complaint_text).empty()) throw Error(ErrorCode::InvalidArgument, "case_text is empty");
    } else {
      throw Error(ErrorCode::InvalidArgument, "summarize needs case_id or case_text");
    }
    std::optional<PromptStrategy> strategy;
    if (body.contains("strategy")) strategy = parse_strategy(detail::string_field(body, "strategy"));
    const auto out = summarizer_.summarize_case(c, strategy);
    {
      std::unique_lock lock(mutex_);
      summaries_[c.id] = out.summary;
    }
    return json{{"case_id", c.id},
                {"strategy", std::string(strategy_name(out.provenance.strategy))},
                {"summary", to_json(out.summary)},
                {"rendered", render_summary(out.summary)},
                {"warnings", out.warnings},
                {"provenance", to_json(out.provenance, false)}};
  }

  std::optional<MaterialSummary> known_summary(const std::string& case_id) const {
    std::shared_lock lock(mutex_);
    const auto it = summaries_.find(case_id);
    if (it == summaries_.end()) return std::nullopt;
    return it->second;
  }

  json similar(const json& body) {
    HybridConfig hc{cfg_.lexical_weight, cfg_.top_k};
    if (body.contains("weight")) {
      if (!body["weight"].is_number()) throw Error(ErrorCode::InvalidArgument, "'weight' must be a number");
      hc.lexical_weight = body["weight"].get<double>();
    }
    if (body.contains("k")) {
      if (!body["k"].is_number_integer()) throw Error(ErrorCode::InvalidArgument, "'k' must be an integer");
      hc.top_k = body["k"].get<int>();
    }
    validate(hc);
    std::optional<int> sector;
    if (body.contains("sector") && !body["sector"].is_null()) {
      sector = sector_from_json(body["sector"]).code();
    }
    const auto& r = retriever();

    SimilarResult result;
    if (body.contains("summary") || body.contains("case_id")) {
      MaterialSummary summary;
      if (body.contains("summary")) {
        summary = summary_from_json(body["summary"]);
      } else {
        const auto id = detail::string_field(body, "case_id");
        auto known = known_summary(id);
        if (!known) {
          known = summarizer_.summarize_case(find_case(id)).summary;
          std::unique_lock lock(mutex_);
          summaries_[id] = *known;
        }
        summary = *known;
      }
      result = r.predict_similar(summary, hc, sector);
    } else if (body.contains("overview")) {
      const auto overview = detail::string_field(body, "overview");
      if (text::trim(overview).empty()) throw Error(ErrorCode::InvalidArgument, "overview is empty");
      result.sector_code = sector;
      if (sector && r.sector_size(*sector) == 0) {
        result.warnings.push_back("EmptySector: no judgments in sector " + std::to_string(*sector));
      } else {
        result.results = r.hybrid_topk(overview, hc, sector);
      }
    } else {
      throw Error(ErrorCode::InvalidArgument, "similar needs overview, summary or case_id");
    }
    return similar_to_json(r, result, hc);
  }

  json evaluate(const json& body) {
    std::vector<MetricKind> kinds;
    if (body.contains("kinds")) {
      for (const auto& k : detail::string_list(body, "kinds")) kinds.push_back(parse_metric(k));
    }
    std::vector<EvalPair> pairs;
    if (body.contains("pairs")) {
      const auto& list = body["pairs"];
      if (!list.is_array()) throw Error(ErrorCode::InvalidArgument, "'pairs' must be an array");
      for (std::size_t i = 0; i < list.size(); ++i) {
        pairs.push_back({detail::optional_string(list[i], "id", "pair-" + std::to_string(i + 1)),
                         summary_from_json(detail::field(list[i], "original")),
                         summary_from_json(detail::field(list[i], "generated"))});
      }
    } else if (body.contains("run_id")) {
      pairs = run_pairs(cfg_.layout(), detail::string_field(body, "run_id"));
    } else {
      throw Error(ErrorCode::InvalidArgument, "evaluate needs pairs or run_id");
    }
    return to_json(evaluate_run(pairs, kinds, *llm_, eval_options(cfg_)));
  }

 private:
  AppConfig cfg_;
  std::shared_ptr<CompletionProvider> llm_;
  Summarizer summarizer_;
  std::shared_ptr<const PrecedentRetriever> retriever_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, CaseFile> cases_;
  std::map<std::string, MaterialSummary> summaries_;
};

}  // namespace dispute
