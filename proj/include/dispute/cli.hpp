#pragma once

// Command-line front end. `run_cli` parses argv, runs one subcommand and
// returns the process exit code:
//   0 ok, 1 internal, 2 usage, 3 data, 4 upstream, 5 io, 6 pipeline.

#include <atomic>
#include <csignal>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dispute/service.hpp"

namespace dispute {

inline int exit_code(ErrorFamily family) {
  switch (family) {
    case ErrorFamily::Usage: return 2;
    case ErrorFamily::Data: return 3;
    case ErrorFamily::Upstream: return 4;
    case ErrorFamily::Io: return 5;
    case ErrorFamily::Pipeline: return 6;
    case ErrorFamily::Internal: return 1;
  }
  return 1;
}

namespace cli {

inline std::atomic<bool>& stop_requested() {
  static std::atomic<bool> flag{false};
  return flag;
}

extern "C" inline void on_stop_signal(int) { stop_requested().store(true); }

struct Options {
  std::string config;
  std::string root;
  std::string mock_script;
  bool json = false;
  bool verbose = false;

  // ingest
  std::string judgments_file, cases_file, gold_file;
  bool strict = false;
  // index
  std::string field;
  std::optional<double> k1, b;
  // summarize
  std::string case_file, case_id, out, strategy, run_id;
  bool all = false;
  std::size_t jobs = 0;
  std::optional<std::size_t> max_chars;
  // similar
  std::string summary_file, overview;
  std::optional<int> k, sector;
  std::optional<double> weight;
  // judge / evaluate / report
  std::string original_file, generated_file, pair_id = "pair", human_file, report_file, out_dir;
  std::vector<std::string> metrics;
  std::string format = "table";
  // serve
  std::string addr;
};

class Runner {
 public:
  Runner(Options opts, AppConfig cfg, std::ostream& out, std::ostream& err)
      : o_(std::move(opts)), cfg_(std::move(cfg)), out_(out), err_(err) {}

  int ingest() {
    if (o_.judgments_file.empty() && o_.cases_file.empty() && o_.gold_file.empty()) {
      throw Error(ErrorCode::InvalidArgument, "ingest needs --judgments, --cases or --gold");
    }
    const auto layout = cfg_.layout();
    json report = json::object();
    auto run = [&](const std::string& src, const char* name, const fs::path& dest, auto parse) {
      if (src.empty()) return;
      const auto loaded = parse(read_text_file(src));
      json errors = json::array();
      for (const auto& e : loaded.errors) errors.push_back(error_json(e));
      if (!loaded.errors.empty() && o_.strict) {
        print_errors(name, loaded.errors);
        throw loaded.errors.front();
      }
      atomic_write(dest, to_jsonl(loaded.records));
      report[name] = {{"source", src}, {"path", dest.string()}, {"loaded", loaded.records.size()},
                      {"errors", errors}, {"warnings", loaded.warnings}};
      if (!o_.json) {
        out_ << name << ": " << loaded.records.size() << " loaded, " << loaded.errors.size() << " rejected -> "
             << dest.string() << "\n";
        print_errors(name, loaded.errors);
        for (const auto& w : loaded.warnings) err_ << "warning: " << name << ": " << w << "\n";
      }
    };
    run(o_.judgments_file, "judgments", layout.judgments(), [](std::string_view s) { return parse_judgments(s); });
    run(o_.cases_file, "cases", layout.cases(), [](std::string_view s) { return parse_case_files(s); });
    run(o_.gold_file, "gold", layout.gold(), [](std::string_view s) { return parse_gold_summaries(s); });
    if (o_.json) out_ << report.dump(2) << "\n";
    return 0;
  }

  int index() {
    if (!o_.field.empty()) cfg_.field = detail::parse_field(o_.field);
    if (o_.k1) cfg_.bm25.k1 = *o_.k1;
    if (o_.b) cfg_.bm25.b = *o_.b;
    const auto stats = build_indexes(cfg_);
    const auto layout = cfg_.layout();
    if (o_.json) {
      out_ << json{{"documents", stats.documents},
                   {"terms", stats.terms},
                   {"corpus_hash", stats.corpus_hash},
                   {"field", std::string(field_name(cfg_.field))},
                   {"bm25_index", layout.bm25_index().string()},
                   {"embeddings", layout.embeddings().string()},
                   {"embeddings_cached", stats.embeddings_cached}}
                  .dump(2)
           << "\n";
    } else {
      out_ << "indexed " << stats.documents << " judgments, " << stats.terms << " terms (corpus " << stats.corpus_hash
           << ")\n"
           << "  bm25        " << layout.bm25_index().string() << "\n"
           << "  embeddings  " << layout.embeddings().string() << (stats.embeddings_cached ? " (unchanged)" : "")
           << "\n";
    }
    return 0;
  }

  int summarize() {
    if (!o_.strategy.empty()) cfg_.strategy = parse_strategy(o_.strategy);
    if (o_.max_chars) cfg_.max_case_chars = *o_.max_chars;
    const int sources = !o_.case_file.empty() + !o_.case_id.empty() + o_.all;
    if (sources != 1) throw Error(ErrorCode::InvalidArgument, "summarize needs exactly one of --case, --case-id, --all");
    const auto layout = cfg_.layout();
    const auto summarizer = make_summarizer(cfg_, make_completion_provider(cfg_));

    if (o_.all) {
      auto loaded = load_case_files(layout.cases());
      loaded.or_throw();
      const auto items = summarizer.summarize_batch(loaded.records, jobs());
      std::vector<SummaryRecord> records;
      std::size_t failed = 0;
      for (const auto& item : items) {
        SummaryRecord rec;
        rec.case_id = item.case_id;
        rec.strategy = cfg_.strategy;
        if (item.outcome) {
          rec.summary = item.outcome->summary;
          rec.warnings = item.outcome->warnings;
        } else {
          ++failed;
          rec.error_code = std::string(item.error->code_name());
          rec.error_message = item.error->detail();
        }
        records.push_back(std::move(rec));
      }
      const fs::path dest = !o_.out.empty() ? fs::path(o_.out)
                            : !o_.run_id.empty() ? layout.run(o_.run_id)
                                                 : layout.summaries();
      atomic_write(dest, to_jsonl(records));
      if (o_.json) {
        out_ << json{{"path", dest.string()}, {"cases", records.size()}, {"failed", failed}}.dump(2) << "\n";
      } else {
        out_ << dest.string() << "\n";
        err_ << records.size() - failed << " summarized, " << failed << " failed\n";
        for (const auto& r : records) {
          if (r.error_code) err_ << "  " << r.case_id << ": " << *r.error_code << ": " << *r.error_message << "\n";
        }
      }
      return failed == 0 ? 0 : exit_code(ErrorFamily::Pipeline);
    }

    CaseFile c;
    if (!o_.case_file.empty()) {
      c = case_from_json(read_json_file(o_.case_file));
    } else {
      auto loaded = load_case_files(layout.cases());
      loaded.or_throw();
      const auto it = std::find_if(loaded.records.begin(), loaded.records.end(),
                                   [&](const CaseFile& x) { return x.id == o_.case_id; });
      if (it == loaded.records.end()) throw Error(ErrorCode::NotFound, "no case '" + o_.case_id + "'");
      c = *it;
    }
    const auto outcome = summarizer.summarize_case(c);
    const fs::path dest = o_.out.empty() ? layout.root / "out" / "summaries" / (c.id + ".json") : fs::path(o_.out);
    save_summary(dest, outcome.summary);
    fs::path sidecar = dest;
    sidecar.replace_extension(".provenance.json");
    atomic_write(sidecar, to_json(outcome.provenance).dump(2) + "\n");
    if (o_.json) {
      out_ << json{{"case_id", c.id},
                   {"path", dest.string()},
                   {"provenance", sidecar.string()},
                   {"summary", to_json(outcome.summary)},
                   {"warnings", outcome.warnings}}
                  .dump(2)
           << "\n";
    } else {
      out_ << dest.string() << "\n";
      for (const auto& w : outcome.warnings) err_ << "warning: " << w << "\n";
    }
    return 0;
  }

  int similar() {
    HybridConfig hc{o_.weight.value_or(cfg_.lexical_weight), o_.k.value_or(cfg_.top_k)};
    validate(hc);
    if (o_.sector) sector_from_code(*o_.sector);
    const int sources = !o_.summary_file.empty() + !o_.case_id.empty() + !o_.overview.empty();
    if (sources != 1) {
      throw Error(ErrorCode::InvalidArgument, "similar needs exactly one of --summary, --case-id, --overview");
    }
    const auto retriever = open_retriever(cfg_);
    SimilarResult result;
    if (!o_.overview.empty()) {
      result.sector_code = o_.sector;
      if (o_.sector && retriever->sector_size(*o_.sector) == 0) {
        result.warnings.push_back("EmptySector: no judgments in sector " + std::to_string(*o_.sector));
      } else {
        result.results = retriever->hybrid_topk(o_.overview, hc, o_.sector);
      }
    } else {
      MaterialSummary summary;
      if (!o_.summary_file.empty()) {
        summary = load_summary(o_.summary_file);
      } else {
        auto records = load_summary_records(cfg_.layout().summaries());
        records.or_throw();
        const auto it = std::find_if(records.records.begin(), records.records.end(),
                                     [&](const SummaryRecord& r) { return r.case_id == o_.case_id && r.summary; });
        if (it == records.records.end()) throw Error(ErrorCode::NotFound, "no summary for case '" + o_.case_id + "'");
        summary = *it->summary;
      }
      result = retriever->predict_similar(summary, hc, o_.sector);
    }
    if (o_.json) {
      out_ << similar_to_json(*retriever, result, hc).dump(2) << "\n";
      return 0;
    }
    for (const auto& w : result.warnings) err_ << "warning: " << w << "\n";
    out_ << std::left << std::setw(5) << "rank" << std::setw(24) << "judgment" << std::right << std::setw(9)
         << "fused" << std::setw(10) << "lexical" << std::setw(10) << "semantic" << "  " << std::left
         << std::setw(7) << "sector" << "title\n";
    for (const auto& row : result.results) {
      const auto* j = retriever->find(row.judgment_id);
      out_ << std::left << std::setw(5) << row.rank << std::setw(24) << row.judgment_id << std::right
           << std::setw(9) << format_number(row.fused_score) << std::setw(10) << format_number(row.lexical_score)
           << std::setw(10) << format_number(row.semantic_score) << "  " << std::left << std::setw(7)
           << (j ? std::to_string(j->sector.code()) : "") << (j ? j->title : "") << "\n";
    }
    return 0;
  }

  int judge() {
    if (o_.original_file.empty() || o_.generated_file.empty()) {
      throw Error(ErrorCode::InvalidArgument, "judge needs --original and --generated");
    }
    const auto original = load_summary(o_.original_file);
    const auto generated = load_summary(o_.generated_file);
    auto provider = make_completion_provider(cfg_);
    auto options = eval_options(cfg_).judge;
    options.pair_id = o_.pair_id;
    json rows = json::array();
    for (auto kind : selected_metrics()) {
      const auto score = judge_summary(kind, original, generated, *provider, options);
      json row{{"metric", std::string(metric_name(kind))}, {"value", score.value}};
      if (score.rationale_text) row["rationale"] = *score.rationale_text;
      rows.push_back(row);
      if (!o_.json) {
        out_ << std::left << std::setw(20) << metric_name(kind) << ' ' << format_value(kind, score.value) << "\n";
        if (score.rationale_text && !score.rationale_text->empty()) out_ << "  " << *score.rationale_text << "\n";
      }
    }
    if (o_.json) out_ << rows.dump(2) << "\n";
    return 0;
  }

  int evaluate() {
    const auto layout = cfg_.layout();
    std::vector<EvalPair> pairs;
    if (!o_.run_id.empty() && !o_.generated_file.empty()) {
      throw Error(ErrorCode::InvalidArgument, "use --run-id or --generated, not both");
    }
    if (!o_.generated_file.empty()) {
      auto run = load_summary_records(o_.generated_file);
      run.or_throw();
      auto gold = load_gold_summaries(o_.gold_file.empty() ? layout.gold() : fs::path(o_.gold_file));
      gold.or_throw();
      pairs = make_eval_pairs(run.records, gold.records);
    } else if (!o_.run_id.empty()) {
      pairs = run_pairs(layout, o_.run_id);
    } else {
      throw Error(ErrorCode::InvalidArgument, "evaluate needs --run-id or --generated");
    }
    auto options = eval_options(cfg_);
    if (o_.jobs > 0) options.parallelism = o_.jobs;
    auto provider = make_completion_provider(cfg_);
    const auto report = evaluate_run(pairs, o_.metrics.empty() ? std::vector<MetricKind>{} : selected_metrics(),
                                     *provider, options);
    const fs::path dir = o_.out_dir.empty() ? layout.root / "out" : fs::path(o_.out_dir);
    atomic_write(dir / "report.json", to_json(report).dump(2) + "\n");
    atomic_write(dir / "report.csv", to_csv(report));
    return present_report(report, (dir / "report.json").string());
  }

  int report() {
    const fs::path path = o_.report_file.empty() ? cfg_.layout().report_json() : fs::path(o_.report_file);
    const auto report = report_from_json(read_json_file(path.string()));
    if (o_.format == "csv") {
      out_ << to_csv(report);
      return 0;
    }
    if (o_.format == "json") o_.json = true;
    return present_report(report, path.string());
  }

  int serve() {
    if (!o_.addr.empty()) cfg_.addr = o_.addr;
    const auto [host, port] = split_addr(cfg_.addr);
    auto service = Service::open(cfg_);
    httplib::Server server;
    service->mount(server, &err_);
    if (!server.bind_to_port(host, port)) {
      throw Error(ErrorCode::BindError, "cannot bind " + cfg_.addr);
    }
    std::signal(SIGINT, on_stop_signal);
    std::signal(SIGTERM, on_stop_signal);
    std::jthread watcher([&server](std::stop_token st) {
      while (!st.stop_requested() && !stop_requested().load()) {
        std::this_thread::sleep_for(std::chrono::milliseconds(100));
      }
      server.stop();
    });
    err_ << "listening on http://" << cfg_.addr << "\n";
    err_.flush();
    server.listen_after_bind();
    watcher.request_stop();
    return 0;
  }

 private:
  std::size_t jobs() const { return o_.jobs > 0 ? o_.jobs : std::max<std::size_t>(1, cfg_.parallelism); }

  static json read_json_file(const std::string& path) {
    try {
      return json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::ParseError, path + " is not JSON: " + e.what());
    }
  }

  std::vector<MetricKind> selected_metrics() const {
    if (o_.metrics.empty()) return {kAllMetrics.begin(), kAllMetrics.end()};
    std::vector<MetricKind> out;
    for (const auto& m : o_.metrics) out.push_back(parse_metric(m));
    return out;
  }

  static std::string format_value(MetricKind kind, double v) {
    if (metric_scale(kind) == MetricScale::Binary) return v >= 0.5 ? "Yes" : "No";
    return format_number(v);
  }

  void print_errors(const char* name, const std::vector<Error>& errors) const {
    for (const auto& e : errors) {
      err_ << "  " << name << " line " << e.line().value_or(0) << ": " << e.code_name() << ": " << e.detail() << "\n";
    }
  }

  int present_report(const MetricReport& report, const std::string& path) {
    std::optional<HumanScores> human;
    if (!o_.human_file.empty()) human = load_human_scores(o_.human_file);
    if (o_.json) {
      json j = to_json(report);
      if (human) {
        json rows = json::array();
        for (const auto& c : correlate_with_human(report, human->table)) rows.push_back(to_json(c));
        j["correlation"] = rows;
      }
      out_ << j.dump(2) << "\n";
      return 0;
    }
    out_ << path << "\n";
    out_ << std::left << std::setw(14) << "metric" << std::right << std::setw(9) << "mean" << std::setw(6) << "n"
         << std::setw(10) << "failures" << "\n";
    for (auto kind : report.kinds) {
      const auto& s = report.per_kind.at(kind);
      out_ << std::left << std::setw(14) << metric_column(kind) << std::right << std::setw(9)
           << (s.mean ? format_number(*s.mean) : "-") << std::setw(6) << s.n << std::setw(10) << s.failures << "\n";
    }
    const auto& o = report.overview_reference_mean;
    const auto& w = report.summary_reference_mean;
    out_ << "overview  R1 " << format_number(o.rouge1) << "  R2 " << format_number(o.rouge2) << "  RL "
         << format_number(o.rougeL) << "  BLEU-1 " << format_number(o.bleu1) << "\n";
    out_ << "summary   R1 " << format_number(w.rouge1) << "  R2 " << format_number(w.rouge2) << "  RL "
         << format_number(w.rougeL) << "  BLEU-1 " << format_number(w.bleu1) << "\n";
    if (human) {
      for (const auto& warning : human->warnings) err_ << "warning: " << warning << "\n";
      out_ << "spearman vs human\n";
      for (const auto& c : correlate_with_human(report, human->table)) {
        out_ << "  " << std::left << std::setw(14) << metric_column(c.kind)
             << (c.rho ? format_number(*c.rho) : c.error.value_or("-")) << "  (n=" << c.n << ")\n";
      }
    }
    return 0;
  }

  Options o_;
  AppConfig cfg_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace cli

/// Runs one CLI invocation. `env` replaces std::getenv when given.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
                   const EnvLookup& env = {}) {
  cli::Options o;
  CLI::App app{"Material summaries, precedent retrieval and evaluation for consumer case files", "dispute"};
  app.require_subcommand(1);
  app.fallthrough();
  app.failure_message(CLI::FailureMessage::help);
  app.add_option("--config", o.config, "JSON config file");
  app.add_option("--root,--corpus", o.root, "Workspace root (corpus/, index/, out/)");
  app.add_option("--mock-script", o.mock_script, "Scripted responses; selects the mock provider");
  app.add_flag("--json", o.json, "Machine-readable JSON on stdout");
  app.add_flag("-v,--verbose", o.verbose, "Log provider traffic to stderr");

  auto* ingest = app.add_subcommand("ingest", "Validate JSONL files and copy them into the workspace");
  ingest->add_option("--judgments", o.judgments_file, "Judgment records (JSONL)");
  ingest->add_option("--cases", o.cases_file, "Case files (JSONL)");
  ingest->add_option("--gold", o.gold_file, "Reference summaries (JSONL)");
  ingest->add_flag("--strict", o.strict, "Fail on the first bad line instead of skipping it");

  auto* index = app.add_subcommand("index", "Build the BM25 index and embedding cache");
  index->add_option("--field", o.field, "Indexed text: brief or full_text")->check(CLI::IsMember({"brief", "full_text"}));
  index->add_option("--k1", o.k1, "BM25 k1");
  index->add_option("--b", o.b, "BM25 b");

  auto* summarize = app.add_subcommand("summarize", "Generate material summaries");
  summarize->add_option("--case", o.case_file, "Case file (JSON)");
  summarize->add_option("--case-id", o.case_id, "Case id from corpus/cases.jsonl");
  summarize->add_flag("--all", o.all, "Every case in corpus/cases.jsonl");
  summarize->add_option("--strategy", o.strategy, "single, partwise-sr or partwise-cot");
  summarize->add_option("--out", o.out, "Output path");
  summarize->add_option("--run-id", o.run_id, "With --all: write out/runs/<id>.jsonl");
  summarize->add_option("--jobs", o.jobs, "Cases summarized concurrently");
  summarize->add_option("--max-chars", o.max_chars, "Character budget for the case text");

  auto* similar = app.add_subcommand("similar", "Rank precedent judgments for a summary");
  similar->add_option("--summary", o.summary_file, "Summary (JSON)");
  similar->add_option("--case-id", o.case_id, "Case id with a summary in out/summaries.jsonl");
  similar->add_option("--overview", o.overview, "Free-text query");
  similar->add_option("--k", o.k, "Number of results");
  similar->add_option("--weight", o.weight, "Lexical weight in [0, 1]");
  similar->add_option("--sector", o.sector, "Sector code override");

  auto* judge = app.add_subcommand("judge", "Score one generated summary against its reference");
  judge->add_option("--original", o.original_file, "Reference summary (JSON)");
  judge->add_option("--generated", o.generated_file, "Generated summary (JSON)");
  judge->add_option("--metric", o.metrics, "Metric name; repeatable (default: all)");
  judge->add_option("--pair-id", o.pair_id, "Pair id used in request tags");

  auto* evaluate = app.add_subcommand("evaluate", "Judge a run against the gold summaries");
  evaluate->add_option("--run-id", o.run_id, "Run stored under out/runs/");
  evaluate->add_option("--generated", o.generated_file, "Summary records (JSONL)");
  evaluate->add_option("--gold", o.gold_file, "Gold summaries (JSONL); default corpus/gold.jsonl");
  evaluate->add_option("--metric,--kinds", o.metrics, "Metrics to judge (default: all)")->delimiter(',');
  evaluate->add_option("--jobs", o.jobs, "Pairs judged concurrently");
  evaluate->add_option("--human", o.human_file, "Human scores CSV for Spearman correlation");
  evaluate->add_option("--out-dir", o.out_dir, "Where report.json and report.csv go");

  auto* report = app.add_subcommand("report", "Print a saved metric report");
  report->add_option("--report", o.report_file, "report.json path");
  report->add_option("--format", o.format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
  report->add_option("--human", o.human_file, "Human scores CSV for Spearman correlation");

  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  serve->add_option("--addr", o.addr, "host:port");

  std::vector<const char*> argv{"dispute"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return exit_code(ErrorFamily::Usage);
  }

  try {
    std::optional<fs::path> config_file;
    if (!o.config.empty()) config_file = o.config;
    auto cfg = load_config(config_file, env);
    if (!o.root.empty()) cfg.root = o.root;
    if (!o.mock_script.empty()) {
      cfg.provider = "mock";
      cfg.mock_script = o.mock_script;
    }
    cfg.gateway.verbose = o.verbose;
    cli::Runner runner(o, cfg, out, err);
    if (ingest->parsed()) return runner.ingest();
    if (index->parsed()) return runner.index();
    if (summarize->parsed()) return runner.summarize();
    if (similar->parsed()) return runner.similar();
    if (judge->parsed()) return runner.judge();
    if (evaluate->parsed()) return runner.evaluate();
    if (report->parsed()) return runner.report();
    if (serve->parsed()) return runner.serve();
    return exit_code(ErrorFamily::Usage);
  } catch (const Error& e) {
    if (o.json) out << error_json(e).dump(2) << "\n";
    err << "error: " << e.what() << "\n";
    return exit_code(error_family(e.code()));
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return exit_code(ErrorFamily::Internal);
  }
}

}  // namespace dispute
