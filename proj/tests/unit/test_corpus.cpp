#include <gtest/gtest.h>

#include <random>

#include "dispute/corpus.hpp"
#include "support/fixtures.hpp"

using namespace dispute;

namespace {

std::string judgment_line(const std::string& id, int code, const std::string& brief) {
  return json{{"id", id}, {"sector_code", code}, {"brief", brief}}.dump() + "\n";
}

}  // namespace

TEST(LoadJudgments, TwoLines) {
  const auto r = parse_judgments(judgment_line("j1", 110, "defective phone") + judgment_line("j2", 102, "claim denied"));
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[1].sector.code(), 102);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(LoadJudgments, UnknownSectorCode) {
  const auto r = parse_judgments(judgment_line("j1", 110, "a") + judgment_line("j2", 300, "b"));
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].code(), ErrorCode::InvalidSector);
  EXPECT_EQ(r.errors[0].line(), 2u);
  EXPECT_EQ(r.records.size(), 1u);
  EXPECT_THROW(r.or_throw(), Error);
}

TEST(LoadJudgments, AnnotatedRecord) {
  const json j{{"schema_version", 1},
               {"id", "scdrc-nl-1-2015"},
               {"title", "A. Sangtam v. Life Insurance Corporation"},
               {"citation", "CC/1/2015 2023 SCDRC Nagaland"},
               {"sector_name", "Insurance"},
               {"sector_code", 102},
               {"brief", "The insurer repudiated a life policy claim on grounds of concealment."}};
  const auto r = parse_judgments(j.dump());
  ASSERT_TRUE(r.ok());
  const auto& rec = r.records.at(0);
  EXPECT_EQ(rec.citation, "CC/1/2015 2023 SCDRC Nagaland");
  EXPECT_EQ(rec.sector.code(), 102);
  EXPECT_EQ(judgment_from_json(to_json(rec)), rec);
}

TEST(LoadJudgments, SectorNameMismatch) {
  const json j{{"id", "x"}, {"sector_name", "Banking"}, {"sector_code", 102}, {"brief", "b"}};
  const auto r = parse_judgments(j.dump());
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].code(), ErrorCode::InvalidSector);
}

TEST(LoadJudgments, MalformedDuplicateAndBlankLines) {
  const std::string content = judgment_line("j1", 110, "a") + "{not json\n\n" + judgment_line("j1", 110, "dup") +
                              R"({"id":"j3","sector_code":110})" "\n";
  const auto r = parse_judgments(content);
  EXPECT_EQ(r.records.size(), 1u);
  ASSERT_EQ(r.errors.size(), 3u);
  EXPECT_EQ(r.errors[0].code(), ErrorCode::ParseError);
  EXPECT_EQ(r.errors[0].line(), 2u);
  EXPECT_EQ(r.errors[1].code(), ErrorCode::DuplicateId);
  EXPECT_EQ(r.errors[1].line(), 4u);
  EXPECT_EQ(r.errors[2].code(), ErrorCode::ParseError);
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_NE(r.warnings[0].find("1 blank"), std::string::npos);
}

TEST(LoadJudgments, EmptyFileWarns) {
  const auto r = parse_judgments("");
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.records.empty());
  ASSERT_EQ(r.warnings.size(), 1u);
  EXPECT_EQ(r.warnings[0], "file has no records");
}

TEST(LoadJudgments, MissingFileIsIoError) {
  try {
    load_judgments("/nonexistent/dir/judgments.jsonl");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoError);
  }
}

TEST(LoadCases, MetadataAndMissingComplaint) {
  const std::string content =
      json{{"id", "c1"}, {"complaint_text", "text"}, {"metadata", {{"forum", "DCDRC"}}}}.dump() + "\n" +
      json{{"id", "c2"}, {"written_statement_text", "ws"}}.dump() + "\n";
  const auto r = parse_case_files(content);
  ASSERT_EQ(r.records.size(), 1u);
  EXPECT_EQ(r.records[0].metadata.at("forum"), "DCDRC");
  ASSERT_EQ(r.errors.size(), 1u);
  EXPECT_EQ(r.errors[0].code(), ErrorCode::ParseError);
  EXPECT_EQ(r.errors[0].line(), 2u);
}

TEST(SaveLoad, JsonlRoundTrip) {
  fixtures::TempDir dir;
  std::vector<CaseFile> cases{fixtures::iphone_case(), {"c2", "second complaint", "", {{"k", "v"}}}};
  save_case_files(dir / "cases.jsonl", cases);
  EXPECT_EQ(load_case_files(dir / "cases.jsonl").records, cases);
  EXPECT_FALSE(fs::exists(dir / "cases.jsonl.tmp"));
}

TEST(SaveLoad, SummaryRoundTrip) {
  fixtures::TempDir dir;
  auto s = fixtures::iphone_summary();
  save_summary(dir / "s.json", s);
  EXPECT_EQ(load_summary(dir / "s.json"), s);
  s.evidence_complainant.clear();
  s.evidence_opposite.clear();
  save_summary(dir / "s.json", s);
  EXPECT_EQ(load_summary(dir / "s.json"), s);
}

TEST(SaveLoad, TruncatedSummaryIsParseError) {
  const auto full = to_json(fixtures::iphone_summary()).dump();
  try {
    parse_summary(full.substr(0, full.size() / 2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
}

TEST(SaveLoad, SummaryRecords) {
  SummaryRecord ok{"c1", PromptStrategy::PartwiseCoT, fixtures::iphone_summary(), {}, {}, {"w"}};
  SummaryRecord bad{"c2", PromptStrategy::SinglePrompt, {}, "PartFailure", "sector failed", {}};
  const auto r = parse_summary_records(to_json(ok).dump() + "\n" + to_json(bad).dump() + "\n");
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r.records.size(), 2u);
  EXPECT_EQ(r.records[0].summary, ok.summary);
  EXPECT_EQ(r.records[0].warnings, ok.warnings);
  EXPECT_EQ(r.records[1].error_code, bad.error_code);
  EXPECT_EQ(r.records[1].strategy, PromptStrategy::SinglePrompt);
}

TEST(HumanScoresCsv, Parses) {
  const auto h = parse_human_scores(
      "case_id,metric,score\nc1,SectorRelevance,1\nc1,overview_accuracy,4\nc2,IssueFormatting,No\n");
  EXPECT_EQ(h.table.at("c1").at(MetricKind::SectorRelevance), 1.0);
  EXPECT_EQ(h.table.at("c1").at(MetricKind::OverviewAccuracy), 4.0);
  EXPECT_EQ(h.table.at("c2").at(MetricKind::IssueFormatting), 0.0);
  EXPECT_TRUE(h.warnings.empty());
}

TEST(HumanScoresCsv, Errors) {
  auto code_of = [](const std::string& body) {
    try {
      parse_human_scores(body);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code_of("case_id,metric,score\nc1,OverviewAccuracy,6\n"), ErrorCode::OutOfScale);
  EXPECT_EQ(code_of("case_id,metric,score\nc1,SectorRelevance,2\n"), ErrorCode::OutOfScale);
  EXPECT_EQ(code_of("case_id,metric,score\nc1,Fluency,3\n"), ErrorCode::UnknownMetric);
  EXPECT_NE(code_of("id,score\nc1,3\n"), ErrorCode::InvalidArgument);
}

TEST(HumanScoresCsv, DuplicateRowWarns) {
  const auto h = parse_human_scores(
      "\xEF\xBB\xBF" "case_id,metric,score\nc1,OverviewAccuracy,2\nc1,OverviewAccuracy,3\n");
  EXPECT_EQ(h.table.at("c1").at(MetricKind::OverviewAccuracy), 3.0);
  EXPECT_EQ(h.warnings.size(), 1u);
}

TEST(IndexFile, RoundTripAndStale) {
  fixtures::TempDir dir;
  std::vector<JudgmentRecord> docs{{"a", "", "", sector_from_code(110), "phone screen defect refund", {}},
                                   {"b", "", "", sector_from_code(102), "insurance claim repudiated", {}},
                                   {"c", "", "", sector_from_code(110), "laptop battery defect", {}}};
  const auto index = build_index(docs);
  const auto hash = corpus_hash(docs);
  save_index(dir / "bm25.idx", index, hash);
  const auto loaded = load_index(dir / "bm25.idx", hash);
  for (const std::string q : {"defect refund", "claim", "phone laptop battery", "absent"}) {
    EXPECT_EQ(lexical_scores(loaded, q), lexical_scores(index, q)) << q;
  }

  auto changed = docs;
  changed[1].brief += " again";
  try {
    load_index(dir / "bm25.idx", corpus_hash(changed));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::StaleIndex);
  }
  EXPECT_THROW(load_index(dir / "bm25.idx", hash, IndexField::FullText), Error);
}

TEST(EmbeddingCache, RoundTripAndKeying) {
  fixtures::TempDir dir;
  HashingEmbedder embedder;
  const auto vectors = embedder.embed({"first text", "second text", "third"});
  const EmbeddingCacheKey key{"hashing", "hash-64", "abc"};
  EXPECT_FALSE(load_embeddings(dir / "e.bin", key));
  save_embeddings(dir / "e.bin", key, vectors);
  const auto loaded = load_embeddings(dir / "e.bin", key);
  ASSERT_TRUE(loaded);
  EXPECT_EQ(*loaded, vectors);
  EXPECT_FALSE(load_embeddings(dir / "e.bin", EmbeddingCacheKey{"hashing", "hash-64", "other"}));

  auto bytes = fixtures::read_file(dir / "e.bin");
  fixtures::write_file(dir / "e.bin", bytes.substr(0, bytes.size() - 3));
  EXPECT_THROW(load_embeddings(dir / "e.bin", key), Error);
}

TEST(RandomizedRoundTrip, JudgmentsAndCases) {
  std::mt19937 rng(5);
  const std::vector<std::string> words{"refund", "₹ 5,000", "\"quoted\"", "line\nbreak", "tab\there", "é", "{x}"};
  auto phrase = [&] {
    std::string s = "w";
    for (int i = 0, n = 1 + static_cast<int>(rng() % 6); i < n; ++i) s += " " + words[rng() % words.size()];
    return s;
  };
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<JudgmentRecord> js;
    std::vector<CaseFile> cs;
    for (int i = 0, n = 1 + static_cast<int>(rng() % 6); i < n; ++i) {
      JudgmentRecord j{"j" + std::to_string(i), phrase(), phrase(),
                       SectorLabel::from_index(rng() % kSectorTaxonomy.size()), phrase(), {}};
      if (rng() % 2) j.full_text = phrase();
      js.push_back(j);
      CaseFile c{"c" + std::to_string(i), phrase(), rng() % 2 ? phrase() : "", {}};
      if (rng() % 2) c.metadata["forum"] = phrase();
      cs.push_back(c);
    }
    EXPECT_EQ(parse_judgments(to_jsonl(js)).records, js);
    EXPECT_EQ(parse_case_files(to_jsonl(cs)).records, cs);
  }
}
