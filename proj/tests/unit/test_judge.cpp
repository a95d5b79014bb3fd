#include <gtest/gtest.h>

#include <random>

#include "dispute/judge.hpp"
#include "dispute/json_codec.hpp"
#include "support/fixtures.hpp"

using namespace dispute;

TEST(ScoreTag, Likert) {
  EXPECT_EQ(parse_score_tag("explanation ... <score>4</score>", MetricScale::Likert), 4);
  EXPECT_EQ(parse_score_tag("<SCORE> 2 </Score>", MetricScale::Likert), 2);
  EXPECT_EQ(parse_score_tag("<score>1</score> on reflection <score>5</score>", MetricScale::Likert), 5);
}

TEST(ScoreTag, Binary) {
  EXPECT_EQ(parse_score_tag("<score>Yes</score>", MetricScale::Binary), 1);
  EXPECT_EQ(parse_score_tag("<score>no</score>", MetricScale::Binary), 0);
}

TEST(ScoreTag, Errors) {
  auto code = [](std::string_view s, MetricScale scale) {
    try {
      parse_score_tag(s, scale);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::InvalidArgument;
  };
  EXPECT_EQ(code("<score>7</score>", MetricScale::Likert), ErrorCode::OutOfScale);
  EXPECT_EQ(code("<score>0</score>", MetricScale::Likert), ErrorCode::OutOfScale);
  EXPECT_EQ(code("<score>4.5</score>", MetricScale::Likert), ErrorCode::OutOfScale);
  EXPECT_EQ(code("<score>[1-5]</score>", MetricScale::Likert), ErrorCode::OutOfScale);
  EXPECT_EQ(code("<score>Maybe</score>", MetricScale::Binary), ErrorCode::OutOfScale);
  EXPECT_EQ(code("<score>3</score>", MetricScale::Binary), ErrorCode::OutOfScale);
  EXPECT_EQ(code("no tag here", MetricScale::Likert), ErrorCode::NoScoreTag);
  EXPECT_EQ(code("<score>4", MetricScale::Likert), ErrorCode::NoScoreTag);
}

TEST(ScoreTag, RenderParseIdentity) {
  for (int v = 1; v <= 5; ++v) {
    EXPECT_EQ(parse_score_tag("<score>" + std::to_string(v) + "</score>", MetricScale::Likert), v);
  }
  EXPECT_EQ(parse_score_tag("<score>Yes</score>", MetricScale::Binary), 1);
  EXPECT_EQ(parse_score_tag("<score>No</score>", MetricScale::Binary), 0);
}

TEST(ScoreTag, FuzzNeverEscapesScale) {
  std::mt19937 rng(41);
  const std::vector<std::string> pieces{"<score>", "</score>", "<SCORE>", "</Score>", "1", "5", "9", "yes",
                                        "No", " ", "\n", "<", ">", "/", "score", "x", "\xff", "é"};
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    for (int j = 0, n = static_cast<int>(rng() % 12); j < n; ++j) s += pieces[rng() % pieces.size()];
    for (auto scale : {MetricScale::Likert, MetricScale::Binary}) {
      try {
        const double v = parse_score_tag(s, scale);
        if (scale == MetricScale::Likert) {
          EXPECT_TRUE(v >= 1 && v <= 5 && v == std::floor(v)) << s;
        } else {
          EXPECT_TRUE(v == 0 || v == 1) << s;
        }
      } catch (const Error& e) {
        EXPECT_TRUE(e.code() == ErrorCode::NoScoreTag || e.code() == ErrorCode::OutOfScale);
      }
    }
  }
}

TEST(Metrics, NamesAndScales) {
  EXPECT_EQ(kAllMetrics.size(), 8u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(metric_scale(kAllMetrics[i]), MetricScale::Likert);
  for (std::size_t i = 4; i < 8; ++i) EXPECT_EQ(metric_scale(kAllMetrics[i]), MetricScale::Binary);
  for (auto k : kAllMetrics) {
    EXPECT_EQ(parse_metric(metric_name(k)), k);
    EXPECT_EQ(parse_metric(metric_key(k)), k);
  }
  EXPECT_THROW(parse_metric("Fluency"), Error);
}

TEST(JudgePrompt, SubstitutesBothSummaries) {
  auto original = fixtures::iphone_summary();
  auto generated = original;
  generated.overview = "A different overview mentioning {original} literally.";
  for (auto k : kAllMetrics) {
    const auto& tpl = judge_template(k);
    EXPECT_NE(tpl.find("{original}"), std::string::npos) << metric_name(k);
    EXPECT_NE(tpl.find("{generated}"), std::string::npos) << metric_name(k);
    const auto prompt = render_judge_prompt(k, original, generated);
    EXPECT_NE(prompt.find(render_summary(original)), std::string::npos);
    EXPECT_NE(prompt.find(render_summary(generated)), std::string::npos);
    EXPECT_EQ(prompt.find("{generated}"), std::string::npos);
  }
}

TEST(JudgeSummary, ScriptedScores) {
  const auto s = fixtures::iphone_summary();
  auto judge = mock_provider({{"judge:overview_accuracy:*", {"Reasoning.\n<score>5</score>"}},
                              {"judge:sector_relevance:*", {"<score>No</score>"}}});
  const auto a = judge_summary(MetricKind::OverviewAccuracy, s, s, *judge);
  EXPECT_EQ(a.value, 5);
  EXPECT_EQ(a.rationale_text.value_or(""), "Reasoning.");
  EXPECT_EQ(judge_summary(MetricKind::SectorRelevance, s, s, *judge).value, 0);
  const auto calls = judge->calls();
  ASSERT_EQ(calls.size(), 2u);
  EXPECT_EQ(calls[0].params.temperature, 0.0);
  EXPECT_EQ(calls[0].tag, "judge:overview_accuracy:pair");
}

TEST(JudgeSummary, RetriesMalformedThenFails) {
  const auto s = fixtures::iphone_summary();
  auto judge = mock_provider({{"*", {"no tag here"}}});
  try {
    judge_summary(MetricKind::IssuesAccuracy, s, s, *judge);
    FAIL();
  } catch (const JudgeFailure& e) {
    EXPECT_EQ(e.kind(), MetricKind::IssuesAccuracy);
    EXPECT_EQ(e.attempts(), 3);
    EXPECT_EQ(e.last_code(), ErrorCode::NoScoreTag);
  }
  EXPECT_EQ(judge->call_count(), 3u);

  auto recovering = mock_provider({{"*", {"oops", "<score>3</score>"}}});
  EXPECT_EQ(judge_summary(MetricKind::IssuesAccuracy, s, s, *recovering).value, 3);
}

TEST(EvaluateRun, MeansAndFailures) {
  const auto s = fixtures::iphone_summary();
  std::vector<EvalPair> pairs{{"p1", s, s}, {"p2", s, s}};
  auto judge = mock_provider({{"judge:overview_accuracy:*", {"<score>5</score>"}},
                              {"judge:issues_accuracy:p1", {"<score>4</score>"}},
                              {"judge:issues_accuracy:p2", {"garbage"}},
                              {"judge:*", {"<score>Yes</score>"}}});
  const auto report = evaluate_run(pairs, {MetricKind::OverviewAccuracy, MetricKind::IssuesAccuracy,
                                           MetricKind::SectorRelevance},
                                   *judge);
  EXPECT_EQ(report.per_kind.at(MetricKind::OverviewAccuracy).mean, 5.0);
  EXPECT_EQ(report.per_kind.at(MetricKind::OverviewAccuracy).n, 2u);
  EXPECT_EQ(report.per_kind.at(MetricKind::IssuesAccuracy).n, 1u);
  EXPECT_EQ(report.per_kind.at(MetricKind::IssuesAccuracy).failures, 1u);
  EXPECT_EQ(report.per_kind.at(MetricKind::IssuesAccuracy).mean, 4.0);
  EXPECT_EQ(report.per_kind.at(MetricKind::SectorRelevance).mean, 1.0);
  EXPECT_DOUBLE_EQ(report.overview_reference_mean.rouge1, 1.0);
  EXPECT_DOUBLE_EQ(report.summary_reference_mean.bleu1, 1.0);
  EXPECT_THROW(evaluate_run({}, {}, *judge), Error);
}

TEST(EvaluateRun, ParallelMatchesSerial) {
  const auto s = fixtures::iphone_summary();
  std::vector<EvalPair> pairs;
  for (int i = 0; i < 6; ++i) pairs.push_back({"p" + std::to_string(i), s, s});
  MockProvider::Script script;
  for (int i = 0; i < 6; ++i) {
    for (auto k : kAllMetrics) {
      const bool likert = metric_scale(k) == MetricScale::Likert;
      script["judge:" + std::string(metric_key(k)) + ":p" + std::to_string(i)] = {
          likert ? "<score>" + std::to_string(1 + (i % 5)) + "</score>" : (i % 2 ? "<score>Yes</score>" : "<score>No</score>")};
    }
  }
  EvalOptions serial, parallel;
  parallel.parallelism = 4;
  const auto a = to_json(evaluate_run(pairs, {}, *mock_provider(script), serial));
  const auto b = to_json(evaluate_run(pairs, {}, *mock_provider(script), parallel));
  EXPECT_EQ(a.dump(), b.dump());
}

TEST(EvaluateRun, CsvColumnOrder) {
  const auto s = fixtures::iphone_summary();
  auto judge = mock_provider({{"judge:*", {"<score>Yes</score>"}}});
  const auto report = evaluate_run({{"p1", s, s}}, {MetricKind::SectorRelevance}, *judge);
  const auto csv = to_csv(report);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "row,Over. Acc.,Oversimp.,Over. Retr.,Iss. Acc.,Evid. Acc.,Iss. Form.,Sect. Rel.,Rel. Acc.");
  EXPECT_NE(csv.find("mean,,,,,,,1.0000,\n"), std::string::npos) << csv;
}

TEST(Correlate, SpearmanPerKind) {
  const auto s = fixtures::iphone_summary();
  std::vector<EvalPair> pairs;
  MockProvider::Script script;
  const std::vector<int> judge_scores{2, 1, 4, 3, 5};
  HumanScoreTable human;
  for (int i = 0; i < 5; ++i) {
    const std::string id = "c" + std::to_string(i);
    pairs.push_back({id, s, s});
    script["judge:overview_accuracy:" + id] = {"<score>" + std::to_string(judge_scores[i]) + "</score>"};
    human[id][MetricKind::OverviewAccuracy] = i + 1;
    human[id][MetricKind::SectorRelevance] = 1;
  }
  script["judge:sector_relevance:*"] = {"<score>Yes</score>"};
  const auto report = evaluate_run(pairs, {MetricKind::OverviewAccuracy, MetricKind::SectorRelevance},
                                   *mock_provider(script));
  const auto rows = correlate_with_human(report, human);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_NEAR(rows[0].rho.value(), 0.8, 1e-12);
  EXPECT_EQ(rows[0].n, 5u);
  EXPECT_FALSE(rows[1].rho);
  EXPECT_EQ(rows[1].error.value_or(""), "ConstantInput");
}
