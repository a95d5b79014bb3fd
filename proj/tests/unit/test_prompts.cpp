#include <gtest/gtest.h>

#include <filesystem>

#include "dispute/prompts.hpp"
#include "support/fixtures.hpp"

using namespace dispute;

namespace {

CaseFile sample_case() { return CaseFile{"c1", "The phone broke.", "Not our fault.", {}}; }

}  // namespace

TEST(BuildPartPrompt, CoTSectorTemplateAndBudget) {
  const auto b = build_part_prompt(SummaryPart::Sector, PromptStrategy::PartwiseCoT, sample_case());
  EXPECT_NE(b.system_prompt.find("Sector:- [Sector Name], [Sector Code]"), std::string::npos);
  EXPECT_NE(b.system_prompt.find("step-by-step"), std::string::npos);
  EXPECT_EQ(b.params.max_new_tokens, 16);
  EXPECT_EQ(b.part, SummaryPart::Sector);
}

TEST(BuildPartPrompt, DecodingDefaults) {
  const auto b = build_part_prompt(SummaryPart::Overview, PromptStrategy::PartwiseSR, sample_case());
  EXPECT_DOUBLE_EQ(b.params.temperature, 0.7);
  EXPECT_DOUBLE_EQ(b.params.top_p, 0.95);
  EXPECT_EQ(b.params.top_k, 50);
  EXPECT_EQ(b.params.max_new_tokens, 512);
}

TEST(BuildPartPrompt, Budgets) {
  EXPECT_EQ(part_budget(SummaryPart::Sector), 16);
  EXPECT_EQ(part_budget(SummaryPart::Reliefs), 256);
  EXPECT_EQ(part_budget(SummaryPart::Overview), 512);
  EXPECT_EQ(part_budget(SummaryPart::Issues), 512);
  EXPECT_EQ(part_budget(SummaryPart::EvidenceComplainant), 256);
  EXPECT_EQ(part_budget(SummaryPart::EvidenceOpposite), 256);
  EXPECT_EQ(part_budget(SummaryPart::WholeSummary), 2048);
}

TEST(BuildPartPrompt, CaseTextIsTheUserTurn) {
  const auto b = build_part_prompt(SummaryPart::Issues, PromptStrategy::PartwiseSR, sample_case());
  EXPECT_EQ(b.user_prompt, "Complaint:\nThe phone broke.\n\nWritten statement:\nNot our fault.\n");
}

TEST(BuildPartPrompt, UnsupportedCombinations) {
  try {
    build_part_prompt(SummaryPart::Overview, PromptStrategy::SinglePrompt, sample_case());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedCombination);
  }
  EXPECT_THROW(build_part_prompt(SummaryPart::WholeSummary, PromptStrategy::PartwiseCoT, sample_case()), Error);
  const auto whole = build_part_prompt(SummaryPart::WholeSummary, PromptStrategy::SinglePrompt, sample_case());
  EXPECT_EQ(whole.params.max_new_tokens, 2048);
}

TEST(BuildPartPrompt, Pure) {
  for (auto strategy : {PromptStrategy::PartwiseSR, PromptStrategy::PartwiseCoT}) {
    for (auto part : kSummaryParts) {
      EXPECT_EQ(build_part_prompt(part, strategy, sample_case()), build_part_prompt(part, strategy, sample_case()));
    }
  }
}

TEST(BuildPartPrompt, StrategiesUseDifferentTemplates) {
  const auto sr = build_part_prompt(SummaryPart::Sector, PromptStrategy::PartwiseSR, sample_case());
  const auto cot = build_part_prompt(SummaryPart::Sector, PromptStrategy::PartwiseCoT, sample_case());
  EXPECT_NE(sr.system_prompt, cot.system_prompt);
}

TEST(PromptLibrary, EmbeddedAssetsMatchFiles) {
  namespace fs = std::filesystem;
  std::size_t files = 0;
  for (const auto& entry : fs::recursive_directory_iterator(fixtures::asset_dir())) {
    if (!entry.is_regular_file() || (entry.path().extension() != ".txt" && entry.path().extension() != ".json")) {
      continue;
    }
    ++files;
    auto key = fs::relative(entry.path(), fixtures::asset_dir()).replace_extension().generic_string();
    bool found = false;
    for (const auto& [k, body] : detail::kEmbeddedAssets) {
      if (k == key) {
        found = true;
        EXPECT_EQ(std::string(body), fixtures::read_file(entry.path())) << key;
      }
    }
    EXPECT_TRUE(found) << key << " is not embedded; run tools/embed_assets.py";
  }
  EXPECT_EQ(files, detail::kEmbeddedAssets.size());
}

TEST(PromptLibrary, DirectoryOverride) {
  fixtures::TempDir dir;
  fixtures::write_file(dir / "partwise-sr/sector.txt", "custom sector prompt");
  const auto lib = PromptLibrary::from_directory(dir.path());
  EXPECT_EQ(lib.get(PromptStrategy::PartwiseSR, SummaryPart::Sector), "custom sector prompt");
  EXPECT_EQ(lib.get(PromptStrategy::PartwiseCoT, SummaryPart::Sector),
            PromptLibrary::builtin().get(PromptStrategy::PartwiseCoT, SummaryPart::Sector));
  EXPECT_THROW(PromptLibrary::from_directory(dir / "missing"), Error);
}
