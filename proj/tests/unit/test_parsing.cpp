#include <gtest/gtest.h>

#include <random>

#include "dispute/parsing.hpp"
#include "support/fixtures.hpp"

using namespace dispute;

namespace {

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(ParseSector, CanonicalLine) {
  const auto r = parse_sector_line("Sector:- Consumer Electronics, 110");
  EXPECT_EQ(r.sector.code(), 110);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(ParseSector, SurroundingProse) {
  EXPECT_EQ(parse_sector_line("The sector is Insurance, 102 because the policy was denied.").sector.code(), 102);
  EXPECT_EQ(parse_sector_line("Let me think.\nThe claim is about a car.\nSector:- Automobiles, 117").sector.code(), 117);
}

TEST(ParseSector, NameOnlyFallsBackToLookup) {
  EXPECT_EQ(parse_sector_line("Sector:- Insurance").sector.code(), 102);
  EXPECT_EQ(parse_sector_line("Telecommunications").sector.code(), 109);
}

TEST(ParseSector, HeadingVariants) {
  EXPECT_EQ(parse_sector_line("Sector & Code: Consumer Electronics, 110").sector.code(), 110);
  EXPECT_EQ(parse_sector_line("SECTOR AND SECTOR CODE:\nConsumer Electronics, 110").sector.code(), 110);
  EXPECT_EQ(parse_sector_line("**Sector:-** Medical Services, 112").sector.code(), 112);
}

TEST(ParseSector, CodeWinsOnConflict) {
  const auto r = parse_sector_line("Sector:- Insurance, 101");
  EXPECT_EQ(r.sector.code(), 101);
  ASSERT_EQ(r.warnings.size(), 1u);
}

TEST(ParseSector, Errors) {
  EXPECT_EQ(code_of([] { parse_sector_line("no idea what this is"); }), ErrorCode::SectorParseError);
  EXPECT_EQ(code_of([] { parse_sector_line(""); }), ErrorCode::SectorParseError);
  EXPECT_EQ(code_of([] { parse_sector_line("Sector:- Crypto, 150"); }), ErrorCode::UnknownSectorCode);
}

TEST(ParseSector, StrayNumbersAreNotCodes) {
  // "Rs. 110" without a sector name or prefix is not a sector code.
  EXPECT_EQ(code_of([] { parse_sector_line("The refund claimed is Rs. 110 only."); }), ErrorCode::SectorParseError);
}

TEST(ParseEvidence, ColonAndDot) {
  const auto items = parse_evidence_list("CE1: ID proof\nCE2. Purchase bill", EvidenceSide::Complainant);
  ASSERT_EQ(items.size(), 2u);
  EXPECT_EQ(items[0], (EvidenceItem{"CE1", "ID proof"}));
  EXPECT_EQ(items[1], (EvidenceItem{"CE2", "Purchase bill"}));
}

TEST(ParseEvidence, Nil) {
  EXPECT_TRUE(parse_evidence_list("Nil", EvidenceSide::Complainant).empty());
  EXPECT_TRUE(parse_evidence_list("  NIL.", EvidenceSide::Opposite).empty());
}

TEST(ParseEvidence, WrongFamily) {
  EXPECT_EQ(code_of([] { parse_evidence_list("OPE1. warranty copy", EvidenceSide::Complainant); }),
            ErrorCode::EvidenceParseError);
  EXPECT_EQ(code_of([] { parse_evidence_list("some prose", EvidenceSide::Opposite); }),
            ErrorCode::EvidenceParseError);
}

TEST(ParseEvidence, RelabelsGapsAndJoinsContinuations) {
  const auto items = parse_evidence_list(
      "Evidence:\nOPE3: Copy of warranty\nOPE7: Affidavit filed on 10th March\n2019 with argument",
      EvidenceSide::Opposite);
  ASSERT_EQ(items.size(), 2u);
  EXPECT_EQ(items[0].label, "OPE1");
  EXPECT_EQ(items[1].label, "OPE2");
  EXPECT_EQ(items[1].description, "Affidavit filed on 10th March 2019 with argument");
}

TEST(ParseEvidence, LabelsAlwaysConsecutive) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::string body;
    const int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) {
      body += "CE" + std::to_string(rng() % 50) + (rng() % 2 ? ": " : ". ") + "item " + std::to_string(i) + "\n";
    }
    const auto items = parse_evidence_list(body, EvidenceSide::Complainant);
    ASSERT_EQ(items.size(), static_cast<std::size_t>(n));
    EXPECT_TRUE(has_consecutive_labels(items, EvidenceSide::Complainant));
  }
}

TEST(ParseNumberedList, Markers) {
  EXPECT_EQ(parse_numbered_list("1. Whether X?\n2. Whether Y?"),
            (std::vector<std::string>{"Whether X?", "Whether Y?"}));
  EXPECT_EQ(parse_numbered_list("1) a\n2) b\n3) c").size(), 3u);
  EXPECT_EQ(parse_numbered_list("- Refund of Rs. 18,740/- with interest\n- Compensation of Rs. 30,000/-").size(), 2u);
}

TEST(ParseNumberedList, DropsProseWhenListPresent) {
  const auto items = parse_numbered_list("The issues are as follows.\n\n1. First issue?\n2. Second issue?\nThat is all.");
  EXPECT_EQ(items, (std::vector<std::string>{"First issue?", "Second issue?"}));
}

TEST(ParseNumberedList, WrappedItems) {
  const auto items = parse_numbered_list("1. Whether the sale amounts to\ndeficiency in service?\n2. Next");
  ASSERT_EQ(items.size(), 2u);
  EXPECT_EQ(items[0], "Whether the sale amounts to deficiency in service?");
}

TEST(ParseNumberedList, Empty) {
  EXPECT_EQ(code_of([] { parse_numbered_list(""); }), ErrorCode::EmptyListError);
  EXPECT_EQ(code_of([] { parse_numbered_list("1.\n2.\n"); }), ErrorCode::EmptyListError);
}

TEST(ParseNumberedList, AmountsAreNotMarkers) {
  const auto items = parse_numbered_list("1. Refund of 18.5 lakh\n2. Costs");
  ASSERT_EQ(items.size(), 2u);
  EXPECT_EQ(items[0], "Refund of 18.5 lakh");
}

TEST(ParseWholeSummary, SampleCase) {
  const auto parsed = parse_whole_summary(fixtures::read_file(fixtures::data_dir() / "iphone/whole_summary.txt"));
  const auto& s = parsed.summary;
  EXPECT_EQ(s.sector.code(), 110);
  EXPECT_EQ(s.issues.size(), 4u);
  EXPECT_EQ(s.evidence_complainant.size(), 5u);
  EXPECT_EQ(s.evidence_opposite.size(), 2u);
  EXPECT_EQ(s.reliefs.size(), 2u);
  EXPECT_EQ(s, fixtures::iphone_summary());
}

TEST(ParseWholeSummary, UppercaseHeadingVariant) {
  const std::string body =
      "Overview:\n\nThe phone was defective.\n\nSECTOR AND SECTOR CODE:\nConsumer Electronics, 110\n\n"
      "ISSUES:\n1. Whether the complainant is a consumer?\n2. Whether there was deficiency\nin service?\n\n"
      "EVIDENCE PRESENTED BY THE COMPLAINANT:\nCE1: ID proof of applicant\nCE2: Bill of disputed mobile\n\n"
      "EVIDENCE PRESENTED BY THE OPPOSITE PARTY:\nOPE1: Copy of warranty\n\n"
      "RELIEF:\n1. Refund of Rs. 18,740/-\n2. Compensation of Rs. 30,000/-\n";
  const auto s = parse_whole_summary(body).summary;
  EXPECT_EQ(s.sector.code(), 110);
  EXPECT_EQ(s.issues.size(), 2u);
  EXPECT_EQ(s.issues[1], "Whether there was deficiency in service?");
  EXPECT_EQ(s.evidence_complainant.size(), 2u);
  EXPECT_EQ(s.evidence_opposite.size(), 1u);
  EXPECT_EQ(s.reliefs.size(), 2u);
}

TEST(ParseWholeSummary, MissingParts) {
  std::string body = fixtures::read_file(fixtures::data_dir() / "iphone/whole_summary.txt");
  body = body.substr(0, body.find("Reliefs Sought"));
  try {
    parse_whole_summary(body);
    FAIL();
  } catch (const MissingPartError& e) {
    ASSERT_EQ(e.parts().size(), 1u);
    EXPECT_EQ(e.parts()[0], SummaryPart::Reliefs);
    EXPECT_EQ(e.code(), ErrorCode::MissingPartError);
  }
  try {
    parse_whole_summary("Overview:\nonly an overview");
    FAIL();
  } catch (const MissingPartError& e) {
    EXPECT_EQ(e.parts().size(), 5u);
  }
}

TEST(ParseWholeSummary, NilEvidence) {
  auto s = fixtures::iphone_summary();
  s.evidence_opposite.clear();
  const auto parsed = parse_whole_summary(render_summary(s)).summary;
  EXPECT_TRUE(parsed.evidence_opposite.empty());
  EXPECT_EQ(parsed, s);
}

TEST(ParseWholeSummary, RenderRoundTrip) {
  const auto s = fixtures::iphone_summary();
  EXPECT_EQ(parse_whole_summary(render_summary(s)).summary, s);
}

TEST(ParseWholeSummary, RandomizedRoundTrip) {
  std::mt19937 rng(11);
  const std::vector<std::string> words{"refund", "phone", "Rs.", "18,740/-", "warranty", "the", "deficiency",
                                       "service", "‘consumer’", "of", "bill", "2019", "OP", "complainant"};
  auto sentence = [&](int min_words) {
    std::string out = "Whether";
    const int n = min_words + static_cast<int>(rng() % 10);
    for (int i = 0; i < n; ++i) out += " " + words[rng() % words.size()];
    return out;
  };
  for (int trial = 0; trial < 100; ++trial) {
    MaterialSummary s;
    s.overview = sentence(5);
    if (rng() % 2) s.overview += "\n\n" + sentence(3);
    s.sector = SectorLabel::from_index(rng() % kSectorTaxonomy.size());
    for (int i = 0, n = 1 + static_cast<int>(rng() % 5); i < n; ++i) s.issues.push_back(sentence(2));
    for (int i = 0, n = static_cast<int>(rng() % 4); i < n; ++i) {
      s.evidence_complainant.push_back({"CE" + std::to_string(i + 1), sentence(1)});
    }
    for (int i = 0, n = static_cast<int>(rng() % 4); i < n; ++i) {
      s.evidence_opposite.push_back({"OPE" + std::to_string(i + 1), sentence(1)});
    }
    for (int i = 0, n = 1 + static_cast<int>(rng() % 3); i < n; ++i) s.reliefs.push_back(sentence(2));
    ASSERT_EQ(parse_whole_summary(render_summary(s)).summary, s) << render_summary(s);
  }
}
