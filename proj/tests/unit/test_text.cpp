#include <gtest/gtest.h>

#include "dispute/text.hpp"

using dispute::text::tokenize;
using Terms = std::vector<std::string>;

TEST(Tokenize, SplitsOnPunctuationAndDigitsStay) {
  EXPECT_EQ(tokenize("Refund of Rs. 18,740/-"), (Terms{"refund", "of", "rs", "18", "740"}));
}

TEST(Tokenize, EmptyText) { EXPECT_TRUE(tokenize("").empty()); }

TEST(Tokenize, CaseFolding) {
  EXPECT_EQ(tokenize("Apple APPLE apple"), (Terms{"apple", "apple", "apple"}));
}

TEST(Tokenize, UnicodeLowercaseAndCurlyQuotes) {
  EXPECT_EQ(tokenize("‘Consumer’ ZINYÜ"), (Terms{"consumer", "zinyü"}));
  EXPECT_EQ(tokenize("ΣΟΦΙΑ Москва"), (Terms{"σοφια", "москва"}));
}

TEST(Tokenize, DevanagariIsKeptAsWordCharacters) {
  const auto terms = tokenize("उपभोक्ता। फोरम");
  ASSERT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[0], "उपभोक्ता");
}

TEST(Tokenize, InvalidUtf8ActsAsSeparator) {
  const std::string s = std::string("ab") + '\xff' + "cd" + '\xe2';
  EXPECT_EQ(tokenize(s), (Terms{"ab", "cd"}));
}

TEST(Text, TrimAndCollapse) {
  EXPECT_EQ(dispute::text::trim("  x y \n"), "x y");
  EXPECT_EQ(dispute::text::collapse_whitespace("  a \t b\n\nc "), "a b c");
}

TEST(Text, SplitLinesStripsCarriageReturns) {
  const auto lines = dispute::text::split_lines("a\r\nb\n\nc");
  ASSERT_EQ(lines.size(), 4u);
  EXPECT_EQ(lines[0], "a");
  EXPECT_EQ(lines[2], "");
}

TEST(Text, NormalizeParagraphs) {
  EXPECT_EQ(dispute::text::normalize_paragraphs("one\ntwo\n\n\nthree  \n"), "one two\n\nthree");
}

TEST(Text, Utf8FloorNeverSplitsACodePoint) {
  const std::string s = "aü";  // 'a' + 2-byte sequence
  EXPECT_EQ(dispute::text::utf8_floor(s, 2), 1u);
  EXPECT_EQ(dispute::text::utf8_floor(s, 3), 3u);
}

TEST(Text, ContentHashIsStableHex) {
  EXPECT_EQ(dispute::text::content_hash(""), "cbf29ce484222325");
  EXPECT_EQ(dispute::text::content_hash("a").size(), 16u);
  EXPECT_NE(dispute::text::content_hash("a"), dispute::text::content_hash("b"));
}
