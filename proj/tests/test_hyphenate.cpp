// Liang hyphenation against the reference oracle.

#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles/liang_oracle.hpp"
#include "support/fixtures.hpp"

using namespace folio;

namespace {

std::vector<std::string> sample_words(const std::string& lang) {
  std::ifstream in(std::string(FOLIO_TESTS) + "/oracles/words-" + lang + ".txt");
  std::vector<std::string> out;
  for (std::string w; std::getline(in, w);)
    if (!w.empty()) out.push_back(w);
  return out;
}

std::string patterns(const std::string& lang) { return read_file(data_dir() / "hyphenation" / ("hyph-" + lang + ".tex")); }

}  // namespace

TEST(Hyphenate, ShortWordHasNoBreaks) { EXPECT_TRUE(hyphenation_points("cat", "en").empty()); }

TEST(Hyphenate, UnknownLanguageHasNoBreaks) { EXPECT_TRUE(hyphenation_points("hyphenation", "xx").empty()); }

TEST(Hyphenate, HyphenationMatchesOracle) {
  oracle::Liang ref(patterns("en"));
  auto got = hyphenation_points("hyphenation", "en");
  EXPECT_EQ(got, ref.points("hyphenation"));
  EXPECT_FALSE(got.empty());
}

TEST(Hyphenate, LanguageTagUsesPrimarySubtag) {
  EXPECT_EQ(hyphenation_points("imaginação", "pt-PT"), hyphenation_points("imaginação", "pt"));
}

TEST(Hyphenate, PatternParserReadsDigitsBetweenLetters) {
  auto p = parse_pattern(U"a1b2c");
  EXPECT_EQ(p.letters, U"abc");
  EXPECT_EQ(p.values, (std::vector<std::uint8_t>{0, 1, 2, 0}));
}

TEST(Hyphenate, ExceptionsOverridePatterns) {
  auto h = Hyphenator::from_tex("\\patterns{1b}\n\\hyphenation{ta-ble-top}\n");
  EXPECT_EQ(h.points("tabletop"), (std::vector<std::size_t>{2, 5}));
  EXPECT_EQ(h.points("abcabc"), (std::vector<std::size_t>{4}));
}

class HyphenateSample : public ::testing::TestWithParam<std::string> {};

TEST_P(HyphenateSample, AgreesWithOracleOnEveryWord) {
  const auto lang = GetParam();
  oracle::Liang ref(patterns(lang));
  auto words = sample_words(lang);
  ASSERT_EQ(words.size(), 500u);
  auto h = hyphenator_for(lang);
  ASSERT_TRUE(h);
  EXPECT_EQ(h->pattern_count(), ref.size());
  int disagreements = 0, hyphenated = 0;
  for (const auto& w : words) {
    auto got = h->points(w);
    hyphenated += !got.empty();
    if (got != ref.points(w)) {
      ++disagreements;
      ADD_FAILURE() << lang << " " << w;
    }
  }
  EXPECT_EQ(disagreements, 0);
  EXPECT_GT(hyphenated, 200);
}

INSTANTIATE_TEST_SUITE_P(Languages, HyphenateSample, ::testing::Values("en", "pt"));
