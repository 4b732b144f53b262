// Rule base loading, validation and defaults.

#include <algorithm>

#include <gtest/gtest.h>
#include <json.hpp>

#include "support/fixtures.hpp"

using namespace folio;
using nlohmann::json;

namespace {

json default_json() { return json::parse(read_file(data_dir() / "rules" / "default.json")); }

bool has_pairing(const std::vector<FontPairing>& ps, const std::string& title, const std::string& body) {
  return std::any_of(ps.begin(), ps.end(),
                     [&](const FontPairing& p) { return p.title.family == title && p.body.family == body; });
}

}  // namespace

TEST(Rules, DefaultFileHasElevenSizes) {
  auto r = load_rules(read_file(data_dir() / "rules" / "default.json"));
  EXPECT_EQ(r.size_options.size(), 11u);
}

TEST(Rules, BundledCopyMatchesDataFile) {
  EXPECT_EQ(json::parse(kDefaultRulesJson), default_json());
  EXPECT_EQ(default_rules(), load_rules(read_file(data_dir() / "rules" / "default.json")));
}

TEST(Rules, DefaultLineLengthAndFontSize) {
  const auto& r = default_rules();
  EXPECT_EQ(r.line_length.min, 45);
  EXPECT_EQ(r.line_length.ideal, 66);
  EXPECT_EQ(r.line_length.max, 75);
  EXPECT_EQ(r.line_length.justified_min, 48);
  EXPECT_EQ(r.font_size.range, (Range{8, 12}));
  EXPECT_EQ(r.top_bottom_margin, (Range{7, 15}));
  EXPECT_EQ(r.inside_outside_margin, (Range{7, 30}));
  EXPECT_EQ(r.leading.range, (Range{1.15, 1.40}));
  EXPECT_EQ(r.word_spacing.range, (Range{0.8, 1.2}));
  EXPECT_EQ(r.letter_spacing.range, (Range{-0.05, 0.05}));
}

TEST(Rules, InvertedRangeIsRejected) {
  auto j = default_json();
  j["leading"]["min"] = 1.40;
  j["leading"]["max"] = 1.15;
  try {
    load_rules(j.dump());
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Validation);
    EXPECT_NE(std::string(e.what()).find("inverted range"), std::string::npos);
  }
}

TEST(Rules, MissingKeyIsNamed) {
  auto j = default_json();
  j.erase("coverColors");
  try {
    load_rules(j.dump());
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("coverColors"), std::string::npos);
    EXPECT_EQ(e.field(), "coverColors");
  }
}

TEST(Rules, MalformedJsonIsParseError) {
  try {
    load_rules("{ not json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Parse);
  }
}

TEST(Rules, LongReadingPairings) {
  auto ps = eligible_pairings(default_rules(), BookType::LongReading);
  EXPECT_TRUE(has_pairing(ps, "Founders Grotesk", "Arnhem"));
  EXPECT_FALSE(has_pairing(ps, "Akkurat", "Akkurat"));
  for (const auto& p : ps) EXPECT_EQ(p.body.classification, Classification::Serif) << p.id;
}

TEST(Rules, OnlyImagesPairings) {
  auto ps = eligible_pairings(default_rules(), BookType::OnlyImages);
  EXPECT_TRUE(has_pairing(ps, "Helvetica", "Helvetica"));
}

TEST(Rules, CompositePairingCombinesFaces) {
  auto p = find_pairing(default_rules(), "la-nord-bold/antwerp-regular");
  ASSERT_TRUE(p);
  EXPECT_EQ(p->title.family, "La Nord");
  EXPECT_EQ(p->body.family, "Antwerp");
  EXPECT_FALSE(find_pairing(default_rules(), "la-nord-bold/nonexistent-regular"));
}

TEST(Rules, SerializeRoundTrip) {
  const auto& r = default_rules();
  EXPECT_EQ(load_rules(serialize_rules(r)), r);
}

TEST(Rules, SizeWeightsFavourPortraitForLongReading) {
  double portrait = 0, total = 0;
  for (const auto& o : default_rules().size_options) {
    double w = o.weights[index_of(BookType::LongReading)];
    total += w;
    if (o.orientation == Orientation::Portrait) portrait += w;
  }
  EXPECT_DOUBLE_EQ(portrait / total, 0.8);
}
