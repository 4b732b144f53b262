// Attribute vectors, diversity and coherence.

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "support/fixtures.hpp"

using namespace folio;

namespace {

ContentStats stats(BookType t = BookType::LongReading) {
  ContentStats s;
  s.book_type = t;
  s.language = "pt";
  return s;
}

AttributeVector base_vector() {
  AttributeVector v;
  v.categorical = {"130x200", "portrait", "p", "justified", "top-centred", "positive-indent", "below-left", ""};
  v.numeric = {0.5, 0, 0.5, 0.5};
  return v;
}

}  // namespace

TEST(Attributes, NumericSlotsNormalized) {
  auto s = plan(stats(), default_rules(), import_settings(fixtures::reference_settings_text(), default_rules()), 1);
  auto v = attribute_vector(s, default_rules());
  // body size in [8, 12]
  EXPECT_DOUBLE_EQ(v.numeric[2], 0.5);
  s.body.size = 8;
  EXPECT_DOUBLE_EQ(attribute_vector(s, default_rules()).numeric[2], 0.0);
  s.body.size = 12;
  EXPECT_DOUBLE_EQ(attribute_vector(s, default_rules()).numeric[2], 1.0);
  // one column is the bottom of the column scale
  EXPECT_DOUBLE_EQ(v.numeric[1], 0.0);
  // margins: mean of (12-7)/8, (12-7)/23, (13.7-7)/8, (22-7)/23
  EXPECT_NEAR(v.numeric[0], (5.0 / 8 + 5.0 / 23 + 6.7 / 8 + 15.0 / 23) / 4, 1e-12);
  // leading ratio 1.3 in [1.15, 1.4]
  EXPECT_NEAR(v.numeric[3], (1.3 - 1.15) / 0.25, 1e-12);
  EXPECT_EQ(v.categorical[0], "130x200");
  EXPECT_EQ(v.categorical[1], "portrait");
  EXPECT_EQ(v.categorical[2], "la-nord-bold/antwerp-regular");
}

TEST(Diversity, IdenticalSetIsZero) {
  std::vector<AttributeVector> vs(5, base_vector());
  EXPECT_DOUBLE_EQ(diversity_score(vs), 0.0);
  auto r = coherence_report(vs);
  EXPECT_DOUBLE_EQ(r.score, 1.0);
  for (const auto& s : r.slots) EXPECT_TRUE(s.shared) << s.name;
}

TEST(Diversity, MaximalPairIsOne) {
  AttributeVector a = base_vector(), b;
  a.numeric = {0, 0, 0, 0};
  for (std::size_t i = 0; i < 8; ++i) b.categorical[i] = a.categorical[i] + "-other";
  b.numeric = {1, 1, 1, 1};
  EXPECT_DOUBLE_EQ(diversity_score({a, b}), 1.0);
}

TEST(Diversity, OneCategoricalSlotIsOneTwelfth) {
  auto a = base_vector(), b = base_vector();
  b.categorical[2] = "other";
  EXPECT_DOUBLE_EQ(pair_distance(a, b), 1.0 / 12);
  EXPECT_DOUBLE_EQ(diversity_score({a, b}), 1.0 / 12);
}

TEST(Diversity, NumericSlotIsAbsoluteDifference) {
  auto a = base_vector(), b = base_vector();
  b.numeric[0] = 0.8;
  EXPECT_NEAR(pair_distance(a, b), 0.3 / 12, 1e-15);
}

TEST(Diversity, MeanOverAllPairs) {
  auto a = base_vector(), b = base_vector(), c = base_vector();
  c.categorical[0] = "other";
  // pairs: (a,b)=0, (a,c)=1/12, (b,c)=1/12
  EXPECT_NEAR(diversity_score({a, b, c}), (2.0 / 12) / 3, 1e-15);
}

TEST(Diversity, NeedsTwoDesigns) {
  EXPECT_THROW(diversity_score({base_vector()}), Error);
  EXPECT_THROW(coherence_report({}), Error);
}

TEST(Coherence, ScoreComplementsDiversity) {
  std::vector<AttributeVector> vs;
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    vs.push_back(attribute_vector(plan(stats(), default_rules(), {}, seed), default_rules()));
  auto r = coherence_report(vs);
  EXPECT_DOUBLE_EQ(r.score + r.diversity, 1.0);
  EXPECT_DOUBLE_EQ(r.diversity, diversity_score(vs));
  EXPECT_EQ(r.slots.size(), kSlotCount);
  EXPECT_EQ(r.slots[0].name, "page");
  EXPECT_EQ(r.slots[11].name, "leadingRatio");
}

TEST(Coherence, SharedSettingsShareStructuralSlots) {
  auto exported = export_settings(plan(stats(), default_rules(), {}, 77));
  auto pins = import_settings(exported, default_rules());
  pins.seed.reset();
  std::vector<AttributeVector> coherent, random;
  for (std::uint64_t seed = 100; seed < 105; ++seed) {
    coherent.push_back(attribute_vector(plan(stats(), default_rules(), pins, seed), default_rules()));
    random.push_back(attribute_vector(plan(stats(), default_rules(), {}, seed), default_rules()));
  }
  auto r = coherence_report(coherent);
  for (auto slot : kStructuralSlots) EXPECT_TRUE(r.shared(slot)) << slot;
  EXPECT_LT(r.diversity, diversity_score(random));
}
