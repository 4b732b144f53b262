// Greedy line breaking against the brute-force first-fit oracle, and the
// spacing ranges of justified text.

#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles/first_fit_oracle.hpp"
#include "support/fixtures.hpp"

using namespace folio;

namespace {

std::size_t word_count(const BrokenLine& l) {
  std::size_t n = 1;
  for (char32_t c : l.text) n += c == U' ';
  return n;
}

struct Case {
  std::string text;
  oracle::FirstFitProblem problem;
};

// Random short paragraph with uniform metrics; the measure always holds the
// longest word.
Case random_case(SeededStream& s, Alignment a) {
  Case c;
  auto& p = c.problem;
  const double size = 10, em = 0.5;
  p.glyph_width = size * em;
  p.space_width = size * em;
  p.min_word_spacing = a == Alignment::Justified ? 0.8 : 1.0;
  p.letter_spacing_pt = a == Alignment::Justified ? -0.05 * size : 0.0;
  std::size_t n = 1 + s.index(12);
  int longest = 0;
  for (std::size_t i = 0; i < n; ++i) {
    int len = 1 + int(s.index(10));
    longest = std::max(longest, len);
    p.glyphs.push_back(len);
    if (i) c.text += ' ';
    c.text += std::string(std::size_t(len), 'x');
  }
  double lo = oracle::line_width(p, 0, 1);
  for (std::size_t i = 0; i < n; ++i) lo = std::max(lo, oracle::line_width(p, i, i + 1));
  double hi = oracle::line_width(p, 0, n) + 10;
  p.measure = std::round(s.uniform(lo, hi) * 4) / 4;
  if (p.measure < lo) p.measure = lo;
  return c;
}

void check_against_oracle(Alignment a, std::uint64_t seed, int cases) {
  auto m = FontMetrics::uniform(0.5);
  SeededStream s(seed);
  for (int i = 0; i < cases; ++i) {
    auto c = random_case(s, a);
    BreakStyle bs;
    bs.size = 10;
    bs.alignment = a;
    auto lines = break_paragraph(styled_text(c.text), bs, c.problem.measure, m);
    std::vector<std::size_t> got;
    for (const auto& l : lines) got.push_back(word_count(l));
    ASSERT_EQ(got, oracle::first_fit(c.problem)) << "case " << i << ": '" << c.text << "' measure "
                                                 << c.problem.measure;
  }
}

}  // namespace

TEST(LineBreak, JustifiedMatchesFirstFitOracle) { check_against_oracle(Alignment::Justified, 101, 500); }

TEST(LineBreak, RaggedMatchesFirstFitOracle) { check_against_oracle(Alignment::Left, 202, 500); }

TEST(LineBreak, ShortTextIsOneLineAtIdealSpacing) {
  auto m = FontMetrics::uniform(0.5);
  BreakStyle bs;
  auto lines = break_paragraph(styled_text("a few words"), bs, 300, m);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_TRUE(lines[0].last);
  EXPECT_DOUBLE_EQ(lines[0].word_spacing, 1.0);
  EXPECT_DOUBLE_EQ(lines[0].letter_spacing, 0.0);
}

TEST(LineBreak, LongTokenIsEmergencyBroken) {
  auto m = FontMetrics::uniform(0.5);
  BreakStyle bs;
  auto lines = break_paragraph(styled_text(std::string(200, 'x')), bs, 80, m);
  ASSERT_GE(lines.size(), 2u);
  for (const auto& l : lines) EXPECT_TRUE(l.overflow);
}

TEST(LineBreak, JustifiedSpacingStaysInRange) {
  auto& m = *fixtures::library().get(find_pairing(default_rules(), "founders-grotesk-bold/arnhem-regular")->body);
  auto h = hyphenator_for("pt");
  BreakStyle bs;
  bs.hyphenate = true;
  int justified = 0;
  for (const auto& b : fixtures::contos().blocks) {
    auto* p = std::get_if<Paragraph>(&b);
    if (!p) continue;
    for (const auto& l : break_paragraph(styled_text(p->runs), bs, 270, m, h.get())) {
      ASSERT_GE(l.word_spacing, 0.8 - 1e-9);
      ASSERT_LE(l.word_spacing, 1.2 + 1e-9);
      ASSERT_GE(l.letter_spacing, -0.05 - 1e-9);
      ASSERT_LE(l.letter_spacing, 0.05 + 1e-9);
      if (l.justified && !l.loose) {
        EXPECT_NEAR(l.width, l.measure, 1e-6);
        ++justified;
      }
    }
    if (justified > 3000) break;
  }
  EXPECT_GT(justified, 3000);
}

TEST(LineBreak, HyphenatedLinesEndWithHyphen) {
  auto m = FontMetrics::uniform(0.5);
  auto h = hyphenator_for("en");
  BreakStyle bs;
  bs.hyphenate = true;
  auto lines = break_paragraph(styled_text("the hyphenation of extraordinary typography"), bs, 110, m, h.get());
  int hyph = 0;
  for (const auto& l : lines)
    if (l.hyphenated) {
      ++hyph;
      EXPECT_EQ(l.text.back(), U'-');
    }
  EXPECT_GT(hyph, 0);
}

TEST(LineBreak, IndentShortensFirstLine) {
  auto m = FontMetrics::uniform(0.5);
  BreakStyle bs;
  bs.alignment = Alignment::Left;
  bs.first_indent = 20;
  auto lines = break_paragraph(styled_text(fixtures::filler(40)), bs, 200, m);
  EXPECT_DOUBLE_EQ(lines[0].offset, 20);
  EXPECT_DOUBLE_EQ(lines[0].measure, 180);
  EXPECT_DOUBLE_EQ(lines[1].offset, 0);
}

TEST(LineBreak, RightAndCentreOffsets) {
  auto m = FontMetrics::uniform(0.5);
  BreakStyle bs;
  bs.alignment = Alignment::Right;
  auto r = break_paragraph(styled_text("ab"), bs, 100, m);
  EXPECT_DOUBLE_EQ(r[0].offset, 90);
  bs.alignment = Alignment::Centre;
  auto c = break_paragraph(styled_text("ab"), bs, 100, m);
  EXPECT_DOUBLE_EQ(c[0].offset, 45);
}
