// Units, random stream, UTF-8 helpers and font metrics.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <vector>

#include <gtest/gtest.h>

#include "support/fixtures.hpp"

using namespace folio;

TEST(Units, PointMillimetreConversion) {
  EXPECT_DOUBLE_EQ(pt_to_mm(72.0), 25.4);
  EXPECT_DOUBLE_EQ(mm_to_pt(25.4), 72.0);
  EXPECT_NEAR(mm_to_pt(96.0), 272.126, 1e-3);
}

TEST(Units, FormatNumberDropsTrailingZeros) {
  EXPECT_EQ(format_number(13.7), "13.7");
  EXPECT_EQ(format_number(12.0), "12");
  EXPECT_EQ(format_number(97.5), "97.5");
  EXPECT_EQ(format_number(-0.0001), "0");
  EXPECT_EQ(format_number(174.3), "174.3");
}

TEST(Random, MatchesPublishedSplitMix64Outputs) {
  // Reference outputs of SplitMix64 seeded with 0.
  SeededStream s(0);
  EXPECT_EQ(s.next_u64(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(s.next_u64(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(s.next_u64(), 0x06C45D188009454FULL);
}

TEST(Random, SameSeedSameSequence) {
  SeededStream a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(Random, ForkDoesNotAdvanceParent) {
  SeededStream a(7), b(7);
  auto f = a.fork("cover");
  (void)f;
  EXPECT_EQ(a.draws(), 0u);
  EXPECT_EQ(a.next_u64(), b.next_u64());
  EXPECT_NE(SeededStream(7).fork("cover").next_u64(), SeededStream(7).fork("features").next_u64());
  EXPECT_EQ(SeededStream(7).fork("cover").next_u64(), SeededStream(7).fork("cover").next_u64());
}

TEST(Random, UniformStaysInRange) {
  SeededStream s(3);
  for (int i = 0; i < 10000; ++i) {
    double u = s.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    auto k = s.index(7);
    ASSERT_LT(k, 7u);
  }
}

TEST(Random, WeightedFrequenciesFollowWeights) {
  SeededStream s(11);
  std::vector<double> w = {1, 0, 3};
  int counts[3] = {0, 0, 0};
  const int n = 40000;
  for (int i = 0; i < n; ++i) counts[s.weighted(w)]++;
  EXPECT_EQ(counts[1], 0);
  // binomial 4-sigma band around 0.25
  double p = double(counts[0]) / n;
  EXPECT_NEAR(p, 0.25, 4 * std::sqrt(0.25 * 0.75 / n));
}

TEST(Utf8, DecodeEncodeRoundTrip) {
  std::string s = "Eça de Queirós ❡ ¶";
  EXPECT_EQ(utf8::encode(utf8::decode(s)), s);
  EXPECT_EQ(utf8::length("ação"), 4u);
}

TEST(Utf8, UppercasesLatinAccents) {
  EXPECT_EQ(utf8::upper("contos"), "CONTOS");
  EXPECT_EQ(utf8::upper("eça de queirós"), "EÇA DE QUEIRÓS");
}

TEST(Utf8, SplitWordsOnWhitespace) {
  auto w = utf8::split_words("  a bb\tccc\n");
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[2], "ccc");
}

TEST(Metrics, MeasureEmptyRunIsZero) {
  auto m = FontMetrics::uniform(0.5);
  EXPECT_DOUBLE_EQ(measure_run("", m, 10), 0.0);
}

TEST(Metrics, MeasureUniformRun) {
  auto m = FontMetrics::uniform(0.5);
  EXPECT_DOUBLE_EQ(measure_run("aa", m, 10), 10.0);
  // one inter-glyph gap of 0.05 em at 10 pt adds 0.5 pt
  EXPECT_DOUBLE_EQ(measure_run("aa", m, 10, 0.05), 10.5);
  // a space scaled to 120%
  EXPECT_DOUBLE_EQ(measure_run("a a", m, 10, 0.0, 1.2), 5 + 6 + 5);
}

TEST(Metrics, UniformSidecarReportsOneAdvance) {
  auto m = parse_metrics_sidecar("family Test\nunitsPerEm 1000\nuniform 0.5\n");
  EXPECT_DOUBLE_EQ(m.advance(U'a'), 0.5);
  EXPECT_DOUBLE_EQ(m.advance(U'é'), 0.5);
  EXPECT_DOUBLE_EQ(m.advance(0x1F600), 0.5);
}

TEST(Metrics, SidecarFallbackForUnmappedCodepoints) {
  auto m = parse_metrics_sidecar("family Test\nunitsPerEm 1000\nfallback 0.6\nU+0061 0.5\n97 0.5\n");
  EXPECT_DOUBLE_EQ(m.advance(U'a'), 0.5);
  EXPECT_DOUBLE_EQ(m.advance(U'z'), 0.6);
  EXPECT_FALSE(m.has(U'z'));
}

TEST(Metrics, SidecarWithoutUnitsIsRejected) {
  EXPECT_THROW(parse_metrics_sidecar("family X\nU+0061 0.5\n"), Error);
}

namespace {

void put16(std::vector<std::uint8_t>& b, std::size_t at, std::uint16_t v) {
  b[at] = std::uint8_t(v >> 8);
  b[at + 1] = std::uint8_t(v);
}

void put32(std::vector<std::uint8_t>& b, std::size_t at, std::uint32_t v) {
  put16(b, at, std::uint16_t(v >> 16));
  put16(b, at + 2, std::uint16_t(v));
}

// A minimal TrueType file: glyph 0 (.notdef, 600 units) and glyph 1 mapped
// from 'a' (500 units) at 1000 units per em.
std::vector<std::uint8_t> tiny_font() {
  const std::size_t tables = 4, dir = 12 + 16 * tables;
  const std::size_t head = dir, hhea = head + 56, hmtx = hhea + 36, cmap = hmtx + 8;
  const std::size_t cmap_len = 4 + 8 + 32;
  std::vector<std::uint8_t> b(cmap + cmap_len, 0);
  put32(b, 0, 0x00010000);
  put16(b, 4, tables);
  auto record = [&](std::size_t i, const char* tag, std::size_t off, std::size_t len) {
    std::size_t r = 12 + 16 * i;
    for (int k = 0; k < 4; ++k) b[r + k] = std::uint8_t(tag[k]);
    put32(b, r + 8, std::uint32_t(off));
    put32(b, r + 12, std::uint32_t(len));
  };
  record(0, "cmap", cmap, cmap_len);
  record(1, "head", head, 54);
  record(2, "hhea", hhea, 36);
  record(3, "hmtx", hmtx, 8);
  put16(b, head + 18, 1000);
  put16(b, hhea + 34, 2);
  put16(b, hmtx, 600);
  put16(b, hmtx + 4, 500);
  // cmap header with one (3,1) subtable
  put16(b, cmap + 2, 1);
  put16(b, cmap + 4, 3);
  put16(b, cmap + 6, 1);
  put32(b, cmap + 8, 12);
  // format 4: segments ['a','a'] delta 1-'a', and the 0xFFFF terminator
  std::size_t f = cmap + 12;
  put16(b, f, 4);
  put16(b, f + 2, 32);
  put16(b, f + 6, 4);  // segCountX2
  put16(b, f + 14, 'a');
  put16(b, f + 16, 0xFFFF);
  put16(b, f + 20, 'a');
  put16(b, f + 22, 0xFFFF);
  put16(b, f + 24, std::uint16_t(1 - 'a'));
  put16(b, f + 26, 1);
  return b;
}

}  // namespace

TEST(Metrics, TrueTypeAdvancesInEmUnits) {
  auto bytes = tiny_font();
  auto m = parse_truetype(bytes);
  EXPECT_EQ(m.units_per_em(), 1000);
  EXPECT_DOUBLE_EQ(m.advance(U'a'), 0.5);
  EXPECT_DOUBLE_EQ(m.advance(U'b'), 0.6);  // unmapped: glyph 0
}

TEST(Metrics, LoadFontFileByMagicNumber) {
  auto dir = fixtures::scratch("font");
  auto bytes = tiny_font();
  std::ofstream(dir / "tiny.ttf", std::ios::binary).write(reinterpret_cast<const char*>(bytes.data()),
                                                           std::streamsize(bytes.size()));
  EXPECT_DOUBLE_EQ(load_font_metrics(dir / "tiny.ttf").advance(U'a'), 0.5);
}

TEST(Metrics, BundledFontMapResolvesEveryPairingSlot) {
  auto& lib = fixtures::library();
  for (const auto& p : default_rules().pairings) {
    EXPECT_GT(lib.get(p.body)->advance(U'n'), 0.2) << p.id;
    EXPECT_GT(lib.get(p.title)->advance(U'n'), 0.2) << p.id;
  }
}
