// End-to-end generation and the output directory.

#include <cstdlib>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>

#include "support/fixtures.hpp"

using namespace folio;
namespace fs = std::filesystem;

namespace {

const Manuscript& garden() {
  static const Manuscript m = parse_manuscript(fixtures::garden_source(), fixtures::samples() / "images");
  return m;
}

}  // namespace

TEST(Pipeline, SameSeedSameBytes) {
  auto a = generate(fixtures::contos(), {}, 31337, default_rules(), fixtures::library());
  auto b = generate(fixtures::contos(), {}, 31337, default_rules(), fixtures::library());
  EXPECT_EQ(export_settings(a.settings), export_settings(b.settings));
  EXPECT_EQ(write_layout_json(a.doc), write_layout_json(b.doc));
  EXPECT_EQ(render_svg(a.doc), render_svg(b.doc));
}

TEST(Pipeline, DifferentSeedsDifferentDesigns) {
  auto a = generate(garden(), {}, 1, default_rules(), fixtures::library());
  auto b = generate(garden(), {}, 2, default_rules(), fixtures::library());
  EXPECT_NE(export_settings(a.settings), export_settings(b.settings));
}

TEST(Pipeline, ContosIsLongReadingAndPassesChecks) {
  auto b = generate(fixtures::contos(), {}, 9, default_rules(), fixtures::library());
  EXPECT_EQ(b.stats.book_type, BookType::LongReading);
  EXPECT_EQ(b.stats.language, "pt");
  EXPECT_EQ(b.settings.language, "pt");
  EXPECT_TRUE(b.check.ok());
  EXPECT_LE(b.fit_rounds, kFitRounds);
  auto p = find_pairing(default_rules(), b.settings.pairing);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->body.classification, Classification::Serif);
}

TEST(Pipeline, UntitledFallbackWarns) {
  auto dir = fixtures::scratch("untitled");
  fs::copy_file(fixtures::samples() / "images" / "garden-path.png", dir / "a.png");
  auto b = generate(parse_manuscript("@a@", dir), {}, 4, default_rules(), fixtures::library());
  EXPECT_EQ(b.stats.book_type, BookType::OnlyImages);
  bool warned = false;
  for (const auto& w : b.doc.warnings) warned |= w.find("Untitled") != std::string::npos;
  EXPECT_TRUE(warned);
}

TEST(Pipeline, ConstraintErrorsPropagate) {
  Constraints c;
  c.pairing = "no-such/pairing";
  try {
    generate(garden(), c, 1, default_rules(), fixtures::library());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Constraint);
  }
}

TEST(Pipeline, OutputDirectoryLayout) {
  auto b = generate(garden(), {}, 12, default_rules(), fixtures::library());
  auto dir = fixtures::scratch("outputs");
  JobRecord job;
  job.seed = 12;
  job.pins = {{"toc", true}};
  write_outputs(b, dir, job, fixtures::garden_source());
  for (const char* f : {"settings.json", "layout.json", "fonts.json", "job.json", "source/manuscript.md",
                        "pages/page-0001.svg", "pages/back-cover.svg", "images/garden-path.png"})
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  std::size_t svgs = 0;
  for (const auto& e : fs::directory_iterator(dir / "pages")) svgs += e.path().extension() == ".svg";
  EXPECT_EQ(svgs, b.doc.pages.size() + 1);
  EXPECT_EQ(read_file(dir / "settings.json"), export_settings(b.settings));
  EXPECT_EQ(read_file(dir / "source/manuscript.md"), fixtures::garden_source());
  auto back = read_job(dir);
  EXPECT_EQ(back.seed, 12u);
  EXPECT_EQ(back.pins, job.pins);
  auto j = nlohmann::json::parse(read_file(dir / "job.json"));
  EXPECT_EQ(j["pageCount"], b.doc.pages.size());
  EXPECT_EQ(j["stats"]["bookType"], "text_and_images");
}

TEST(Pipeline, RewritingShrinksPageSet) {
  auto dir = fixtures::scratch("rewrite");
  auto big = generate(fixtures::contos(), {}, 3, default_rules(), fixtures::library());
  write_outputs(big, dir, {}, fixtures::contos_source());
  auto small = generate(garden(), {}, 3, default_rules(), fixtures::library());
  write_outputs(small, dir, {}, fixtures::garden_source());
  std::size_t svgs = 0;
  for (const auto& e : fs::directory_iterator(dir / "pages")) svgs += e.path().extension() == ".svg";
  EXPECT_EQ(svgs, small.doc.pages.size() + 1);
}

TEST(Pipeline, ExportedSettingsReproduceTheDesign) {
  auto b = generate(fixtures::contos(), {}, 55, default_rules(), fixtures::library());
  auto text = export_settings(b.settings);
  EXPECT_EQ(design_from_settings(text, default_rules()), b.settings);
  auto again = generate(fixtures::contos(), import_settings(text, default_rules()), 56, default_rules(),
                        fixtures::library());
  auto ja = nlohmann::json::parse(text), jb = nlohmann::json::parse(export_settings(again.settings));
  ja.erase("seed");
  jb.erase("seed");
  EXPECT_EQ(ja, jb);
}

TEST(Pipeline, ActiveRulesSources) {
  EXPECT_EQ(serialize_rules(active_rules()), serialize_rules(default_rules()));
  EXPECT_THROW(active_rules("/nonexistent/rules.json"), Error);
  auto dir = fixtures::scratch("rules");
  auto r = default_rules();
  r.feature_probability = 0.5;
  write_text(dir / "r.json", serialize_rules(r));
  EXPECT_DOUBLE_EQ(active_rules(dir / "r.json").feature_probability, 0.5);
  ::setenv("FOLIO_RULES", (dir / "r.json").c_str(), 1);
  EXPECT_DOUBLE_EQ(active_rules().feature_probability, 0.5);
  ::unsetenv("FOLIO_RULES");
}
