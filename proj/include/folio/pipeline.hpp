#pragma once

// The whole generation run: classify, plan, fit, paginate, decorate, cover,
// verify; and the output directory that records a run.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "folio/cover.hpp"
#include "folio/error.hpp"
#include "folio/features.hpp"
#include "folio/manuscript.hpp"
#include "folio/metrics.hpp"
#include "folio/paginate.hpp"
#include "folio/planner.hpp"
#include "folio/random.hpp"
#include "folio/render.hpp"
#include "folio/rules.hpp"
#include "folio/settings.hpp"

namespace folio {

struct Book {
  Manuscript manuscript;  // leveled
  ContentStats stats;
  DesignSettings settings;
  LayoutDocument doc;
  CheckReport check;
  int fit_rounds = 0;
};

inline constexpr int kFitRounds = 4;

/// Rules from `path`, else from $FOLIO_RULES, else the bundled rule base.
inline RuleSet active_rules(const std::filesystem::path& path = {}) {
  std::filesystem::path p = path;
  if (p.empty())
    if (const char* env = std::getenv("FOLIO_RULES"); env && *env) p = env;
  if (p.empty()) return default_rules();
  if (!std::filesystem::exists(p)) throw Error(ErrorKind::Io, fmt::format("rules file '{}' not found", p.string()));
  return load_rules(read_file(p));
}

/// Plans and typesets `raw`. The fit is re-run with estimates calibrated
/// against the realized pagination until the checks pass or the rounds run
/// out; a design that still fails raises a Check error.
inline Book generate(const Manuscript& raw, const Constraints& c, std::uint64_t seed, const RuleSet& rules,
                     FontLibrary& library) {
  Book b;
  b.manuscript = assign_heading_levels(raw);
  b.stats = classify(b.manuscript, rules);
  auto planned = plan(b.stats, rules, c, seed);
  auto faces = load_typefaces(planned, rules, library);
  SeededStream root(seed);
  FitCalibration cal;
  for (int round = 1;; ++round) {
    b.fit_rounds = round;
    b.settings = fit_body_size(planned, *faces.body, rules, c, cal);
    auto stream = root.fork("paginate");
    b.doc = paginate(b.manuscript, b.settings, rules, faces, stream);
    b.check = verify(b.doc, b.settings, rules);
    if (b.check.ok() || round == kFitRounds) break;
    auto est = estimate_fit(b.settings, b.settings.body.size, *faces.body, rules, cal);
    int cap = b.settings.grid.columns == 1 ? rules.page_capacity.one_column : rules.page_capacity.multi_column;
    if (b.check.measured_lines > 0 && est.chars_per_line > 0) {
      double lo = b.settings.body.alignment == Alignment::Justified ? rules.line_length.justified_min
                                                                     : rules.line_length.min;
      if (b.check.median_chars < lo || b.check.median_chars > rules.line_length.max)
        cal.chars_scale *= b.check.median_chars / est.chars_per_line;
    }
    if (b.check.max_words_per_page > cap && est.words_per_page > 0)
      cal.words_scale *= b.check.max_words_per_page / est.words_per_page * 1.02;
  }
  if (!b.check.ok()) {
    std::string msg;
    for (const auto& v : b.check.violations) msg += (msg.empty() ? "" : "; ") + v;
    throw Error(ErrorKind::Check, fmt::format("post-pagination check failed: {}", msg));
  }

  auto features = root.fork("features");
  b.doc = apply_features(std::move(b.doc), b.settings.features, features);

  TitleInfo info;
  try {
    info = extract_title(b.manuscript);
  } catch (const Error&) {
    info.title = "Untitled";
    info.source = TitleSource::Extracted;
    b.doc.warnings.push_back("no title source in the manuscript; the cover reads 'Untitled'");
  }
  auto cover_stream = root.fork("cover");
  attach_covers(b.doc, design_cover(info, b.settings, cover_stream, rules, faces));
  return b;
}

/// The design an exported settings file describes. Every field of an export
/// is pinned, so planning reproduces it without drawing anything that shows.
inline DesignSettings design_from_settings(std::string_view text, const RuleSet& rules) {
  auto c = import_settings(text, rules);
  ContentStats stats;
  stats.book_type = c.book_type.value_or(BookType::LongReading);
  stats.language = c.language.value_or("en");
  return plan(stats, rules, c, c.seed.value_or(0));
}

// ---------------------------------------------------------------------------
// output directory

inline void write_text(const std::filesystem::path& path, std::string_view text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, fmt::format("cannot write '{}'", path.string()));
  out.write(text.data(), std::streamsize(text.size()));
  if (!out) throw Error(ErrorKind::Io, fmt::format("cannot write '{}'", path.string()));
}

/// How a run was requested; kept in job.json so `regenerate` can repeat it.
struct JobRecord {
  nlohmann::json pins = nlohmann::json::object();  // settings-file subset the user pinned
  std::string manuscript_file = "source/manuscript.md";
  std::uint64_t seed = 0;
};

inline nlohmann::ordered_json job_json(const Book& b, const JobRecord& job) {
  nlohmann::ordered_json j;
  j["seed"] = job.seed;
  j["manuscript"] = job.manuscript_file;
  j["pins"] = job.pins;
  j["stats"] = {{"words", b.stats.words},
                {"images", b.stats.images},
                {"bookType", std::string(to_string(b.stats.book_type))},
                {"language", b.stats.language}};
  j["pageCount"] = b.doc.pages.size();
  j["fitRounds"] = b.fit_rounds;
  j["check"] = {{"medianCharsPerLine", b.check.median_chars}, {"maxWordsPerPage", b.check.max_words_per_page}};
  j["warnings"] = b.doc.warnings;
  return j;
}

inline JobRecord read_job(const std::filesystem::path& dir) {
  auto path = dir / "job.json";
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, fmt::format("'{}' is not valid JSON: {}", path.string(), e.what()));
  }
  JobRecord job;
  job.pins = j.value("pins", nlohmann::json::object());
  job.manuscript_file = j.value("manuscript", job.manuscript_file);
  job.seed = j.value("seed", std::uint64_t{0});
  return job;
}

/// Writes settings.json, layout.json, pages/page-NNNN.svg, pages/back-cover.svg,
/// images/, fonts.json, job.json and the manuscript source under `dir`.
inline void write_outputs(const Book& b, const std::filesystem::path& dir, const JobRecord& job,
                          std::string_view manuscript_source) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::error_code ec;
  fs::remove_all(dir / "pages", ec);
  write_text(dir / "settings.json", export_settings(b.settings));
  write_text(dir / "layout.json", write_layout_json(b.doc));
  auto svgs = render_svg(b.doc);
  for (std::size_t i = 0; i < svgs.size(); ++i) write_text(dir / "pages" / page_file_name(i + 1), svgs[i]);
  if (b.doc.back_cover) write_text(dir / "pages" / "back-cover.svg", render_page_svg(*b.doc.back_cover, b.doc));
  fs::create_directories(dir / "images");
  for (const auto& block : b.manuscript.blocks)
    if (auto* img = std::get_if<ImageRef>(&block)) {
      auto target = dir / "images" / img->path.filename();
      if (fs::exists(img->path) && !fs::equivalent(img->path, target, ec))
        fs::copy_file(img->path, target, fs::copy_options::overwrite_existing, ec);
      if (ec) throw Error(ErrorKind::Io, fmt::format("cannot copy image '{}': {}", img->path.string(), ec.message()));
    }
  nlohmann::ordered_json fonts = nlohmann::ordered_json::array();
  for (const auto& f : b.doc.fonts)
    fonts.push_back({{"role", f.role}, {"family", f.family}, {"weight", f.weight}, {"standIn", f.stand_in},
                     {"generic", f.generic}});
  write_text(dir / "fonts.json", nlohmann::ordered_json{{"fonts", fonts}}.dump(2) + "\n");
  write_text(dir / "job.json", job_json(b, job).dump(2) + "\n");
  auto source = dir / job.manuscript_file;
  if (!fs::exists(source) || read_file(source) != manuscript_source) write_text(source, manuscript_source);
}

}  // namespace folio
