// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Every check recomputes its quantity from the produced artefacts
// rather than trusting the engine's own reports.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "oracles/first_fit_oracle.hpp"
#include "oracles/liang_oracle.hpp"
#include "support/fixtures.hpp"

using namespace folio;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

const RuleSet& rules() { return default_rules(); }

ContentStats stats_of(const Manuscript& ms) { return classify(assign_heading_levels(ms), rules()); }

// Planner output after the body-size fit, without pagination.
DesignSettings design(const ContentStats& stats, const Constraints& c, std::uint64_t seed) {
  auto s = plan(stats, rules(), c, seed);
  auto faces = load_typefaces(s, rules(), fixtures::library());
  return fit_body_size(s, *faces.body, rules(), c);
}

std::string frame_text(const Frame& f) {
  std::string s;
  for (const auto& l : f.lines) s += (s.empty() ? "" : " ") + l.text();
  return s;
}

// Source chapters of the long sample, split at level-1 headings.
std::vector<std::string> contos_chapters() {
  const auto& src = fixtures::contos_source();
  std::vector<std::string> out;
  std::size_t at = src.find("\n# ");
  while (at != std::string::npos) {
    auto next = src.find("\n# ", at + 1);
    out.push_back(src.substr(at + 1, next == std::string::npos ? std::string::npos : next - at));
    at = next;
  }
  return out;
}

struct Sample {
  std::string name;
  std::string source;
  Manuscript ms;
};

const std::vector<Sample>& five_manuscripts() {
  static const std::vector<Sample> out = [] {
    auto chapters = contos_chapters();
    auto join = [&](std::size_t from, std::size_t to, const char* title) {
      std::string s = fmt::format("title: {}\nlanguage: pt\n\n", title);
      for (std::size_t i = from; i < to && i < chapters.size(); ++i) s += chapters[i] + "\n";
      return s;
    };
    std::string notes = "title: Field Notes\nlanguage: en\n\n";
    for (int i = 0; i < 8; ++i)
      notes += fmt::format("# Part {}\n\n## Morning\n\n{}\n\n## Evening\n\n{}\n\n", i + 1,
                           fixtures::filler(1500, std::uint64_t(i)), fixtures::filler(1200, std::uint64_t(100 + i)));
    std::vector<Sample> v;
    auto add = [&](std::string name, std::string src) {
      auto ms = parse_manuscript(src, fixtures::samples() / "images");
      v.push_back({std::move(name), std::move(src), std::move(ms)});
    };
    add("contos", fixtures::contos_source());
    add("garden", fixtures::garden_source());
    add("contos 1-4", join(0, 4, "Primeiros contos"));
    add("contos 9-13", join(8, 13, "Últimos contos"));
    add("field notes", notes);
    return v;
  }();
  return out;
}

// 1 -------------------------------------------------------------------------
Outcome classification() {
  auto s = stats_of(fixtures::contos());
  bool ok = s.book_type == BookType::LongReading;
  return {ok, fmt::format("{} words -> {}", s.words, to_string(s.book_type))};
}

// 2 -------------------------------------------------------------------------
std::vector<std::string> rule_violations(const Book& b) {
  const auto& s = b.settings;
  std::vector<std::string> v;
  auto within = [](double x, double lo, double hi) { return x >= lo - 1e-9 && x <= hi + 1e-9; };
  if (!within(s.margins.top, 7, 15) || !within(s.margins.bottom, 7, 15)) v.push_back("top/bottom margin");
  if (!within(s.margins.inside, 7, 30) || !within(s.margins.outside, 7, 30)) v.push_back("inside/outside margin");
  if (!within(s.body.size, 8, 12)) v.push_back("body size");
  if (!within(s.body.leading / s.body.size, 1.15, 1.40)) v.push_back("leading ratio");
  std::vector<double> chars;
  for (const auto& p : b.doc.pages)
    for (const auto& f : p.frames) {
      if (f.role != "body") continue;
      for (const auto& l : f.lines) {
        if (!l.last) chars.push_back(double(utf8::length(l.text())));
        if (l.justified && (!within(l.word_spacing, 0.80, 1.20) || !within(l.letter_spacing, -0.05, 0.05)))
          v.push_back(fmt::format("justified spacing {:.3f}/{:.3f}", l.word_spacing, l.letter_spacing));
      }
    }
  if (chars.empty()) {
    v.push_back("no body lines");
  } else {
    std::sort(chars.begin(), chars.end());
    std::size_t n = chars.size();
    double median = n % 2 ? chars[n / 2] : (chars[n / 2 - 1] + chars[n / 2]) / 2;
    double lo = s.body.alignment == Alignment::Justified ? 48 : 45;
    if (!within(median, lo, 75)) v.push_back(fmt::format("median {} chars/line", median));
  }
  return v;
}

Outcome conformance() {
  int designs = 0, failing = 0;
  std::string first;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    std::vector<std::string> v;
    try {
      v = rule_violations(generate(fixtures::contos(), {}, seed, rules(), fixtures::library()));
    } catch (const Error& e) {
      v.push_back(fmt::format("{} error: {}", to_string(e.kind()), e.what()));
    }
    ++designs;
    if (!v.empty()) {
      ++failing;
      if (first.empty()) first = fmt::format("seed {}: {}", seed, v.front());
    }
  }
  return {failing == 0, fmt::format("{}/{} designs conform{}", designs - failing, designs,
                                    first.empty() ? "" : "; first failure " + first)};
}

// 3 -------------------------------------------------------------------------
Outcome portrait_bias() {
  auto stats = stats_of(fixtures::contos());
  int portrait = 0;
  const int n = 1000;
  for (int seed = 0; seed < n; ++seed) {
    auto s = plan(stats, rules(), {}, std::uint64_t(seed));
    portrait += s.page_height > s.page_width;
  }
  double f = double(portrait) / n;
  return {std::abs(f - 0.80) <= 0.04, fmt::format("portrait frequency {:.3f} over {} plans", f, n)};
}

// 4 -------------------------------------------------------------------------
std::vector<std::pair<std::string, std::string>> tree(const fs::path& dir) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) out.emplace_back(fs::relative(e.path(), dir).string(), read_file(e.path()));
  std::sort(out.begin(), out.end());
  return out;
}

Outcome determinism() {
  std::vector<fs::path> dirs;
  for (int run = 0; run < 2; ++run) {
    auto dir = fixtures::scratch(fmt::format("determinism-{}", run));
    auto b = generate(fixtures::contos(), {}, 424242, rules(), fixtures::library());
    JobRecord job;
    job.seed = 424242;
    write_outputs(b, dir, job, fixtures::contos_source());
    dirs.push_back(dir);
  }
  auto a = tree(dirs[0]), b = tree(dirs[1]);
  std::size_t svgs = 0;
  for (const auto& [name, _] : a) svgs += name.ends_with(".svg");
  bool ok = a == b && svgs > 0 && std::any_of(a.begin(), a.end(), [](const auto& f) { return f.first == "layout.json"; });
  return {ok, fmt::format("{} files ({} SVG pages) compared byte for byte", a.size(), svgs)};
}

// 5 -------------------------------------------------------------------------
std::string exported_source_settings() {
  auto b = generate(fixtures::contos(), {}, 2718, rules(), fixtures::library());
  return export_settings(b.settings);
}

Outcome coherence() {
  auto text = exported_source_settings();
  auto pins = import_settings(text, rules());
  std::vector<AttributeVector> vs;
  std::string errors;
  std::uint64_t seed = 500;
  for (const auto& m : five_manuscripts()) {
    try {
      auto b = generate(m.ms, pins, seed++, rules(), fixtures::library());
      vs.push_back(attribute_vector(b.settings, rules()));
    } catch (const Error& e) {
      errors += fmt::format(" {}: {};", m.name, e.what());
    }
  }
  if (vs.size() != 5) return {false, "generation failed:" + errors};
  auto r = coherence_report(vs);
  int shared = 0;
  std::string missing;
  for (auto slot : kStructuralSlots) {
    if (r.shared(slot)) {
      ++shared;
    } else {
      missing += " " + std::string(slot);
    }
  }
  return {shared == int(kStructuralSlots.size()),
          fmt::format("{}/{} structural slots shared over 5 manuscripts, coherence {:.3f}{}", shared,
                      kStructuralSlots.size(), r.score, missing.empty() ? "" : "; differs:" + missing)};
}

// 6 -------------------------------------------------------------------------
Outcome diversity() {
  const auto& ms = five_manuscripts();
  std::vector<ContentStats> stats;
  for (const auto& m : ms) stats.push_back(stats_of(m.ms));
  int wins = 0;
  const int trials = 50;
  double min_gap = 1;
  for (int t = 0; t < trials; ++t) {
    std::uint64_t base = 10000 + std::uint64_t(t) * 100;
    auto source = design(stats[0], {}, base);
    auto pins = import_settings(export_settings(source), rules());
    std::vector<AttributeVector> coherent, random;
    for (std::size_t i = 0; i < ms.size(); ++i)
      coherent.push_back(attribute_vector(design(stats[i], pins, base + 1 + i), rules()));
    for (std::size_t i = 0; i < 15; ++i)
      random.push_back(attribute_vector(design(stats[i % ms.size()], {}, base + 20 + i), rules()));
    double dr = diversity_score(random), dc = diversity_score(coherent);
    wins += dr > dc;
    min_gap = std::min(min_gap, dr - dc);
  }
  double share = double(wins) / trials;
  return {share >= 0.95, fmt::format("random set more diverse in {}/{} trials (smallest margin {:.3f})", wins,
                                     trials, min_gap)};
}

// 7 -------------------------------------------------------------------------
Outcome reference_settings() {
  auto c = import_settings(fixtures::reference_settings_text(), rules());
  auto b = generate(fixtures::contos(), c, 7, rules(), fixtures::library());
  std::vector<std::string> bad;
  if (b.doc.width != 130 || b.doc.height != 200) bad.push_back("document size");
  for (const auto& svg : render_svg(b.doc))
    if (svg.find("width=\"130mm\" height=\"200mm\"") == std::string::npos) {
      bad.push_back("SVG page size");
      break;
    }
  const auto& s = b.settings;
  if (s.page_width != 130 || s.page_height != 200) bad.push_back("page");
  if (s.grid.columns != 1) bad.push_back("columns");
  if (s.body.size != 10 || s.body.leading != 13) bad.push_back("body 10/13");
  if (s.body.alignment != Alignment::Justified || !s.body.hyphenation) bad.push_back("justified with hyphenation");
  if (s.margins != Margins{12, 12, 13.7, 22}) bad.push_back("margins");
  const Frame* bg = nullptr;
  for (const auto& f : b.doc.pages.front().frames)
    if (f.role == "cover-background") bg = &f;
  if (!bg || !bg->fill || *bg->fill != Cmyk{2, 14, 38, 0}) bad.push_back("cover CMYK");
  std::string miss;
  for (const auto& x : bad) miss += " " + x;
  return {bad.empty(), bad.empty() ? fmt::format("130x200 mm, 1 column, 10/13 pt justified, CMYK(2,14,38,0), {} pages",
                                                 b.doc.pages.size())
                                   : "mismatch:" + miss};
}

// 8 -------------------------------------------------------------------------
std::size_t words_on(const BrokenLine& l) {
  std::size_t n = 1;
  for (char32_t c : l.text) n += c == U' ';
  return n;
}

int breaker_disagreements(int cases, std::uint64_t seed) {
  auto m = FontMetrics::uniform(0.5);
  SeededStream s(seed);
  int bad = 0;
  for (int i = 0; i < cases; ++i) {
    auto a = i % 2 ? Alignment::Justified : Alignment::Left;
    oracle::FirstFitProblem p;
    const double size = 10;
    p.glyph_width = p.space_width = size * 0.5;
    p.min_word_spacing = a == Alignment::Justified ? 0.8 : 1.0;
    p.letter_spacing_pt = a == Alignment::Justified ? -0.05 * size : 0.0;
    std::string text;
    std::size_t n = 1 + s.index(12);
    for (std::size_t w = 0; w < n; ++w) {
      int len = 1 + int(s.index(10));
      p.glyphs.push_back(len);
      text += (w ? " " : "") + std::string(std::size_t(len), 'x');
    }
    double lo = 0;
    for (std::size_t w = 0; w < n; ++w) lo = std::max(lo, oracle::line_width(p, w, w + 1));
    p.measure = std::max(lo, std::round(s.uniform(lo, oracle::line_width(p, 0, n) + 10) * 4) / 4);
    BreakStyle bs;
    bs.size = size;
    bs.alignment = a;
    std::vector<std::size_t> got;
    for (const auto& l : break_paragraph(styled_text(text), bs, p.measure, m)) got.push_back(words_on(l));
    bad += got != oracle::first_fit(p);
  }
  return bad;
}

int hyphenation_disagreements(const std::string& lang, std::size_t& words) {
  oracle::Liang ref(read_file(data_dir() / "hyphenation" / ("hyph-" + lang + ".tex")));
  auto h = hyphenator_for(lang);
  std::ifstream in(std::string(FOLIO_TESTS) + "/oracles/words-" + lang + ".txt");
  int bad = 0;
  words = 0;
  for (std::string w; std::getline(in, w);) {
    if (w.empty()) continue;
    ++words;
    bad += !h || h->points(w) != ref.points(w);
  }
  return bad;
}

Outcome oracles() {
  int lb = breaker_disagreements(1000, 8088);
  std::size_t en_words = 0, pt_words = 0;
  int en = hyphenation_disagreements("en", en_words);
  int pt = hyphenation_disagreements("pt", pt_words);
  bool ok = lb == 0 && en == 0 && pt == 0 && en_words == 500 && pt_words == 500;
  return {ok, fmt::format("line breaks {}/1000, hyphenation en {}/{}, pt {}/{} agree", 1000 - lb,
                          int(en_words) - en, en_words, int(pt_words) - pt, pt_words)};
}

// 9 -------------------------------------------------------------------------
std::string structure_problems(const Manuscript& raw, std::uint64_t seed) {
  Constraints c;
  c.toc = true;
  c.colophon = true;
  auto b = generate(raw, c, seed, rules(), fixtures::library());
  std::vector<std::string> level1;
  int toc_expected = 0;
  for (const auto& block : b.manuscript.blocks)
    if (auto* h = std::get_if<Heading>(&block)) {
      if (h->level == 1) level1.push_back(h->text);
      toc_expected += h->level <= 2;
    }
  std::vector<std::string> title_pages;
  int toc_entries = 0;
  for (const auto& p : b.doc.pages) {
    if (p.kind == PageKind::Toc)
      for (const auto& f : p.frames) toc_entries += f.role.starts_with("toc-entry-");
    if (p.kind != PageKind::Title) continue;
    std::vector<const Frame*> content;
    for (const auto& f : p.frames)
      if (f.layer == Layer::Content) content.push_back(&f);
    if (content.size() != 1) return fmt::format("title page {} holds {} content frames", p.index, content.size());
    title_pages.push_back(frame_text(*content[0]));
  }
  if (title_pages != level1)
    return fmt::format("{} level-1 headings but {} title pages", level1.size(), title_pages.size());
  if (toc_entries != toc_expected) return fmt::format("{} contents entries for {} headings", toc_entries, toc_expected);
  const auto& last = b.doc.pages.back();
  if (last.kind != PageKind::Colophon) return "colophon is not the final page";
  std::string text;
  for (const auto& f : last.frames) text += frame_text(f) + " ";
  const auto& s = b.settings;
  for (const auto& want :
       {fmt::format("{} × {} mm", format_number(s.page_width), format_number(s.page_height)),
        fmt::format("{} mm top, {} mm inside, {} mm bottom, {} mm outside", format_number(s.margins.top),
                    format_number(s.margins.inside), format_number(s.margins.bottom), format_number(s.margins.outside)),
        s.grid.columns == 1 ? std::string("1 column") : fmt::format("{} columns", s.grid.columns)})
    if (text.find(want) == std::string::npos) return fmt::format("colophon lacks '{}'", want);
  return {};
}

Outcome structure() {
  int books = 0;
  for (const auto& m : five_manuscripts()) {
    auto problem = structure_problems(m.ms, 99 + std::uint64_t(books));
    if (!problem.empty()) return {false, m.name + ": " + problem};
    ++books;
  }
  return {true, fmt::format("title pages, contents and colophon correct in {} books", books)};
}

// 10 ------------------------------------------------------------------------
Outcome performance() {
  auto dir = fixtures::scratch("performance");
  auto start = std::chrono::steady_clock::now();
  FontLibrary library(FontMap::load(data_dir() / "fonts" / "fontmap.json"));
  auto ms = parse_manuscript(read_file(fixtures::samples() / "contos.md"), fixtures::samples() / "images");
  auto b = generate(ms, {}, 1234, rules(), library);
  write_outputs(b, dir, {}, fixtures::contos_source());
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {secs < 30.0, fmt::format("{} pages in {:.2f} s", b.doc.pages.size(), secs)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "classification", classification}, {2, "rule conformance", conformance},
      {3, "portrait bias", portrait_bias},     {4, "determinism", determinism},
      {5, "coherence", coherence},             {6, "diversity", diversity},
      {7, "reference settings", reference_settings},          {8, "oracle equivalence", oracles},
      {9, "structure rules", structure},       {10, "performance", performance},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, fmt::format("exception: {}", e.what())};
    }
    failed += !o.pass;
    fmt::print("{} {:>2} {:<20} {}\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
