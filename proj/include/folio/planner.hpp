#pragma once

// Resolves a complete design from content statistics, the rule base, user
// constraints and a seed, then fits the body size to the grid.
//
// Draw order (frozen; each draw happens whether or not the field is pinned,
// so pinning one field never shifts another):
//   size, margins (top, inside, bottom, outside), grid (target column width,
//   gutter), pairing, body size, alignments (body, hyphenation, title,
//   caption alignment, caption placement), paragraph mark, header layout,
//   features, cover colour.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "folio/error.hpp"
#include "folio/features.hpp"
#include "folio/manuscript.hpp"
#include "folio/metrics.hpp"
#include "folio/random.hpp"
#include "folio/rules.hpp"
#include "folio/settings.hpp"
#include "folio/units.hpp"

namespace folio {

struct PageSize {
  double width = 0;
  double height = 0;
};

inline Grid compute_grid(PageSize page, const Margins& margins, const RuleSet& rules, SeededStream& stream) {
  double block = page.width - margins.inside - margins.outside;
  double target = stream.uniform(rules.column_width.min, rules.column_width.max);
  double gutter = quantize(stream.uniform(rules.gutter.min, rules.gutter.max), 0.1);
  gutter = std::round(gutter * 10) / 10;
  if (block <= 0)
    throw Error(ErrorKind::Infeasible, fmt::format("text block width {} mm is not positive", format_number(block)));
  Grid g;
  g.columns = std::max(1, static_cast<int>(std::floor(block / target)));
  g.gutter = gutter;
  g.column_width = (block - (g.columns - 1) * g.gutter) / g.columns;
  return g;
}

namespace detail {

template <class T>
std::size_t weighted_index(const std::vector<Weighted<T>>& options, SeededStream& stream) {
  std::vector<double> w;
  for (const auto& o : options) w.push_back(o.weight);
  return stream.weighted(w);
}

inline double draw_margin(const Range& r, SeededStream& stream) {
  return std::round(stream.uniform(r.min, r.max) * 10) / 10;
}

}  // namespace detail

/// Recomputes every value that follows from the body size and the grid,
/// leaving pinned fields alone.
inline void derive_styles(DesignSettings& s, const RuleSet& rules, const Constraints& c) {
  auto pairing = find_pairing(rules, s.pairing);
  double ratio = pairing ? pairing->leading : rules.leading.ideal;
  s.body.leading = c.body_leading.value_or(round3(s.body.size * rules.leading.range.clamp(ratio)));
  s.grid.baseline = s.body.leading;
  s.grid.column_width = column_width_for(s.block_width(), s.grid.columns, s.grid.gutter);
  if (!c.titles) {
    for (std::size_t i = 0; i < 3; ++i) {
      s.titles[i].size = round3(s.body.size * rules.font_size.title_scale[i]);
      s.titles[i].leading =
          i == 2 ? s.body.leading : round3(s.titles[i].size * rules.font_size.title_leading);
    }
  }
  if (!c.caption_size) s.caption.size = round3(s.body.size * rules.font_size.caption_scale);
  if (!c.caption_leading) s.caption.leading = round3(s.caption.size * s.body.leading / s.body.size);
  if (!c.indent) {
    double em = round3(pt_to_mm(s.body.size));
    switch (s.body.paragraph_mark) {
      case ParagraphMark::PositiveIndent: s.body.indent = em; break;
      case ParagraphMark::NegativeIndent: s.body.indent = -em; break;
      default: s.body.indent = 0; break;
    }
  }
  if (!c.space_before) s.body.space_before = s.body.paragraph_mark == ParagraphMark::SpaceBefore ? s.body.leading : 0;
  if (!c.space_after) s.body.space_after = 0;
  if (!c.caption_placement && s.caption.placement == CaptionPlacement::AsideRotated &&
      s.margins.outside < rules.pagination.caption_aside_min_outer_margin)
    s.caption.placement = CaptionPlacement::BelowLeft;
}

inline DesignSettings plan(const ContentStats& stats, const RuleSet& rules, const Constraints& c, std::uint64_t seed) {
  SeededStream stream(seed);
  DesignSettings s;
  s.seed = seed;
  s.book_type = stats.book_type;

  // size
  {
    std::vector<double> w;
    for (const auto& o : rules.size_options) w.push_back(o.weights[index_of(stats.book_type)]);
    const auto& o = rules.size_options[stream.weighted(w)];
    s.page_width = c.page_width.value_or(o.width);
    s.page_height = c.page_height.value_or(o.height);
  }

  // margins
  s.margins.top = detail::draw_margin(rules.top_bottom_margin, stream);
  s.margins.inside = detail::draw_margin(rules.inside_outside_margin, stream);
  s.margins.bottom = detail::draw_margin(rules.top_bottom_margin, stream);
  s.margins.outside = detail::draw_margin(rules.inside_outside_margin, stream);
  if (c.margin_top) s.margins.top = *c.margin_top;
  if (c.margin_inside) s.margins.inside = *c.margin_inside;
  if (c.margin_bottom) s.margins.bottom = *c.margin_bottom;
  if (c.margin_outside) s.margins.outside = *c.margin_outside;

  // grid
  s.grid = compute_grid({s.page_width, s.page_height}, s.margins, rules, stream);
  if (c.gutter) s.grid.gutter = *c.gutter;
  if (c.columns) s.grid.columns = *c.columns;
  s.grid.column_width = column_width_for(s.block_width(), s.grid.columns, s.grid.gutter);
  if (s.grid.column_width <= 0)
    throw Error(ErrorKind::Constraint, fmt::format("{} columns do not fit the text block", s.grid.columns),
                "grid.columns");

  // pairing
  {
    auto eligible = eligible_pairings(rules, stats.book_type);
    auto drawn = eligible[stream.index(eligible.size())];
    if (c.pairing) {
      auto p = find_pairing(rules, *c.pairing);
      if (!p) throw Error(ErrorKind::Constraint, fmt::format("unknown pairing '{}'", *c.pairing), "pairing");
      if (stats.book_type == BookType::LongReading && p->body.classification != Classification::Serif)
        throw Error(ErrorKind::Constraint,
                    fmt::format("pairing '{}' has a sans body face, but long reading needs a serif", *c.pairing),
                    "pairing");
      s.pairing = p->id;
    } else if (c.style_mode != StyleMode::Generate) {
      throw Error(ErrorKind::Constraint, fmt::format("style mode '{}' needs a pairing", to_string(c.style_mode)),
                  "pairing");
    } else {
      s.pairing = drawn.id;
    }
  }

  // body size
  {
    const auto& fs = rules.font_size;
    double drawn = fs.range.min + std::round((stream.uniform(fs.range.min, fs.range.max) - fs.range.min) / fs.step) * fs.step;
    s.body.size = c.body_size.value_or(std::min(drawn, fs.range.max));
  }

  // alignments
  {
    const auto& roles = rules.alignments_for(stats.book_type);
    auto body = roles.body[detail::weighted_index(roles.body, stream)].value;
    bool hyph = stream.bernoulli(rules.alignments.ragged_hyphenation);
    auto title = roles.title[detail::weighted_index(roles.title, stream)].value;
    auto caption = roles.caption[detail::weighted_index(roles.caption, stream)].value;
    bool aside = stream.bernoulli(0.5);
    s.body.alignment = c.body_alignment.value_or(body);
    if (stats.book_type == BookType::LongReading && s.body.alignment != Alignment::Justified &&
        s.body.alignment != Alignment::Left)
      throw Error(ErrorKind::Constraint, "long reading body text must be justified or left aligned", "body.alignment");
    s.body.hyphenation = c.hyphenation.value_or(s.body.alignment == Alignment::Justified || hyph);
    if (s.body.alignment == Alignment::Justified && !s.body.hyphenation)
      throw Error(ErrorKind::Constraint, "justified text requires hyphenation", "body.hyphenation");
    for (auto& t : s.titles) t.alignment = title;
    if (c.titles) s.titles = *c.titles;
    s.caption.alignment = c.caption_alignment.value_or(caption);
    bool eligible = s.margins.outside >= rules.pagination.caption_aside_min_outer_margin;
    s.caption.placement = c.caption_placement.value_or(aside && eligible ? CaptionPlacement::AsideRotated
                                                                          : CaptionPlacement::BelowLeft);
  }

  // paragraph mark
  s.body.paragraph_mark = rules.paragraph_marks[detail::weighted_index(rules.paragraph_marks, stream)].value;
  if (c.paragraph_mark) s.body.paragraph_mark = *c.paragraph_mark;

  // header layout
  s.header_layout = rules.header_layouts[stream.index(rules.header_layouts.size())].id;
  if (c.header_layout) s.header_layout = *c.header_layout;

  // features
  s.features = select_features(c.requested, c.surprise, stream, rules);
  if (c.features) s.features = *c.features;

  // cover colour
  s.cover_color = rules.cover_colors[stream.index(rules.cover_colors.size())].cmyk;
  if (c.cover_color) s.cover_color = *c.cover_color;

  s.word_spacing = c.word_spacing.value_or(rules.word_spacing.range);
  s.letter_spacing = c.letter_spacing.value_or(rules.letter_spacing.range);
  s.toc = c.toc.value_or(false);
  s.colophon = c.colophon.value_or(false);
  s.language = c.language.value_or(stats.language);
  if (c.indent) s.body.indent = *c.indent;
  if (c.space_before) s.body.space_before = *c.space_before;
  if (c.space_after) s.body.space_after = *c.space_after;
  if (c.caption_size) s.caption.size = *c.caption_size;
  if (c.caption_leading) s.caption.leading = *c.caption_leading;
  derive_styles(s, rules, c);
  return s;
}

/// Scales applied to the characters-per-line and words-per-page estimates
/// after a trial pagination has measured the real values.
struct FitCalibration {
  double chars_scale = 1.0;
  double words_scale = 1.0;
};

struct FitEstimate {
  double chars_per_line = 0;
  double words_per_page = 0;
  bool chars_ok = false;
  bool capacity_ok = false;
  bool ok() const { return chars_ok && capacity_ok; }
};

inline FitEstimate estimate_fit(const DesignSettings& s, double size, const FontMetrics& m, const RuleSet& rules,
                                const FitCalibration& cal = {}) {
  FitEstimate e;
  double column = column_width_for(s.block_width(), s.grid.columns, s.grid.gutter);
  auto pairing = find_pairing(rules, s.pairing);
  double ratio = rules.leading.range.clamp(pairing ? pairing->leading : rules.leading.ideal);
  double leading = s.body.leading > 0 && s.body.size == size ? s.body.leading : size * ratio;
  e.chars_per_line = mm_to_pt(column) / (mean_advance(m, s.language) * size) * cal.chars_scale;
  double rows = std::floor(mm_to_pt(s.block_height()) / leading + 1e-9);
  e.words_per_page = rows * s.grid.columns * e.chars_per_line / chars_per_word(s.language) * cal.words_scale;
  double lo = s.body.alignment == Alignment::Justified ? rules.line_length.justified_min : rules.line_length.min;
  e.chars_ok = column > 0 && e.chars_per_line >= lo && e.chars_per_line <= rules.line_length.max;
  int cap = s.grid.columns == 1 ? rules.page_capacity.one_column : rules.page_capacity.multi_column;
  e.capacity_ok = e.words_per_page <= cap;
  return e;
}

/// Adjusts the body size (in font-size steps) and, failing that, the grid so
/// that the estimated characters per line and words per page meet the rules.
/// Grid changes go columns first (one more or one fewer), then margins in
/// 1 mm steps. Pinned fields never change.
inline DesignSettings fit_body_size(DesignSettings s, const FontMetrics& m, const RuleSet& rules,
                                    const Constraints& c = {}, const FitCalibration& cal = {}) {
  const auto& fs = rules.font_size;
  std::vector<double> sizes;
  if (c.body_size) {
    sizes.push_back(*c.body_size);
  } else {
    for (double v = fs.range.min; v <= fs.range.max + 1e-9; v += fs.step) sizes.push_back(std::round(v * 1000) / 1000);
    double start = s.body.size;
    std::stable_sort(sizes.begin(), sizes.end(), [start](double a, double b) {
      double da = std::abs(a - start), db = std::abs(b - start);
      if (std::abs(da - db) > 1e-9) return da < db;
      return a < b;
    });
  }
  bool columns_free = !c.columns;
  bool margins_free = !c.margins_pinned();
  if (c.body_size && !columns_free && !margins_free) return s;

  auto best_size = [&](const DesignSettings& cand) -> std::optional<double> {
    if (column_width_for(cand.block_width(), cand.grid.columns, cand.grid.gutter) <= 0) return std::nullopt;
    for (double v : sizes) {
      DesignSettings probe = cand;
      probe.body.size = v;
      probe.body.leading = 0;
      if (c.body_leading) probe.body.leading = *c.body_leading;
      if (estimate_fit(probe, v, m, rules, cal).ok()) return v;
    }
    return std::nullopt;
  };

  auto accept = [&](DesignSettings cand, double size) {
    cand.body.size = size;
    derive_styles(cand, rules, c);
    return cand;
  };

  if (auto v = best_size(s)) return accept(s, *v);

  // Which way the text is failing, judged at the size nearest the start.
  DesignSettings probe = s;
  probe.body.leading = c.body_leading.value_or(0);
  auto first = estimate_fit(probe, sizes.front(), m, rules, cal);
  double lo = s.body.alignment == Alignment::Justified ? rules.line_length.justified_min : rules.line_length.min;
  bool too_narrow = first.chars_per_line < lo;

  std::vector<int> column_options;
  if (columns_free) {
    if (too_narrow) {
      if (s.grid.columns > 1) column_options.push_back(s.grid.columns - 1);
      column_options.push_back(s.grid.columns + 1);
    } else {
      column_options.push_back(s.grid.columns + 1);
      if (s.grid.columns > 1) column_options.push_back(s.grid.columns - 1);
    }
    for (int n : column_options) {
      DesignSettings cand = s;
      cand.grid.columns = n;
      if (auto v = best_size(cand)) return accept(cand, *v);
    }
  }

  if (margins_free) {
    std::vector<int> grids = {s.grid.columns};
    for (int n : column_options) grids.push_back(n);
    // narrow text widens the block (smaller margins); anything else shrinks it
    double dir = too_narrow ? -1.0 : 1.0;
    for (int n : grids) {
      for (int k = 1; k <= 30; ++k) {
        DesignSettings cand = s;
        cand.grid.columns = n;
        auto move = [&](double& v, const std::optional<double>& pin, const Range& r) {
          if (!pin) v = std::round(r.clamp(v + dir * k) * 10) / 10;
        };
        move(cand.margins.inside, c.margin_inside, rules.inside_outside_margin);
        move(cand.margins.outside, c.margin_outside, rules.inside_outside_margin);
        if (!too_narrow) {
          move(cand.margins.top, c.margin_top, rules.top_bottom_margin);
          move(cand.margins.bottom, c.margin_bottom, rules.top_bottom_margin);
        }
        if (auto v = best_size(cand)) return accept(cand, *v);
      }
    }
  }
  throw Error(ErrorKind::Infeasible,
              fmt::format("no body size in [{}, {}] pt and grid fits {} x {} mm with {} column(s): about {:.1f} "
                          "characters per line at {} pt",
                          format_number(fs.range.min), format_number(fs.range.max), format_number(s.page_width),
                          format_number(s.page_height), s.grid.columns, first.chars_per_line,
                          format_number(sizes.front())));
}

}  // namespace folio
