#pragma once

// Front and back covers: uppercase title at the top margin and author at the
// bottom margin, both in the body face, over the cover colour.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <variant>

#include <fmt/format.h>

#include "folio/error.hpp"
#include "folio/layout.hpp"
#include "folio/linebreak.hpp"
#include "folio/manuscript.hpp"
#include "folio/metrics.hpp"
#include "folio/paginate.hpp"
#include "folio/random.hpp"
#include "folio/settings.hpp"
#include "folio/units.hpp"

namespace folio {

inline constexpr std::string_view kVersion = "0.1.0";

enum class TitleSource { FrontMatter, Extracted };

struct TitleInfo {
  std::string title;
  std::string author;
  TitleSource source = TitleSource::FrontMatter;
};

/// Text up to and including the first sentence terminator.
inline std::string first_sentence(std::string_view text) {
  auto t = utf8::trim(text);
  auto end = t.find_first_of(".!?");
  return std::string(utf8::trim(end == std::string_view::npos ? t : t.substr(0, end + 1)));
}

/// Front-matter title and author; failing that, the first sentence of the
/// most prominent heading, then of the first paragraph.
inline TitleInfo extract_title(const Manuscript& ms) {
  TitleInfo info;
  info.author = ms.author.value_or("");
  if (ms.title && !utf8::trim(*ms.title).empty()) {
    info.title = std::string(utf8::trim(*ms.title));
    return info;
  }
  info.source = TitleSource::Extracted;
  const Heading* best = nullptr;
  for (const auto& b : ms.blocks)
    if (auto* h = std::get_if<Heading>(&b))
      if (!utf8::trim(h->text).empty() && (!best || h->prominence > best->prominence)) best = h;
  if (best) {
    info.title = first_sentence(best->text);
    return info;
  }
  for (const auto& b : ms.blocks)
    if (auto* p = std::get_if<Paragraph>(&b)) {
      auto s = first_sentence(p->text());
      if (!s.empty()) {
        info.title = s;
        return info;
      }
    }
  throw Error(ErrorKind::Parse, "no title source");
}

struct TitleFit {
  double size = 0;
  bool overflow = false;  // even the lower bound is too wide
};

/// Largest size on the 0.1 pt lattice within `bounds` at which the widest
/// word of `title` fits `target_width` pt. Width grows monotonically with
/// size, so a bisection over the lattice finds it.
inline TitleFit maximize_title_size(std::string_view title, const FontMetrics& m, double target_width,
                                    const Range& bounds) {
  auto words = utf8::split_words(title);
  if (words.empty()) words.push_back(title);
  auto widest = [&](double size) {
    double w = 0;
    for (auto word : words) w = std::max(w, measure_run(word, m, size));
    return w;
  };
  auto fits = [&](long k) { return widest(double(k) / 10) <= target_width + 1e-9; };
  long lo = long(std::ceil(bounds.min * 10 - 1e-9));
  long hi = long(std::floor(bounds.max * 10 + 1e-9));
  if (!fits(lo)) return {double(lo) / 10, true};
  if (fits(hi)) return {double(hi) / 10, false};
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    if (fits(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {double(lo) / 10, false};
}

struct Covers {
  Page front;
  Page back;
};

namespace detail {

inline Frame cover_text(const std::string& role, std::string_view text, const FontSlot& slot, const FontMetrics& m,
                        double size, double leading, Alignment a, double width_mm) {
  BreakStyle bs;
  bs.size = size;
  bs.alignment = a;
  auto lines = break_paragraph(styled_text(text), bs, mm_to_pt(width_mm), m);
  Frame f;
  f.role = role;
  f.style = text_style(slot, size, leading, a);
  f.style.uppercase = true;
  set_lines(f, lines, 0, lines.size(), leading, size);
  f.rect.w = width_mm;
  f.rect.h = pt_to_mm(double(lines.size()) * leading);
  return f;
}

inline Frame background(double w, double h, const Cmyk& color) {
  Frame f;
  f.kind = FrameKind::Decor;
  f.layer = Layer::Background;
  f.role = "cover-background";
  f.rect = {0, 0, w, h};
  f.fill = color;
  return f;
}

}  // namespace detail

inline std::string attribution(const DesignSettings& s) {
  return fmt::format("Designed and typeset by folio {}, a generative book design system, from seed {}.", kVersion,
                     s.seed);
}

/// The covers use the recto margins of the design. With the maxCoverTitle
/// feature the title is set one word per line at the largest size whose
/// widest word fits the text block.
inline Covers design_cover(const TitleInfo& info, const DesignSettings& s, SeededStream& /*stream*/,
                           const RuleSet& /*rules*/, const Typefaces& faces) {
  Rect block{s.margins.inside, s.margins.top, s.block_width(), s.block_height()};
  const auto& m = *faces.body;
  const double ratio = s.body.leading / s.body.size;
  Covers c;
  c.front.kind = PageKind::Cover;
  c.front.block = block;
  c.front.frames.push_back(detail::background(s.page_width, s.page_height, s.cover_color));

  auto upper_title = utf8::upper(info.title);
  Frame title;
  if (s.features.max_cover_title) {
    auto words = utf8::split_words(upper_title);
    double author_h = info.author.empty() ? 0 : pt_to_mm(s.titles[1].leading) * 2;
    double room = mm_to_pt(block.h - author_h);
    double base = s.titles[0].size;
    double upper = std::max(base, room / (double(std::max<std::size_t>(1, words.size())) * 1.05));
    double size = maximize_title_size(upper_title, m, mm_to_pt(block.w), {base, upper}).size;
    double leading = round3(size * 1.05);
    title = detail::cover_text("cover-title", "", faces.body_slot, m, size, leading, Alignment::Left, block.w);
    BreakStyle bs;
    bs.size = size;
    bs.alignment = Alignment::Left;
    for (auto w : words)
      for (auto& l : break_paragraph(styled_text(w), bs, mm_to_pt(block.w), m))
        title.lines.push_back(detail::to_line(
            l, pt_to_mm(double(title.lines.size()) * leading + detail::baseline_in_row(leading, size))));
    title.rect.h = pt_to_mm(double(title.lines.size()) * leading);
  } else {
    title = detail::cover_text("cover-title", upper_title, faces.body_slot, m, s.titles[0].size,
                               s.titles[0].leading, Alignment::Left, block.w);
  }
  title.rect.x = block.x;
  title.rect.y = block.y;
  title.rect.h = std::min(title.rect.h, block.h);
  c.front.frames.push_back(std::move(title));

  if (!info.author.empty()) {
    double asize = s.titles[1].size;
    auto author = detail::cover_text("cover-author", utf8::upper(info.author), faces.body_slot, m, asize,
                                     round3(asize * ratio), Alignment::Left, block.w);
    author.rect.x = block.x;
    author.rect.y = block.bottom() - author.rect.h;
    c.front.frames.push_back(std::move(author));
  }

  c.back.kind = PageKind::BackCover;
  c.back.block = {s.margins.outside, s.margins.top, s.block_width(), s.block_height()};
  c.back.recto = false;
  c.back.frames.push_back(detail::background(s.page_width, s.page_height, s.cover_color));
  auto back = detail::cover_text("attribution", attribution(s), faces.body_slot, m, s.caption.size,
                                 s.caption.leading, Alignment::Left, c.back.block.w);
  back.style.uppercase = false;
  back.rect.x = c.back.block.x;
  back.rect.y = c.back.block.bottom() - back.rect.h;
  c.back.frames.push_back(std::move(back));
  return c;
}

/// Puts the front cover first and keeps the back cover apart from the
/// interior sequence.
inline void attach_covers(LayoutDocument& doc, Covers covers) {
  doc.pages.insert(doc.pages.begin(), std::move(covers.front));
  doc.back_cover = std::move(covers.back);
  renumber(doc);
  doc.back_cover->index = int(doc.pages.size());
}

}  // namespace folio
