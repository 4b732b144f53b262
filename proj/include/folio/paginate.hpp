#pragma once

// Pagination: flows a leveled manuscript through the grid into pages, then
// adds running headers, page numbers, the table of contents and the
// colophon. Vertical positions snap to the baseline grid (one row per body
// leading); every text frame starts on a row boundary.

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <fmt/format.h>

#include "folio/error.hpp"
#include "folio/hyphenate.hpp"
#include "folio/layout.hpp"
#include "folio/linebreak.hpp"
#include "folio/manuscript.hpp"
#include "folio/metrics.hpp"
#include "folio/random.hpp"
#include "folio/rules.hpp"
#include "folio/settings.hpp"
#include "folio/units.hpp"

namespace folio {

/// Metrics for the two faces of a pairing.
struct Typefaces {
  FontSlot body_slot;
  FontSlot title_slot;
  std::shared_ptr<const FontMetrics> body;
  std::shared_ptr<const FontMetrics> title;
};

inline Typefaces load_typefaces(const DesignSettings& s, const RuleSet& rules, FontLibrary& library) {
  auto p = find_pairing(rules, s.pairing);
  if (!p) throw Error(ErrorKind::Constraint, fmt::format("unknown pairing '{}'", s.pairing), "pairing");
  return {p->body, p->title, library.get(p->body), library.get(p->title)};
}

/// Both faces share one uniform metrics table (used by tests and oracles).
inline Typefaces uniform_typefaces(double em, const FontSlot& body = {"Uniform", "regular", Classification::Serif, ""},
                                   const FontSlot& title = {"Uniform", "bold", Classification::Sans, ""}) {
  auto m = std::make_shared<const FontMetrics>(FontMetrics::uniform(em));
  return {body, title, m, m};
}

struct TocEntry {
  int level = 1;
  std::string text;
  int page = 0;  // printed page number
};

namespace detail {

/// Baseline offset (pt) inside a row of height `leading` for text of `size`.
inline double baseline_in_row(double leading, double size) { return (leading + size) / 2 - 0.2 * size; }

inline std::vector<Span> spans_of(const std::u32string& text, const std::vector<std::uint8_t>& emphasis) {
  std::vector<Span> out;
  for (std::size_t i = 0; i < text.size(); ++i) {
    std::uint8_t e = i < emphasis.size() ? emphasis[i] : 0;
    if (out.empty() || out.back().emphasis != e) out.push_back({"", e});
    utf8::append(out.back().text, text[i]);
  }
  return out;
}

inline Line to_line(const BrokenLine& b, double baseline_mm) {
  Line l;
  l.spans = spans_of(b.text, b.emphasis);
  l.x = pt_to_mm(b.offset);
  l.baseline = baseline_mm;
  l.width = pt_to_mm(b.width);
  l.word_spacing = b.word_spacing;
  l.letter_spacing = b.letter_spacing;
  l.word_gap = pt_to_mm((b.word_spacing - 1) * b.space);
  l.justified = b.justified;
  l.hyphenated = b.hyphenated;
  l.overflow = b.overflow;
  l.last = b.last;
  l.loose = b.loose;
  return l;
}

inline TextStyle text_style(const FontSlot& slot, double size, double leading, Alignment a) {
  return {slot.family, slot.weight, size, leading, a, false};
}

/// Fills `frame.lines` from `lines[first, first + count)` spaced by `leading` pt.
inline void set_lines(Frame& frame, const std::vector<BrokenLine>& lines, std::size_t first, std::size_t count,
                      double leading, double size) {
  for (std::size_t i = 0; i < count; ++i)
    frame.lines.push_back(to_line(lines[first + i], pt_to_mm(double(i) * leading + baseline_in_row(leading, size))));
}

inline int rows_for(double height_pt, double row_pt) { return std::max(1, int(std::ceil(height_pt / row_pt - 1e-9))); }

inline std::vector<BrokenLine> set_plain(std::string_view text, const FontMetrics& m, double size, Alignment a,
                                         double measure_pt) {
  BreakStyle bs;
  bs.size = size;
  bs.alignment = a;
  bs.hyphenate = false;
  return break_paragraph(styled_text(text), bs, measure_pt, m);
}

}  // namespace detail

/// Recto pages are the odd-numbered ones; unnumbered pages alternate from
/// the front cover, which is recto.
inline void renumber(LayoutDocument& doc) {
  for (std::size_t i = 0; i < doc.pages.size(); ++i) {
    auto& p = doc.pages[i];
    p.index = int(i);
    p.recto = p.number ? (*p.number % 2 == 1) : (i % 2 == 0);
  }
}

class Paginator {
 public:
  Paginator(const Manuscript& ms, const DesignSettings& s, const RuleSet& rules, const Typefaces& faces,
            SeededStream& stream)
      : ms_(ms), s_(s), rules_(rules), faces_(faces), stream_(stream), indent_stream_(stream.fork("random-indent")) {
    leading_ = s.body.leading;
    row_mm_ = pt_to_mm(leading_);
    rows_ = int(std::floor(mm_to_pt(s.block_height()) / leading_ + 1e-9));
    if (rows_ < 1) throw Error(ErrorKind::Infeasible, "text block is shorter than one line of body text");
    col_w_mm_ = column_width_for(s.block_width(), s.grid.columns, s.grid.gutter);
    col_w_pt_ = mm_to_pt(col_w_mm_);
    if (col_w_mm_ <= 0) throw Error(ErrorKind::Infeasible, "column width is not positive", "grid.columns");
    if (s.body.hyphenation) hyphenator_ = hyphenator_for(s.language);
    running_ = ms.title.value_or("");
  }

  /// Body pages in order (title pages included), numbered from 1.
  std::vector<Page> run() {
    int paragraph = 0;
    for (const auto& block : ms_.blocks) {
      if (auto* p = std::get_if<Paragraph>(&block)) {
        place_paragraph(*p, paragraph++);
      } else if (auto* h = std::get_if<Heading>(&block)) {
        place_heading(*h);
      } else if (auto* img = std::get_if<ImageRef>(&block)) {
        place_image(*img);
      }
    }
    return std::move(pages_);
  }

  const std::vector<TocEntry>& toc() const { return toc_; }

 private:
  struct Column {
    int row = 0;
    std::vector<std::pair<int, int>> blocked;  // [start, end) rows reserved by spanning images
    bool fresh = true;                         // nothing placed since the start of the current free run
  };

  Page& page() { return pages_.back(); }

  void new_page(PageKind kind = PageKind::Body) {
    Page p;
    p.kind = kind;
    int number = int(pages_.size()) + 1;
    p.number = number;
    p.recto = number % 2 == 1;
    double x = p.recto ? s_.margins.inside : s_.margins.outside;
    p.block = {x, s_.margins.top, s_.block_width(), s_.block_height()};
    p.running_header = running_;
    pages_.push_back(std::move(p));
    cols_.assign(std::size_t(s_.grid.columns), Column{});
    col_ = 0;
    open_ = kind == PageKind::Body;
  }

  void ensure_page() {
    if (!open_) new_page();
  }

  bool page_has_content() const { return open_ && !pages_.back().frames.empty(); }

  Column& column() { return cols_[std::size_t(col_)]; }

  int free_rows() {
    auto& c = column();
    for (bool moved = true; moved;) {
      moved = false;
      for (auto [a, b] : c.blocked)
        if (c.row >= a && c.row < b) {
          c.row = b;
          c.fresh = true;
          moved = true;
        }
    }
    int end = rows_;
    for (auto [a, b] : c.blocked)
      if (a >= c.row) end = std::min(end, a);
    return std::max(0, end - c.row);
  }

  // A page is opened only when content is about to land on it, so no body
  // page is ever empty and numbering stays positional.
  void next_column() {
    ++col_;
    if (col_ >= s_.grid.columns) {
      col_ = 0;
      open_ = false;
    }
  }

  void next_region() {
    auto& c = column();
    int end = c.row + free_rows();
    for (auto [a, b] : c.blocked)
      if (a == end && b < rows_) {
        c.row = b;
        c.fresh = true;
        return;
      }
    next_column();
  }

  Rect column_rect(int col, int row, int rows) const {
    const auto& b = pages_.back().block;
    return {b.x + col * (col_w_mm_ + s_.grid.gutter), b.y + row * row_mm_, col_w_mm_, rows * row_mm_};
  }

  void add_frame(Frame f) { page().frames.push_back(std::move(f)); }

  void emit_text(const std::vector<BrokenLine>& lines, std::size_t first, int count, const TextStyle& st,
                 const std::string& role, int paragraph) {
    auto& c = column();
    Frame f;
    f.kind = FrameKind::Text;
    f.role = role;
    f.style = st;
    f.paragraph = paragraph;
    f.rect = column_rect(col_, c.row, count);
    detail::set_lines(f, lines, first, std::size_t(count), leading_, st.size);
    add_frame(std::move(f));
    c.row += count;
    c.fresh = false;
  }

  /// Places lines across columns and pages with widow and orphan control.
  void flow(const std::vector<BrokenLine>& lines, const TextStyle& st, const std::string& role, int paragraph) {
    const int minl = rules_.pagination.min_lines_at_break;
    std::size_t i = 0;
    const std::size_t n = lines.size();
    while (i < n) {
      ensure_page();
      int avail = free_rows();
      int rem = int(n - i);
      if (avail <= 0) {
        next_region();
        continue;
      }
      if (rem <= avail) {
        emit_text(lines, i, rem, st, role, paragraph);
        i = n;
        break;
      }
      int k = avail;
      if (rem - k < minl) k = rem - minl;
      int need = i == 0 ? minl : 1;
      if (k < need) {
        if (!column().fresh) {
          next_region();
          continue;
        }
        k = std::max(1, std::min(avail, rem));
      }
      emit_text(lines, i, k, st, role, paragraph);
      i += std::size_t(k);
      next_region();
    }
  }

  void skip_rows(int rows) {
    if (rows <= 0 || column().fresh) return;
    if (free_rows() <= rows) {
      next_region();
    } else {
      column().row += rows;
    }
  }

  void place_paragraph(const Paragraph& p, int index) {
    auto st = styled_text(p.runs);
    if (st.text.empty()) return;
    ensure_page();
    const auto& body = s_.body;
    BreakStyle bs;
    bs.size = body.size;
    bs.alignment = body.alignment;
    bs.hyphenate = body.hyphenation;
    bs.word_spacing = s_.word_spacing;
    bs.letter_spacing = s_.letter_spacing;
    auto prefix = [&](std::u32string mark) {
      mark.push_back(U' ');
      st.text.insert(0, mark);
      st.emphasis.insert(st.emphasis.begin(), mark.size(), 0);
    };
    switch (body.paragraph_mark) {
      case ParagraphMark::Ornament: prefix(U"❡"); break;
      case ParagraphMark::Pilcrow: prefix(U"¶"); break;
      case ParagraphMark::NegativeIndent: bs.hanging = mm_to_pt(std::abs(body.indent)); break;
      case ParagraphMark::PositiveIndent:
        if (!after_heading_) bs.first_indent = mm_to_pt(body.indent);
        break;
      case ParagraphMark::SpaceBefore: break;
    }
    if (s_.features.random_indent)
      bs.first_indent = indent_stream_.uniform(0, rules_.pagination.random_indent_max_em * body.size);
    auto lines = break_paragraph(st, bs, col_w_pt_, *faces_.body, hyphenator_.get());
    if (body.space_before > 0 && !after_heading_) skip_rows(detail::rows_for(body.space_before, leading_));
    flow(lines, detail::text_style(faces_.body_slot, body.size, body.leading, body.alignment), "body", index);
    if (body.space_after > 0) skip_rows(detail::rows_for(body.space_after, leading_));
    after_heading_ = false;
  }

  Frame title_frame(const Heading& h, const TitleStyle& ts, int level, double measure_mm,
                    std::vector<BrokenLine>& lines) {
    lines = detail::set_plain(h.text, *faces_.title, ts.size, ts.alignment, mm_to_pt(measure_mm));
    Frame f;
    f.kind = FrameKind::Text;
    f.role = fmt::format("title-{}", level);
    f.style = detail::text_style(faces_.title_slot, ts.size, ts.leading, ts.alignment);
    detail::set_lines(f, lines, 0, lines.size(), ts.leading, ts.size);
    return f;
  }

  void place_heading(const Heading& h) {
    int level = std::clamp(h.level, 1, 3);
    const auto& ts = s_.titles[std::size_t(level - 1)];
    std::vector<BrokenLine> lines;
    if (level == 1) {
      running_ = h.text;
      new_page(PageKind::Title);
      auto f = title_frame(h, ts, 1, s_.block_width(), lines);
      int rows = std::min(rows_, detail::rows_for(double(lines.size()) * ts.leading, leading_));
      f.rect = {page().block.x, page().block.y, s_.block_width(), rows * row_mm_};
      page().running_header = h.text;
      add_frame(std::move(f));
      toc_.push_back({1, h.text, int(pages_.size())});
      open_ = false;
      after_heading_ = true;
      return;
    }
    if (level == 2) {
      running_ = h.text;
      if (!open_ || page_has_content()) new_page();
      page().running_header = h.text;
      auto f = title_frame(h, ts, 2, col_w_mm_, lines);
      int rows = std::min(rows_, detail::rows_for(double(lines.size()) * ts.leading, leading_));
      f.rect = column_rect(0, 0, rows);
      add_frame(std::move(f));
      toc_.push_back({2, h.text, int(pages_.size())});
      if (s_.grid.columns > 1) {
        col_ = 0;
        next_column();
      } else {
        column().row = std::min(rows_, rows + 1);
        column().fresh = true;
      }
      after_heading_ = true;
      return;
    }
    ensure_page();
    auto f = title_frame(h, ts, 3, col_w_mm_, lines);
    int rows = detail::rows_for(double(lines.size()) * ts.leading, leading_);
    int keep = rows + rules_.pagination.min_lines_at_break;
    if (!column().fresh) {
      if (free_rows() < keep + 1) {
        next_region();
        ensure_page();
      } else {
        column().row += 1;
      }
    }
    if (free_rows() < std::min(keep, rows_)) {
      next_region();
      ensure_page();
    }
    free_rows();
    f.rect = column_rect(col_, column().row, rows);
    add_frame(std::move(f));
    column().row += rows;
    column().fresh = false;
    after_heading_ = true;
  }

  struct ImageGeometry {
    double w = 0, h = 0;  // image, mm
    std::vector<BrokenLine> caption;
    double strip = 0;  // aside caption strip width, mm
    int rows = 0;
  };

  ImageGeometry image_geometry(const ImageRef& img, double span_mm, int limit_rows) {
    ImageGeometry g;
    double ppi = rules_.pagination.image_pixels_per_inch;
    double ratio = img.width > 0 && img.height > 0 ? double(img.height) / img.width : 0.75;
    double natural = img.width > 0 ? img.width * 25.4 / ppi : span_mm;
    const auto& cap = s_.caption;
    const auto& m = *faces_.body;
    const double gap = 2.0;
    if (cap.placement == CaptionPlacement::BelowLeft) {
      g.w = std::min(span_mm, natural);
      g.h = g.w * ratio;
      if (!img.caption.empty()) g.caption = detail::set_plain(img.caption, m, cap.size, cap.alignment, mm_to_pt(span_mm));
      int cap_rows = g.caption.empty() ? 0 : detail::rows_for(double(g.caption.size()) * cap.leading, leading_);
      int max_img = std::max(1, limit_rows - cap_rows);
      if (detail::rows_for(mm_to_pt(g.h), leading_) > max_img) {
        g.h = max_img * row_mm_;
        g.w = g.h / ratio;
      }
      g.rows = detail::rows_for(mm_to_pt(g.h), leading_) + cap_rows;
      return g;
    }
    double lead_mm = pt_to_mm(cap.leading);
    int n = 1;
    for (int iter = 0; iter < 4; ++iter) {
      g.strip = img.caption.empty() ? 0 : n * lead_mm;
      double room = span_mm - (g.strip > 0 ? g.strip + gap : 0);
      g.w = std::max(1.0, std::min(room, natural));
      g.h = g.w * ratio;
      int max_img = std::max(1, limit_rows);
      if (detail::rows_for(mm_to_pt(g.h), leading_) > max_img) {
        g.h = max_img * row_mm_;
        g.w = g.h / ratio;
      }
      if (img.caption.empty()) break;
      g.caption = detail::set_plain(img.caption, m, cap.size, Alignment::Centre, mm_to_pt(g.h));
      if (int(g.caption.size()) == n) break;
      n = int(g.caption.size());
    }
    g.rows = detail::rows_for(mm_to_pt(g.h), leading_);
    return g;
  }

  void place_image(const ImageRef& img) {
    ensure_page();
    bool span_draw = s_.grid.columns > 1 && stream_.bernoulli(rules_.pagination.image_span_probability);
    for (int attempt = 0;; ++attempt) {
      ensure_page();
      int avail = free_rows();
      if (avail <= 0) {
        next_region();
        continue;
      }
      bool span = span_draw && col_ == 0;
      double span_mm = span ? s_.block_width() : col_w_mm_;
      bool fresh = column().fresh;
      auto g = image_geometry(img, span_mm, fresh ? avail : rows_);
      if (g.rows > avail && !fresh && attempt < 64) {
        next_region();
        continue;
      }
      if (g.rows > avail) g = image_geometry(img, span_mm, avail);
      commit_image(img, g, span, span_mm);
      return;
    }
  }

  void commit_image(const ImageRef& img, const ImageGeometry& g, bool span, double span_mm) {
    auto& c = column();
    Rect area = column_rect(col_, c.row, g.rows);
    area.w = span_mm;
    const auto& cap = s_.caption;
    Frame f;
    f.kind = FrameKind::Image;
    f.role = "image";
    f.image = img.path.filename().string();
    bool aside = cap.placement == CaptionPlacement::AsideRotated && !g.caption.empty();
    const double gap = 2.0;
    double x = area.x;
    // aside captions sit on the outer side of the image
    if (aside && !page().recto) x = area.x + g.strip + gap;
    f.rect = {x, area.y, g.w, g.h};
    add_frame(f);
    if (!g.caption.empty()) {
      Frame cf;
      cf.kind = FrameKind::Caption;
      cf.role = "caption";
      cf.style = detail::text_style(faces_.body_slot, cap.size, cap.leading, aside ? Alignment::Centre : cap.alignment);
      detail::set_lines(cf, g.caption, 0, g.caption.size(), cap.leading, cap.size);
      if (aside) {
        double cx = page().recto ? x + g.w + gap : area.x;
        cf.rect = {cx, area.y, g.strip, g.h};
        cf.rotation = -90;
      } else {
        double top = area.y + detail::rows_for(mm_to_pt(g.h), leading_) * row_mm_;
        double h = pt_to_mm(double(g.caption.size()) * cap.leading);
        cf.rect = {area.x, top, span_mm, h};
      }
      add_frame(std::move(cf));
    }
    if (span)
      for (std::size_t k = 1; k < cols_.size(); ++k) cols_[k].blocked.push_back({c.row, c.row + g.rows});
    c.row += g.rows;
    c.fresh = false;
    after_heading_ = false;
  }

  const Manuscript& ms_;
  const DesignSettings& s_;
  const RuleSet& rules_;
  const Typefaces& faces_;
  SeededStream& stream_;
  SeededStream indent_stream_;
  std::shared_ptr<const Hyphenator> hyphenator_;
  double leading_ = 12;
  double row_mm_ = 0;
  int rows_ = 0;
  double col_w_mm_ = 0;
  double col_w_pt_ = 0;
  std::vector<Page> pages_;
  std::vector<Column> cols_;
  int col_ = 0;
  bool open_ = false;
  bool after_heading_ = true;
  std::string running_;
  std::vector<TocEntry> toc_;
};

// ---------------------------------------------------------------------------
// furniture

namespace detail {

inline Frame furniture_frame(FrameKind kind, const std::string& role, const std::string& text, const Rect& rect,
                             double rotation, Alignment a, double inset_mm, const DesignSettings& s,
                             const Typefaces& faces) {
  double size = s.caption.size;
  double leading = s.caption.leading;
  double along = rotation != 0 ? rect.h : rect.w;
  BreakStyle bs;
  bs.size = size;
  bs.alignment = a;
  bs.first_indent = mm_to_pt(inset_mm);
  auto lines = break_paragraph(styled_text(text), bs, mm_to_pt(along), *faces.body);
  if (lines.size() > 1) lines.resize(1);
  Frame f;
  f.kind = kind;
  f.layer = Layer::Furniture;
  f.role = role;
  f.rect = rect;
  f.rotation = rotation;
  f.style = text_style(faces.body_slot, size, leading, a);
  set_lines(f, lines, 0, lines.size(), leading, size);
  return f;
}

inline Alignment placement_alignment(std::string_view align, bool recto) {
  if (align == "centre") return Alignment::Centre;
  if (align == "right") return Alignment::Right;
  if (align == "outer" || align == "top-corner") return recto ? Alignment::Right : Alignment::Left;
  return Alignment::Left;
}

}  // namespace detail

/// Adds the running header and page number to every numbered body page.
inline void add_furniture(std::vector<Page>& pages, const DesignSettings& s, const RuleSet& rules,
                          const Typefaces& faces) {
  const HeaderLayout* layout = rules.header_layout(s.header_layout);
  if (!layout) throw Error(ErrorKind::Constraint, fmt::format("unknown header layout '{}'", s.header_layout),
                           "headerLayout");
  double h = pt_to_mm(s.caption.leading);
  for (auto& p : pages) {
    if (p.kind != PageKind::Body || !p.number) continue;
    const Rect& b = p.block;
    double outer_x = p.recto ? b.right() : 0.0;
    double outer_w = p.recto ? s.page_width - b.right() : b.x;
    auto band = [&](const std::string& edge) -> Rect {
      if (edge == "bottom") return {b.x, b.bottom() + (s.margins.bottom - h) / 2, b.w, h};
      if (edge == "outer") return {outer_x + (outer_w - h) / 2, b.y, h, b.h};
      return {b.x, (s.margins.top - h) / 2, b.w, h};
    };
    const auto& hp = layout->header;
    Rect hr = band(hp.edge);
    double inset = hp.align == "indented-left" ? pt_to_mm(s.body.size) : 0.0;
    auto header_text = p.running_header;
    if (!header_text.empty())
      p.frames.push_back(detail::furniture_frame(FrameKind::Header, "running-header", header_text, hr,
                                                 double(hp.rotation), detail::placement_alignment(hp.align, p.recto),
                                                 inset, s, faces));
    const auto& np = layout->page_number;
    Rect nr = band(np.edge);
    if (np.align == "top-corner") nr = {outer_x + 1, (s.margins.top - h) / 2, std::max(1.0, outer_w - 2), h};
    p.frames.push_back(detail::furniture_frame(FrameKind::PageNumber, "page-number", std::to_string(*p.number), nr,
                                               np.edge == "outer" && np.align != "top-corner" ? double(hp.rotation) : 0.0,
                                               detail::placement_alignment(np.align, p.recto), 0.0, s, faces));
  }
}

// ---------------------------------------------------------------------------
// table of contents and colophon

inline std::string contents_heading(std::string_view language) {
  auto lang = primary_language(language);
  if (lang == "pt") return "Índice";
  if (lang == "es") return "Índice";
  if (lang == "fr") return "Table des matières";
  if (lang == "de") return "Inhalt";
  return "Contents";
}

/// Contents pages listing every level-1 and level-2 heading with its page
/// number, set in the title styles. Unnumbered.
inline std::vector<Page> build_toc(const std::vector<TocEntry>& entries, const DesignSettings& s,
                                   const Typefaces& faces, std::vector<std::string>* warnings = nullptr) {
  std::vector<Page> pages;
  if (entries.empty()) {
    if (warnings) warnings->push_back("table of contents skipped: the manuscript has no level-1 or level-2 headings");
    return pages;
  }
  const double L = s.body.leading;
  const double row_mm = pt_to_mm(L);
  const int rows = int(std::floor(mm_to_pt(s.block_height()) / L + 1e-9));
  // wide enough for the longest page number at the largest entry size
  double num_w = std::min(15.0, s.block_width() / 4);
  for (const auto& e : entries) {
    const auto& ts = s.titles[std::size_t(std::clamp(e.level, 1, 2) - 1)];
    num_w = std::max(num_w, std::ceil(pt_to_mm(measure_run(std::to_string(e.page), *faces.title, ts.size)) + 0.5));
  }
  const double gap = 2.0;
  int row = 0;
  auto start_page = [&] {
    Page p;
    p.kind = PageKind::Toc;
    p.block = {s.margins.inside, s.margins.top, s.block_width(), s.block_height()};
    pages.push_back(std::move(p));
    row = 0;
  };
  start_page();
  {
    const auto& ts = s.titles[0];
    auto lines = detail::set_plain(contents_heading(s.language), *faces.title, ts.size, ts.alignment,
                                   mm_to_pt(s.block_width()));
    Frame f;
    f.role = "toc-heading";
    f.style = detail::text_style(faces.title_slot, ts.size, ts.leading, ts.alignment);
    detail::set_lines(f, lines, 0, lines.size(), ts.leading, ts.size);
    int r = std::min(rows, detail::rows_for(double(lines.size()) * ts.leading, L));
    f.rect = {pages.back().block.x, pages.back().block.y, s.block_width(), r * row_mm};
    pages.back().frames.push_back(std::move(f));
    row = std::min(rows, r + 1);
  }
  for (const auto& e : entries) {
    const auto& ts = s.titles[std::size_t(std::clamp(e.level, 1, 2) - 1)];
    auto lines = detail::set_plain(e.text, *faces.title, ts.size, Alignment::Left,
                                   mm_to_pt(s.block_width() - num_w - gap));
    int r = std::min(rows, detail::rows_for(double(lines.size()) * ts.leading, L));
    if (row + r > rows) start_page();
    const Rect& b = pages.back().block;
    Frame f;
    f.role = fmt::format("toc-entry-{}", e.level);
    f.style = detail::text_style(faces.title_slot, ts.size, ts.leading, Alignment::Left);
    detail::set_lines(f, lines, 0, lines.size(), ts.leading, ts.size);
    f.rect = {b.x, b.y + row * row_mm, s.block_width() - num_w - gap, r * row_mm};
    Frame n;
    n.role = "toc-page";
    n.style = detail::text_style(faces.title_slot, ts.size, ts.leading, Alignment::Right);
    auto nl = detail::set_plain(std::to_string(e.page), *faces.title, ts.size, Alignment::Right, mm_to_pt(num_w));
    detail::set_lines(n, nl, 0, std::min<std::size_t>(1, nl.size()), ts.leading, ts.size);
    n.rect = {b.right() - num_w, f.rect.y, num_w, std::min(f.rect.h, r * row_mm)};
    pages.back().frames.push_back(std::move(f));
    pages.back().frames.push_back(std::move(n));
    row += r;
  }
  return pages;
}

inline std::string columns_text(int n) { return n == 1 ? "1 column" : fmt::format("{} columns", n); }

/// The colophon paragraphs; the page itself is built by build_colophon.
inline std::vector<std::string> colophon_text(const DesignSettings& s, const RuleSet& rules) {
  std::vector<std::string> out;
  out.push_back("This book was designed and typeset by folio, a generative typesetting engine that draws every "
                "layout decision from a rule base of typographic conventions and a seeded random stream.");
  out.push_back(fmt::format("Page size: {} × {} mm.", format_number(s.page_width), format_number(s.page_height)));
  out.push_back(fmt::format("Margins: {} mm top, {} mm inside, {} mm bottom, {} mm outside.",
                            format_number(s.margins.top), format_number(s.margins.inside),
                            format_number(s.margins.bottom), format_number(s.margins.outside)));
  out.push_back(fmt::format("Grid: {}, gutter {} mm.", columns_text(s.grid.columns), format_number(s.grid.gutter)));
  std::string faces = s.pairing;
  if (auto p = find_pairing(rules, s.pairing)) faces = fmt::format("{} and {}", p->title.name(), p->body.name());
  out.push_back(fmt::format("Typefaces: {} (pairing {}).", faces, s.pairing));
  out.push_back(fmt::format("Body text: {} pt on {} pt, {}.", format_number(s.body.size),
                            format_number(s.body.leading), to_string(s.body.alignment)));
  out.push_back(fmt::format("Seed: {}.", s.seed));
  return out;
}

inline Page build_colophon(const DesignSettings& s, const RuleSet& rules, const Typefaces& faces) {
  Page p;
  p.kind = PageKind::Colophon;
  p.block = {s.margins.inside, s.margins.top, s.block_width(), s.block_height()};
  const double L = s.body.leading;
  const double row_mm = pt_to_mm(L);
  const int rows = int(std::floor(mm_to_pt(s.block_height()) / L + 1e-9));
  const double col_w = column_width_for(s.block_width(), s.grid.columns, s.grid.gutter);
  int row = 0;
  for (const auto& para : colophon_text(s, rules)) {
    auto lines = detail::set_plain(para, *faces.body, s.body.size, Alignment::Left, mm_to_pt(col_w));
    int n = std::min(int(lines.size()), std::max(0, rows - row));
    if (n <= 0) break;
    Frame f;
    f.role = "colophon";
    f.style = detail::text_style(faces.body_slot, s.body.size, L, Alignment::Left);
    detail::set_lines(f, lines, 0, std::size_t(n), L, s.body.size);
    f.rect = {p.block.x, p.block.y + row * row_mm, col_w, n * row_mm};
    p.frames.push_back(std::move(f));
    row += n;
  }
  return p;
}

// ---------------------------------------------------------------------------

inline std::vector<FontUse> font_uses(const Typefaces& faces) {
  auto generic = [](const FontSlot& f) { return f.classification == Classification::Serif ? "serif" : "sans-serif"; };
  return {{"body", faces.body_slot.family, faces.body_slot.weight, faces.body->family(), generic(faces.body_slot)},
          {"title", faces.title_slot.family, faces.title_slot.weight, faces.title->family(), generic(faces.title_slot)}};
}

/// Interior pages: contents (when enabled), body, colophon (when enabled).
/// The cover is added by the cover module.
inline LayoutDocument paginate(const Manuscript& ms, const DesignSettings& s, const RuleSet& rules,
                               const Typefaces& faces, SeededStream& stream) {
  LayoutDocument doc;
  doc.width = s.page_width;
  doc.height = s.page_height;
  doc.fonts = font_uses(faces);
  Paginator pg(ms, s, rules, faces, stream);
  auto body = pg.run();
  add_furniture(body, s, rules, faces);
  if (s.toc) {
    auto toc = build_toc(pg.toc(), s, faces, &doc.warnings);
    for (auto& p : toc) doc.pages.push_back(std::move(p));
  }
  for (auto& p : body) doc.pages.push_back(std::move(p));
  if (s.colophon) doc.pages.push_back(build_colophon(s, rules, faces));
  renumber(doc);
  std::size_t overflow = 0;
  for (const auto& p : doc.pages)
    for (const auto& f : p.frames)
      for (const auto& l : f.lines) overflow += l.overflow ? 1 : 0;
  if (overflow > 0)
    doc.warnings.push_back(fmt::format("{} line(s) needed an emergency break inside a word", overflow));
  return doc;
}

// ---------------------------------------------------------------------------
// post-pagination checks

struct CheckReport {
  double median_chars = 0;     // over non-final body lines
  std::size_t measured_lines = 0;
  double max_words_per_page = 0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

inline std::size_t count_line_words(const Line& l) { return utf8::split_words(l.text()).size(); }

inline double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

/// Verifies the realized document against the rule base: median characters
/// per line, spacing of justified lines, words per page, margins, content
/// overlap and page numbering.
inline CheckReport verify(const LayoutDocument& doc, const DesignSettings& s, const RuleSet& rules) {
  CheckReport r;
  std::vector<double> chars;
  std::optional<int> last_number;
  const double eps = 1e-9;
  for (const auto& p : doc.pages) {
    if (p.number) {
      if (last_number && *p.number <= *last_number)
        r.violations.push_back(fmt::format("page numbers are not increasing at page {}", *p.number));
      last_number = p.number;
    }
    double words = 0;
    std::vector<const Frame*> content;
    for (const auto& f : p.frames) {
      if (f.layer == Layer::Content && f.kind != FrameKind::Decor) {
        content.push_back(&f);
        if (!p.block.contains(f.rect, 1e-6))
          r.violations.push_back(fmt::format("page {}: {} frame crosses the margins", p.index, f.role));
      }
      if (f.role != "body") continue;
      for (const auto& l : f.lines) {
        words += double(count_line_words(l));
        if (!l.last) chars.push_back(double(l.chars()));
        if (l.justified && (!s.word_spacing.contains(l.word_spacing, eps) ||
                            !s.letter_spacing.contains(l.letter_spacing, eps)))
          r.violations.push_back(fmt::format("page {}: justified line spacing ({:.3f}, {:.3f}) outside the ranges",
                                             p.index, l.word_spacing, l.letter_spacing));
      }
    }
    for (std::size_t i = 0; i < content.size(); ++i)
      for (std::size_t j = i + 1; j < content.size(); ++j)
        if (content[i]->rect.overlaps(content[j]->rect))
          r.violations.push_back(fmt::format("page {}: {} and {} frames overlap", p.index, content[i]->role,
                                             content[j]->role));
    r.max_words_per_page = std::max(r.max_words_per_page, words);
  }
  r.measured_lines = chars.size();
  r.median_chars = median(chars);
  if (!chars.empty()) {
    double lo = s.body.alignment == Alignment::Justified ? rules.line_length.justified_min : rules.line_length.min;
    if (r.median_chars < lo || r.median_chars > rules.line_length.max)
      r.violations.push_back(fmt::format("median line length {} characters lies outside [{}, {}]",
                                         format_number(r.median_chars), format_number(lo),
                                         rules.line_length.max));
  }
  int cap = s.grid.columns == 1 ? rules.page_capacity.one_column : rules.page_capacity.multi_column;
  if (r.max_words_per_page > cap)
    r.violations.push_back(fmt::format("a page holds {} words, above the {} word limit",
                                       format_number(r.max_words_per_page), cap));
  return r;
}

}  // namespace folio
