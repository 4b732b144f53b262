#pragma once

// The typeset result: pages of positioned frames in millimetres, origin at
// the top-left corner of the page.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "folio/rules.hpp"
#include "folio/utf8.hpp"

namespace folio {

enum class Layer { Background = 0, Content = 1, Furniture = 2 };

inline std::string_view to_string(Layer l) {
  switch (l) {
    case Layer::Background: return "background";
    case Layer::Content: return "content";
    case Layer::Furniture: return "furniture";
  }
  return "";
}

enum class FrameKind { Text, Image, Caption, Decor, Header, PageNumber };

inline std::string_view to_string(FrameKind k) {
  switch (k) {
    case FrameKind::Text: return "text";
    case FrameKind::Image: return "image";
    case FrameKind::Caption: return "caption";
    case FrameKind::Decor: return "decor";
    case FrameKind::Header: return "header";
    case FrameKind::PageNumber: return "page-number";
  }
  return "";
}

enum class PageKind { Cover, Toc, Title, Body, Colophon, BackCover };

inline std::string_view to_string(PageKind k) {
  switch (k) {
    case PageKind::Cover: return "cover";
    case PageKind::Toc: return "toc";
    case PageKind::Title: return "title";
    case PageKind::Body: return "body";
    case PageKind::Colophon: return "colophon";
    case PageKind::BackCover: return "back-cover";
  }
  return "";
}

struct Rect {
  double x = 0, y = 0, w = 0, h = 0;

  double right() const { return x + w; }
  double bottom() const { return y + h; }
  bool contains(const Rect& r, double eps = 1e-6) const {
    return r.x >= x - eps && r.y >= y - eps && r.right() <= right() + eps && r.bottom() <= bottom() + eps;
  }
  bool overlaps(const Rect& r, double eps = 1e-6) const {
    return r.x < right() - eps && x < r.right() - eps && r.y < bottom() - eps && y < r.bottom() - eps;
  }
  bool operator==(const Rect&) const = default;
};

struct Span {
  std::string text;
  std::uint8_t emphasis = 0;  // Emphasis bits
  bool operator==(const Span&) const = default;
};

struct Line {
  std::vector<Span> spans;
  double x = 0;         // mm from the frame's left edge (rotated frames: along the long side)
  double baseline = 0;  // mm from the frame's top edge
  double width = 0;     // mm, realized
  double word_spacing = 1;
  double letter_spacing = 0;
  double word_gap = 0;  // mm added to every word space by word_spacing
  bool justified = false;
  bool hyphenated = false;
  bool overflow = false;
  bool last = false;   // final line of its paragraph
  bool loose = false;  // could not reach the measure within the spacing range

  std::string text() const {
    std::string s;
    for (const auto& sp : spans) s += sp.text;
    return s;
  }
  std::size_t chars() const { return utf8::length(text()); }
  bool operator==(const Line&) const = default;
};

struct TextStyle {
  std::string family;  // font family of the slot (title or body face)
  std::string weight = "regular";
  double size = 10;     // pt
  double leading = 12;  // pt
  Alignment alignment = Alignment::Left;
  bool uppercase = false;
  bool operator==(const TextStyle&) const = default;
};

struct Frame {
  FrameKind kind = FrameKind::Text;
  Layer layer = Layer::Content;
  Rect rect;
  std::string role;  // body, title-1, caption, toc-entry, cover-title, ...
  double rotation = 0;  // degrees; -90 reads bottom to top
  TextStyle style;
  std::vector<Line> lines;
  std::string image;  // image file name for image frames
  int paragraph = -1; // source paragraph index for body text
  std::optional<Cmyk> fill;
  std::optional<Cmyk> fill_to;  // gradient end colour
  std::string gradient;         // direction of fill -> fill_to: "left" or "right"

  bool is_text() const {
    return kind == FrameKind::Text || kind == FrameKind::Caption || kind == FrameKind::Header ||
           kind == FrameKind::PageNumber;
  }
  bool operator==(const Frame&) const = default;
};

struct Page {
  int index = 0;              // physical position, 0 = front cover
  std::optional<int> number;  // printed folio
  PageKind kind = PageKind::Body;
  bool recto = true;
  Rect block;  // text block
  std::string running_header;
  std::vector<Frame> frames;
  bool operator==(const Page&) const = default;
};

/// Binding of a style family to the metrics actually used for it.
struct FontUse {
  std::string role;
  std::string family;
  std::string weight;
  std::string stand_in;  // family of the metrics used
  std::string generic;   // "serif" or "sans-serif"
  bool operator==(const FontUse&) const = default;
};

struct LayoutDocument {
  double width = 0;   // mm
  double height = 0;  // mm
  std::vector<Page> pages;
  std::optional<Page> back_cover;
  std::vector<FontUse> fonts;
  std::vector<std::string> warnings;
  bool operator==(const LayoutDocument&) const = default;
};

}  // namespace folio
