#pragma once

// The editable rule base. Every typographic value the engine uses comes from
// a RuleSet; nothing downstream hard-codes ranges or defaults.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "folio/default_rules_data.hpp"
#include "folio/error.hpp"
#include "folio/units.hpp"

namespace folio {

using json = nlohmann::json;

enum class BookType { LongReading, ShortReading, TextAndImages, OnlyImages };

inline constexpr std::array<BookType, 4> kBookTypes = {BookType::LongReading, BookType::ShortReading,
                                                       BookType::TextAndImages, BookType::OnlyImages};

inline std::string_view to_string(BookType t) {
  switch (t) {
    case BookType::LongReading: return "long_reading";
    case BookType::ShortReading: return "short_reading";
    case BookType::TextAndImages: return "text_and_images";
    case BookType::OnlyImages: return "only_images";
  }
  return "";
}

inline std::optional<BookType> parse_book_type(std::string_view s) {
  for (auto t : kBookTypes)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

inline std::size_t index_of(BookType t) { return static_cast<std::size_t>(t); }

enum class Orientation { Portrait, Landscape, Square };

inline std::string_view to_string(Orientation o) {
  switch (o) {
    case Orientation::Portrait: return "portrait";
    case Orientation::Landscape: return "landscape";
    case Orientation::Square: return "square";
  }
  return "";
}

inline Orientation orientation_of(double width, double height) {
  if (std::abs(width - height) < 1e-9) return Orientation::Square;
  return width < height ? Orientation::Portrait : Orientation::Landscape;
}

enum class Alignment { Justified, Left, Right, Centre };

inline std::string_view to_string(Alignment a) {
  switch (a) {
    case Alignment::Justified: return "justified";
    case Alignment::Left: return "left";
    case Alignment::Right: return "right";
    case Alignment::Centre: return "centre";
  }
  return "";
}

inline std::optional<Alignment> parse_alignment(std::string_view s) {
  if (s == "justified" || s == "justify") return Alignment::Justified;
  if (s == "left") return Alignment::Left;
  if (s == "right") return Alignment::Right;
  if (s == "centre" || s == "center") return Alignment::Centre;
  return std::nullopt;
}

enum class ParagraphMark { Ornament, SpaceBefore, Pilcrow, NegativeIndent, PositiveIndent };

inline constexpr std::array<ParagraphMark, 5> kParagraphMarks = {
    ParagraphMark::Ornament, ParagraphMark::SpaceBefore, ParagraphMark::Pilcrow, ParagraphMark::NegativeIndent,
    ParagraphMark::PositiveIndent};

inline std::string_view to_string(ParagraphMark m) {
  switch (m) {
    case ParagraphMark::Ornament: return "ornament";
    case ParagraphMark::SpaceBefore: return "space-before";
    case ParagraphMark::Pilcrow: return "pilcrow";
    case ParagraphMark::NegativeIndent: return "negative-indent";
    case ParagraphMark::PositiveIndent: return "positive-indent";
  }
  return "";
}

inline std::optional<ParagraphMark> parse_paragraph_mark(std::string_view s) {
  for (auto m : kParagraphMarks)
    if (to_string(m) == s) return m;
  return std::nullopt;
}

enum class Classification { Serif, Sans };

inline std::string_view to_string(Classification c) { return c == Classification::Serif ? "serif" : "sans"; }

struct Range {
  double min = 0.0;
  double max = 0.0;

  bool contains(double v, double eps = 1e-9) const { return v >= min - eps && v <= max + eps; }
  double clamp(double v) const { return std::clamp(v, min, max); }
  double span() const { return max - min; }
  /// Maps [min, max] onto [0, 1]; a degenerate range maps to 0.
  double normalize(double v) const { return span() > 0 ? std::clamp((v - min) / span(), 0.0, 1.0) : 0.0; }
  bool operator==(const Range&) const = default;
};

struct Cmyk {
  double c = 0, m = 0, y = 0, k = 0;
  bool operator==(const Cmyk&) const = default;
};

struct PaletteColor {
  std::string name;
  Cmyk cmyk;
  bool operator==(const PaletteColor&) const = default;
};

struct SizeOption {
  double width = 0;   // mm
  double height = 0;  // mm
  Orientation orientation = Orientation::Portrait;
  std::array<double, 4> weights{};  // indexed by BookType

  std::string id() const { return format_number(width) + "x" + format_number(height); }
  bool operator==(const SizeOption&) const = default;
};

struct FontSlot {
  std::string family;
  std::string weight;
  Classification classification = Classification::Serif;
  std::string source;

  std::string name() const { return family + " " + weight; }
  bool operator==(const FontSlot&) const = default;
};

struct FontPairing {
  std::string id;
  FontSlot title;
  FontSlot body;
  double leading = 1.2;
  std::vector<BookType> book_types;

  bool supports(BookType t) const { return std::find(book_types.begin(), book_types.end(), t) != book_types.end(); }
  bool operator==(const FontPairing&) const = default;
};

struct Placement {
  std::string edge;
  std::string align;
  int rotation = 0;
  bool operator==(const Placement&) const = default;
};

struct HeaderLayout {
  std::string id;
  Placement header;
  Placement page_number;
  bool operator==(const HeaderLayout&) const = default;
};

template <class T>
struct Weighted {
  T value{};
  double weight = 0;
  bool operator==(const Weighted&) const = default;
};

struct RoleAlignments {
  std::vector<Weighted<Alignment>> body;
  std::vector<Weighted<Alignment>> title;
  std::vector<Weighted<Alignment>> caption;
  bool operator==(const RoleAlignments&) const = default;
};

struct AlignmentRules {
  double ragged_hyphenation = 0.5;  // probability of hyphenating ragged text
  std::array<RoleAlignments, 4> by_book_type;
  bool operator==(const AlignmentRules&) const = default;
};

struct LineLengthRule {
  int min = 45;
  int ideal = 66;
  int max = 75;
  int justified_min = 48;
  bool operator==(const LineLengthRule&) const = default;
};

struct PageCapacity {
  int one_column = 500;
  int multi_column = 1000;
  bool operator==(const PageCapacity&) const = default;
};

struct FontSizeRule {
  Range range{8, 12};
  double step = 0.5;
  std::array<double, 3> title_scale{2.4, 1.4, 1.0};
  double title_leading = 1.125;
  double caption_scale = 0.85;
  bool operator==(const FontSizeRule&) const = default;
};

struct SpacingRule {
  Range range;
  double ideal = 0;
  bool operator==(const SpacingRule&) const = default;
};

struct ClassificationRule {
  long long long_reading_words = 50000;
  double only_images_words_per_image = 50;
  bool operator==(const ClassificationRule&) const = default;
};

struct PaginationRule {
  int min_lines_at_break = 2;
  double image_span_probability = 0.5;
  double caption_aside_min_outer_margin = 12;  // mm
  double image_pixels_per_inch = 72;
  double random_indent_max_em = 3;
  bool operator==(const PaginationRule&) const = default;
};

struct RuleSet {
  std::vector<SizeOption> size_options;
  Range top_bottom_margin;     // mm
  Range inside_outside_margin; // mm
  Range column_width;          // mm
  Range gutter;                // mm
  LineLengthRule line_length;
  PageCapacity page_capacity;
  FontSizeRule font_size;
  SpacingRule leading;         // ratio of font size; ideal is the base value
  SpacingRule word_spacing;
  SpacingRule letter_spacing;
  AlignmentRules alignments;
  std::vector<Weighted<ParagraphMark>> paragraph_marks;
  std::vector<HeaderLayout> header_layouts;
  std::vector<FontPairing> pairings;
  std::vector<PaletteColor> cover_colors;
  double feature_probability = 0.25;
  ClassificationRule classification;
  PaginationRule pagination;

  const RoleAlignments& alignments_for(BookType t) const { return alignments.by_book_type[index_of(t)]; }

  const HeaderLayout* header_layout(std::string_view id) const {
    for (const auto& h : header_layouts)
      if (h.id == id) return &h;
    return nullptr;
  }

  bool operator==(const RuleSet&) const = default;
};

/// Lower-case ASCII slug, used for pairing and font ids.
inline std::string slugify(std::string_view s) {
  std::string out;
  bool dash = false;
  for (unsigned char c : s) {
    if (std::isalnum(c) && c < 0x80) {
      if (dash && !out.empty()) out.push_back('-');
      out.push_back(static_cast<char>(std::tolower(c)));
      dash = false;
    } else {
      dash = true;
    }
  }
  return out;
}

namespace detail {

inline Error schema_error(const std::string& msg, const std::string& path) {
  return Error(ErrorKind::Parse, msg, path);
}

inline const json& require(const json& obj, const char* key, const std::string& path) {
  std::string full = path.empty() ? key : path + "." + key;
  if (!obj.is_object()) throw schema_error(fmt::format("'{}' must be an object", path), path);
  auto it = obj.find(key);
  if (it == obj.end()) throw schema_error(fmt::format("missing key '{}'", full), full);
  return *it;
}

inline double number(const json& obj, const char* key, const std::string& path) {
  const auto& v = require(obj, key, path);
  if (!v.is_number()) {
    std::string full = path.empty() ? key : path + "." + key;
    throw schema_error(fmt::format("'{}' must be a number", full), full);
  }
  return v.get<double>();
}

inline std::string text(const json& obj, const char* key, const std::string& path) {
  const auto& v = require(obj, key, path);
  if (!v.is_string()) {
    std::string full = path.empty() ? key : path + "." + key;
    throw schema_error(fmt::format("'{}' must be a string", full), full);
  }
  return v.get<std::string>();
}

inline Range range(const json& obj, const std::string& path) {
  return Range{number(obj, "min", path), number(obj, "max", path)};
}

inline void check_range(const Range& r, const std::string& path) {
  if (r.min > r.max)
    throw Error(ErrorKind::Validation,
                fmt::format("inverted range: '{}' has min {} > max {}", path, format_number(r.min),
                            format_number(r.max)),
                path);
}

inline void check_ideal(const Range& r, double ideal, const std::string& path) {
  if (!r.contains(ideal))
    throw Error(ErrorKind::Validation,
                fmt::format("'{}' ideal {} lies outside [{}, {}]", path, format_number(ideal), format_number(r.min),
                            format_number(r.max)),
                path);
}

inline BookType book_type(const std::string& s, const std::string& path) {
  auto t = parse_book_type(s);
  if (!t) throw Error(ErrorKind::Validation, fmt::format("unknown book type '{}' at '{}'", s, path), path);
  return *t;
}

inline Alignment alignment(const std::string& s, const std::string& path) {
  auto a = parse_alignment(s);
  if (!a) throw Error(ErrorKind::Validation, fmt::format("unknown alignment '{}' at '{}'", s, path), path);
  return *a;
}

inline std::vector<Weighted<Alignment>> weighted_alignments(const json& obj, const std::string& path) {
  if (!obj.is_object() || obj.empty())
    throw schema_error(fmt::format("'{}' must be a non-empty object", path), path);
  std::vector<Weighted<Alignment>> out;
  for (const auto& [k, v] : obj.items()) {
    if (!v.is_number()) throw schema_error(fmt::format("'{}.{}' must be a number", path, k), path + "." + k);
    out.push_back({alignment(k, path), v.get<double>()});
  }
  return out;
}

inline json to_json(const std::vector<Weighted<Alignment>>& v) {
  json j = json::object();
  for (const auto& w : v) j[std::string(to_string(w.value))] = w.weight;
  return j;
}

inline FontSlot font_slot(const json& j, const std::string& path) {
  FontSlot s;
  s.family = text(j, "family", path);
  s.weight = text(j, "weight", path);
  auto cls = text(j, "classification", path);
  if (cls == "serif") {
    s.classification = Classification::Serif;
  } else if (cls == "sans") {
    s.classification = Classification::Sans;
  } else {
    throw Error(ErrorKind::Validation, fmt::format("unknown classification '{}'", cls), path + ".classification");
  }
  if (j.contains("source")) s.source = text(j, "source", path);
  return s;
}

inline json to_json(const FontSlot& s) {
  return json{{"family", s.family},
              {"weight", s.weight},
              {"classification", std::string(to_string(s.classification))},
              {"source", s.source}};
}

inline Placement placement(const json& j, const std::string& path) {
  Placement p;
  p.edge = text(j, "edge", path);
  p.align = text(j, "align", path);
  if (j.contains("rotation")) p.rotation = static_cast<int>(number(j, "rotation", path));
  return p;
}

inline void validate(const RuleSet& r) {
  check_range(r.top_bottom_margin, "margins.topBottom");
  check_range(r.inside_outside_margin, "margins.insideOutside");
  check_range(r.column_width, "columns.width");
  check_range(r.gutter, "columns.gutter");
  check_range(r.font_size.range, "fontSize");
  check_range(r.leading.range, "leading");
  check_range(r.word_spacing.range, "wordSpacing");
  check_range(r.letter_spacing.range, "letterSpacing");
  check_ideal(r.leading.range, r.leading.ideal, "leading");
  check_ideal(r.word_spacing.range, r.word_spacing.ideal, "wordSpacing");
  check_ideal(r.letter_spacing.range, r.letter_spacing.ideal, "letterSpacing");
  const auto& ll = r.line_length;
  if (ll.min > ll.max)
    throw Error(ErrorKind::Validation,
                fmt::format("inverted range: 'lineLength' has min {} > max {}", ll.min, ll.max), "lineLength");
  if (ll.ideal < ll.min || ll.ideal > ll.max)
    throw Error(ErrorKind::Validation, "'lineLength' ideal lies outside [min, max]", "lineLength.ideal");
  if (ll.justified_min < ll.min || ll.justified_min > ll.max)
    throw Error(ErrorKind::Validation, "'lineLength' justifiedMin lies outside [min, max]", "lineLength.justifiedMin");
  if (r.font_size.range.min <= 0 || r.font_size.step <= 0)
    throw Error(ErrorKind::Validation, "font sizes and step must be positive", "fontSize");
  if (r.page_capacity.one_column <= 0 || r.page_capacity.multi_column <= 0)
    throw Error(ErrorKind::Validation, "page capacities must be positive", "pageCapacity");

  if (r.size_options.empty()) throw Error(ErrorKind::Validation, "no size options", "sizes");
  for (std::size_t i = 0; i < r.size_options.size(); ++i) {
    const auto& s = r.size_options[i];
    auto path = fmt::format("sizes[{}]", i);
    if (s.width <= 0 || s.height <= 0)
      throw Error(ErrorKind::Validation, fmt::format("'{}' has non-positive dimensions", path), path);
    if (orientation_of(s.width, s.height) != s.orientation)
      throw Error(ErrorKind::Validation,
                  fmt::format("'{}' orientation '{}' does not match {} x {} mm", path, to_string(s.orientation),
                              format_number(s.width), format_number(s.height)),
                  path + ".orientation");
    for (double w : s.weights)
      if (w < 0) throw Error(ErrorKind::Validation, fmt::format("'{}' has a negative weight", path), path + ".weights");
  }
  for (auto t : kBookTypes) {
    double total = 0;
    for (const auto& s : r.size_options) total += s.weights[index_of(t)];
    if (total <= 0)
      throw Error(ErrorKind::Validation,
                  fmt::format("size weights for book type '{}' do not sum to a positive number", to_string(t)),
                  "sizes");
  }

  if (r.header_layouts.empty()) throw Error(ErrorKind::Validation, "no header layouts", "headerLayouts");
  if (r.paragraph_marks.empty()) throw Error(ErrorKind::Validation, "no paragraph marks", "paragraphMarks");

  for (std::size_t i = 0; i < r.pairings.size(); ++i) {
    const auto& p = r.pairings[i];
    auto path = fmt::format("pairings[{}]", i);
    if (p.book_types.empty())
      throw Error(ErrorKind::Validation, fmt::format("pairing '{}' lists no book type", p.id), path + ".bookTypes");
    if (!r.leading.range.contains(p.leading))
      throw Error(ErrorKind::Validation,
                  fmt::format("pairing '{}' leading {} lies outside the leading range", p.id,
                              format_number(p.leading)),
                  path + ".leading");
    if (p.supports(BookType::LongReading) && p.body.classification != Classification::Serif)
      throw Error(ErrorKind::Validation,
                  fmt::format("pairing '{}' is eligible for long reading but its body face is not serif", p.id),
                  path + ".body.classification");
  }
  for (auto t : kBookTypes) {
    bool any = std::any_of(r.pairings.begin(), r.pairings.end(), [t](const auto& p) { return p.supports(t); });
    if (!any)
      throw Error(ErrorKind::Validation, fmt::format("empty pairing list for book type '{}'", to_string(t)),
                  "pairings");
  }

  if (r.cover_colors.empty()) throw Error(ErrorKind::Validation, "no cover colours", "coverColors");
  for (std::size_t i = 0; i < r.cover_colors.size(); ++i) {
    const auto& c = r.cover_colors[i].cmyk;
    for (double v : {c.c, c.m, c.y, c.k})
      if (v < 0 || v > 100)
        throw Error(ErrorKind::Validation, fmt::format("coverColors[{}] has a component outside [0, 100]", i),
                    fmt::format("coverColors[{}]", i));
  }
  if (r.feature_probability < 0 || r.feature_probability > 1)
    throw Error(ErrorKind::Validation, "featureProbability must lie in [0, 1]", "featureProbability");
  if (r.pagination.min_lines_at_break < 1)
    throw Error(ErrorKind::Validation, "minLinesAtBreak must be at least 1", "pagination.minLinesAtBreak");
}

}  // namespace detail

/// Parses and validates rule-file text.
inline RuleSet load_rules(std::string_view source) {
  using namespace detail;
  json root;
  try {
    root = json::parse(source);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, fmt::format("rule file is not valid JSON: {}", e.what()));
  }
  if (!root.is_object()) throw schema_error("rule file must be a JSON object", "");

  // Touch every required top-level key first so a missing one is reported by name.
  for (const char* key : {"sizes", "margins", "columns", "lineLength", "pageCapacity", "fontSize", "leading",
                          "wordSpacing", "letterSpacing", "alignments", "paragraphMarks", "headerLayouts",
                          "pairings", "coverColors", "featureProbability", "classification", "pagination"})
    require(root, key, "");

  RuleSet r;
  const auto& sizes = root["sizes"];
  if (!sizes.is_array()) throw schema_error("'sizes' must be an array", "sizes");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    auto path = fmt::format("sizes[{}]", i);
    const auto& s = sizes[i];
    SizeOption o;
    o.width = number(s, "width", path);
    o.height = number(s, "height", path);
    auto orient = text(s, "orientation", path);
    if (orient == "portrait") {
      o.orientation = Orientation::Portrait;
    } else if (orient == "landscape") {
      o.orientation = Orientation::Landscape;
    } else if (orient == "square") {
      o.orientation = Orientation::Square;
    } else {
      throw Error(ErrorKind::Validation, fmt::format("unknown orientation '{}'", orient), path + ".orientation");
    }
    const auto& w = require(s, "weights", path);
    if (!w.is_object()) throw schema_error("'weights' must be an object", path + ".weights");
    for (const auto& [k, v] : w.items()) {
      auto t = book_type(k, path + ".weights");
      if (!v.is_number()) throw schema_error("weight must be a number", path + ".weights." + k);
      o.weights[index_of(t)] = v.get<double>();
    }
    r.size_options.push_back(o);
  }

  const auto& margins = root["margins"];
  r.top_bottom_margin = range(require(margins, "topBottom", "margins"), "margins.topBottom");
  r.inside_outside_margin = range(require(margins, "insideOutside", "margins"), "margins.insideOutside");
  const auto& columns = root["columns"];
  r.column_width = range(require(columns, "width", "columns"), "columns.width");
  r.gutter = range(require(columns, "gutter", "columns"), "columns.gutter");

  const auto& ll = root["lineLength"];
  r.line_length.min = static_cast<int>(number(ll, "min", "lineLength"));
  r.line_length.ideal = static_cast<int>(number(ll, "ideal", "lineLength"));
  r.line_length.max = static_cast<int>(number(ll, "max", "lineLength"));
  r.line_length.justified_min = static_cast<int>(number(ll, "justifiedMin", "lineLength"));

  const auto& cap = root["pageCapacity"];
  r.page_capacity.one_column = static_cast<int>(number(cap, "oneColumn", "pageCapacity"));
  r.page_capacity.multi_column = static_cast<int>(number(cap, "multiColumn", "pageCapacity"));

  const auto& fs = root["fontSize"];
  r.font_size.range = range(fs, "fontSize");
  r.font_size.step = number(fs, "step", "fontSize");
  const auto& scale = require(fs, "titleScale", "fontSize");
  if (!scale.is_array() || scale.size() != 3)
    throw schema_error("'fontSize.titleScale' must list three numbers", "fontSize.titleScale");
  for (std::size_t i = 0; i < 3; ++i) r.font_size.title_scale[i] = scale[i].get<double>();
  r.font_size.title_leading = number(fs, "titleLeading", "fontSize");
  r.font_size.caption_scale = number(fs, "captionScale", "fontSize");

  auto spacing = [&](const char* key, const char* ideal_key) {
    const auto& j = root[key];
    return SpacingRule{range(j, key), number(j, ideal_key, key)};
  };
  r.leading = spacing("leading", "base");
  r.word_spacing = spacing("wordSpacing", "ideal");
  r.letter_spacing = spacing("letterSpacing", "ideal");

  const auto& al = root["alignments"];
  r.alignments.ragged_hyphenation = number(al, "raggedHyphenation", "alignments");
  const auto& by = require(al, "byBookType", "alignments");
  if (!by.is_object()) throw schema_error("'alignments.byBookType' must be an object", "alignments.byBookType");
  std::array<bool, 4> seen{};
  for (const auto& [k, v] : by.items()) {
    auto path = "alignments.byBookType." + k;
    auto t = book_type(k, path);
    auto& roles = r.alignments.by_book_type[index_of(t)];
    roles.body = weighted_alignments(require(v, "body", path), path + ".body");
    roles.title = weighted_alignments(require(v, "title", path), path + ".title");
    roles.caption = weighted_alignments(require(v, "caption", path), path + ".caption");
    seen[index_of(t)] = true;
  }
  for (auto t : kBookTypes)
    if (!seen[index_of(t)])
      throw schema_error(fmt::format("missing key 'alignments.byBookType.{}'", to_string(t)),
                         "alignments.byBookType");

  const auto& marks = root["paragraphMarks"];
  if (!marks.is_array()) throw schema_error("'paragraphMarks' must be an array", "paragraphMarks");
  for (std::size_t i = 0; i < marks.size(); ++i) {
    auto path = fmt::format("paragraphMarks[{}]", i);
    auto id = text(marks[i], "id", path);
    auto m = parse_paragraph_mark(id);
    if (!m) throw Error(ErrorKind::Validation, fmt::format("unknown paragraph mark '{}'", id), path);
    r.paragraph_marks.push_back({*m, number(marks[i], "weight", path)});
  }

  const auto& headers = root["headerLayouts"];
  if (!headers.is_array()) throw schema_error("'headerLayouts' must be an array", "headerLayouts");
  for (std::size_t i = 0; i < headers.size(); ++i) {
    auto path = fmt::format("headerLayouts[{}]", i);
    HeaderLayout h;
    h.id = text(headers[i], "id", path);
    h.header = placement(require(headers[i], "header", path), path + ".header");
    h.page_number = placement(require(headers[i], "pageNumber", path), path + ".pageNumber");
    r.header_layouts.push_back(h);
  }

  const auto& pairings = root["pairings"];
  if (!pairings.is_array()) throw schema_error("'pairings' must be an array", "pairings");
  for (std::size_t i = 0; i < pairings.size(); ++i) {
    auto path = fmt::format("pairings[{}]", i);
    const auto& j = pairings[i];
    FontPairing p;
    p.id = text(j, "id", path);
    p.title = font_slot(require(j, "title", path), path + ".title");
    p.body = font_slot(require(j, "body", path), path + ".body");
    p.leading = number(j, "leading", path);
    const auto& types = require(j, "bookTypes", path);
    if (!types.is_array()) throw schema_error("'bookTypes' must be an array", path + ".bookTypes");
    for (const auto& t : types) p.book_types.push_back(book_type(t.get<std::string>(), path + ".bookTypes"));
    r.pairings.push_back(p);
  }

  const auto& colors = root["coverColors"];
  if (!colors.is_array()) throw schema_error("'coverColors' must be an array", "coverColors");
  for (std::size_t i = 0; i < colors.size(); ++i) {
    auto path = fmt::format("coverColors[{}]", i);
    PaletteColor pc;
    pc.name = text(colors[i], "name", path);
    const auto& c = require(colors[i], "cmyk", path);
    if (!c.is_array() || c.size() != 4)
      throw Error(ErrorKind::Validation, fmt::format("'{}.cmyk' must have 4 components", path), path + ".cmyk");
    pc.cmyk = Cmyk{c[0].get<double>(), c[1].get<double>(), c[2].get<double>(), c[3].get<double>()};
    r.cover_colors.push_back(pc);
  }

  if (!root["featureProbability"].is_number())
    throw schema_error("'featureProbability' must be a number", "featureProbability");
  r.feature_probability = root["featureProbability"].get<double>();

  const auto& cls = root["classification"];
  r.classification.long_reading_words = static_cast<long long>(number(cls, "longReadingWords", "classification"));
  r.classification.only_images_words_per_image = number(cls, "onlyImagesWordsPerImage", "classification");

  const auto& pg = root["pagination"];
  r.pagination.min_lines_at_break = static_cast<int>(number(pg, "minLinesAtBreak", "pagination"));
  r.pagination.image_span_probability = number(pg, "imageSpanProbability", "pagination");
  r.pagination.caption_aside_min_outer_margin = number(pg, "captionAsideMinOuterMargin", "pagination");
  r.pagination.image_pixels_per_inch = number(pg, "imagePixelsPerInch", "pagination");
  r.pagination.random_indent_max_em = number(pg, "randomIndentMaxEm", "pagination");

  validate(r);
  return r;
}

inline json rules_to_json(const RuleSet& r) {
  using detail::to_json;
  json root = json::object();
  json sizes = json::array();
  for (const auto& s : r.size_options) {
    json w = json::object();
    for (auto t : kBookTypes) w[std::string(to_string(t))] = s.weights[index_of(t)];
    sizes.push_back({{"width", s.width},
                     {"height", s.height},
                     {"orientation", std::string(to_string(s.orientation))},
                     {"weights", w}});
  }
  root["sizes"] = sizes;
  auto range = [](const Range& x) { return json{{"min", x.min}, {"max", x.max}}; };
  root["margins"] = {{"topBottom", range(r.top_bottom_margin)}, {"insideOutside", range(r.inside_outside_margin)}};
  root["columns"] = {{"width", range(r.column_width)}, {"gutter", range(r.gutter)}};
  root["lineLength"] = {{"min", r.line_length.min},
                        {"ideal", r.line_length.ideal},
                        {"max", r.line_length.max},
                        {"justifiedMin", r.line_length.justified_min}};
  root["pageCapacity"] = {{"oneColumn", r.page_capacity.one_column}, {"multiColumn", r.page_capacity.multi_column}};
  root["fontSize"] = {{"min", r.font_size.range.min},
                      {"max", r.font_size.range.max},
                      {"step", r.font_size.step},
                      {"titleScale", r.font_size.title_scale},
                      {"titleLeading", r.font_size.title_leading},
                      {"captionScale", r.font_size.caption_scale}};
  root["leading"] = {{"min", r.leading.range.min}, {"max", r.leading.range.max}, {"base", r.leading.ideal}};
  root["wordSpacing"] = {
      {"min", r.word_spacing.range.min}, {"max", r.word_spacing.range.max}, {"ideal", r.word_spacing.ideal}};
  root["letterSpacing"] = {
      {"min", r.letter_spacing.range.min}, {"max", r.letter_spacing.range.max}, {"ideal", r.letter_spacing.ideal}};
  json by = json::object();
  for (auto t : kBookTypes) {
    const auto& a = r.alignments_for(t);
    by[std::string(to_string(t))] = {{"body", to_json(a.body)}, {"title", to_json(a.title)}, {"caption", to_json(a.caption)}};
  }
  root["alignments"] = {{"raggedHyphenation", r.alignments.ragged_hyphenation}, {"byBookType", by}};
  json marks = json::array();
  for (const auto& m : r.paragraph_marks) marks.push_back({{"id", std::string(to_string(m.value))}, {"weight", m.weight}});
  root["paragraphMarks"] = marks;
  json headers = json::array();
  auto place = [](const Placement& p) { return json{{"edge", p.edge}, {"align", p.align}, {"rotation", p.rotation}}; };
  for (const auto& h : r.header_layouts)
    headers.push_back({{"id", h.id}, {"header", place(h.header)}, {"pageNumber", place(h.page_number)}});
  root["headerLayouts"] = headers;
  json pairings = json::array();
  for (const auto& p : r.pairings) {
    json types = json::array();
    for (auto t : p.book_types) types.push_back(std::string(to_string(t)));
    pairings.push_back(
        {{"id", p.id}, {"title", to_json(p.title)}, {"body", to_json(p.body)}, {"leading", p.leading}, {"bookTypes", types}});
  }
  root["pairings"] = pairings;
  json colors = json::array();
  for (const auto& c : r.cover_colors)
    colors.push_back({{"name", c.name}, {"cmyk", {c.cmyk.c, c.cmyk.m, c.cmyk.y, c.cmyk.k}}});
  root["coverColors"] = colors;
  root["featureProbability"] = r.feature_probability;
  root["classification"] = {{"longReadingWords", r.classification.long_reading_words},
                            {"onlyImagesWordsPerImage", r.classification.only_images_words_per_image}};
  root["pagination"] = {{"minLinesAtBreak", r.pagination.min_lines_at_break},
                        {"imageSpanProbability", r.pagination.image_span_probability},
                        {"captionAsideMinOuterMargin", r.pagination.caption_aside_min_outer_margin},
                        {"imagePixelsPerInch", r.pagination.image_pixels_per_inch},
                        {"randomIndentMaxEm", r.pagination.random_indent_max_em}};
  return root;
}

inline std::string serialize_rules(const RuleSet& r) { return rules_to_json(r).dump(2) + "\n"; }

/// The bundled rule base.
inline const RuleSet& default_rules() {
  static const RuleSet rules = load_rules(kDefaultRulesJson);
  return rules;
}

/// Pairings applicable to `book_type`, in rule-file order.
inline std::vector<FontPairing> eligible_pairings(const RuleSet& rules, BookType book_type) {
  std::vector<FontPairing> out;
  for (const auto& p : rules.pairings)
    if (p.supports(book_type)) out.push_back(p);
  if (out.empty())
    throw Error(ErrorKind::Validation, fmt::format("no pairing matches book type '{}'", to_string(book_type)),
                "pairings");
  return out;
}

/// Resolves a pairing id. Besides the ids listed in the rule file, a composite
/// id "<title-slot>/<body-slot>" combining any title face and any body face of
/// the rule base is accepted (the "map styles" mode); its leading is the base
/// leading and its book types are those of the rows sharing its body face.
inline std::optional<FontPairing> find_pairing(const RuleSet& rules, std::string_view id) {
  for (const auto& p : rules.pairings)
    if (p.id == id) return p;
  auto slash = id.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  auto title_id = id.substr(0, slash);
  auto body_id = id.substr(slash + 1);
  const FontSlot* title = nullptr;
  const FontSlot* body = nullptr;
  FontPairing out;
  for (const auto& p : rules.pairings) {
    if (!title && slugify(p.title.name()) == title_id) title = &p.title;
    if (slugify(p.body.name()) == body_id) {
      body = &p.body;
      for (auto t : p.book_types)
        if (!out.supports(t)) out.book_types.push_back(t);
    }
  }
  if (!title || !body) return std::nullopt;
  out.id = std::string(id);
  out.title = *title;
  out.body = *body;
  out.leading = rules.leading.ideal;
  std::sort(out.book_types.begin(), out.book_types.end());
  return out;
}

}  // namespace folio
