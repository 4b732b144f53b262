#pragma once

// DesignSettings (one resolved design), Constraints (the user-pinned subset)
// and the settings file that carries them between runs.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "folio/error.hpp"
#include "folio/rules.hpp"
#include "folio/units.hpp"
#include "folio/utf8.hpp"

namespace folio {

struct Margins {
  double top = 0, inside = 0, bottom = 0, outside = 0;  // mm
  bool operator==(const Margins&) const = default;
};

struct Grid {
  int columns = 1;
  double gutter = 5;        // mm; kept even for one column so a refit can split the block
  double column_width = 0;  // mm, derived
  double baseline = 0;      // pt, equals the body leading
  bool operator==(const Grid&) const = default;
};

enum class CaptionPlacement { BelowLeft, AsideRotated };

inline std::string_view to_string(CaptionPlacement p) {
  return p == CaptionPlacement::BelowLeft ? "below-left" : "aside-rotated";
}

inline std::optional<CaptionPlacement> parse_caption_placement(std::string_view s) {
  if (s == "below-left") return CaptionPlacement::BelowLeft;
  if (s == "aside-rotated") return CaptionPlacement::AsideRotated;
  return std::nullopt;
}

struct BodyStyle {
  double size = 10;     // pt
  double leading = 12;  // pt
  Alignment alignment = Alignment::Justified;
  bool hyphenation = true;
  ParagraphMark paragraph_mark = ParagraphMark::PositiveIndent;
  double indent = 0;        // mm; negative means a hanging first line
  double space_before = 0;  // pt
  double space_after = 0;   // pt
  bool operator==(const BodyStyle&) const = default;
};

struct TitleStyle {
  double size = 24;
  double leading = 27;
  Alignment alignment = Alignment::Left;
  bool operator==(const TitleStyle&) const = default;
};

struct CaptionStyle {
  CaptionPlacement placement = CaptionPlacement::BelowLeft;
  double size = 8.5;
  double leading = 10;
  Alignment alignment = Alignment::Left;
  bool operator==(const CaptionStyle&) const = default;
};

enum class GradientMargin { Inner, Outer, Both };

inline std::string_view to_string(GradientMargin g) {
  switch (g) {
    case GradientMargin::Inner: return "inner";
    case GradientMargin::Outer: return "outer";
    case GradientMargin::Both: return "both";
  }
  return "";
}

inline std::optional<GradientMargin> parse_gradient_margin(std::string_view s) {
  if (s == "inner") return GradientMargin::Inner;
  if (s == "outer") return GradientMargin::Outer;
  if (s == "both") return GradientMargin::Both;
  return std::nullopt;
}

inline constexpr std::array<std::string_view, 4> kFeatureNames = {"halfPageBackground", "marginGradient",
                                                                   "randomIndent", "maxCoverTitle"};

struct FeatureSet {
  bool half_page_background = false;
  bool margin_gradient = false;
  bool random_indent = false;
  bool max_cover_title = false;
  std::optional<GradientMargin> gradient_margins;  // set iff margin_gradient
  std::optional<Cmyk> color;                       // set iff any feature is on

  bool any() const { return half_page_background || margin_gradient || random_indent || max_cover_title; }

  bool& flag(std::size_t i) {
    switch (i) {
      case 0: return half_page_background;
      case 1: return margin_gradient;
      case 2: return random_indent;
      default: return max_cover_title;
    }
  }
  bool flag(std::size_t i) const { return const_cast<FeatureSet*>(this)->flag(i); }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < kFeatureNames.size(); ++i)
      if (flag(i)) out.emplace_back(kFeatureNames[i]);
    return out;
  }

  bool set_by_name(std::string_view name) {
    for (std::size_t i = 0; i < kFeatureNames.size(); ++i)
      if (kFeatureNames[i] == name) return flag(i) = true;
    return false;
  }

  bool operator==(const FeatureSet&) const = default;
};

struct DesignSettings {
  std::uint64_t seed = 0;
  BookType book_type = BookType::LongReading;
  double page_width = 0;   // mm
  double page_height = 0;  // mm
  Margins margins;
  Grid grid;
  std::string pairing;
  BodyStyle body;
  std::array<TitleStyle, 3> titles{};
  CaptionStyle caption;
  std::string header_layout;
  Range word_spacing{0.8, 1.2};
  Range letter_spacing{-0.05, 0.05};
  bool toc = false;
  bool colophon = false;
  FeatureSet features;
  Cmyk cover_color;
  std::string language = "en";

  double block_width() const { return page_width - margins.inside - margins.outside; }
  double block_height() const { return page_height - margins.top - margins.bottom; }
  Orientation orientation() const { return orientation_of(page_width, page_height); }
  std::string page_id() const { return format_number(page_width) + "x" + format_number(page_height); }

  bool operator==(const DesignSettings&) const = default;
};

enum class StyleMode { Keep, Map, Generate };

inline std::string_view to_string(StyleMode m) {
  switch (m) {
    case StyleMode::Keep: return "keep";
    case StyleMode::Map: return "map";
    case StyleMode::Generate: return "generate";
  }
  return "";
}

inline std::optional<StyleMode> parse_style_mode(std::string_view s) {
  if (s == "keep") return StyleMode::Keep;
  if (s == "map") return StyleMode::Map;
  if (s == "generate") return StyleMode::Generate;
  return std::nullopt;
}

/// DesignSettings with every field optional. Unset fields are drawn by the
/// planner; set fields pass through untouched.
struct Constraints {
  std::optional<std::uint64_t> seed;
  std::optional<BookType> book_type;  // recorded only; the content decides the book type
  std::optional<double> page_width, page_height;
  std::optional<double> margin_top, margin_inside, margin_bottom, margin_outside;
  std::optional<int> columns;
  std::optional<double> gutter;
  std::optional<std::string> pairing;
  std::optional<double> body_size, body_leading;
  std::optional<Alignment> body_alignment;
  std::optional<bool> hyphenation;
  std::optional<ParagraphMark> paragraph_mark;
  std::optional<double> indent, space_before, space_after;
  std::optional<std::array<TitleStyle, 3>> titles;
  std::optional<CaptionPlacement> caption_placement;
  std::optional<double> caption_size, caption_leading;
  std::optional<Alignment> caption_alignment;
  std::optional<std::string> header_layout;
  std::optional<bool> toc, colophon;
  std::optional<FeatureSet> features;  // a fully resolved feature set
  FeatureSet requested;                // explicit feature flags when `features` is unset
  bool surprise = false;
  std::optional<Cmyk> cover_color;
  std::optional<std::string> language;
  std::optional<Range> word_spacing, letter_spacing;
  StyleMode style_mode = StyleMode::Generate;

  bool margins_pinned() const { return margin_top && margin_inside && margin_bottom && margin_outside; }
};

struct FieldError {
  std::string field;
  std::string message;
  bool operator==(const FieldError&) const = default;
};

/// Rounds to three decimals so values survive a text round trip exactly.
inline double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

inline double column_width_for(double block, int columns, double gutter) {
  return (block - (columns - 1) * gutter) / columns;
}

// ---------------------------------------------------------------------------
// export

inline nlohmann::ordered_json cmyk_json(const Cmyk& c) { return nlohmann::ordered_json::array({c.c, c.m, c.y, c.k}); }

inline nlohmann::ordered_json settings_to_json(const DesignSettings& s) {
  using oj = nlohmann::ordered_json;
  oj j;
  j["seed"] = s.seed;
  j["bookType"] = std::string(to_string(s.book_type));
  j["page"] = {{"w", s.page_width}, {"h", s.page_height}};
  j["margins"] = {{"top", s.margins.top},
                  {"inside", s.margins.inside},
                  {"bottom", s.margins.bottom},
                  {"outside", s.margins.outside}};
  j["grid"] = {{"columns", s.grid.columns},
               {"gutter", s.grid.gutter},
               {"columnWidth", round3(s.grid.column_width)},
               {"baseline", round3(s.grid.baseline)}};
  j["pairing"] = s.pairing;
  j["body"] = {{"size", s.body.size},
               {"leading", s.body.leading},
               {"alignment", std::string(to_string(s.body.alignment))},
               {"hyphenation", s.body.hyphenation},
               {"paragraphMark", std::string(to_string(s.body.paragraph_mark))},
               {"indent", s.body.indent},
               {"spaceBefore", s.body.space_before},
               {"spaceAfter", s.body.space_after}};
  oj titles = oj::array();
  for (std::size_t i = 0; i < s.titles.size(); ++i)
    titles.push_back({{"level", i + 1},
                      {"size", s.titles[i].size},
                      {"leading", s.titles[i].leading},
                      {"alignment", std::string(to_string(s.titles[i].alignment))}});
  j["titles"] = titles;
  j["caption"] = {{"placement", std::string(to_string(s.caption.placement))},
                  {"size", s.caption.size},
                  {"leading", s.caption.leading},
                  {"alignment", std::string(to_string(s.caption.alignment))}};
  j["headerLayout"] = s.header_layout;
  j["toc"] = s.toc;
  j["colophon"] = s.colophon;
  j["features"] = s.features.names();
  j["featureColor"] = s.features.color ? cmyk_json(*s.features.color) : oj(nullptr);
  j["gradientMargins"] =
      s.features.gradient_margins ? oj(std::string(to_string(*s.features.gradient_margins))) : oj(nullptr);
  j["coverColor"] = cmyk_json(s.cover_color);
  j["language"] = s.language;
  j["spacing"] = {{"word", {s.word_spacing.min, s.word_spacing.max}},
                  {"letter", {s.letter_spacing.min, s.letter_spacing.max}}};
  return j;
}

/// Stable, human-readable settings file text.
inline std::string export_settings(const DesignSettings& s) { return settings_to_json(s).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// import

namespace detail {

class SettingsReader {
 public:
  SettingsReader(const RuleSet& rules, std::vector<FieldError>& errors) : rules_(rules), errors_(errors) {}

  Constraints read(const nlohmann::json& root) {
    Constraints c;
    static const std::vector<std::string> top = {
        "seed",    "bookType", "page",     "margins",      "grid",         "pairing",         "body",
        "titles",  "caption",  "headerLayout", "toc",      "colophon",     "features",        "featureColor",
        "gradientMargins", "coverColor", "language", "spacing", "styleMode", "surprise", "requestedFeatures"};
    known(root, top, "");

    if (root.contains("seed")) {
      const auto& v = root["seed"];
      if (v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0)) {
        c.seed = v.get<std::uint64_t>();
      } else {
        type_error("seed", "a non-negative integer");
      }
    }
    if (auto s = str(root, "bookType", "bookType")) {
      if (auto t = parse_book_type(*s)) {
        c.book_type = *t;
      } else {
        fail("bookType", fmt::format("unknown book type '{}'", *s));
      }
    }
    if (root.contains("page")) {
      const auto& p = root["page"];
      known(p, {"w", "h"}, "page");
      auto w = num(p, "w", "page.w");
      auto h = num(p, "h", "page.h");
      if (w && h) {
        bool listed = false;
        for (const auto& o : rules_.size_options)
          listed = listed || (std::abs(o.width - *w) < 1e-6 && std::abs(o.height - *h) < 1e-6);
        if (!listed) {
          fail("page", fmt::format("page {} x {} mm is not one of the rule-base sizes", format_number(*w),
                                   format_number(*h)));
        } else {
          c.page_width = w;
          c.page_height = h;
        }
      } else if (w || h) {
        fail("page", "page needs both w and h");
      }
    }
    if (root.contains("margins")) {
      const auto& m = root["margins"];
      known(m, {"top", "inside", "bottom", "outside"}, "margins");
      c.margin_top = ranged(m, "top", "margins.top", rules_.top_bottom_margin, "mm");
      c.margin_inside = ranged(m, "inside", "margins.inside", rules_.inside_outside_margin, "mm");
      c.margin_bottom = ranged(m, "bottom", "margins.bottom", rules_.top_bottom_margin, "mm");
      c.margin_outside = ranged(m, "outside", "margins.outside", rules_.inside_outside_margin, "mm");
    }
    if (root.contains("grid")) {
      const auto& g = root["grid"];
      known(g, {"columns", "gutter", "columnWidth", "baseline"}, "grid");
      if (g.contains("columns")) {
        if (g["columns"].is_number_integer() && g["columns"].get<long long>() >= 1) {
          c.columns = g["columns"].get<int>();
        } else {
          fail("grid.columns", "columns must be an integer of at least 1");
        }
      }
      c.gutter = ranged(g, "gutter", "grid.gutter", rules_.gutter, "mm");
    }
    if (auto p = str(root, "pairing", "pairing")) {
      if (find_pairing(rules_, *p)) {
        c.pairing = *p;
      } else {
        fail("pairing", fmt::format("unknown pairing '{}'", *p));
      }
    }
    if (root.contains("body")) read_body(root["body"], c);
    if (root.contains("titles")) read_titles(root["titles"], c);
    if (root.contains("caption")) read_caption(root["caption"], c);
    if (auto h = str(root, "headerLayout", "headerLayout")) {
      if (rules_.header_layout(*h)) {
        c.header_layout = *h;
      } else {
        fail("headerLayout", fmt::format("unknown header layout '{}'", *h));
      }
    }
    c.toc = boolean(root, "toc", "toc");
    c.colophon = boolean(root, "colophon", "colophon");
    if (root.contains("features") || root.contains("featureColor") || root.contains("gradientMargins"))
      read_features(root, c);
    if (root.contains("coverColor")) c.cover_color = cmyk(root["coverColor"], "coverColor", false);
    if (auto l = str(root, "language", "language")) {
      if (l->empty()) {
        fail("language", "language must not be empty");
      } else {
        c.language = *l;
      }
    }
    if (root.contains("spacing")) {
      const auto& sp = root["spacing"];
      known(sp, {"word", "letter"}, "spacing");
      c.word_spacing = sub_range(sp, "word", "spacing.word", rules_.word_spacing.range);
      c.letter_spacing = sub_range(sp, "letter", "spacing.letter", rules_.letter_spacing.range);
    }
    if (auto m = str(root, "styleMode", "styleMode")) {
      if (auto mode = parse_style_mode(*m)) {
        c.style_mode = *mode;
      } else {
        fail("styleMode", fmt::format("unknown style mode '{}'", *m));
      }
    }
    if (auto s = boolean(root, "surprise", "surprise")) c.surprise = *s;
    if (root.contains("requestedFeatures")) {
      const auto& f = root["requestedFeatures"];
      if (!f.is_array()) {
        type_error("requestedFeatures", "an array of feature names");
      } else {
        for (const auto& n : f)
          if (!n.is_string() || !c.requested.set_by_name(n.get<std::string>()))
            fail("requestedFeatures", fmt::format("unknown feature {}", n.dump()));
      }
    }
    cross_checks(c);
    return c;
  }

 private:
  void fail(const std::string& field, const std::string& msg) { errors_.push_back({field, msg}); }

  void type_error(const std::string& field, const char* what) {
    fail(field, fmt::format("'{}' must be {}", field, what));
  }

  void known(const nlohmann::json& obj, const std::vector<std::string>& keys, const std::string& path) {
    if (!obj.is_object()) {
      type_error(path.empty() ? "settings" : path, "an object");
      return;
    }
    for (const auto& [k, v] : obj.items())
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
        auto field = path.empty() ? k : path + "." + k;
        fail(field, fmt::format("unknown key '{}'", field));
      }
  }

  std::optional<double> num(const nlohmann::json& obj, const char* key, const std::string& field) {
    if (!obj.is_object() || !obj.contains(key)) return std::nullopt;
    if (!obj[key].is_number()) {
      type_error(field, "a number");
      return std::nullopt;
    }
    return obj[key].get<double>();
  }

  std::optional<std::string> str(const nlohmann::json& obj, const char* key, const std::string& field) {
    if (!obj.is_object() || !obj.contains(key)) return std::nullopt;
    if (!obj[key].is_string()) {
      type_error(field, "a string");
      return std::nullopt;
    }
    return obj[key].get<std::string>();
  }

  std::optional<bool> boolean(const nlohmann::json& obj, const char* key, const std::string& field) {
    if (!obj.is_object() || !obj.contains(key)) return std::nullopt;
    if (!obj[key].is_boolean()) {
      type_error(field, "true or false");
      return std::nullopt;
    }
    return obj[key].get<bool>();
  }

  std::optional<double> ranged(const nlohmann::json& obj, const char* key, const std::string& field, const Range& r,
                               const char* unit) {
    auto v = num(obj, key, field);
    if (!v) return std::nullopt;
    if (!r.contains(*v)) {
      fail(field, fmt::format("{} = {} {} lies outside [{}, {}]", field, format_number(*v), unit,
                              format_number(r.min), format_number(r.max)));
      return std::nullopt;
    }
    return v;
  }

  std::optional<Alignment> align(const nlohmann::json& obj, const char* key, const std::string& field,
                                 std::initializer_list<Alignment> allowed) {
    auto s = str(obj, key, field);
    if (!s) return std::nullopt;
    auto a = parse_alignment(*s);
    if (!a || std::find(allowed.begin(), allowed.end(), *a) == allowed.end()) {
      fail(field, fmt::format("alignment '{}' is not allowed for {}", *s, field));
      return std::nullopt;
    }
    return a;
  }

  std::optional<Cmyk> cmyk(const nlohmann::json& v, const std::string& field, bool palette_only) {
    if (!v.is_array() || v.size() != 4 || !std::all_of(v.begin(), v.end(), [](auto& x) { return x.is_number(); })) {
      type_error(field, "an array of four numbers");
      return std::nullopt;
    }
    Cmyk c{v[0].get<double>(), v[1].get<double>(), v[2].get<double>(), v[3].get<double>()};
    for (double x : {c.c, c.m, c.y, c.k})
      if (x < 0 || x > 100) {
        fail(field, fmt::format("{} has a component outside [0, 100]", field));
        return std::nullopt;
      }
    if (palette_only) {
      bool found = std::any_of(rules_.cover_colors.begin(), rules_.cover_colors.end(),
                               [&](const auto& p) { return p.cmyk == c; });
      if (!found) {
        fail(field, fmt::format("{} is not a palette colour", field));
        return std::nullopt;
      }
    }
    return c;
  }

  std::optional<Range> sub_range(const nlohmann::json& obj, const char* key, const std::string& field,
                                 const Range& bounds) {
    if (!obj.is_object() || !obj.contains(key)) return std::nullopt;
    const auto& v = obj[key];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      type_error(field, "a [min, max] pair");
      return std::nullopt;
    }
    Range r{v[0].get<double>(), v[1].get<double>()};
    if (r.min > r.max) {
      fail(field, fmt::format("inverted range: {} has min > max", field));
      return std::nullopt;
    }
    if (!bounds.contains(r.min) || !bounds.contains(r.max)) {
      fail(field, fmt::format("{} lies outside [{}, {}]", field, format_number(bounds.min), format_number(bounds.max)));
      return std::nullopt;
    }
    return r;
  }

  void read_body(const nlohmann::json& b, Constraints& c) {
    known(b, {"size", "leading", "alignment", "hyphenation", "paragraphMark", "indent", "spaceBefore", "spaceAfter"},
          "body");
    c.body_size = ranged(b, "size", "body.size", rules_.font_size.range, "pt");
    if (auto l = num(b, "leading", "body.leading")) {
      if (*l <= 0) {
        fail("body.leading", "body.leading must be positive");
      } else {
        c.body_leading = l;
      }
    }
    c.body_alignment = align(b, "alignment", "body.alignment", {Alignment::Justified, Alignment::Left,
                                                                Alignment::Right, Alignment::Centre});
    c.hyphenation = boolean(b, "hyphenation", "body.hyphenation");
    if (auto m = str(b, "paragraphMark", "body.paragraphMark")) {
      if (auto mark = parse_paragraph_mark(*m)) {
        c.paragraph_mark = mark;
      } else {
        fail("body.paragraphMark", fmt::format("unknown paragraph mark '{}'", *m));
      }
    }
    c.indent = num(b, "indent", "body.indent");
    c.space_before = num(b, "spaceBefore", "body.spaceBefore");
    c.space_after = num(b, "spaceAfter", "body.spaceAfter");
  }

  void read_titles(const nlohmann::json& t, Constraints& c) {
    if (!t.is_array() || t.size() != 3) {
      type_error("titles", "an array of three title styles");
      return;
    }
    std::array<TitleStyle, 3> titles{};
    bool ok = true;
    for (std::size_t i = 0; i < 3; ++i) {
      auto path = fmt::format("titles[{}]", i);
      known(t[i], {"level", "size", "leading", "alignment"}, path);
      auto size = num(t[i], "size", path + ".size");
      auto leading = num(t[i], "leading", path + ".leading");
      auto a = align(t[i], "alignment", path + ".alignment", {Alignment::Left, Alignment::Centre});
      if (!size || !leading || !a || *size <= 0 || *leading <= 0) {
        if (size && leading && a) fail(path, fmt::format("{} needs positive size and leading", path));
        if (!size || !leading || !a) fail(path, fmt::format("{} needs size, leading and alignment", path));
        ok = false;
        continue;
      }
      titles[i] = {*size, *leading, *a};
    }
    if (ok) c.titles = titles;
  }

  void read_caption(const nlohmann::json& cap, Constraints& c) {
    known(cap, {"placement", "size", "leading", "alignment"}, "caption");
    if (auto p = str(cap, "placement", "caption.placement")) {
      if (auto placement = parse_caption_placement(*p)) {
        c.caption_placement = placement;
      } else {
        fail("caption.placement", fmt::format("unknown caption placement '{}'", *p));
      }
    }
    if (auto s = num(cap, "size", "caption.size")) {
      if (*s <= 0) {
        fail("caption.size", "caption.size must be positive");
      } else {
        c.caption_size = s;
      }
    }
    if (auto l = num(cap, "leading", "caption.leading")) {
      if (*l <= 0) {
        fail("caption.leading", "caption.leading must be positive");
      } else {
        c.caption_leading = l;
      }
    }
    c.caption_alignment = align(cap, "alignment", "caption.alignment", {Alignment::Left, Alignment::Right});
  }

  void read_features(const nlohmann::json& root, Constraints& c) {
    FeatureSet fs;
    bool ok = true;
    if (root.contains("features")) {
      const auto& f = root["features"];
      if (!f.is_array()) {
        type_error("features", "an array of feature names");
        ok = false;
      } else {
        for (const auto& n : f) {
          if (!n.is_string() || !fs.set_by_name(n.get<std::string>())) {
            fail("features", fmt::format("unknown feature {}", n.dump()));
            ok = false;
          }
        }
      }
    }
    if (root.contains("featureColor") && !root["featureColor"].is_null()) {
      auto col = cmyk(root["featureColor"], "featureColor", true);
      if (col) {
        fs.color = col;
      } else {
        ok = false;
      }
    }
    if (root.contains("gradientMargins") && !root["gradientMargins"].is_null()) {
      auto g = str(root, "gradientMargins", "gradientMargins");
      auto gm = g ? parse_gradient_margin(*g) : std::nullopt;
      if (!gm) {
        fail("gradientMargins", "gradientMargins must be inner, outer or both");
        ok = false;
      }
      fs.gradient_margins = gm;
    }
    if (!ok) return;
    if (fs.margin_gradient != fs.gradient_margins.has_value()) {
      fail("gradientMargins", "gradientMargins is required exactly when marginGradient is enabled");
      return;
    }
    if (fs.any() != fs.color.has_value()) {
      fail("featureColor", "featureColor is required exactly when a feature is enabled");
      return;
    }
    c.features = fs;
  }

  void cross_checks(const Constraints& c) {
    if (c.body_alignment == Alignment::Justified && c.hyphenation == false)
      fail("body.hyphenation", "justified text requires hyphenation");
    if (c.body_size && c.body_leading) {
      double ratio = *c.body_leading / *c.body_size;
      if (!rules_.leading.range.contains(ratio, 1e-6))
        fail("body.leading", fmt::format("leading ratio {} lies outside [{}, {}]", format_number(ratio),
                                         format_number(rules_.leading.range.min),
                                         format_number(rules_.leading.range.max)));
    }
    if (c.caption_placement == CaptionPlacement::AsideRotated && c.margin_outside &&
        *c.margin_outside < rules_.pagination.caption_aside_min_outer_margin)
      fail("caption.placement", fmt::format("aside captions need an outer margin of at least {} mm",
                                            format_number(rules_.pagination.caption_aside_min_outer_margin)));
    if ((c.style_mode == StyleMode::Keep || c.style_mode == StyleMode::Map) && !c.pairing)
      fail("pairing", fmt::format("style mode '{}' needs a pairing", to_string(c.style_mode)));
  }

  const RuleSet& rules_;
  std::vector<FieldError>& errors_;
};

}  // namespace detail

/// Checks settings text field by field; an empty result means it imports cleanly.
inline std::vector<FieldError> validate_settings(const nlohmann::json& root, const RuleSet& rules) {
  std::vector<FieldError> errors;
  if (!root.is_object()) {
    errors.push_back({"settings", "settings must be a JSON object"});
  } else if (root.empty()) {
    errors.push_back({"settings", "no fields"});
  } else {
    detail::SettingsReader(rules, errors).read(root);
  }
  return errors;
}

inline nlohmann::json parse_settings_json(std::string_view text) {
  if (utf8::trim(text).empty()) throw Error(ErrorKind::Parse, "no fields", "settings");
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, fmt::format("settings file is not valid JSON: {}", e.what()), "settings");
  }
}

inline Constraints constraints_from_json(const nlohmann::json& root, const RuleSet& rules) {
  std::vector<FieldError> errors;
  if (!root.is_object()) throw Error(ErrorKind::Parse, "settings must be a JSON object", "settings");
  if (root.empty()) throw Error(ErrorKind::Parse, "no fields", "settings");
  auto c = detail::SettingsReader(rules, errors).read(root);
  if (!errors.empty()) {
    std::string msg;
    for (const auto& e : errors) msg += (msg.empty() ? "" : "; ") + e.message;
    bool unknown = std::any_of(errors.begin(), errors.end(),
                               [](const auto& e) { return e.message.starts_with("unknown key"); });
    throw Error(unknown ? ErrorKind::Parse : ErrorKind::Constraint, msg, errors.front().field);
  }
  return c;
}

/// Reads a settings file into constraints that pin every field it lists.
inline Constraints import_settings(std::string_view text, const RuleSet& rules) {
  return constraints_from_json(parse_settings_json(text), rules);
}

}  // namespace folio
