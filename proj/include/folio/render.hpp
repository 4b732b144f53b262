#pragma once

// Output formats: one standalone SVG per page, and the canonical layout file
// (sorted keys, every real number printed with three decimals) that is the
// byte-comparison artifact for determinism.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "folio/error.hpp"
#include "folio/layout.hpp"
#include "folio/manuscript.hpp"
#include "folio/units.hpp"

namespace folio {

/// Three decimals, with negative zero printed as zero.
inline std::string fixed3(double v) {
  auto s = fmt::format("{:.3f}", v);
  if (s == "-0.000") s = "0.000";
  return s;
}

/// Naive process-to-screen conversion: r = 255 (1 - c)(1 - k), likewise for
/// m and y, with components given in percent.
inline std::string cmyk_to_hex(const Cmyk& c) {
  auto ch = [&](double x) {
    double v = 255.0 * (1 - x / 100) * (1 - c.k / 100);
    return int(std::lround(std::clamp(v, 0.0, 255.0)));
  };
  return fmt::format("#{:02x}{:02x}{:02x}", ch(c.c), ch(c.m), ch(c.y));
}

inline std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

namespace detail {

inline std::string font_family(const TextStyle& st, const std::vector<FontUse>& fonts) {
  std::string stand_in, generic = "serif";
  for (const auto& f : fonts)
    if (f.family == st.family) {
      stand_in = f.stand_in;
      if (!f.generic.empty()) generic = f.generic;
      break;
    }
  std::string out = fmt::format("'{}'", xml_escape(st.family));
  if (!stand_in.empty() && stand_in != st.family) out += fmt::format(", '{}'", xml_escape(stand_in));
  return out + ", " + generic;
}

inline void svg_text_frame(std::string& out, const Frame& f, const std::vector<FontUse>& fonts) {
  double size_mm = pt_to_mm(f.style.size);
  std::string transform;
  double ox = f.rect.x, oy = f.rect.y;
  if (f.rotation <= -89.0) {
    transform = fmt::format(" transform=\"translate({} {}) rotate(-90)\"", fixed3(f.rect.x), fixed3(f.rect.bottom()));
    ox = oy = 0;
  } else if (f.rotation >= 89.0) {
    transform = fmt::format(" transform=\"translate({} {}) rotate(90)\"", fixed3(f.rect.right()), fixed3(f.rect.y));
    ox = oy = 0;
  }
  out += fmt::format("<g class=\"{}\" font-family=\"{}\" font-size=\"{}\"{}{}>\n", xml_escape(f.role),
                     font_family(f.style, fonts), fixed3(size_mm),
                     f.style.weight == "bold" ? " font-weight=\"bold\"" : "", transform);
  for (const auto& l : f.lines) {
    out += fmt::format("<text x=\"{}\" y=\"{}\"", fixed3(ox + l.x), fixed3(oy + l.baseline));
    if (std::abs(l.letter_spacing) > 1e-9) out += fmt::format(" letter-spacing=\"{}\"", fixed3(l.letter_spacing * size_mm));
    if (std::abs(l.word_gap) > 1e-9) out += fmt::format(" word-spacing=\"{}\"", fixed3(l.word_gap));
    out += ">";
    for (const auto& sp : l.spans) {
      std::string attrs;
      if (sp.emphasis & kItalic) attrs += " font-style=\"italic\"";
      if (sp.emphasis & kBold) attrs += " font-weight=\"bold\"";
      if (sp.emphasis & kSmallCaps) attrs += " font-variant=\"small-caps\"";
      if (attrs.empty()) {
        out += xml_escape(sp.text);
      } else {
        out += fmt::format("<tspan{}>{}</tspan>", attrs, xml_escape(sp.text));
      }
    }
    out += "</text>\n";
  }
  out += "</g>\n";
}

}  // namespace detail

/// One standalone SVG 1.1 document for `page`. Lengths are millimetres.
inline std::string render_page_svg(const Page& page, const LayoutDocument& doc,
                                   std::string_view image_prefix = "../images/") {
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\" version=\"1.1\" "
      "width=\"{}mm\" height=\"{}mm\" viewBox=\"0 0 {} {}\" xml:space=\"preserve\">\n",
      format_number(doc.width), format_number(doc.height), fixed3(doc.width), fixed3(doc.height));
  std::string defs;
  int gradients = 0;
  std::array<std::string, 3> layers;
  for (const auto& f : page.frames) {
    auto& o = layers[std::size_t(f.layer)];
    if (f.kind == FrameKind::Decor) {
      std::string fill = f.fill ? cmyk_to_hex(*f.fill) : "none";
      if (f.fill && f.fill_to && !f.gradient.empty()) {
        auto id = fmt::format("gradient-{}", gradients++);
        bool rightward = f.gradient == "right";
        defs += fmt::format(
            "<linearGradient id=\"{}\" x1=\"{}\" y1=\"0\" x2=\"{}\" y2=\"0\">"
            "<stop offset=\"0\" stop-color=\"{}\"/><stop offset=\"1\" stop-color=\"{}\"/></linearGradient>\n",
            id, rightward ? 0 : 1, rightward ? 1 : 0, cmyk_to_hex(*f.fill), cmyk_to_hex(*f.fill_to));
        fill = fmt::format("url(#{})", id);
      }
      o += fmt::format("<rect class=\"{}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n",
                       xml_escape(f.role), fixed3(f.rect.x), fixed3(f.rect.y), fixed3(f.rect.w), fixed3(f.rect.h),
                       fill);
    } else if (f.kind == FrameKind::Image) {
      o += fmt::format(
          "<image x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" preserveAspectRatio=\"none\" xlink:href=\"{}{}\"/>\n",
          fixed3(f.rect.x), fixed3(f.rect.y), fixed3(f.rect.w), fixed3(f.rect.h), xml_escape(image_prefix),
          xml_escape(f.image));
    } else {
      detail::svg_text_frame(o, f, doc.fonts);
    }
  }
  if (!defs.empty()) out += "<defs>\n" + defs + "</defs>\n";
  out += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#ffffff\"/>\n", fixed3(doc.width),
                     fixed3(doc.height));
  static constexpr const char* kNames[] = {"background", "content", "furniture"};
  for (std::size_t i = 0; i < layers.size(); ++i)
    out += fmt::format("<g id=\"{}\">\n{}</g>\n", kNames[i], layers[i]);
  out += "</svg>\n";
  return out;
}

/// SVG documents for every interior page, in order.
inline std::vector<std::string> render_svg(const LayoutDocument& doc) {
  std::vector<std::string> out;
  out.reserve(doc.pages.size());
  for (const auto& p : doc.pages) out.push_back(render_page_svg(p, doc));
  return out;
}

inline std::string page_file_name(std::size_t one_based) { return fmt::format("page-{:04d}.svg", one_based); }

// ---------------------------------------------------------------------------
// layout file

namespace detail {

using nlohmann::json;

inline json cmyk_json(const std::optional<Cmyk>& c) {
  if (!c) return nullptr;
  return json::array({c->c, c->m, c->y, c->k});
}

inline json rect_json(const Rect& r) { return {{"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}}; }

inline json page_json(const Page& p) {
  json frames = json::array();
  for (const auto& f : p.frames) {
    json lines = json::array();
    for (const auto& l : f.lines) {
      json spans = json::array();
      for (const auto& s : l.spans) spans.push_back({{"text", s.text}, {"emphasis", int(s.emphasis)}});
      lines.push_back({{"spans", spans},
                       {"x", l.x},
                       {"baseline", l.baseline},
                       {"width", l.width},
                       {"wordSpacing", l.word_spacing},
                       {"letterSpacing", l.letter_spacing},
                       {"wordGap", l.word_gap},
                       {"justified", l.justified},
                       {"hyphenated", l.hyphenated},
                       {"overflow", l.overflow},
                       {"last", l.last},
                       {"loose", l.loose}});
    }
    frames.push_back({{"kind", std::string(to_string(f.kind))},
                      {"layer", std::string(to_string(f.layer))},
                      {"rect", rect_json(f.rect)},
                      {"role", f.role},
                      {"rotation", f.rotation},
                      {"style",
                       {{"family", f.style.family},
                        {"weight", f.style.weight},
                        {"size", f.style.size},
                        {"leading", f.style.leading},
                        {"alignment", std::string(to_string(f.style.alignment))},
                        {"uppercase", f.style.uppercase}}},
                      {"lines", lines},
                      {"image", f.image},
                      {"paragraph", f.paragraph},
                      {"fill", cmyk_json(f.fill)},
                      {"fillTo", cmyk_json(f.fill_to)},
                      {"gradient", f.gradient}});
  }
  return {{"index", p.index},
          {"number", p.number ? json(*p.number) : json(nullptr)},
          {"kind", std::string(to_string(p.kind))},
          {"recto", p.recto},
          {"block", rect_json(p.block)},
          {"runningHeader", p.running_header},
          {"frames", frames}};
}

/// Compact JSON with sorted keys and fixed three-decimal reals.
inline void write_canonical(std::string& out, const json& j) {
  switch (j.type()) {
    case json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += json(k).dump();
        out += ':';
        write_canonical(out, v);
      }
      out += '}';
      break;
    }
    case json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        write_canonical(out, j[i]);
      }
      out += ']';
      break;
    }
    case json::value_t::number_float: out += fixed3(j.get<double>()); break;
    default: out += j.dump(); break;
  }
}

}  // namespace detail

inline nlohmann::json layout_to_json(const LayoutDocument& doc) {
  using nlohmann::json;
  json fonts = json::array();
  for (const auto& f : doc.fonts)
    fonts.push_back({{"role", f.role}, {"family", f.family}, {"weight", f.weight}, {"standIn", f.stand_in},
                     {"generic", f.generic}});
  json pages = json::array();
  for (const auto& p : doc.pages) pages.push_back(detail::page_json(p));
  return {{"width", doc.width},
          {"height", doc.height},
          {"fonts", fonts},
          {"warnings", doc.warnings},
          {"pages", pages},
          {"backCover", doc.back_cover ? detail::page_json(*doc.back_cover) : json(nullptr)}};
}

inline std::string write_layout_json(const LayoutDocument& doc) {
  std::string out;
  detail::write_canonical(out, layout_to_json(doc));
  out += '\n';
  return out;
}

namespace detail {

template <class E, std::size_t N>
E enum_from(const std::string& s, const E (&values)[N], const char* what) {
  for (auto v : values)
    if (to_string(v) == s) return v;
  throw Error(ErrorKind::Parse, fmt::format("unknown {} '{}' in layout file", what, s));
}

inline std::optional<Cmyk> cmyk_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return Cmyk{j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>(), j.at(3).get<double>()};
}

inline Rect rect_from(const json& j) {
  return {j.at("x").get<double>(), j.at("y").get<double>(), j.at("w").get<double>(), j.at("h").get<double>()};
}

inline Page page_from(const json& j) {
  static constexpr PageKind kKinds[] = {PageKind::Cover, PageKind::Toc,      PageKind::Title,
                                        PageKind::Body,  PageKind::Colophon, PageKind::BackCover};
  static constexpr FrameKind kFrames[] = {FrameKind::Text,  FrameKind::Image,  FrameKind::Caption,
                                          FrameKind::Decor, FrameKind::Header, FrameKind::PageNumber};
  static constexpr Layer kLayers[] = {Layer::Background, Layer::Content, Layer::Furniture};
  static constexpr Alignment kAligns[] = {Alignment::Justified, Alignment::Left, Alignment::Right, Alignment::Centre};
  Page p;
  p.index = j.at("index").get<int>();
  if (!j.at("number").is_null()) p.number = j.at("number").get<int>();
  p.kind = enum_from(j.at("kind").get<std::string>(), kKinds, "page kind");
  p.recto = j.at("recto").get<bool>();
  p.block = rect_from(j.at("block"));
  p.running_header = j.at("runningHeader").get<std::string>();
  for (const auto& fj : j.at("frames")) {
    Frame f;
    f.kind = enum_from(fj.at("kind").get<std::string>(), kFrames, "frame kind");
    f.layer = enum_from(fj.at("layer").get<std::string>(), kLayers, "layer");
    f.rect = rect_from(fj.at("rect"));
    f.role = fj.at("role").get<std::string>();
    f.rotation = fj.at("rotation").get<double>();
    const auto& st = fj.at("style");
    f.style.family = st.at("family").get<std::string>();
    f.style.weight = st.at("weight").get<std::string>();
    f.style.size = st.at("size").get<double>();
    f.style.leading = st.at("leading").get<double>();
    f.style.alignment = enum_from(st.at("alignment").get<std::string>(), kAligns, "alignment");
    f.style.uppercase = st.at("uppercase").get<bool>();
    for (const auto& lj : fj.at("lines")) {
      Line l;
      for (const auto& sj : lj.at("spans"))
        l.spans.push_back({sj.at("text").get<std::string>(), std::uint8_t(sj.at("emphasis").get<int>())});
      l.x = lj.at("x").get<double>();
      l.baseline = lj.at("baseline").get<double>();
      l.width = lj.at("width").get<double>();
      l.word_spacing = lj.at("wordSpacing").get<double>();
      l.letter_spacing = lj.at("letterSpacing").get<double>();
      l.word_gap = lj.at("wordGap").get<double>();
      l.justified = lj.at("justified").get<bool>();
      l.hyphenated = lj.at("hyphenated").get<bool>();
      l.overflow = lj.at("overflow").get<bool>();
      l.last = lj.at("last").get<bool>();
      l.loose = lj.at("loose").get<bool>();
      f.lines.push_back(std::move(l));
    }
    f.image = fj.at("image").get<std::string>();
    f.paragraph = fj.at("paragraph").get<int>();
    f.fill = cmyk_from(fj.at("fill"));
    f.fill_to = cmyk_from(fj.at("fillTo"));
    f.gradient = fj.at("gradient").get<std::string>();
    p.frames.push_back(std::move(f));
  }
  return p;
}

}  // namespace detail

/// Reads a layout file written by write_layout_json.
inline LayoutDocument parse_layout_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::Parse, fmt::format("layout file is not valid JSON: {}", e.what()));
  }
  try {
    LayoutDocument doc;
    doc.width = j.at("width").get<double>();
    doc.height = j.at("height").get<double>();
    for (const auto& f : j.at("fonts"))
      doc.fonts.push_back({f.at("role").get<std::string>(), f.at("family").get<std::string>(),
                           f.at("weight").get<std::string>(), f.at("standIn").get<std::string>(),
                           f.at("generic").get<std::string>()});
    doc.warnings = j.at("warnings").get<std::vector<std::string>>();
    for (const auto& p : j.at("pages")) doc.pages.push_back(detail::page_from(p));
    if (!j.at("backCover").is_null()) doc.back_cover = detail::page_from(j.at("backCover"));
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, fmt::format("layout file is malformed: {}", e.what()));
  }
}

}  // namespace folio
