#pragma once

// Horizontal font metrics: loading (metrics sidecars and TrueType/OpenType
// files), run measurement, and the font map binding rule-base font slots to
// metric sources.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <fmt/format.h>
#include <json.hpp>

#include "folio/error.hpp"
#include "folio/rules.hpp"
#include "folio/utf8.hpp"

namespace folio {

class FontMetrics {
 public:
  FontMetrics() = default;
  FontMetrics(std::string family, int units_per_em, double fallback_em)
      : family_(std::move(family)), units_per_em_(units_per_em), fallback_(fallback_em) {
    if (units_per_em_ <= 0) throw Error(ErrorKind::Parse, "units per em must be positive");
  }

  /// Every codepoint advances by `em`.
  static FontMetrics uniform(double em, std::string family = "Uniform") {
    FontMetrics m(std::move(family), 1000, em);
    m.uniform_ = true;
    return m;
  }

  const std::string& family() const { return family_; }
  int units_per_em() const { return units_per_em_; }
  double fallback_advance() const { return fallback_; }
  bool is_uniform() const { return uniform_; }

  void set_advance(char32_t cp, double em) {
    if (cp < kDense) {
      if (dense_.empty()) dense_.assign(kDense, -1.0);
      dense_[cp] = em;
    } else {
      sparse_[cp] = em;
    }
  }

  bool has(char32_t cp) const {
    if (uniform_) return true;
    if (cp < kDense) return !dense_.empty() && dense_[cp] >= 0;
    return sparse_.count(cp) != 0;
  }

  /// Advance in em units; unmapped codepoints report the fallback advance.
  double advance(char32_t cp) const {
    if (uniform_) return fallback_;
    if (cp < kDense) {
      if (!dense_.empty() && dense_[cp] >= 0) return dense_[cp];
      return fallback_;
    }
    auto it = sparse_.find(cp);
    return it == sparse_.end() ? fallback_ : it->second;
  }

 private:
  static constexpr char32_t kDense = 0x2800;

  std::string family_ = "Uniform";
  int units_per_em_ = 1000;
  double fallback_ = 0.5;
  bool uniform_ = false;
  std::vector<double> dense_;
  std::unordered_map<char32_t, double> sparse_;
};

/// Width in pt of `text` set at `size`. Spaces are scaled by `word_spacing`
/// and every inter-glyph gap (n - 1 of them) grows by letter_spacing * size.
inline double measure_run(std::u32string_view text, const FontMetrics& m, double size, double letter_spacing = 0.0,
                          double word_spacing = 1.0) {
  if (text.empty()) return 0.0;
  double em = 0.0;
  for (char32_t c : text) {
    double a = m.advance(c);
    em += (c == U' ') ? a * word_spacing : a;
  }
  return em * size + static_cast<double>(text.size() - 1) * letter_spacing * size;
}

inline double measure_run(std::string_view text, const FontMetrics& m, double size, double letter_spacing = 0.0,
                          double word_spacing = 1.0) {
  return measure_run(utf8::decode(text), m, size, letter_spacing, word_spacing);
}

/// Parses the sidecar text format:
///   family <name>
///   unitsPerEm <n>
///   fallback <advance-em>
///   uniform <advance-em>        (optional; every codepoint uses it)
///   U+0041 0.722                (or a bare hex/decimal codepoint)
/// Blank lines and lines starting with '#' are ignored.
inline FontMetrics parse_metrics_sidecar(std::string_view text) {
  std::string family = "Unnamed";
  int upem = 0;
  std::optional<double> fallback;
  std::optional<double> uniform;
  std::vector<std::pair<char32_t, double>> entries;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto t = utf8::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto sp = t.find_first_of(" \t");
    if (sp == std::string_view::npos)
      throw Error(ErrorKind::Parse, fmt::format("metrics line {}: expected a key and a value", lineno));
    auto key = t.substr(0, sp);
    auto value = std::string(utf8::trim(t.substr(sp + 1)));
    try {
      if (key == "family") {
        family = value;
      } else if (key == "unitsPerEm") {
        upem = std::stoi(value);
      } else if (key == "fallback") {
        fallback = std::stod(value);
      } else if (key == "uniform") {
        uniform = std::stod(value);
      } else {
        std::string k(key);
        unsigned long cp = 0;
        if (k.size() > 2 && (k[0] == 'U' || k[0] == 'u') && k[1] == '+') {
          cp = std::stoul(k.substr(2), nullptr, 16);
        } else if (k.size() > 2 && k[0] == '0' && (k[1] == 'x' || k[1] == 'X')) {
          cp = std::stoul(k.substr(2), nullptr, 16);
        } else {
          cp = std::stoul(k, nullptr, 10);
        }
        entries.emplace_back(static_cast<char32_t>(cp), std::stod(value));
      }
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Parse, fmt::format("metrics line {}: malformed number", lineno));
    }
  }
  if (upem <= 0) throw Error(ErrorKind::Parse, "metrics sidecar lacks a positive unitsPerEm header");
  if (uniform) {
    auto m = FontMetrics::uniform(*uniform, family);
    return m;
  }
  if (entries.empty()) throw Error(ErrorKind::Parse, "metrics sidecar lists no advances");
  FontMetrics m(family, upem, fallback.value_or(0.5));
  for (auto [cp, em] : entries) m.set_advance(cp, em);
  return m;
}

namespace detail {

struct ByteReader {
  std::span<const std::uint8_t> data;

  void need(std::size_t off, std::size_t n) const {
    if (off + n > data.size() || off + n < off) throw Error(ErrorKind::Parse, "font file is truncated");
  }
  std::uint16_t u16(std::size_t off) const {
    need(off, 2);
    return static_cast<std::uint16_t>((data[off] << 8) | data[off + 1]);
  }
  std::int16_t s16(std::size_t off) const { return static_cast<std::int16_t>(u16(off)); }
  std::uint32_t u32(std::size_t off) const {
    need(off, 4);
    return (std::uint32_t(data[off]) << 24) | (std::uint32_t(data[off + 1]) << 16) |
           (std::uint32_t(data[off + 2]) << 8) | std::uint32_t(data[off + 3]);
  }
};

inline std::string utf16be_to_utf8(std::span<const std::uint8_t> bytes) {
  std::string out;
  for (std::size_t i = 0; i + 1 < bytes.size(); i += 2) {
    char32_t u = static_cast<char32_t>((bytes[i] << 8) | bytes[i + 1]);
    if (u >= 0xD800 && u <= 0xDBFF && i + 3 < bytes.size()) {
      char32_t lo = static_cast<char32_t>((bytes[i + 2] << 8) | bytes[i + 3]);
      u = 0x10000 + ((u - 0xD800) << 10) + (lo - 0xDC00);
      i += 2;
    }
    utf8::append(out, u);
  }
  return out;
}

}  // namespace detail

/// Reads advances from a TrueType/OpenType file (head, hhea, hmtx and cmap
/// format 4 or 12). The fallback advance is that of glyph 0.
inline FontMetrics parse_truetype(std::span<const std::uint8_t> bytes) {
  detail::ByteReader r{bytes};
  std::uint32_t tag = r.u32(0);
  if (tag != 0x00010000 && tag != 0x4F54544F /* OTTO */ && tag != 0x74727565 /* true */)
    throw Error(ErrorKind::Parse, "not a TrueType/OpenType file");
  std::uint16_t num_tables = r.u16(4);
  std::map<std::string, std::pair<std::uint32_t, std::uint32_t>> tables;
  for (std::uint16_t i = 0; i < num_tables; ++i) {
    std::size_t rec = 12 + 16 * std::size_t(i);
    r.need(rec, 16);
    std::string name(reinterpret_cast<const char*>(bytes.data() + rec), 4);
    tables[name] = {r.u32(rec + 8), r.u32(rec + 12)};
  }
  for (const char* t : {"head", "hhea", "hmtx", "cmap"})
    if (!tables.count(t)) throw Error(ErrorKind::Parse, fmt::format("font lacks the '{}' table", t));

  auto [head, head_len] = tables["head"];
  r.need(head, 54);
  int upem = r.u16(head + 18);
  if (upem <= 0) throw Error(ErrorKind::Parse, "font unitsPerEm is zero");

  auto [hhea, hhea_len] = tables["hhea"];
  std::uint16_t num_hmetrics = r.u16(hhea + 34);
  if (num_hmetrics == 0) throw Error(ErrorKind::Parse, "font has no horizontal metrics");
  auto [hmtx, hmtx_len] = tables["hmtx"];
  auto glyph_advance = [&](std::uint32_t gid) -> std::uint16_t {
    std::uint32_t i = std::min<std::uint32_t>(gid, num_hmetrics - 1u);
    return r.u16(hmtx + 4 * i);
  };

  std::string family = "Unnamed";
  if (tables.count("name")) {
    auto [name, name_len] = tables["name"];
    std::uint16_t count = r.u16(name + 2);
    std::uint16_t strings = r.u16(name + 4);
    for (std::uint16_t i = 0; i < count; ++i) {
      std::size_t rec = name + 6 + 12 * std::size_t(i);
      std::uint16_t platform = r.u16(rec), name_id = r.u16(rec + 6);
      std::uint16_t len = r.u16(rec + 8), off = r.u16(rec + 10);
      if (name_id != 1) continue;
      std::size_t at = name + strings + off;
      r.need(at, len);
      auto raw = bytes.subspan(at, len);
      if (platform == 3 || platform == 0) {
        family = detail::utf16be_to_utf8(raw);
        break;
      }
      if (platform == 1) family.assign(raw.begin(), raw.end());
    }
  }

  FontMetrics m(family, upem, double(glyph_advance(0)) / upem);

  auto [cmap, cmap_len] = tables["cmap"];
  std::uint16_t subtables = r.u16(cmap + 2);
  std::optional<std::size_t> fmt4, fmt12;
  for (std::uint16_t i = 0; i < subtables; ++i) {
    std::size_t rec = cmap + 4 + 8 * std::size_t(i);
    std::uint16_t platform = r.u16(rec), encoding = r.u16(rec + 2);
    std::size_t off = cmap + r.u32(rec + 4);
    std::uint16_t format = r.u16(off);
    bool unicode = platform == 0 || (platform == 3 && (encoding == 1 || encoding == 10));
    if (!unicode) continue;
    if (format == 12 && !fmt12) fmt12 = off;
    if (format == 4 && !fmt4) fmt4 = off;
  }
  if (fmt12) {
    std::size_t off = *fmt12;
    std::uint32_t groups = r.u32(off + 12);
    for (std::uint32_t g = 0; g < groups; ++g) {
      std::size_t rec = off + 16 + 12 * std::size_t(g);
      std::uint32_t start = r.u32(rec), end = r.u32(rec + 4), gid = r.u32(rec + 8);
      if (end < start || end > 0x10FFFF) continue;
      for (std::uint32_t cp = start; cp <= end; ++cp)
        m.set_advance(static_cast<char32_t>(cp), double(glyph_advance(gid + (cp - start))) / upem);
    }
  } else if (fmt4) {
    std::size_t off = *fmt4;
    std::uint16_t segx2 = r.u16(off + 6);
    std::size_t ends = off + 14, starts = ends + segx2 + 2, deltas = starts + segx2, ranges = deltas + segx2;
    for (std::size_t s = 0; s < segx2 / 2u; ++s) {
      std::uint16_t end = r.u16(ends + 2 * s), start = r.u16(starts + 2 * s);
      std::uint16_t delta = r.u16(deltas + 2 * s), range_off = r.u16(ranges + 2 * s);
      if (start == 0xFFFF) continue;
      for (std::uint32_t cp = start; cp <= end; ++cp) {
        std::uint32_t gid;
        if (range_off == 0) {
          gid = (cp + delta) & 0xFFFF;
        } else {
          std::size_t at = ranges + 2 * s + range_off + 2 * (cp - start);
          gid = r.u16(at);
          if (gid != 0) gid = (gid + delta) & 0xFFFF;
        }
        if (gid != 0) m.set_advance(static_cast<char32_t>(cp), double(glyph_advance(gid)) / upem);
      }
    }
  } else {
    throw Error(ErrorKind::Parse, "font has no Unicode cmap (format 4 or 12)");
  }
  return m;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, fmt::format("cannot read '{}'", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Loads a font file or a metrics sidecar, telling them apart by magic number.
inline FontMetrics load_font_metrics(const std::filesystem::path& path) {
  auto bytes = read_file(path);
  if (bytes.size() >= 4) {
    auto b = reinterpret_cast<const std::uint8_t*>(bytes.data());
    std::uint32_t tag = (std::uint32_t(b[0]) << 24) | (b[1] << 16) | (b[2] << 8) | b[3];
    if (tag == 0x00010000 || tag == 0x4F54544F || tag == 0x74727565)
      return parse_truetype({b, bytes.size()});
  }
  return parse_metrics_sidecar(bytes);
}

// Character frequencies of running text per language, spaces included, used by
// the characters-per-line estimator. Values are relative weights.
struct CharFrequency {
  char32_t cp;
  double weight;
};

inline std::span<const CharFrequency> language_frequencies(std::string_view language) {
  static const CharFrequency en[] = {
      {U' ', 18.0}, {U'e', 10.4}, {U't', 7.4}, {U'a', 6.7}, {U'o', 6.2}, {U'i', 5.7}, {U'n', 5.5},
      {U's', 5.2},  {U'h', 5.0},  {U'r', 4.9}, {U'd', 3.5}, {U'l', 3.3}, {U'c', 2.3}, {U'u', 2.3},
      {U'm', 2.0},  {U'w', 1.9},  {U'f', 1.8}, {U'g', 1.7}, {U'y', 1.6}, {U'p', 1.6}, {U'b', 1.1},
      {U'v', 0.8},  {U'k', 0.6},  {U'j', 0.1}, {U'x', 0.1}, {U'q', 0.1}, {U'z', 0.1}, {U'.', 1.0},
      {U',', 1.0},  {U'T', 0.3},  {U'I', 0.3}, {U'A', 0.2}, {U'S', 0.2}, {U'H', 0.2}, {U'W', 0.2},
  };
  static const CharFrequency pt[] = {
      {U' ', 17.0}, {U'a', 11.5}, {U'e', 10.4}, {U'o', 8.9}, {U's', 6.5}, {U'r', 5.4}, {U'i', 5.1},
      {U'n', 4.2},  {U'd', 4.1},  {U'm', 3.9},  {U'u', 3.8}, {U't', 3.6}, {U'c', 3.2}, {U'l', 2.3},
      {U'p', 2.1},  {U'v', 1.4},  {U'g', 1.1},  {U'h', 1.1}, {U'q', 1.0}, {U'b', 0.9}, {U'f', 0.8},
      {U'z', 0.4},  {U'j', 0.3},  {U'x', 0.2},  {U'ã', 0.6}, {U'ç', 0.4}, {U'é', 0.3}, {U'á', 0.4},
      {U'í', 0.3},  {U'ó', 0.2},  {U'ê', 0.2},  {U'õ', 0.1}, {U'ú', 0.1}, {U'â', 0.1}, {U'à', 0.1},
      {U'.', 1.0},  {U',', 1.0},  {U'A', 0.3},  {U'E', 0.3}, {U'O', 0.3}, {U'P', 0.2}, {U'C', 0.2},
  };
  if (language == "pt" || language.starts_with("pt-")) return pt;
  return en;
}

/// Frequency-weighted mean advance (em) of running text in `language`.
inline double mean_advance(const FontMetrics& m, std::string_view language) {
  double total = 0, weight = 0;
  for (auto [cp, w] : language_frequencies(language)) {
    total += w * m.advance(cp);
    weight += w;
  }
  return total / weight;
}

/// Mean number of characters (spaces included) per word in `language`.
inline double chars_per_word(std::string_view language) {
  double space = 0, weight = 0;
  for (auto [cp, w] : language_frequencies(language)) {
    if (cp == U' ') space += w;
    weight += w;
  }
  return weight / space;
}

/// Binds rule-base font slots to metric files. The map file is JSON:
///   { "fonts":    { "<family> <weight>": "file", ... },
///     "fallback": { "serif": {"regular": "file", "bold": "file"}, "sans": {...} } }
/// Paths are relative to the map file. Explicit entries win over fallbacks.
class FontMap {
 public:
  FontMap() = default;
  FontMap(nlohmann::json data, std::filesystem::path base) : data_(std::move(data)), base_(std::move(base)) {}

  static FontMap load(const std::filesystem::path& path) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::Parse, fmt::format("font map '{}' is not valid JSON: {}", path.string(), e.what()));
    }
    if (!j.contains("fallback")) throw Error(ErrorKind::Parse, "font map lacks the 'fallback' key", "fallback");
    return FontMap(std::move(j), path.parent_path());
  }

  std::filesystem::path resolve(const FontSlot& slot) const {
    auto key = slot.name();
    if (data_.contains("fonts") && data_["fonts"].contains(key)) return base_ / data_["fonts"][key].get<std::string>();
    const auto& fb = data_.at("fallback");
    auto cls = std::string(to_string(slot.classification));
    if (!fb.contains(cls)) throw Error(ErrorKind::Io, fmt::format("font map has no fallback for '{}'", cls));
    const auto& byweight = fb[cls];
    std::string weight = byweight.contains(slot.weight) ? slot.weight : "regular";
    if (!byweight.contains(weight))
      throw Error(ErrorKind::Io, fmt::format("font map has no '{}' fallback for '{}'", weight, cls));
    return base_ / byweight[weight].get<std::string>();
  }

  const nlohmann::json& data() const { return data_; }

 private:
  nlohmann::json data_;
  std::filesystem::path base_;
};

/// Root of the bundled data files: $FOLIO_DATA, else the build-time location.
inline std::filesystem::path data_dir() {
  if (const char* env = std::getenv("FOLIO_DATA"); env && *env) return env;
#ifdef FOLIO_DATA_DIR
  return FOLIO_DATA_DIR;
#else
  return "data";
#endif
}

/// Thread-safe cache of loaded metrics keyed by resolved path.
class FontLibrary {
 public:
  explicit FontLibrary(FontMap map) : map_(std::move(map)) {}

  static FontLibrary bundled() { return FontLibrary(FontMap::load(data_dir() / "fonts" / "fontmap.json")); }

  std::shared_ptr<const FontMetrics> get(const FontSlot& slot) {
    auto path = map_.resolve(slot);
    std::lock_guard lock(mutex_);
    auto it = cache_.find(path.string());
    if (it != cache_.end()) return it->second;
    auto m = std::make_shared<const FontMetrics>(load_font_metrics(path));
    cache_.emplace(path.string(), m);
    return m;
  }

  const FontMap& map() const { return map_; }

 private:
  FontMap map_;
  std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const FontMetrics>> cache_;
};

}  // namespace folio
