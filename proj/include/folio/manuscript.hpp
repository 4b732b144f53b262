#pragma once

// Manuscript ingestion: the plain-text manuscript format, image probing,
// content classification and title hierarchy.
//
// Format:
//   title: ...            optional front matter, `key: value` lines, ended by
//   author: ...           a blank line
//   language: pt
//
//   # Heading             more '#' = less prominent
//   Paragraph text with *italic*, **bold** and ^^small caps^^ runs.
//   @image-name@          image tag, inline or on its own line
//
// A backslash escapes the next character.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <fmt/format.h>

#include "folio/error.hpp"
#include "folio/metrics.hpp"
#include "folio/rules.hpp"
#include "folio/utf8.hpp"

namespace folio {

enum Emphasis : std::uint8_t { kPlain = 0, kItalic = 1, kBold = 2, kSmallCaps = 4 };

struct Run {
  std::string text;
  std::uint8_t emphasis = kPlain;

  bool italic() const { return emphasis & kItalic; }
  bool bold() const { return emphasis & kBold; }
  bool small_caps() const { return emphasis & kSmallCaps; }
  bool operator==(const Run&) const = default;
};

struct Paragraph {
  std::vector<Run> runs;
  std::string style = "body";

  std::string text() const {
    std::string s;
    for (const auto& r : runs) s += r.text;
    return s;
  }
  bool operator==(const Paragraph&) const = default;
};

struct Heading {
  std::string text;
  int prominence = 1;
  int level = 0;  // 1..3 once assigned
  bool operator==(const Heading&) const = default;
};

struct ImageRef {
  std::string name;
  std::filesystem::path path;
  int width = 0;   // px
  int height = 0;  // px
  std::string caption;
  bool operator==(const ImageRef&) const = default;
};

using Block = std::variant<Paragraph, Heading, ImageRef>;

struct Manuscript {
  std::vector<Block> blocks;
  std::optional<std::string> title;
  std::optional<std::string> author;
  std::string language = "en";
  bool operator==(const Manuscript&) const = default;
};

struct ContentStats {
  long long words = 0;
  long long images = 0;
  double words_per_image = std::numeric_limits<double>::infinity();
  BookType book_type = BookType::ShortReading;
  std::string language = "en";
};

struct ImageSize {
  int width = 0;
  int height = 0;
};

/// Pixel dimensions from PNG, GIF or JPEG headers.
inline ImageSize probe_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, fmt::format("cannot read image '{}'", path.string()));
  std::vector<unsigned char> b((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  auto be32 = [&](std::size_t o) { return int((b[o] << 24) | (b[o + 1] << 16) | (b[o + 2] << 8) | b[o + 3]); };
  auto be16 = [&](std::size_t o) { return int((b[o] << 8) | b[o + 1]); };
  if (b.size() >= 24 && b[0] == 0x89 && b[1] == 'P' && b[2] == 'N' && b[3] == 'G') return {be32(16), be32(20)};
  if (b.size() >= 10 && b[0] == 'G' && b[1] == 'I' && b[2] == 'F') return {b[6] | (b[7] << 8), b[8] | (b[9] << 8)};
  if (b.size() >= 4 && b[0] == 0xFF && b[1] == 0xD8) {
    std::size_t o = 2;
    while (o + 9 < b.size()) {
      if (b[o] != 0xFF) {
        ++o;
        continue;
      }
      unsigned char marker = b[o + 1];
      if (marker == 0xFF) {
        ++o;
        continue;
      }
      bool sof = marker >= 0xC0 && marker <= 0xCF && marker != 0xC4 && marker != 0xC8 && marker != 0xCC;
      if (sof) return {be16(o + 7), be16(o + 5)};
      if (marker == 0xD8 || (marker >= 0xD0 && marker <= 0xD7) || marker == 0x01) {
        o += 2;
        continue;
      }
      o += 2 + be16(o + 2);
    }
  }
  throw Error(ErrorKind::Io, fmt::format("unrecognised image format '{}'", path.string()));
}

/// "old_oak" -> "Old oak".
inline std::string caption_from_name(std::string_view name) {
  std::string s;
  for (char c : name) s.push_back(c == '-' || c == '_' ? ' ' : c);
  auto words = utf8::split_words(s);
  std::string joined;
  for (auto w : words) {
    if (!joined.empty()) joined.push_back(' ');
    joined += w;
  }
  auto cps = utf8::decode(utf8::lower(joined));
  if (!cps.empty()) cps[0] = utf8::to_upper(cps[0]);
  return utf8::encode(cps);
}

inline std::filesystem::path find_image(const std::filesystem::path& dir, const std::string& name) {
  namespace fs = std::filesystem;
  if (fs::path(name).has_extension() && fs::is_regular_file(dir / name)) return dir / name;
  for (const char* ext : {".png", ".jpg", ".jpeg", ".gif", ".PNG", ".JPG", ".JPEG", ".GIF"}) {
    auto p = dir / (name + ext);
    if (fs::is_regular_file(p)) return p;
  }
  throw Error(ErrorKind::Io, fmt::format("image '{}' not found", name), name);
}

namespace detail {

inline bool is_front_matter_line(std::string_view line, std::string* key = nullptr, std::string* value = nullptr) {
  auto colon = line.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  for (std::size_t i = 0; i < colon; ++i) {
    char c = line[i];
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  }
  if (key) *key = utf8::lower(line.substr(0, colon));
  if (value) *value = std::string(utf8::trim(line.substr(colon + 1)));
  return true;
}

inline bool is_image_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
}

/// Splits styled paragraph text into runs; collapses whitespace.
inline std::vector<Run> parse_runs(std::string_view text, bool& balanced) {
  std::vector<Run> runs;
  std::uint8_t state = kPlain;
  std::string cur;
  bool pending_space = false;
  auto push_char = [&](std::string_view c) {
    if (pending_space && !(cur.empty() && runs.empty())) cur.push_back(' ');
    pending_space = false;
    cur += c;
  };
  auto flush = [&] {
    if (cur.empty()) return;
    if (!runs.empty() && runs.back().emphasis == state) {
      runs.back().text += cur;
    } else {
      runs.push_back({cur, state});
    }
    cur.clear();
  };
  auto toggle = [&](std::uint8_t flag) {
    // a pending space belongs to the run being closed or to the one before the opening
    if (pending_space && !(cur.empty() && runs.empty())) {
      cur.push_back(' ');
      pending_space = false;
    }
    flush();
    state ^= flag;
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\\' && i + 1 < text.size()) {
      std::size_t len = 1;
      auto b = static_cast<unsigned char>(text[i + 1]);
      if (b >= 0xF0) len = 4;
      else if (b >= 0xE0) len = 3;
      else if (b >= 0xC0) len = 2;
      push_char(text.substr(i + 1, len));
      i += len;
    } else if (c == '*' && i + 1 < text.size() && text[i + 1] == '*') {
      toggle(kBold);
      ++i;
    } else if (c == '*') {
      toggle(kItalic);
    } else if (c == '^' && i + 1 < text.size() && text[i + 1] == '^') {
      toggle(kSmallCaps);
      ++i;
    } else if (utf8::is_space(c)) {
      pending_space = true;
    } else {
      push_char(text.substr(i, 1));
    }
  }
  flush();
  balanced = state == kPlain;
  return runs;
}

inline std::vector<Run> literal_runs(std::string_view text) {
  std::string s;
  for (auto w : utf8::split_words(text)) {
    if (!s.empty()) s.push_back(' ');
    s += w;
  }
  if (s.empty()) return {};
  return {Run{s, kPlain}};
}

inline std::string escape_text(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '\\' || c == '*' || c == '^' || c == '@') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace detail

/// Parses manuscript text; image tags are resolved against `image_dir`.
inline Manuscript parse_manuscript(std::string_view source, const std::filesystem::path& image_dir) {
  if (utf8::trim(source).empty()) throw Error(ErrorKind::Parse, "empty manuscript");
  Manuscript m;
  std::vector<std::string> lines;
  {
    std::string line;
    std::istringstream in{std::string(source)};
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
  }
  std::size_t i = 0;
  while (i < lines.size() && utf8::trim(lines[i]).empty()) ++i;

  // Front matter: the first block, when every line is `key: value` and at least
  // one key is a known one.
  {
    std::size_t j = i;
    bool all = true, known = false;
    std::vector<std::pair<std::string, std::string>> kv;
    while (j < lines.size() && !utf8::trim(lines[j]).empty()) {
      std::string k, v;
      if (!detail::is_front_matter_line(utf8::trim(lines[j]), &k, &v)) {
        all = false;
        break;
      }
      if (k == "title" || k == "author" || k == "language") known = true;
      kv.emplace_back(k, v);
      ++j;
    }
    if (all && known && j > i) {
      for (auto& [k, v] : kv) {
        if (k == "title" && !v.empty()) m.title = v;
        if (k == "author" && !v.empty()) m.author = v;
        if (k == "language" && !v.empty()) m.language = v;
      }
      i = j;
    }
  }

  auto add_paragraph_text = [&](std::string_view text) {
    bool balanced = true;
    auto runs = detail::parse_runs(text, balanced);
    if (!balanced) runs = detail::literal_runs(text);
    if (!runs.empty()) m.blocks.push_back(Paragraph{std::move(runs), "body"});
  };

  auto add_image = [&](const std::string& name) {
    ImageRef img;
    img.name = name;
    img.path = find_image(image_dir, name);
    auto size = probe_image(img.path);
    if (size.width <= 0 || size.height <= 0)
      throw Error(ErrorKind::Io, fmt::format("image '{}' has no pixel dimensions", name), name);
    img.width = size.width;
    img.height = size.height;
    img.caption = caption_from_name(std::filesystem::path(name).stem().string());
    m.blocks.push_back(std::move(img));
  };

  // Splits a paragraph at unescaped @name@ tags.
  auto add_paragraph = [&](const std::string& text) {
    std::size_t start = 0, k = 0;
    while (k < text.size()) {
      if (text[k] == '\\') {
        k += 2;
        continue;
      }
      if (text[k] == '@') {
        std::size_t e = k + 1;
        while (e < text.size() && detail::is_image_name_char(text[e])) ++e;
        if (e < text.size() && text[e] == '@' && e > k + 1) {
          add_paragraph_text(std::string_view(text).substr(start, k - start));
          add_image(text.substr(k + 1, e - k - 1));
          k = e + 1;
          start = k;
          continue;
        }
      }
      ++k;
    }
    add_paragraph_text(std::string_view(text).substr(start));
  };

  std::string para;
  auto end_paragraph = [&] {
    if (!para.empty()) add_paragraph(para);
    para.clear();
  };
  for (; i < lines.size(); ++i) {
    auto t = utf8::trim(lines[i]);
    if (t.empty()) {
      end_paragraph();
      continue;
    }
    std::size_t hashes = 0;
    while (hashes < t.size() && t[hashes] == '#') ++hashes;
    if (hashes > 0 && hashes < 7 && (hashes == t.size() || t[hashes] == ' ')) {
      end_paragraph();
      Heading h;
      bool balanced = true;
      auto runs = detail::parse_runs(t.substr(hashes), balanced);
      std::string text;
      for (const auto& r : runs) text += r.text;
      if (!balanced) {
        auto lit = detail::literal_runs(t.substr(hashes));
        text = lit.empty() ? "" : lit[0].text;
      }
      h.text = text;
      h.prominence = 7 - static_cast<int>(hashes);
      if (!h.text.empty()) m.blocks.push_back(h);
      continue;
    }
    if (!para.empty()) para.push_back(' ');
    para += t;
  }
  end_paragraph();
  if (m.blocks.empty()) throw Error(ErrorKind::Parse, "empty manuscript");
  return m;
}

inline Manuscript parse_manuscript_file(const std::filesystem::path& path,
                                        std::optional<std::filesystem::path> image_dir = std::nullopt) {
  auto text = read_file(path);
  return parse_manuscript(text, image_dir.value_or(path.parent_path() / "images"));
}

/// Writes the manuscript back in the source format.
inline std::string serialize_manuscript(const Manuscript& m) {
  std::string out;
  if (m.title) out += "title: " + *m.title + "\n";
  if (m.author) out += "author: " + *m.author + "\n";
  out += "language: " + m.language + "\n\n";
  for (const auto& b : m.blocks) {
    if (auto* h = std::get_if<Heading>(&b)) {
      out += std::string(static_cast<std::size_t>(std::clamp(7 - h->prominence, 1, 6)), '#');
      out += " " + detail::escape_text(h->text) + "\n\n";
    } else if (auto* p = std::get_if<Paragraph>(&b)) {
      std::string line;
      for (const auto& r : p->runs) {
        std::string open, close;
        if (r.small_caps()) open += "^^";
        if (r.bold()) open += "**";
        if (r.italic()) open += "*";
        close = std::string(open.rbegin(), open.rend());
        // keep spaces outside markers so they survive the round trip
        std::string_view t = r.text;
        std::size_t lead = 0, trail = 0;
        while (lead < t.size() && t[lead] == ' ') ++lead;
        while (trail < t.size() - lead && t[t.size() - 1 - trail] == ' ') ++trail;
        line += std::string(lead, ' ');
        auto core = t.substr(lead, t.size() - lead - trail);
        if (!core.empty()) line += open + detail::escape_text(core) + close;
        line += std::string(trail, ' ');
      }
      if (!line.empty() && line.front() == '#') line.insert(line.begin(), '\\');
      out += line + "\n\n";
    } else if (auto* img = std::get_if<ImageRef>(&b)) {
      out += "@" + img->name + "@\n\n";
    }
  }
  return out;
}

inline long long count_words(const Manuscript& m) {
  long long n = 0;
  for (const auto& b : m.blocks) {
    if (auto* p = std::get_if<Paragraph>(&b)) n += static_cast<long long>(utf8::split_words(p->text()).size());
    if (auto* h = std::get_if<Heading>(&b)) n += static_cast<long long>(utf8::split_words(h->text).size());
  }
  return n;
}

/// The four-way content classification from word and image counts.
inline ContentStats classify_counts(long long words, long long images, const RuleSet& rules) {
  ContentStats s;
  s.words = words;
  s.images = images;
  s.words_per_image = images > 0 ? double(words) / double(images) : std::numeric_limits<double>::infinity();
  bool long_text = words >= rules.classification.long_reading_words;
  if (images == 0) {
    s.book_type = long_text ? BookType::LongReading : BookType::ShortReading;
  } else if (s.words_per_image < rules.classification.only_images_words_per_image) {
    s.book_type = BookType::OnlyImages;
  } else if (long_text) {
    s.book_type = BookType::LongReading;
  } else {
    s.book_type = BookType::TextAndImages;
  }
  return s;
}

inline ContentStats classify(const Manuscript& m, const RuleSet& rules) {
  long long images = 0;
  for (const auto& b : m.blocks) images += std::holds_alternative<ImageRef>(b) ? 1 : 0;
  auto s = classify_counts(count_words(m), images, rules);
  s.language = m.language;
  return s;
}

/// Ranks distinct heading prominences into levels 1..3 (deeper ranks collapse to 3).
inline Manuscript assign_heading_levels(Manuscript m) {
  std::set<int, std::greater<>> prominences;
  for (const auto& b : m.blocks)
    if (auto* h = std::get_if<Heading>(&b)) prominences.insert(h->prominence);
  std::map<int, int> level;
  int rank = 0;
  for (int p : prominences) level[p] = std::min(++rank, 3);
  for (auto& b : m.blocks)
    if (auto* h = std::get_if<Heading>(&b)) h->level = level[h->prominence];
  return m;
}

}  // namespace folio
