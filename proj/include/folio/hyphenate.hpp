#pragma once

// Liang hyphenation over TeX pattern files.

#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <fmt/format.h>

#include "folio/error.hpp"
#include "folio/metrics.hpp"
#include "folio/utf8.hpp"

namespace folio {

struct HyphenPattern {
  std::u32string letters;
  std::vector<std::uint8_t> values;  // letters.size() + 1 inter-letter values
};

/// Splits TeX pattern-file text into patterns and exceptions. Understands
/// `\patterns{...}` and `\hyphenation{...}` groups and `%` comments.
struct PatternFile {
  std::vector<HyphenPattern> patterns;
  std::vector<std::u32string> exceptions;  // with '-' marking break points
};

inline HyphenPattern parse_pattern(std::u32string_view token) {
  HyphenPattern p;
  p.values.push_back(0);
  for (char32_t c : token) {
    if (c >= U'0' && c <= U'9') {
      p.values.back() = static_cast<std::uint8_t>(c - U'0');
    } else {
      p.letters.push_back(utf8::to_lower(c));
      p.values.push_back(0);
    }
  }
  return p;
}

inline PatternFile parse_pattern_file(std::string_view tex) {
  PatternFile out;
  enum class Group { None, Patterns, Exceptions } group = Group::None;
  std::size_t i = 0;
  auto flush = [&](std::string& token) {
    if (token.empty()) return;
    auto cps = utf8::decode(token);
    if (group == Group::Patterns) out.patterns.push_back(parse_pattern(cps));
    if (group == Group::Exceptions) out.exceptions.push_back(cps);
    token.clear();
  };
  std::string token;
  while (i < tex.size()) {
    char c = tex[i];
    if (c == '%') {
      flush(token);
      while (i < tex.size() && tex[i] != '\n') ++i;
      continue;
    }
    if (c == '\\') {
      flush(token);
      auto rest = tex.substr(i);
      if (rest.starts_with("\\patterns")) {
        group = Group::Patterns;
        i += 9;
      } else if (rest.starts_with("\\hyphenation")) {
        group = Group::Exceptions;
        i += 12;
      } else {
        ++i;
        while (i < tex.size() && std::isalpha(static_cast<unsigned char>(tex[i]))) ++i;
      }
      continue;
    }
    if (c == '{') {
      flush(token);
      ++i;
      continue;
    }
    if (c == '}') {
      flush(token);
      group = Group::None;
      ++i;
      continue;
    }
    if (utf8::is_space(c)) {
      flush(token);
      ++i;
      continue;
    }
    token.push_back(c);
    ++i;
  }
  flush(token);
  return out;
}

class Hyphenator {
 public:
  static constexpr std::size_t kLeftMin = 2;
  static constexpr std::size_t kRightMin = 2;
  static constexpr std::size_t kMinWord = 5;

  explicit Hyphenator(const PatternFile& file) {
    nodes_.emplace_back();
    for (const auto& p : file.patterns) insert(p);
    for (const auto& e : file.exceptions) {
      std::u32string word;
      std::vector<std::size_t> points;
      for (char32_t c : e) {
        if (c == U'-') {
          points.push_back(word.size());
        } else {
          word.push_back(utf8::to_lower(c));
        }
      }
      exceptions_[word] = points;
    }
  }

  static Hyphenator from_tex(std::string_view tex) { return Hyphenator(parse_pattern_file(tex)); }

  std::size_t pattern_count() const { return count_; }

  /// Break positions: index i means a break between word[i-1] and word[i].
  std::vector<std::size_t> points(std::u32string_view word) const {
    std::vector<std::size_t> out;
    std::size_t n = word.size();
    if (n < kMinWord) return out;
    std::u32string lower;
    lower.reserve(n);
    for (char32_t c : word) lower.push_back(utf8::to_lower(c));
    if (auto it = exceptions_.find(lower); it != exceptions_.end()) {
      for (auto p : it->second)
        if (p >= kLeftMin && p + kRightMin <= n) out.push_back(p);
      return out;
    }
    std::u32string w = U".";
    w += lower;
    w += U'.';
    // values[k] sits between w[k-1] and w[k]
    std::vector<std::uint8_t> values(w.size() + 1, 0);
    for (std::size_t start = 0; start < w.size(); ++start) {
      int node = 0;
      for (std::size_t k = start; k < w.size(); ++k) {
        node = child(node, w[k]);
        if (node < 0) break;
        const auto& v = nodes_[node].values;
        for (std::size_t j = 0; j < v.size(); ++j)
          if (v[j] > values[start + j]) values[start + j] = v[j];
      }
    }
    // word position i corresponds to w position i + 1
    for (std::size_t i = kLeftMin; i + kRightMin <= n; ++i)
      if (values[i + 1] % 2 == 1) out.push_back(i);
    return out;
  }

  std::vector<std::size_t> points(std::string_view word) const { return points(utf8::decode(word)); }

 private:
  struct Node {
    std::vector<std::pair<char32_t, int>> children;
    std::vector<std::uint8_t> values;
  };

  int child(int node, char32_t c) const {
    for (auto [k, v] : nodes_[node].children)
      if (k == c) return v;
    return -1;
  }

  void insert(const HyphenPattern& p) {
    int node = 0;
    for (char32_t c : p.letters) {
      int next = child(node, c);
      if (next < 0) {
        next = static_cast<int>(nodes_.size());
        nodes_[node].children.emplace_back(c, next);
        nodes_.emplace_back();
      }
      node = next;
    }
    nodes_[node].values = p.values;
    ++count_;
  }

  std::vector<Node> nodes_;
  std::unordered_map<std::u32string, std::vector<std::size_t>> exceptions_;
  std::size_t count_ = 0;
};

/// Primary subtag of a language tag ("pt-PT" -> "pt").
inline std::string primary_language(std::string_view tag) {
  auto cut = tag.find_first_of("-_");
  return utf8::lower(tag.substr(0, cut));
}

/// Bundled hyphenator for `language`, loaded once from
/// <data>/hyphenation/hyph-<lang>.tex. Returns null for unknown languages.
inline std::shared_ptr<const Hyphenator> hyphenator_for(std::string_view language) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const Hyphenator>> cache;
  auto lang = primary_language(language);
  std::lock_guard lock(mutex);
  if (auto it = cache.find(lang); it != cache.end()) return it->second;
  std::shared_ptr<const Hyphenator> h;
  auto path = data_dir() / "hyphenation" / ("hyph-" + lang + ".tex");
  if (std::filesystem::exists(path)) {
    h = std::make_shared<const Hyphenator>(Hyphenator::from_tex(read_file(path)));
  } else {
    std::fprintf(stderr, "folio: no hyphenation patterns for language '%s'\n", lang.c_str());
  }
  cache.emplace(lang, h);
  return h;
}

inline std::vector<std::size_t> hyphenation_points(std::string_view word, std::string_view language) {
  auto h = hyphenator_for(language);
  if (!h) return {};
  return h->points(word);
}

}  // namespace folio
