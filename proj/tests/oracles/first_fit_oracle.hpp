#pragma once

// Reference line-breaking oracle. Enumerates every way of cutting a word
// sequence into lines, keeps the cuts whose lines all fit the measure, and
// returns the one whose line lengths are lexicographically greatest: the
// sequence a first-fit breaker must produce.

#include <cstddef>
#include <vector>

namespace oracle {

struct FirstFitProblem {
  std::vector<int> glyphs;  // glyph count per word
  double glyph_width = 5;   // pt, every glyph
  double space_width = 5;   // pt, natural
  double min_word_spacing = 1.0;
  double letter_spacing_pt = 0.0;  // added per inter-glyph gap, spaces included
  double measure = 100;
};

inline double line_width(const FirstFitProblem& p, std::size_t from, std::size_t to) {
  double w = 0;
  std::size_t glyphs = 0;
  for (std::size_t i = from; i < to; ++i) {
    w += p.glyphs[i] * p.glyph_width;
    glyphs += std::size_t(p.glyphs[i]);
  }
  std::size_t spaces = to - from - 1;
  glyphs += spaces;
  w += double(spaces) * p.space_width * p.min_word_spacing;
  w += double(glyphs - 1) * p.letter_spacing_pt;
  return w;
}

/// Words per line. Requires every single word to fit the measure.
inline std::vector<std::size_t> first_fit(const FirstFitProblem& p) {
  const std::size_t n = p.glyphs.size();
  std::vector<std::size_t> best;
  for (unsigned long mask = 0; mask < (1ul << (n - 1)); ++mask) {
    std::vector<std::size_t> lines;
    std::size_t start = 0;
    bool ok = true;
    for (std::size_t i = 1; i <= n && ok; ++i) {
      bool cut = i == n || (mask >> (i - 1)) & 1ul;
      if (!cut) continue;
      if (line_width(p, start, i) > p.measure + 1e-9) ok = false;
      lines.push_back(i - start);
      start = i;
    }
    if (ok && (best.empty() || lines > best)) best = lines;
  }
  return best;
}

}  // namespace oracle
