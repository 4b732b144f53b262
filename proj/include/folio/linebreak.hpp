#pragma once

// Greedy first-fit line breaking with spacing elasticity.
//
// A line takes as many words as fit the measure at the tightest spacing the
// style allows (the minimum word and letter spacing for justified text, the
// ideal spacing otherwise). Justified lines are then stretched or shrunk to
// the measure, word spacing first and letter spacing second, never leaving
// the configured ranges. When a justified line cannot reach the measure, or
// a ragged line is less than `ragged_fill` full, the next word is hyphenated
// at its longest fitting break point instead.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "folio/hyphenate.hpp"
#include "folio/manuscript.hpp"
#include "folio/metrics.hpp"
#include "folio/rules.hpp"
#include "folio/utf8.hpp"

namespace folio {

/// Paragraph text with one emphasis byte per codepoint; words separated by
/// single spaces.
struct StyledText {
  std::u32string text;
  std::vector<std::uint8_t> emphasis;
};

inline StyledText styled_text(const std::vector<Run>& runs) {
  StyledText st;
  bool space = false;
  for (const auto& r : runs) {
    for (char32_t c : utf8::decode(r.text)) {
      if (c == U' ' || c == U'\t' || c == U'\n' || c == U'\r') {
        space = !st.text.empty();
        continue;
      }
      if (space) {
        st.text.push_back(U' ');
        st.emphasis.push_back(0);
        space = false;
      }
      st.text.push_back(c);
      st.emphasis.push_back(r.emphasis);
    }
  }
  return st;
}

inline StyledText styled_text(std::string_view plain, std::uint8_t emphasis = 0) {
  return styled_text(std::vector<Run>{Run{std::string(plain), emphasis}});
}

struct BreakStyle {
  double size = 10;  // pt
  Alignment alignment = Alignment::Justified;
  bool hyphenate = false;
  Range word_spacing{0.8, 1.2};
  Range letter_spacing{-0.05, 0.05};
  double first_indent = 0;  // pt; shortens and shifts the first line
  double hanging = 0;       // pt; shortens and shifts every other line
  double ragged_fill = 0.9;
};

struct BrokenLine {
  std::u32string text;
  std::vector<std::uint8_t> emphasis;
  double offset = 0;   // pt from the left edge of the measure
  double measure = 0;  // pt available to this line
  double width = 0;    // pt realized
  double word_spacing = 1;
  double letter_spacing = 0;
  double space = 0;    // pt, natural width of one word space
  bool justified = false;
  bool hyphenated = false;
  bool overflow = false;
  bool last = false;
  bool loose = false;
};

namespace detail {

struct BreakWord {
  std::u32string text;
  std::vector<std::uint8_t> emphasis;
  double em = 0;
  bool broken = false;  // remainder of an emergency break
};

}  // namespace detail

inline std::vector<BrokenLine> break_paragraph(const StyledText& st, const BreakStyle& style, double measure,
                                               const FontMetrics& m, const Hyphenator* hyphenator = nullptr) {
  using detail::BreakWord;
  std::vector<BreakWord> words;
  {
    BreakWord w;
    for (std::size_t i = 0; i <= st.text.size(); ++i) {
      if (i == st.text.size() || st.text[i] == U' ') {
        if (!w.text.empty()) words.push_back(std::move(w));
        w = BreakWord{};
        continue;
      }
      w.text.push_back(st.text[i]);
      w.emphasis.push_back(st.emphasis[i]);
      w.em += m.advance(st.text[i]);
    }
  }
  std::vector<BrokenLine> lines;
  if (words.empty()) return lines;

  const bool justified = style.alignment == Alignment::Justified;
  const double size = style.size;
  const double space_em = m.advance(U' ');
  const double hyphen_em = m.advance(U'-');
  const double tight_ws = justified ? style.word_spacing.min : 1.0;
  const double tight_ls = justified ? style.letter_spacing.min : 0.0;
  const double ideal_ws = justified ? style.word_spacing.clamp(1.0) : 1.0;
  const double ideal_ls = justified ? style.letter_spacing.clamp(0.0) : 0.0;
  constexpr double eps = 1e-9;

  auto width_at = [&](double glyph_em, std::size_t spaces, std::size_t glyphs, double ws, double ls) {
    double gaps = glyphs > 0 ? double(glyphs - 1) : 0.0;
    return size * (glyph_em + double(spaces) * space_em * ws) + ls * size * gaps;
  };

  auto hyphen_points = [&](const std::u32string& w) {
    std::vector<std::size_t> out;
    if (!style.hyphenate || !hyphenator) return out;
    std::size_t a = 0, b = w.size();
    while (a < b && !utf8::is_letter(w[a])) ++a;
    while (b > a && !utf8::is_letter(w[b - 1])) --b;
    for (std::size_t i = a; i < b; ++i)
      if (!utf8::is_letter(w[i]) && w[i] != U'\'' && w[i] != U'’') return out;
    for (auto p : hyphenator->points(std::u32string_view(w).substr(a, b - a))) out.push_back(a + p);
    return out;
  };

  auto prefix_em = [&](const BreakWord& w, std::size_t k) {
    double em = 0;
    for (std::size_t i = 0; i < k; ++i) em += m.advance(w.text[i]);
    return em;
  };

  auto split_word = [&](BreakWord& w, std::size_t k, bool hyphen) {
    BreakWord head;
    head.text = w.text.substr(0, k);
    head.emphasis.assign(w.emphasis.begin(), w.emphasis.begin() + std::ptrdiff_t(k));
    head.broken = w.broken;
    if (hyphen) {
      head.text.push_back(U'-');
      head.emphasis.push_back(head.emphasis.empty() ? 0 : head.emphasis.back());
    }
    BreakWord tail;
    tail.text = w.text.substr(k);
    tail.emphasis.assign(w.emphasis.begin() + std::ptrdiff_t(k), w.emphasis.end());
    tail.broken = !hyphen;
    for (char32_t c : head.text) head.em += m.advance(c);
    for (char32_t c : tail.text) tail.em += m.advance(c);
    w = std::move(tail);
    return head;
  };

  std::size_t pos = 0;
  while (pos < words.size()) {
    double offset = lines.empty() ? style.first_indent : style.hanging;
    double meas = measure - offset;
    if (meas <= 0) {
      offset = 0;
      meas = measure;
    }

    std::vector<BreakWord> line_words;
    bool hyphenated = false;
    bool overflow = false;
    double g = 0;
    std::size_t glyphs = 0;
    std::size_t end = pos;
    while (end < words.size()) {
      double g2 = g + words[end].em;
      std::size_t gl2 = glyphs + words[end].text.size() + (end > pos ? 1 : 0);
      if (width_at(g2, end - pos, gl2, tight_ws, tight_ls) <= meas + eps) {
        g = g2;
        glyphs = gl2;
        ++end;
      } else {
        break;
      }
    }

    // Tries to end the line with a hyphenated prefix of words[end].
    auto try_hyphenate = [&]() -> bool {
      if (end >= words.size()) return false;
      auto& w = words[end];
      auto points = hyphen_points(w.text);
      std::size_t spaces = end - pos;
      for (auto it = points.rbegin(); it != points.rend(); ++it) {
        std::size_t k = *it;
        double em = g + prefix_em(w, k) + hyphen_em;
        std::size_t gl = glyphs + (end > pos ? 1 : 0) + k + 1;
        if (width_at(em, spaces, gl, tight_ws, tight_ls) <= meas + eps) {
          for (std::size_t i = pos; i < end; ++i) line_words.push_back(words[i]);
          line_words.push_back(split_word(w, k, true));
          pos = end;
          hyphenated = true;
          return true;
        }
      }
      return false;
    };

    bool last = false;
    if (end == pos) {
      // The next word alone is wider than the measure.
      if (!try_hyphenate()) {
        auto& w = words[pos];
        std::size_t k = 1;
        double em = m.advance(w.text[0]);
        while (k < w.text.size()) {
          double em2 = em + m.advance(w.text[k]);
          if (width_at(em2, 0, k + 1, tight_ws, tight_ls) > meas + eps) break;
          em = em2;
          ++k;
        }
        line_words.push_back(split_word(w, k, false));
        overflow = true;
      }
    } else {
      last = end == words.size();
      bool attempted = false;
      if (!last && style.hyphenate && hyphenator) {
        bool want;
        if (justified) {
          double stretched = width_at(g, end - pos - 1, glyphs, style.word_spacing.max, style.letter_spacing.max);
          want = stretched < meas - 1e-6;
        } else {
          want = width_at(g, end - pos - 1, glyphs, 1.0, 0.0) < style.ragged_fill * meas;
        }
        if (want) attempted = try_hyphenate();
      }
      if (!attempted) {
        for (std::size_t i = pos; i < end; ++i) line_words.push_back(std::move(words[i]));
        pos = end;
      }
    }

    BrokenLine line;
    double lg = 0;
    std::size_t spaces = line_words.size() - 1;
    for (std::size_t i = 0; i < line_words.size(); ++i) {
      const auto& w = line_words[i];
      if (i > 0) {
        line.text.push_back(U' ');
        std::uint8_t prev = line_words[i - 1].emphasis.back();
        line.emphasis.push_back(prev == w.emphasis.front() ? prev : 0);
      }
      line.text += w.text;
      line.emphasis.insert(line.emphasis.end(), w.emphasis.begin(), w.emphasis.end());
      lg += w.em;
      overflow = overflow || w.broken;
    }
    std::size_t n = line.text.size();
    line.measure = meas;
    line.hyphenated = hyphenated;
    line.overflow = overflow;
    line.last = last && !hyphenated;

    double ws = 1.0, ls = 0.0;
    if (justified) {
      ws = ideal_ws;
      ls = ideal_ls;
      double natural = width_at(lg, spaces, n, ws, ls);
      bool stretch = !line.last && !overflow;
      if (stretch || natural > meas + eps) {
        if (spaces > 0) ws = style.word_spacing.clamp(1.0 + (meas - width_at(lg, spaces, n, 1.0, 0.0)) / (size * double(spaces) * space_em));
        double rest = meas - width_at(lg, spaces, n, ws, 0.0);
        ls = n > 1 ? style.letter_spacing.clamp(rest / (size * double(n - 1))) : 0.0;
      }
      line.justified = stretch;
      line.loose = stretch && width_at(lg, spaces, n, ws, ls) < meas - 1e-6;
    } else if (overflow && width_at(lg, spaces, n, 1.0, 0.0) > meas + eps) {
      ls = style.letter_spacing.clamp((meas - width_at(lg, spaces, n, 1.0, 0.0)) / (size * double(std::max<std::size_t>(n, 2) - 1)));
    }
    line.word_spacing = ws;
    line.letter_spacing = ls;
    line.space = size * space_em;
    line.width = width_at(lg, spaces, n, ws, ls);
    switch (style.alignment) {
      case Alignment::Right: line.offset = offset + (meas - line.width); break;
      case Alignment::Centre: line.offset = offset + (meas - line.width) / 2; break;
      default: line.offset = offset; break;
    }
    lines.push_back(std::move(line));
  }
  return lines;
}

/// Breaks a manuscript paragraph using the bundled hyphenator for `language`.
inline std::vector<BrokenLine> break_paragraph(const Paragraph& p, const BreakStyle& style, double measure,
                                               const FontMetrics& m, std::string_view language) {
  auto h = style.hyphenate ? hyphenator_for(language) : nullptr;
  return break_paragraph(styled_text(p.runs), style, measure, m, h.get());
}

}  // namespace folio
