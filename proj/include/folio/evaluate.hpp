#pragma once

// Set-level metrics over designs: a fixed-order attribute fingerprint per
// design, a pairwise diversity score, and a coherence report naming the
// slots a set shares.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "folio/error.hpp"
#include "folio/rules.hpp"
#include "folio/settings.hpp"

namespace folio {

inline constexpr std::array<std::string_view, 8> kCategoricalSlots = {
    "page", "orientation", "pairing", "bodyAlignment", "headerLayout", "paragraphMark", "captionPlacement",
    "features"};
inline constexpr std::array<std::string_view, 4> kNumericSlots = {"margins", "columns", "bodySize", "leadingRatio"};
inline constexpr std::size_t kSlotCount = kCategoricalSlots.size() + kNumericSlots.size();

struct AttributeVector {
  std::array<std::string, 8> categorical;
  std::array<double, 4> numeric{};  // each in [0, 1]
  bool operator==(const AttributeVector&) const = default;
};

/// Largest column count any rule-base page admits: the widest page at the
/// smallest margins divided by the narrowest column.
inline int max_columns(const RuleSet& rules) {
  int best = 1;
  for (const auto& o : rules.size_options) {
    double block = o.width - 2 * rules.inside_outside_margin.min;
    if (rules.column_width.min > 0) best = std::max(best, int(std::floor(block / rules.column_width.min)));
  }
  return best;
}

inline AttributeVector attribute_vector(const DesignSettings& s, const RuleSet& rules) {
  AttributeVector v;
  std::string features;
  for (const auto& n : s.features.names()) features += (features.empty() ? "" : ",") + n;
  v.categorical = {s.page_id(),
                   std::string(to_string(s.orientation())),
                   s.pairing,
                   std::string(to_string(s.body.alignment)),
                   s.header_layout,
                   std::string(to_string(s.body.paragraph_mark)),
                   std::string(to_string(s.caption.placement)),
                   features};
  const auto& tb = rules.top_bottom_margin;
  const auto& io = rules.inside_outside_margin;
  v.numeric[0] = (tb.normalize(s.margins.top) + tb.normalize(s.margins.bottom) + io.normalize(s.margins.inside) +
                  io.normalize(s.margins.outside)) /
                 4;
  int cmax = max_columns(rules);
  v.numeric[1] = cmax > 1 ? std::clamp(double(s.grid.columns - 1) / double(cmax - 1), 0.0, 1.0) : 0.0;
  v.numeric[2] = rules.font_size.range.normalize(s.body.size);
  v.numeric[3] = rules.leading.range.normalize(s.body.leading / s.body.size);
  return v;
}

/// Per-slot distance: 0/1 for categorical slots, absolute difference for
/// numeric ones.
inline std::array<double, kSlotCount> slot_distances(const AttributeVector& a, const AttributeVector& b) {
  std::array<double, kSlotCount> d{};
  for (std::size_t i = 0; i < a.categorical.size(); ++i) d[i] = a.categorical[i] == b.categorical[i] ? 0.0 : 1.0;
  for (std::size_t i = 0; i < a.numeric.size(); ++i)
    d[a.categorical.size() + i] = std::abs(a.numeric[i] - b.numeric[i]);
  return d;
}

inline double pair_distance(const AttributeVector& a, const AttributeVector& b) {
  double sum = 0;
  for (double x : slot_distances(a, b)) sum += x;
  return sum / double(kSlotCount);
}

/// Mean pairwise distance over all unordered pairs, in [0, 1].
inline double diversity_score(const std::vector<AttributeVector>& vs) {
  if (vs.size() < 2) throw Error(ErrorKind::Validation, "diversity needs at least two designs");
  double sum = 0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      sum += pair_distance(vs[i], vs[j]);
      ++pairs;
    }
  return sum / double(pairs);
}

struct SlotReport {
  std::string name;
  bool shared = false;
  double mean_distance = 0;  // over all pairs
};

struct CoherenceReport {
  std::vector<SlotReport> slots;  // fixed slot order
  double score = 0;               // 1 - diversity
  double diversity = 0;

  bool shared(std::string_view name) const {
    for (const auto& s : slots)
      if (s.name == name) return s.shared;
    return false;
  }
};

inline std::string slot_name(std::size_t i) {
  return std::string(i < kCategoricalSlots.size() ? kCategoricalSlots[i] : kNumericSlots[i - kCategoricalSlots.size()]);
}

inline CoherenceReport coherence_report(const std::vector<AttributeVector>& vs) {
  if (vs.size() < 2) throw Error(ErrorKind::Validation, "coherence needs at least two designs");
  CoherenceReport r;
  std::array<double, kSlotCount> sums{};
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      auto d = slot_distances(vs[i], vs[j]);
      for (std::size_t k = 0; k < kSlotCount; ++k) sums[k] += d[k];
      ++pairs;
    }
  for (std::size_t k = 0; k < kSlotCount; ++k) {
    double mean = sums[k] / double(pairs);
    r.slots.push_back({slot_name(k), sums[k] == 0.0, mean});
  }
  r.diversity = diversity_score(vs);
  r.score = 1.0 - r.diversity;
  return r;
}

/// The slots that make a series look like one design: page, margins, grid,
/// pairing, alignment, header layout and features.
inline constexpr std::array<std::string_view, 7> kStructuralSlots = {"page",          "margins",      "columns",
                                                                     "pairing",       "bodyAlignment", "headerLayout",
                                                                     "features"};

}  // namespace folio
