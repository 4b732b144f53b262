#pragma once

// Experimental page features. Selection happens while planning; application
// adds background-layer decoration to a paginated document and never touches
// the content layer. The random paragraph indent is realized by the paginator
// because it changes line breaking.

#include "folio/layout.hpp"
#include "folio/random.hpp"
#include "folio/rules.hpp"
#include "folio/settings.hpp"

namespace folio {

/// Always consumes the same number of draws (one per feature, one for the
/// gradient margins, one for the colour) so later draws stay aligned.
inline FeatureSet select_features(const FeatureSet& requested, bool surprise, SeededStream& stream,
                                  const RuleSet& rules) {
  FeatureSet fs;
  for (std::size_t i = 0; i < kFeatureNames.size(); ++i) {
    bool drawn = stream.bernoulli(rules.feature_probability);
    fs.flag(i) = requested.flag(i) || (surprise && drawn);
  }
  static constexpr GradientMargin kMargins[] = {GradientMargin::Inner, GradientMargin::Outer, GradientMargin::Both};
  auto gradient = kMargins[stream.index(3)];
  auto color = rules.cover_colors[stream.index(rules.cover_colors.size())].cmyk;
  if (fs.margin_gradient) fs.gradient_margins = requested.gradient_margins.value_or(gradient);
  if (fs.any()) fs.color = requested.color.value_or(color);
  return fs;
}

inline const Cmyk kWhite{0, 0, 0, 0};

inline LayoutDocument apply_features(LayoutDocument doc, const FeatureSet& fs, SeededStream& /*stream*/) {
  if (!fs.half_page_background && !fs.margin_gradient) return doc;
  Cmyk color = fs.color.value_or(kWhite);
  for (auto& page : doc.pages) {
    if (page.kind == PageKind::Cover) continue;
    std::vector<Frame> decor;
    double w = doc.width, h = doc.height;
    if (fs.half_page_background) {
      Frame f;
      f.kind = FrameKind::Decor;
      f.layer = Layer::Background;
      f.role = "half-page-background";
      f.rect = page.recto ? Rect{w / 2, 0, w / 2, h} : Rect{0, 0, w / 2, h};
      f.fill = color;
      decor.push_back(f);
    }
    if (fs.margin_gradient) {
      auto gm = fs.gradient_margins.value_or(GradientMargin::Both);
      const Rect& b = page.block;
      // colour sits at the page edge and fades to white at the text block
      auto inner = [&] {
        Frame f;
        f.kind = FrameKind::Decor;
        f.layer = Layer::Background;
        f.role = "gradient-inner";
        f.fill = color;
        f.fill_to = kWhite;
        if (page.recto) {
          f.rect = {0, 0, b.x, h};
          f.gradient = "right";
        } else {
          f.rect = {b.right(), 0, w - b.right(), h};
          f.gradient = "left";
        }
        return f;
      };
      auto outer = [&] {
        Frame f;
        f.kind = FrameKind::Decor;
        f.layer = Layer::Background;
        f.role = "gradient-outer";
        f.fill = color;
        f.fill_to = kWhite;
        if (page.recto) {
          f.rect = {b.right(), 0, w - b.right(), h};
          f.gradient = "left";
        } else {
          f.rect = {0, 0, b.x, h};
          f.gradient = "right";
        }
        return f;
      };
      if (gm == GradientMargin::Inner || gm == GradientMargin::Both) decor.push_back(inner());
      if (gm == GradientMargin::Outer || gm == GradientMargin::Both) decor.push_back(outer());
    }
    // background frames go first so document order matches paint order
    page.frames.insert(page.frames.begin(), decor.begin(), decor.end());
  }
  return doc;
}

}  // namespace folio
