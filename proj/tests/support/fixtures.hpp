#pragma once

// Shared test fixtures: sample paths, the bundled font library, scratch
// directories and small manuscript builders.

#include <atomic>
#include <filesystem>
#include <memory>
#include <string>

#include <unistd.h>

#include <fmt/format.h>

#include "folio/folio.hpp"

namespace fixtures {

namespace fs = std::filesystem;

inline fs::path samples() { return FOLIO_SAMPLES; }

inline const std::string& contos_source() {
  static const std::string text = folio::read_file(samples() / "contos.md");
  return text;
}

inline const std::string& garden_source() {
  static const std::string text = folio::read_file(samples() / "garden.md");
  return text;
}

inline const std::string& reference_settings_text() {
  static const std::string text = folio::read_file(samples() / "reference-settings.json");
  return text;
}

inline folio::FontLibrary& library() {
  static folio::FontLibrary lib(folio::FontMap::load(folio::data_dir() / "fonts" / "fontmap.json"));
  return lib;
}

inline const folio::Manuscript& contos() {
  static const folio::Manuscript m = folio::parse_manuscript(contos_source(), samples() / "images");
  return m;
}

/// A fresh, empty directory under the system temp dir.
inline fs::path scratch(const std::string& name) {
  static std::atomic<int> counter{0};
  auto dir = fs::temp_directory_path() / fmt::format("folio-test-{}-{}-{}", name, ::getpid(), counter++);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

/// `n` words of lorem-like filler drawn deterministically from a small list.
inline std::string filler(int n, std::uint64_t seed = 1) {
  static const char* words[] = {"garden", "river",  "the",       "of",     "quietly", "a",     "stone",
                                "bridge", "window", "afternoon", "light",  "and",     "slow",  "walked",
                                "under",  "in",     "remember",  "letter", "shadow",  "paper", "imagination"};
  folio::SeededStream s(seed);
  std::string out;
  for (int i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += words[s.index(std::size(words))];
  }
  return out;
}

/// Uniform-metrics typefaces, so widths are easy to reason about.
inline folio::Typefaces uniform_faces(double em = 0.5) { return folio::uniform_typefaces(em); }

}  // namespace fixtures
