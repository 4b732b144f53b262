// folio command-line entry point.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>

#include "folio/folio.hpp"
#include "folio/server.hpp"

namespace fs = std::filesystem;
using folio::Error;
using folio::ErrorKind;

namespace {

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse: return 3;
    case ErrorKind::Validation:
    case ErrorKind::Constraint: return 4;
    case ErrorKind::Infeasible: return 5;
    case ErrorKind::Io: return 6;
    case ErrorKind::Check: return 7;
  }
  return 1;
}

std::uint64_t random_seed() {
  std::random_device rd;
  return (std::uint64_t(rd()) << 32 | rd()) & 0xFFFFFFFFULL;
}

struct GenerateArgs {
  std::string input, images, settings, rules, language, page, margins, out;
  std::optional<std::uint64_t> seed;
  std::optional<int> columns;
  std::vector<std::string> features;
  bool toc = false, colophon = false, surprise = false;
};

std::vector<double> parse_numbers(const std::string& text, char sep, std::size_t n, const char* flag) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(sep, start);
    if (end == std::string::npos) end = text.size();
    try {
      std::size_t used = 0;
      auto part = text.substr(start, end - start);
      out.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, fmt::format("{} expects {} numbers separated by '{}'", flag, n, sep), flag);
    }
    start = end + 1;
  }
  if (out.size() != n) throw Error(ErrorKind::Parse, fmt::format("{} expects {} numbers separated by '{}'", flag, n, sep), flag);
  return out;
}

/// Settings-file pins from --settings with the flags laid over them.
nlohmann::json collect_pins(const GenerateArgs& a) {
  nlohmann::json pins = nlohmann::json::object();
  if (!a.settings.empty()) {
    pins = folio::parse_settings_json(folio::read_file(a.settings));
    if (!pins.is_object()) throw Error(ErrorKind::Parse, "settings must be a JSON object", "settings");
  }
  if (a.toc) pins["toc"] = true;
  if (a.colophon) pins["colophon"] = true;
  if (!a.language.empty()) pins["language"] = a.language;
  if (a.surprise) pins["surprise"] = true;
  if (!a.features.empty()) pins["requestedFeatures"] = a.features;
  if (!a.page.empty()) {
    auto wh = parse_numbers(a.page, 'x', 2, "--page");
    pins["page"] = {{"w", wh[0]}, {"h", wh[1]}};
  }
  if (!a.margins.empty()) {
    auto m = parse_numbers(a.margins, ',', 4, "--margins");
    pins["margins"] = {{"top", m[0]}, {"inside", m[1]}, {"bottom", m[2]}, {"outside", m[3]}};
  }
  if (a.columns) pins["grid"]["columns"] = *a.columns;
  return pins;
}

void report(const folio::Book& b, const fs::path& out) {
  for (const auto& w : b.doc.warnings) std::fprintf(stderr, "folio: warning: %s\n", w.c_str());
  fmt::print("{}: {} pages, {} {}x{} mm, {} column(s), body {}/{} pt, seed {}\n", out.string(), b.doc.pages.size(),
             folio::to_string(b.stats.book_type), folio::format_number(b.settings.page_width),
             folio::format_number(b.settings.page_height), b.settings.grid.columns,
             folio::format_number(b.settings.body.size), folio::format_number(b.settings.body.leading),
             b.settings.seed);
}

void run_job(const std::string& source, const fs::path& image_dir, const nlohmann::json& pins, std::uint64_t seed,
             const folio::RuleSet& rules, const fs::path& out) {
  folio::FontLibrary library(folio::FontMap::load(folio::data_dir() / "fonts" / "fontmap.json"));
  auto c = pins.empty() ? folio::Constraints{} : folio::constraints_from_json(pins, rules);
  auto ms = folio::parse_manuscript(source, image_dir);
  auto book = folio::generate(ms, c, seed, rules, library);
  folio::JobRecord job;
  job.pins = pins;
  job.seed = seed;
  folio::write_outputs(book, out, job, source);
  report(book, out);
}

int cmd_generate(const GenerateArgs& a) {
  auto rules = folio::active_rules(a.rules);
  auto pins = collect_pins(a);
  std::uint64_t seed = a.seed ? *a.seed : pins.contains("seed") ? pins["seed"].get<std::uint64_t>() : random_seed();
  pins.erase("seed");
  fs::path input(a.input);
  if (!fs::exists(input)) throw Error(ErrorKind::Io, fmt::format("input '{}' not found", a.input));
  fs::path images = a.images.empty() ? input.parent_path() / "images" : fs::path(a.images);
  run_job(folio::read_file(input), images, pins, seed, rules, a.out);
  return 0;
}

int cmd_regenerate(const std::string& out, const std::string& rules_path, std::optional<std::uint64_t> seed) {
  auto rules = folio::active_rules(rules_path);
  fs::path dir(out);
  auto job = folio::read_job(dir);
  auto source = folio::read_file(dir / job.manuscript_file);
  run_job(source, dir / "images", job.pins, seed ? *seed : random_seed(), rules, dir);
  return 0;
}

int cmd_evaluate(const std::string& dir, const std::string& rules_path) {
  auto rules = folio::active_rules(rules_path);
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && e.path().filename() == "settings.json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.size() < 2) throw Error(ErrorKind::Io, fmt::format("'{}' holds fewer than two settings.json files", dir));
  std::vector<folio::AttributeVector> vs;
  for (const auto& f : files) {
    auto s = folio::design_from_settings(folio::read_file(f), rules);
    vs.push_back(folio::attribute_vector(s, rules));
    fmt::print("{:<40} {:>9} {:>8} {:>2} {:<32} {}\n", fs::relative(f, dir).string(), s.page_id(),
               folio::to_string(s.orientation()), s.grid.columns, s.pairing, folio::to_string(s.body.alignment));
  }
  auto r = folio::coherence_report(vs);
  fmt::print("\n{:<18} {:>6} {:>9}\n", "slot", "shared", "distance");
  for (const auto& slot : r.slots) fmt::print("{:<18} {:>6} {:>9.3f}\n", slot.name, slot.shared ? "yes" : "no", slot.mean_distance);
  fmt::print("\ndesigns    {}\ndiversity  {:.4f}\ncoherence  {:.4f}\n", vs.size(), r.diversity, r.score);
  return 0;
}

int cmd_validate_rules(const std::string& path) {
  auto rules = folio::load_rules(folio::read_file(path));
  fmt::print("{}: ok, {} page sizes, {} pairings, {} header layouts\n", path, rules.size_options.size(),
             rules.pairings.size(), rules.header_layouts.size());
  return 0;
}

int cmd_serve(int port, const std::string& host, const std::string& spill, const std::string& rules_path,
              const std::string& static_dir) {
  folio::BookService service(folio::active_rules(rules_path), spill);
  httplib::Server server;
  folio::install_routes(server, service);
  if (!static_dir.empty() && !server.set_mount_point("/", static_dir))
    throw Error(ErrorKind::Io, fmt::format("static directory '{}' not found", static_dir));
  fmt::print("folio: serving on http://{}:{}/\n", host, port);
  std::fflush(stdout);
  if (!server.listen(host, port)) throw Error(ErrorKind::Io, fmt::format("cannot listen on {}:{}", host, port));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"folio: generative book design and typesetting"};
  app.require_subcommand(1);

  GenerateArgs g;
  auto* gen = app.add_subcommand("generate", "design and typeset a manuscript");
  gen->add_option("--input", g.input, "manuscript (Markdown)")->required();
  gen->add_option("--images", g.images, "image directory (default: <input dir>/images)");
  gen->add_option("--seed", g.seed, "random seed");
  gen->add_option("--settings", g.settings, "settings file whose fields are pinned");
  gen->add_option("--rules", g.rules, "rule base (default: $FOLIO_RULES or the bundled rules)");
  gen->add_flag("--toc", g.toc, "add a table of contents");
  gen->add_flag("--colophon", g.colophon, "add a colophon");
  gen->add_option("--language", g.language, "content language tag");
  gen->add_flag("--surprise", g.surprise, "let the planner pick decorative features");
  gen->add_option("--feature", g.features, "request a feature (repeatable)");
  gen->add_option("--page", g.page, "page size WxH in mm");
  gen->add_option("--margins", g.margins, "margins top,inside,bottom,outside in mm");
  gen->add_option("--columns", g.columns, "column count");
  gen->add_option("--out", g.out, "output directory")->required();

  std::string regen_out, regen_rules;
  std::optional<std::uint64_t> regen_seed;
  auto* regen = app.add_subcommand("regenerate", "re-run a previous job with a fresh seed");
  regen->add_option("--out", regen_out, "output directory of a previous generate")->required();
  regen->add_option("--seed", regen_seed, "seed instead of a fresh one");
  regen->add_option("--rules", regen_rules, "rule base");

  std::string eval_dir, eval_rules;
  auto* eval = app.add_subcommand("evaluate", "diversity and coherence of a set of designs");
  eval->add_option("--dir", eval_dir, "directory searched for settings.json files")->required();
  eval->add_option("--rules", eval_rules, "rule base");

  std::string vr_rules;
  auto* vr = app.add_subcommand("validate-rules", "load and check a rule base");
  vr->add_option("--rules", vr_rules, "rule file")->required();

  int port = 8080;
  std::string host = "127.0.0.1", spill = "folio-books", serve_rules, static_dir;
  auto* serve = app.add_subcommand("serve", "start the HTTP server");
  serve->add_option("--port", port, "port");
  serve->add_option("--host", host, "bind address");
  serve->add_option("--spill-dir", spill, "directory for generated books");
  serve->add_option("--rules", serve_rules, "rule base");
  serve->add_option("--static", static_dir, "directory served at /");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*gen) return cmd_generate(g);
    if (*regen) return cmd_regenerate(regen_out, regen_rules, regen_seed);
    if (*eval) return cmd_evaluate(eval_dir, eval_rules);
    if (*vr) return cmd_validate_rules(vr_rules);
    if (*serve) return cmd_serve(port, host, spill, serve_rules, static_dir);
  } catch (const Error& e) {
    std::fprintf(stderr, "folio: %s error: %s\n", std::string(folio::to_string(e.kind())).c_str(), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "folio: error: %s\n", e.what());
    return 1;
  }
  return 2;
}
