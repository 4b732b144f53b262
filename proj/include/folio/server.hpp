#pragma once

// HTTP facade over the engine. BookService holds the book store and does the
// work; install_routes binds it to an httplib server.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>
#include <httplib.h>
#include <json.hpp>

#include "folio/error.hpp"
#include "folio/pipeline.hpp"
#include "folio/render.hpp"
#include "folio/rules.hpp"
#include "folio/settings.hpp"

namespace folio {

struct BookRecord {
  std::string id;
  int revision = 1;
  std::string source;  // manuscript text
  std::filesystem::path dir;
  nlohmann::json pins = nlohmann::json::object();
  std::uint64_t seed = 0;
  DesignSettings settings;
  std::string settings_text;
  std::string layout_text;
  std::vector<std::string> svgs;
  std::vector<std::string> warnings;
};

struct UploadedFile {
  std::string filename;
  std::string content;
};

inline int status_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
    case ErrorKind::Validation:
    case ErrorKind::Constraint: return 400;
    case ErrorKind::Infeasible:
    case ErrorKind::Check: return 422;
    case ErrorKind::Io: return 500;
  }
  return 500;
}

inline nlohmann::json error_json(const Error& e) {
  nlohmann::json j{{"error", e.what()}, {"kind", std::string(to_string(e.kind()))}};
  if (!e.field().empty()) j["field"] = e.field();
  return j;
}

class BookService {
 public:
  BookService(RuleSet rules, std::filesystem::path spill_dir, std::shared_ptr<FontLibrary> library = nullptr)
      : rules_(std::move(rules)), spill_(std::move(spill_dir)), library_(std::move(library)) {
    if (!library_) library_ = std::make_shared<FontLibrary>(FontMap::load(data_dir() / "fonts" / "fontmap.json"));
    std::filesystem::create_directories(spill_);
  }

  const RuleSet& rules() const { return rules_; }

  /// Generates a new book. `constraints` is settings-file JSON text (may be
  /// empty); its seed, when present, seeds the run.
  std::shared_ptr<const BookRecord> create(const std::string& manuscript, const std::vector<UploadedFile>& images,
                                           const std::string& constraints) {
    auto rec = std::make_shared<BookRecord>();
    rec->id = next_id();
    rec->dir = spill_ / rec->id;
    rec->source = manuscript;
    if (!utf8::trim(constraints).empty()) {
      rec->pins = parse_settings_json(constraints);
      if (!rec->pins.is_object()) throw Error(ErrorKind::Parse, "constraints must be a JSON object", "constraints");
    }
    for (const auto& f : images) {
      auto name = std::filesystem::path(f.filename).filename();
      if (name.empty() || name == "." || name == "..")
        throw Error(ErrorKind::Parse, "uploaded image has no file name", "images");
      write_text(rec->dir / "images" / name, f.content);
    }
    std::optional<std::uint64_t> seed;
    if (rec->pins.contains("seed") && rec->pins["seed"].is_number_unsigned())
      seed = rec->pins["seed"].get<std::uint64_t>();
    run(*rec, rec->pins, seed.value_or(fresh_seed()));
    std::lock_guard lock(mutex_);
    books_[rec->id] = rec;
    return rec;
  }

  /// A new revision with a fresh seed. keep_settings pins the whole current
  /// design; otherwise only the original pins carry over.
  std::shared_ptr<const BookRecord> regenerate(const std::string& id, bool keep_settings,
                                               std::optional<std::uint64_t> seed = std::nullopt) {
    auto old = find(id);
    if (!old) return nullptr;
    auto rec = std::make_shared<BookRecord>(*old);
    rec->revision = old->revision + 1;
    nlohmann::json pins = old->pins;
    if (keep_settings) {
      pins = nlohmann::json::parse(old->settings_text);
      pins.erase("seed");
    }
    run(*rec, pins, seed.value_or(fresh_seed()));
    rec->pins = old->pins;
    std::lock_guard lock(mutex_);
    books_[id] = rec;
    return rec;
  }

  std::shared_ptr<const BookRecord> find(const std::string& id) const {
    std::lock_guard lock(mutex_);
    auto it = books_.find(id);
    if (it != books_.end()) return it->second;
    return nullptr;
  }

  nlohmann::json summary(const BookRecord& r) const {
    return {{"bookId", r.id},
            {"revision", r.revision},
            {"seed", r.seed},
            {"settings", nlohmann::json::parse(r.settings_text)},
            {"pageCount", r.svgs.size()},
            {"warnings", r.warnings}};
  }

  nlohmann::json fonts_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : rules_.pairings) {
      nlohmann::json types = nlohmann::json::array();
      for (auto t : p.book_types) types.push_back(std::string(to_string(t)));
      out.push_back({{"id", p.id},
                     {"title", {{"family", p.title.family}, {"weight", p.title.weight}}},
                     {"body", {{"family", p.body.family}, {"weight", p.body.weight}}},
                     {"leading", p.leading},
                     {"bookTypes", types}});
    }
    return out;
  }

  nlohmann::json validate(const std::string& text) const {
    std::vector<FieldError> errors;
    try {
      errors = validate_settings(parse_settings_json(text), rules_);
    } catch (const Error& e) {
      errors.push_back({e.field().empty() ? "settings" : e.field(), e.what()});
    }
    nlohmann::json list = nlohmann::json::array();
    for (const auto& e : errors) list.push_back({{"field", e.field}, {"message", e.message}});
    return {{"valid", errors.empty()}, {"errors", list}};
  }

 private:
  void run(BookRecord& rec, const nlohmann::json& pins, std::uint64_t seed) {
    auto c = pins.empty() ? Constraints{} : constraints_from_json(pins, rules_);
    Manuscript ms;
    try {
      ms = parse_manuscript(rec.source, rec.dir / "images");
    } catch (const Error& e) {
      // an image the upload did not include is the client's mistake
      if (e.kind() != ErrorKind::Io) throw;
      throw Error(ErrorKind::Validation, e.what(), "images");
    }
    auto book = generate(ms, c, seed, rules_, *library_);
    rec.seed = seed;
    rec.settings = book.settings;
    rec.settings_text = export_settings(book.settings);
    rec.layout_text = write_layout_json(book.doc);
    rec.svgs = render_svg(book.doc);
    rec.warnings = book.doc.warnings;
    JobRecord job;
    job.pins = pins;
    job.seed = seed;
    write_outputs(book, rec.dir, job, rec.source);
  }

  std::string next_id() {
    std::lock_guard lock(mutex_);
    ++counter_;
    return fmt::format("bk{:012x}", SeededStream::mix(counter_ ^ salt_) & 0xFFFFFFFFFFFFULL);
  }

  std::uint64_t fresh_seed() {
    std::lock_guard lock(mutex_);
    return (std::uint64_t(rd_()) << 32 | rd_()) & 0xFFFFFFFFULL;
  }

  RuleSet rules_;
  std::filesystem::path spill_;
  std::shared_ptr<FontLibrary> library_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<const BookRecord>> books_;
  std::uint64_t counter_ = 0;
  std::random_device rd_;
  std::uint64_t salt_ = (std::uint64_t(std::random_device{}()) << 32) | std::random_device{}();
};

namespace detail {

inline void send_json(httplib::Response& res, int status, const nlohmann::json& j) {
  res.status = status;
  res.set_content(j.dump(2) + "\n", "application/json");
}

template <class F>
void guarded(httplib::Response& res, F&& f) {
  try {
    f();
  } catch (const Error& e) {
    send_json(res, status_for(e.kind()), error_json(e));
  } catch (const nlohmann::json::exception& e) {
    send_json(res, 400, {{"error", e.what()}, {"kind", "parse"}});
  } catch (const std::exception& e) {
    send_json(res, 500, {{"error", e.what()}, {"kind", "internal"}});
  }
}

}  // namespace detail

inline void install_routes(httplib::Server& server, BookService& svc) {
  using detail::guarded;
  using detail::send_json;
  using httplib::Request;
  using httplib::Response;

  server.Post("/api/books", [&svc](const Request& req, Response& res) {
    guarded(res, [&] {
      std::string manuscript, constraints;
      std::vector<UploadedFile> images;
      if (req.is_multipart_form_data()) {
        if (!req.has_file("manuscript"))
          throw Error(ErrorKind::Parse, "multipart field 'manuscript' is required", "manuscript");
        manuscript = req.get_file_value("manuscript").content;
        if (req.has_file("constraints")) constraints = req.get_file_value("constraints").content;
        for (const auto& f : req.get_file_values("images")) images.push_back({f.filename, f.content});
      } else {
        auto j = nlohmann::json::parse(req.body);
        manuscript = j.at("manuscript").get<std::string>();
        if (j.contains("constraints")) constraints = j["constraints"].dump();
      }
      auto rec = svc.create(manuscript, images, constraints);
      send_json(res, 201, svc.summary(*rec));
    });
  });

  server.Post(R"(/api/books/([^/]+)/regenerate)", [&svc](const Request& req, Response& res) {
    guarded(res, [&] {
      bool keep = false;
      std::optional<std::uint64_t> seed;
      if (!utf8::trim(req.body).empty()) {
        auto j = nlohmann::json::parse(req.body);
        keep = j.value("keepSettings", false);
        if (j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
      }
      auto rec = svc.regenerate(req.matches[1], keep, seed);
      if (!rec) return send_json(res, 404, {{"error", "unknown book id"}});
      send_json(res, 200, svc.summary(*rec));
    });
  });

  server.Get(R"(/api/books/([^/]+)/pages/(\d+)\.svg)", [&svc](const Request& req, Response& res) {
    guarded(res, [&] {
      auto rec = svc.find(req.matches[1]);
      if (!rec) return send_json(res, 404, {{"error", "unknown book id"}});
      auto n = std::stoul(req.matches[2]);
      if (n < 1 || n > rec->svgs.size()) return send_json(res, 404, {{"error", "no such page"}});
      res.set_content(rec->svgs[n - 1], "image/svg+xml");
    });
  });

  server.Get(R"(/api/books/([^/]+)/settings)", [&svc](const Request& req, Response& res) {
    auto rec = svc.find(req.matches[1]);
    if (!rec) return send_json(res, 404, {{"error", "unknown book id"}});
    res.set_content(rec->settings_text, "application/json");
  });

  server.Get(R"(/api/books/([^/]+)/layout)", [&svc](const Request& req, Response& res) {
    auto rec = svc.find(req.matches[1]);
    if (!rec) return send_json(res, 404, {{"error", "unknown book id"}});
    res.set_content(rec->layout_text, "application/json");
  });

  server.Get("/api/rules", [&svc](const Request&, Response& res) {
    res.set_content(serialize_rules(svc.rules()), "application/json");
  });

  server.Get("/api/fonts", [&svc](const Request&, Response& res) { send_json(res, 200, svc.fonts_json()); });

  server.Post("/api/settings/validate", [&svc](const Request& req, Response& res) {
    auto j = svc.validate(req.body);
    send_json(res, j["valid"].get<bool>() ? 200 : 400, j);
  });
}

}  // namespace folio
