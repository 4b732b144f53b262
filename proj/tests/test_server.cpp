// HTTP API exercised through a real socket.

#include <future>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>
#include <httplib.h>
#include <json.hpp>

#include "folio/server.hpp"
#include "support/fixtures.hpp"

using namespace folio;
using nlohmann::json;

namespace {

class ServerTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    service_ = new BookService(default_rules(), fixtures::scratch("server"));
    server_ = new httplib::Server();
    install_routes(*server_, *service_);
    port_ = server_->bind_to_any_port("127.0.0.1");
    thread_ = new std::thread([] { server_->listen_after_bind(); });
    server_->wait_until_ready();
  }

  static void TearDownTestSuite() {
    server_->stop();
    thread_->join();
    delete thread_;
    delete server_;
    delete service_;
  }

  static httplib::Client client() {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(120, 0);
    return c;
  }

  static json create_contos(const std::string& constraints = "") {
    httplib::MultipartFormDataItems items = {{"manuscript", fixtures::contos_source(), "contos.md", "text/markdown"}};
    if (!constraints.empty()) items.push_back({"constraints", constraints, "settings.json", "application/json"});
    auto res = client().Post("/api/books", items);
    EXPECT_TRUE(res);
    if (!res) return {};
    EXPECT_EQ(res->status, 201) << res->body;
    return json::parse(res->body);
  }

  static inline BookService* service_ = nullptr;
  static inline httplib::Server* server_ = nullptr;
  static inline std::thread* thread_ = nullptr;
  static inline int port_ = 0;
};

}  // namespace

TEST_F(ServerTest, CreateFromMultipart) {
  auto j = create_contos(R"({"seed": 11})");
  EXPECT_EQ(j["seed"], 11);
  EXPECT_EQ(j["revision"], 1);
  EXPECT_GT(j["pageCount"].get<int>(), 100);
  EXPECT_EQ(j["settings"]["bookType"], "long_reading");
  auto id = j["bookId"].get<std::string>();
  auto page = client().Get("/api/books/" + id + "/pages/1.svg");
  ASSERT_TRUE(page);
  EXPECT_EQ(page->status, 200);
  EXPECT_EQ(page->get_header_value("Content-Type"), "image/svg+xml");
  auto w = j["settings"]["page"]["w"].get<double>();
  EXPECT_NE(page->body.find("width=\"" + format_number(w) + "mm\""), std::string::npos);
  auto settings = client().Get("/api/books/" + id + "/settings");
  ASSERT_TRUE(settings);
  EXPECT_EQ(json::parse(settings->body), j["settings"]);
  auto layout = client().Get("/api/books/" + id + "/layout");
  ASSERT_TRUE(layout);
  EXPECT_EQ(json::parse(layout->body)["pages"].size(), j["pageCount"].get<std::size_t>());
}

TEST_F(ServerTest, CreateFromJsonWithImages) {
  httplib::MultipartFormDataItems items = {
      {"manuscript", fixtures::garden_source(), "garden.md", "text/markdown"}};
  for (const char* f : {"garden-path.png", "old_oak.png", "river-view.png"})
    items.push_back({"images", read_file(fixtures::samples() / "images" / f), f, "image/png"});
  auto res = client().Post("/api/books", items);
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 201) << res->body;
  EXPECT_EQ(json::parse(res->body)["settings"]["bookType"], "text_and_images");

  json body = {{"manuscript", "# Notes\n\n" + fixtures::filler(500)}, {"constraints", {{"seed", 5}}}};
  res = client().Post("/api/books", body.dump(), "application/json");
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 201) << res->body;
  EXPECT_EQ(json::parse(res->body)["seed"], 5);
}

TEST_F(ServerTest, MissingImageIsBadRequest) {
  httplib::MultipartFormDataItems items = {
      {"manuscript", fixtures::garden_source(), "garden.md", "text/markdown"}};
  auto res = client().Post("/api/books", items);
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_NE(res->body.find("not found"), std::string::npos);
}

TEST_F(ServerTest, ValidateSettings) {
  auto res = client().Post("/api/settings/validate", R"({"margins": {"top": 20}})", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  auto j = json::parse(res->body);
  EXPECT_FALSE(j["valid"].get<bool>());
  ASSERT_EQ(j["errors"].size(), 1u);
  EXPECT_EQ(j["errors"][0]["field"], "margins.top");
  res = client().Post("/api/settings/validate", fixtures::reference_settings_text(), "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200) << res->body;
  EXPECT_TRUE(json::parse(res->body)["valid"].get<bool>());
}

TEST_F(ServerTest, NotFound) {
  auto j = create_contos(R"({"seed": 1})");
  auto id = j["bookId"].get<std::string>();
  auto count = j["pageCount"].get<int>();
  for (const std::string& path : std::vector<std::string>{"/api/books/nope/pages/1.svg", "/api/books/nope/settings", "/api/books/nope/layout",
                           "/api/books/" + id + "/pages/0.svg",
                           "/api/books/" + id + "/pages/" + std::to_string(count + 1) + ".svg"}) {
    auto res = client().Get(path);
    ASSERT_TRUE(res);
    EXPECT_EQ(res->status, 404) << path;
  }
  auto res = client().Post("/api/books/nope/regenerate", "{}", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
}

TEST_F(ServerTest, RegenerateKeepingSettings) {
  auto first = create_contos(R"({"seed": 21})");
  auto id = first["bookId"].get<std::string>();
  auto res = client().Post("/api/books/" + id + "/regenerate", R"({"keepSettings": true, "seed": 22})",
                           "application/json");
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200) << res->body;
  auto second = json::parse(res->body);
  EXPECT_EQ(second["bookId"], id);
  EXPECT_EQ(second["revision"], 2);
  EXPECT_EQ(second["seed"], 22);
  auto a = design_from_settings(first["settings"].dump(), default_rules());
  auto b = design_from_settings(second["settings"].dump(), default_rules());
  auto r = coherence_report({attribute_vector(a, default_rules()), attribute_vector(b, default_rules())});
  for (auto slot : kStructuralSlots) EXPECT_TRUE(r.shared(slot)) << slot;
  // the served settings are the new revision's
  auto s = client().Get("/api/books/" + id + "/settings");
  ASSERT_TRUE(s);
  EXPECT_EQ(json::parse(s->body)["seed"], 22);
}

TEST_F(ServerTest, RegenerateFreshDesign) {
  auto first = create_contos(R"({"seed": 31})");
  auto id = first["bookId"].get<std::string>();
  auto res = client().Post("/api/books/" + id + "/regenerate", R"({"keepSettings": false, "seed": 32})",
                           "application/json");
  ASSERT_TRUE(res);
  ASSERT_EQ(res->status, 200);
  auto second = json::parse(res->body);
  EXPECT_EQ(second["seed"], 32);
  auto fresh = design_from_settings(second["settings"].dump(), default_rules());
  ContentStats stats;
  stats.book_type = BookType::LongReading;
  stats.language = "pt";
  // with nothing pinned, the design equals an unconstrained plan for that seed up to fitting
  EXPECT_EQ(fresh.page_id(), plan(stats, default_rules(), {}, 32).page_id());
}

TEST_F(ServerTest, RulesAndFonts) {
  auto res = client().Get("/api/rules");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(load_rules(res->body).size_options.size(), 11u);
  res = client().Get("/api/fonts");
  ASSERT_TRUE(res);
  auto fonts = json::parse(res->body);
  EXPECT_EQ(fonts.size(), default_rules().pairings.size());
  EXPECT_TRUE(fonts[0].contains("bookTypes"));
}

TEST_F(ServerTest, BadConstraintsAreReported) {
  auto res = client().Post("/api/books",
                           json{{"manuscript", "text"}, {"constraints", {{"margins", {{"top", 20}}}}}}.dump(),
                           "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  auto j = json::parse(res->body);
  EXPECT_EQ(j["field"], "margins.top");
  res = client().Post("/api/books", "{oops", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
}

TEST_F(ServerTest, ConcurrentCreates) {
  std::vector<std::future<json>> jobs;
  for (int i = 0; i < 4; ++i)
    jobs.push_back(std::async(std::launch::async, [i] {
      json body = {{"manuscript", "# Part\n\n" + fixtures::filler(3000, std::uint64_t(i))},
                   {"constraints", {{"seed", 100 + i}}}};
      auto res = client().Post("/api/books", body.dump(), "application/json");
      return res && res->status == 201 ? json::parse(res->body) : json();
    }));
  std::set<std::string> ids;
  for (int i = 0; i < 4; ++i) {
    auto j = jobs[std::size_t(i)].get();
    ASSERT_FALSE(j.is_null());
    EXPECT_EQ(j["seed"], 100 + i);
    ids.insert(j["bookId"].get<std::string>());
  }
  EXPECT_EQ(ids.size(), 4u);
}
