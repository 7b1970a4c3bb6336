#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <thread>

// Before httplib: <resolv.h> defines a _res macro that breaks Eigen.
#include "uac/audit.hpp"

#include "httplib.h"

using namespace uac;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = UAC_FIXTURE_DIR;

std::vector<std::string> suite_pages() {
  std::vector<std::string> out;
  for (const char* name : {"index", "admissions", "faculties", "library", "contacts"}) {
    out.push_back((kFixtures / "suite" / (std::string(name) + ".html")).string());
  }
  return out;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("uac-test-" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path write(const std::string& name, const std::string& content) const {
    std::ofstream(path / name, std::ios::binary) << content;
    return path / name;
  }
};

// Local server on an ephemeral port, stopped on destruction.
struct TestServer {
  httplib::Server server;
  int port = 0;
  std::thread thread;

  void start() {
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~TestServer() {
    server.stop();
    if (thread.joinable()) thread.join();
  }
  std::string url(const std::string& path) const {
    return "http://127.0.0.1:" + std::to_string(port) + path;
  }
};

}  // namespace

TEST_CASE("url parsing") {
  auto u = parse_url("https://Example.org:8443/a/b?q=1#frag");
  CHECK(u.scheme == "https");
  CHECK(u.host == "example.org");
  CHECK(u.port == 8443);
  CHECK(u.path == "/a/b?q=1");
  CHECK(u.origin() == "https://example.org:8443");
  CHECK(parse_url("http://x.org").path == "/");
  CHECK(parse_url("http://x.org?y").path == "/?y");
  CHECK(parse_url("http://x.org").origin() == "http://x.org");
  CHECK_THROWS_AS(parse_url("ftp://x.org/"), InputError);
  CHECK_THROWS_AS(parse_url("http:///path"), InputError);
  CHECK_THROWS_AS(parse_url("http://x.org:abc/"), InputError);
  CHECK(looks_like_url("HTTPS://x"));
  CHECK_FALSE(looks_like_url("pages/index.html"));
}

TEST_CASE("url resolution") {
  auto base = parse_url("https://uni.edu/faculty/history/index.html?x=1");
  CHECK(resolve_url(base, "style.css")->str() == "https://uni.edu/faculty/history/style.css");
  CHECK(resolve_url(base, "../main.css")->str() == "https://uni.edu/faculty/main.css");
  CHECK(resolve_url(base, "../../../../up.css")->str() == "https://uni.edu/up.css");
  CHECK(resolve_url(base, "/root.css")->str() == "https://uni.edu/root.css");
  CHECK(resolve_url(base, "//cdn.net/x.css")->str() == "https://cdn.net/x.css");
  CHECK(resolve_url(base, "http://other.org/y")->str() == "http://other.org/y");
  CHECK(resolve_url(base, "./")->str() == "https://uni.edu/faculty/history/");
  CHECK(resolve_url(base, "?page=2")->str() == "https://uni.edu/faculty/history/index.html?page=2");
  CHECK(resolve_url(base, "a.css?v=3#top")->str() == "https://uni.edu/faculty/history/a.css?v=3");
  CHECK_FALSE(resolve_url(base, "mailto:rector@uni.edu"));
  CHECK_FALSE(resolve_url(base, "data:text/css,p{}"));
}

TEST_CASE("path depth") {
  CHECK(url_path_depth(parse_url("https://uni.edu/")) == 0);
  CHECK(url_path_depth(parse_url("https://uni.edu/about")) == 1);
  CHECK(url_path_depth(parse_url("https://uni.edu/faculty/history/")) == 2);
  CHECK(url_path_depth(parse_url("https://uni.edu//a//b?c=/d/e")) == 2);
}

TEST_CASE("utf-8 sanitizing") {
  bool lossy = true;
  CHECK(sanitize_utf8("plain \xD0\x9A\xD0\xB8\xD1\x97\xD0\xB2", &lossy) ==
        "plain \xD0\x9A\xD0\xB8\xD1\x97\xD0\xB2");
  CHECK_FALSE(lossy);
  CHECK(sanitize_utf8("a\xFF" "b", &lossy) == "a\xEF\xBF\xBD" "b");
  CHECK(lossy);
  CHECK(sanitize_utf8("\xC0\xAF") == "\xEF\xBF\xBD\xEF\xBF\xBD");  // overlong
  CHECK(sanitize_utf8("\xED\xA0\x80") == "\xEF\xBF\xBD\xEF\xBF\xBD\xEF\xBF\xBD");  // surrogate
  CHECK(sanitize_utf8("\xE2\x82") == "\xEF\xBF\xBD\xEF\xBF\xBD");  // truncated
  CHECK(sanitize_utf8("\xF0\x9F\x98\x80") == "\xF0\x9F\x98\x80");
}

TEST_CASE("local files and their stylesheets") {
  TempDir dir;
  dir.write("site.css", "p { color: #eeeeee }");
  auto page = dir.write("page.html", R"(<link rel="stylesheet" href="site.css?v=2"><p>x</p>)");
  auto doc = load_target(page.string());
  CHECK(doc.external_stylesheets.size() == 1);
  auto facts = parse_document(doc);
  CHECK(facts.contrast_groups[0].foreground == Rgb{0xee, 0xee, 0xee});
  CHECK_FALSE(facts.styles_partially_resolved);
  CHECK_THROWS_AS(load_target((dir.path / "missing.html").string()), InputError);

  auto lossy = dir.write("lossy.html", "<p>caf\xE9</p>");
  CHECK(load_target(lossy.string()).lossy_utf8);
}

TEST_CASE("pages come back in target order whatever the job count") {
  auto targets = suite_pages();
  for (std::size_t jobs : {1, 2, 4, 16}) {
    AuditOptions options;
    options.jobs = jobs;
    auto pages = extract_pages(targets, options);
    REQUIRE(pages.size() == targets.size());
    for (std::size_t i = 0; i < pages.size(); ++i) CHECK(pages[i].origin == targets[i]);
  }
}

TEST_CASE("target failures are collected with exit codes") {
  TempDir dir;
  auto empty = dir.write("empty.html", "  ");
  std::vector<std::string> targets{suite_pages()[0], (dir.path / "nope.html").string(),
                                   empty.string()};
  try {
    extract_pages(targets, AuditOptions{});
    FAIL("expected AuditFailure");
  } catch (const AuditFailure& e) {
    REQUIRE(e.failures().size() == 2);
    CHECK(e.failures()[0].exit_code == 2);
    CHECK(e.failures()[1].exit_code == 3);
    CHECK(e.exit_code() == 3);
  }
}

TEST_CASE("fixture suite reproduces the reference audit") {
  AuditOptions options;
  options.annotations = parse_annotations(read_json_file(kFixtures / "suite_annotations.json"));
  options.per_page = true;
  auto report = audit_targets(suite_pages(), options);
  const std::pair<const char*, double> expected[] = {
      {"UAC-1.1.1-G", 0.15}, {"UAC-1.1.2-G", 0.99}, {"UAC-1.1.3-G", 0.0},  {"UAC-1.2.1-G", 1.0},
      {"UAC-1.2.2-G", 0.47}, {"UAC-1.3.1-G", 1.0},  {"UAC-1.3.2-G", 0.0},  {"UAC-1.3.3-G", 0.83},
      {"UAC-2.1-S", 0.8},    {"UAC-1.1-G", 0.342},  {"UAC-1.2-G", 0.788},  {"UAC-1.3-G", 0.649},
      {"UAC-1-G", 0.5986},   {"UAC-2-S", 0.8},      {"UAC", 0.67916}};
  for (auto [id, v] : expected) {
    INFO(id);
    CHECK(*report.tree.value(id) == doctest::Approx(v).epsilon(1e-9));
  }
  CHECK(report.warnings.empty());
  CHECK(report.pages.size() == 5);
  CHECK(report.pages[0].deep);
  CHECK(report.pages[0].structured_navigation == doctest::Approx(0.875));
  CHECK(report.per_page.size() == 5);
  CHECK(parse_report_json(render_report(report, ReportFormat::json)) == report);
}

TEST_CASE("audit warnings") {
  TempDir dir;
  auto page = dir.write("a.html", "<link rel=stylesheet href=gone.css><video></video><p>caf\xE9</p>");
  std::vector<std::string> targets{page.string()};
  AuditOptions options;
  options.annotations = AnnotationSet{};
  options.annotations->keyboard_overrides["button#none"] = true;
  auto report = audit_targets(targets, options);
  std::set<std::string> codes;
  for (const auto& w : report.warnings) codes.insert(w.code);
  CHECK(codes == std::set<std::string>{"styles-partial", "lossy-utf8", "override-unmatched",
                                       "missing-annotation", "weights-redistributed"});
  // Each condition is reported once even when it recurs.
  std::vector<std::string> twice{page.string(), page.string()};
  auto again = audit_targets(twice, options);
  CHECK(std::count_if(again.warnings.begin(), again.warnings.end(),
                      [](const Warning& w) { return w.code == "missing-annotation"; }) == 1);
}

TEST_CASE("fetching over http") {
  TestServer srv;
  srv.server.Get("/faculty/history/", [](const httplib::Request& req, httplib::Response& res) {
    CHECK(req.get_header_value("User-Agent").starts_with("uac-audit/"));
    res.set_content(R"(<html lang="uk"><link rel="stylesheet" href="../site.css">)"
                    R"(<link rel="stylesheet" href="http://203.0.113.1/x.css"><p>x</p></html>)",
                    "text/html");
  });
  srv.server.Get("/faculty/site.css", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("p { color: #777777 }", "text/css");
  });
  srv.server.Get("/hop", [](const httplib::Request&, httplib::Response& res) {
    res.set_redirect("/faculty/history/");
  });
  srv.server.Get(R"(/loop/(\d+))", [](const httplib::Request& req, httplib::Response& res) {
    res.set_redirect("/loop/" + std::to_string(std::stoi(req.matches[1]) + 1));
  });
  srv.server.Get("/missing", [](const httplib::Request&, httplib::Response& res) {
    res.status = 404;
  });
  srv.start();

  FetchOptions fetch;
  fetch.timeout_seconds = 5;
  auto doc = load_target(srv.url("/hop"), fetch);
  CHECK(doc.origin == srv.url("/hop"));
  CHECK(doc.path_depth == 2);
  CHECK(doc.external_stylesheets.size() == 1);
  auto facts = parse_document(doc);
  CHECK(facts.contrast_groups[0].foreground == Rgb{0x77, 0x77, 0x77});
  CHECK(facts.styles_partially_resolved);  // the cross-origin sheet is not fetched

  CHECK_THROWS_AS(load_target(srv.url("/loop/0"), fetch), FetchError);
  CHECK_THROWS_AS(load_target(srv.url("/missing"), fetch), FetchError);
}

TEST_CASE("a redirect budget of exactly five hops succeeds") {
  TestServer srv;
  srv.server.Get(R"(/r/(\d+))", [](const httplib::Request& req, httplib::Response& res) {
    int n = std::stoi(req.matches[1]);
    if (n == 0) {
      res.set_content("<p>done</p>", "text/html");
    } else {
      res.set_redirect("/r/" + std::to_string(n - 1));
    }
  });
  srv.start();
  FetchOptions fetch;
  fetch.timeout_seconds = 5;
  CHECK_NOTHROW(load_target(srv.url("/r/5"), fetch));
  CHECK_THROWS_AS(load_target(srv.url("/r/6"), fetch), FetchError);
}

TEST_CASE("unreachable hosts are fetch errors") {
  httplib::Server probe;
  int port = probe.bind_to_any_port("127.0.0.1");
  probe.stop();  // bound then released: nothing listens there now
  FetchOptions fetch;
  fetch.timeout_seconds = 2;
  CHECK_THROWS_AS(load_target("http://127.0.0.1:" + std::to_string(port) + "/", fetch), FetchError);
}
