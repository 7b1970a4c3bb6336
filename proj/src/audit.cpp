#include "uac/audit.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "httplib.h"

#include "uac/html.hpp"

namespace uac {

namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw InputError("no such file: " + path.string());
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> stylesheet_hrefs(std::string_view raw) {
  std::vector<std::string> hrefs;
  try {
    html::Document dom = html::parse(raw);
    html::for_each_element(dom.root(), [&](const html::Node& el) {
      if (el.tag() != "link" || !el.has_attr("href")) return;
      std::string rel = html::to_lower(el.attr_or_empty("rel"));
      std::istringstream words(rel);
      std::string word;
      bool is_sheet = false;
      while (words >> word) is_sheet = is_sheet || word == "stylesheet";
      if (is_sheet) hrefs.emplace_back(html::trim(el.attr_or_empty("href")));
    });
  } catch (const Error&) {
    // parse_document reports the failure.
  }
  return hrefs;
}

struct Response {
  std::string body;
  Url final_url;
};

Response http_get(const Url& start, const FetchOptions& options) {
  Url url = start;
  for (int hop = 0;; ++hop) {
    httplib::Client client(url.origin());
    client.set_connection_timeout(options.timeout_seconds, 0);
    client.set_read_timeout(options.timeout_seconds, 0);
    client.set_write_timeout(options.timeout_seconds, 0);
    client.set_follow_location(false);
    httplib::Headers headers{{"User-Agent", options.user_agent},
                             {"Accept", "text/html,text/css;q=0.9,*/*;q=0.5"}};
    auto res = client.Get(url.path, headers);
    if (!res) {
      throw FetchError(url.str() + ": " + httplib::to_string(res.error()));
    }
    if (res->status >= 300 && res->status < 400 && res->has_header("Location")) {
      if (hop >= options.max_redirects) {
        throw FetchError(start.str() + ": more than " + std::to_string(options.max_redirects) +
                         " redirects");
      }
      auto next = resolve_url(url, res->get_header_value("Location"));
      if (!next) throw FetchError(url.str() + ": redirect to unsupported location");
      url = *next;
      continue;
    }
    if (res->status < 200 || res->status >= 300) {
      throw FetchError(url.str() + ": HTTP status " + std::to_string(res->status));
    }
    return {res->body, url};
  }
}

SourceDocument load_url(const std::string& target, const FetchOptions& options) {
  Url url = parse_url(target);
  Response page = http_get(url, options);
  SourceDocument doc;
  doc.origin = target;
  doc.raw = sanitize_utf8(page.body, &doc.lossy_utf8);
  doc.path_depth = url_path_depth(page.final_url);
  for (const auto& href : stylesheet_hrefs(doc.raw)) {
    auto sheet_url = resolve_url(page.final_url, href);
    if (!sheet_url || sheet_url->origin() != page.final_url.origin()) continue;
    try {
      doc.external_stylesheets[href] = sanitize_utf8(http_get(*sheet_url, options).body);
    } catch (const FetchError&) {
      // Left unresolved; the page is flagged as partially styled.
    }
  }
  return doc;
}

SourceDocument load_file(const std::string& target) {
  fs::path path(target);
  SourceDocument doc;
  doc.origin = target;
  doc.raw = sanitize_utf8(read_file(path), &doc.lossy_utf8);
  for (const auto& href : stylesheet_hrefs(doc.raw)) {
    if (looks_like_url(href) || href.starts_with("//") || href.empty()) continue;
    fs::path sheet = path.parent_path() / fs::path(href.substr(0, href.find_first_of("?#")));
    try {
      doc.external_stylesheets[href] = sanitize_utf8(read_file(sheet));
    } catch (const InputError&) {
    }
  }
  return doc;
}

std::size_t utf8_sequence_length(std::string_view s, std::size_t i) {
  auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
  unsigned char c = byte(i);
  if (c < 0x80) return 1;
  std::size_t len;
  unsigned char lo = 0x80, hi = 0xBF;
  if (c >= 0xC2 && c <= 0xDF) {
    len = 2;
  } else if (c >= 0xE0 && c <= 0xEF) {
    len = 3;
    if (c == 0xE0) lo = 0xA0;
    if (c == 0xED) hi = 0x9F;
  } else if (c >= 0xF0 && c <= 0xF4) {
    len = 4;
    if (c == 0xF0) lo = 0x90;
    if (c == 0xF4) hi = 0x8F;
  } else {
    return 0;
  }
  if (i + len > s.size()) return 0;
  if (byte(i + 1) < lo || byte(i + 1) > hi) return 0;
  for (std::size_t k = 2; k < len; ++k) {
    if (byte(i + k) < 0x80 || byte(i + k) > 0xBF) return 0;
  }
  return len;
}

PageSummary summarize(const PageFacts& page, const NavigationOptions& navigation) {
  NavigationEvidence nav{page.origin, page.breadcrumbs_present, page.skipped_heading_levels,
                         page.headings_total, page.path_depth};
  PageSummary s;
  s.origin = page.origin;
  s.path_depth = page.path_depth;
  s.deep = is_deep_page(nav, navigation);
  s.structured_navigation = structured_navigation_value(nav, s.deep);
  s.images_total = page.images_total;
  s.images_with_meaningful_alt = page.images_with_meaningful_alt;
  s.contrast_groups = page.contrast_groups.size();
  for (const auto& g : page.contrast_groups) s.text_elements += g.element_count;
  s.videos_total = page.videos_total;
  s.videos_with_tracks = page.videos_with_tracks;
  s.interactive_total = page.interactive_total;
  s.interactive_keyboard_ok = page.interactive_keyboard_ok;
  s.breadcrumbs_present = page.breadcrumbs_present;
  s.heading_levels = page.heading_levels;
  s.skipped_heading_levels = page.skipped_heading_levels;
  s.headings_total = page.headings_total;
  s.assistable_fields_total = page.assistable_fields_total;
  s.fields_with_assistance = page.fields_with_assistance;
  s.forms_total = page.forms_total;
  s.forms_with_error_support = page.forms_with_error_support;
  s.languages_offered.assign(page.languages_offered.begin(), page.languages_offered.end());
  return s;
}

void add_tree_warnings(const QualityTree& tree, std::vector<Warning>& warnings) {
  for (const auto& id : tree.redistributed) {
    add_warning(warnings, {"weights-redistributed",
                           "weights under " + id +
                               " were redistributed over the applicable children"});
  }
}

AuditReport assemble(QualityTree tree, std::vector<Warning> warnings, const AuditOptions& options) {
  AuditReport report;
  report.contrast_mode = to_string(options.scoring.contrast_mode);
  report.weights = options.weights;
  report.scale_breakpoints = options.scale.breakpoints();
  report.recommendations = recommend(tree, options.scale);
  add_tree_warnings(tree, warnings);
  report.tree = std::move(tree);
  report.warnings = std::move(warnings);
  return report;
}

}  // namespace

std::string Url::origin() const {
  bool default_port = (scheme == "http" && port == 80) || (scheme == "https" && port == 443);
  return scheme + "://" + host + (default_port ? "" : ":" + std::to_string(port));
}

std::string Url::str() const { return origin() + path; }

bool looks_like_url(std::string_view target) {
  std::string lower = html::to_lower(target.substr(0, 8));
  return lower.starts_with("http://") || lower.starts_with("https://");
}

Url parse_url(std::string_view text) {
  auto sep = text.find("://");
  if (sep == std::string_view::npos) throw InputError("not a URL: " + std::string(text));
  Url url;
  url.scheme = html::to_lower(text.substr(0, sep));
  if (url.scheme != "http" && url.scheme != "https") {
    throw InputError("unsupported URL scheme: " + std::string(text));
  }
  std::string_view rest = text.substr(sep + 3);
  rest = rest.substr(0, rest.find('#'));
  auto path_start = std::min(rest.find('/'), rest.find('?'));
  std::string_view authority = rest.substr(0, path_start);
  if (auto at = authority.rfind('@'); at != std::string_view::npos) {
    authority = authority.substr(at + 1);
  }
  url.port = url.scheme == "https" ? 443 : 80;
  auto colon = authority.rfind(':');
  if (colon != std::string_view::npos && authority.find(']') == std::string_view::npos) {
    std::string digits(authority.substr(colon + 1));
    if (!digits.empty()) {
      if (!std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }) ||
          digits.size() > 5) {
        throw InputError("bad port in URL: " + std::string(text));
      }
      url.port = std::stoi(digits);
    }
    authority = authority.substr(0, colon);
  }
  url.host = html::to_lower(authority);
  if (url.host.empty()) throw InputError("URL has no host: " + std::string(text));
  if (path_start != std::string_view::npos) {
    url.path = std::string(rest.substr(path_start));
    if (url.path.front() == '?') url.path.insert(url.path.begin(), '/');
  }
  return url;
}

std::optional<Url> resolve_url(const Url& base, std::string_view href) {
  std::string h(html::trim(href));
  h = h.substr(0, h.find('#'));
  if (h.find("://") != std::string::npos) {
    if (!looks_like_url(h)) return std::nullopt;
    return parse_url(h);
  }
  if (h.starts_with("//")) return parse_url(base.scheme + ":" + h);
  auto colon = h.find(':');
  if (colon != std::string::npos && h.find_first_of("/?") > colon) return std::nullopt;  // mailto:
  Url out = base;
  if (h.empty()) return out;
  if (h.front() == '/') {
    out.path = h;
    return out;
  }
  std::string base_path = base.path.substr(0, base.path.find('?'));
  if (h.front() == '?') {
    out.path = base_path + h;
    return out;
  }
  std::string dir = base_path.substr(0, base_path.rfind('/') + 1);
  std::string query;
  if (auto q = h.find('?'); q != std::string::npos) {
    query = h.substr(q);
    h.resize(q);
  }
  std::vector<std::string> segments;
  std::istringstream parts(dir + h);
  std::string seg;
  while (std::getline(parts, seg, '/')) {
    if (seg.empty() || seg == ".") continue;
    if (seg == "..") {
      if (!segments.empty()) segments.pop_back();
      continue;
    }
    segments.push_back(seg);
  }
  std::string path;
  for (const auto& s : segments) path += "/" + s;
  bool trailing = h.ends_with("/") || h.ends_with("/.") || h.ends_with("/..") || h == "." ||
                  h == "..";
  if (path.empty() || trailing) path += "/";
  out.path = path + query;
  return out;
}

std::size_t url_path_depth(const Url& url) {
  std::string path = url.path.substr(0, url.path.find('?'));
  std::size_t depth = 0;
  std::istringstream parts(path);
  std::string seg;
  while (std::getline(parts, seg, '/')) {
    if (!seg.empty()) ++depth;
  }
  return depth;
}

std::string sanitize_utf8(std::string_view bytes, bool* lossy) {
  std::string out;
  out.reserve(bytes.size());
  bool replaced = false;
  for (std::size_t i = 0; i < bytes.size();) {
    std::size_t len = utf8_sequence_length(bytes, i);
    if (len == 0) {
      out += "\xEF\xBF\xBD";
      replaced = true;
      ++i;
    } else {
      out.append(bytes.substr(i, len));
      i += len;
    }
  }
  if (lossy) *lossy = replaced;
  return out;
}

SourceDocument load_target(const std::string& target, const FetchOptions& options) {
  return looks_like_url(target) ? load_url(target, options) : load_file(target);
}

AuditFailure::AuditFailure(std::vector<TargetFailure> failures)
    : Error([&] {
        std::string msg;
        for (const auto& f : failures) {
          msg += (msg.empty() ? "" : "\n") + f.target + ": " + f.message;
        }
        return msg;
      }()),
      failures_(std::move(failures)) {}

int AuditFailure::exit_code() const {
  // A network or parse failure outranks a bad path.
  int code = 2;
  for (const auto& f : failures_) code = std::max(code, f.exit_code);
  return code;
}

std::vector<PageFacts> extract_pages(std::span<const std::string> targets,
                                     const AuditOptions& options) {
  std::vector<std::optional<PageFacts>> results(targets.size());
  std::vector<std::optional<TargetFailure>> failures(targets.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < targets.size(); i = next++) {
      try {
        results[i] = parse_document(load_target(targets[i], options.fetch), options.heuristics);
      } catch (const InputError& e) {
        failures[i] = TargetFailure{targets[i], e.what(), 2};
      } catch (const std::exception& e) {
        failures[i] = TargetFailure{targets[i], e.what(), 3};
      }
    }
  };
  std::size_t threads = std::clamp<std::size_t>(options.jobs, 1, std::max<std::size_t>(1, targets.size()));
  std::vector<std::jthread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();

  std::vector<TargetFailure> failed;
  for (auto& f : failures) {
    if (f) failed.push_back(std::move(*f));
  }
  if (!failed.empty()) throw AuditFailure(std::move(failed));
  std::vector<PageFacts> pages;
  pages.reserve(results.size());
  for (auto& r : results) pages.push_back(std::move(*r));
  return pages;
}

AuditReport audit_pages(std::vector<PageFacts> pages, const AuditOptions& options) {
  std::vector<Warning> warnings;
  if (pages.empty()) {
    add_warning(warnings, {"no-pages", "no pages were audited; every attribute is not applicable"});
  }

  std::set<std::string> matched;
  if (options.annotations) {
    for (auto& page : pages) {
      auto hit = apply_annotations(page, *options.annotations);
      matched.insert(hit.begin(), hit.end());
    }
    const auto& a = *options.annotations;
    std::vector<std::string> keys(a.captioned_media_overrides.begin(),
                                  a.captioned_media_overrides.end());
    keys.insert(keys.end(), a.error_support_overrides.begin(), a.error_support_overrides.end());
    for (const auto& [key, ok] : a.keyboard_overrides) keys.push_back(key);
    for (const auto& key : keys) {
      if (!matched.contains(key)) {
        add_warning(warnings, {"override-unmatched",
                               "annotation override '" + key + "' matched no element"});
      }
    }
  }

  for (const auto& page : pages) {
    if (page.styles_partially_resolved) {
      add_warning(warnings, {"styles-partial",
                             page.origin + ": some styles could not be resolved (missing external "
                                           "stylesheet or unsupported selector); contrast is "
                                           "approximate"});
    }
    if (page.lossy_utf8) {
      add_warning(warnings, {"lossy-utf8", page.origin + ": invalid UTF-8 replaced with U+FFFD"});
    }
  }

  PooledFacts pooled = pool(pages);
  auto scores = score_all(pooled, options.annotations, options.scoring);
  if (!pages.empty() && std::any_of(scores.begin(), scores.end(),
                                    [](const AttributeScore& s) { return s.missing_annotation; })) {
    add_warning(warnings, {"missing-annotation",
                           std::string(ids::kClearInstructions) +
                               " needs a manual clarity rating (annotation file "
                               "clear_instructions); treated as not applicable"});
  }
  QualityTree tree = evaluate_tree(scores, options.weights, options.scale);
  AuditReport report = assemble(std::move(tree), std::move(warnings), options);

  for (const auto& page : pages) {
    report.pages.push_back(summarize(page, options.scoring.navigation));
  }
  if (options.per_page) {
    for (const auto& page : pages) {
      PooledFacts one = PooledFacts::from_page(page);
      auto page_scores = score_all(one, options.annotations, options.scoring);
      report.per_page.push_back(
          {page.origin, evaluate_tree(page_scores, options.weights, options.scale)});
    }
  }
  return report;
}

AuditReport audit_targets(std::span<const std::string> targets, const AuditOptions& options) {
  return audit_pages(extract_pages(targets, options), options);
}

AuditReport score_only(std::vector<AttributeScore> scores, std::vector<Warning> warnings,
                       const AuditOptions& options) {
  QualityTree tree = evaluate_tree(scores, options.weights, options.scale);
  return assemble(std::move(tree), std::move(warnings), options);
}

}  // namespace uac
