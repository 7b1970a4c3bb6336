#pragma once

// Audit pipeline: load targets (files or http/https URLs), extract facts
// concurrently, pool, score, roll up and assemble the report.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "uac/errors.hpp"
#include "uac/facts.hpp"
#include "uac/metrics.hpp"
#include "uac/report.hpp"
#include "uac/rollup.hpp"

namespace uac {

struct FetchOptions {
  std::string user_agent = std::string("uac-audit/") + kToolVersion;
  int timeout_seconds = 30;
  int max_redirects = 5;
};

struct AuditOptions {
  WeightSet weights = WeightSet::defaults();
  QualityScale scale;
  std::optional<AnnotationSet> annotations;
  ScoringOptions scoring;
  HeuristicConfig heuristics;
  FetchOptions fetch;
  bool per_page = false;
  std::size_t jobs = 4;
};

struct Url {
  std::string scheme;  // "http" or "https"
  std::string host;
  int port = 0;
  std::string path = "/";  // includes any query, never the fragment

  std::string origin() const;  // scheme://host[:port]
  std::string str() const;
};

bool looks_like_url(std::string_view target);
// Throws InputError for anything other than an absolute http(s) URL.
Url parse_url(std::string_view text);
// Resolves an href against a base URL. Returns nullopt for non-http schemes.
std::optional<Url> resolve_url(const Url& base, std::string_view href);
// Number of non-empty path segments: "/" -> 0, "/a/b/" -> 2.
std::size_t url_path_depth(const Url& url);

// Replaces invalid UTF-8 sequences with U+FFFD.
std::string sanitize_utf8(std::string_view bytes, bool* lossy = nullptr);

// Reads a local file or fetches a URL, plus its same-origin stylesheets.
// Throws InputError for an unreadable file and FetchError for network failures.
SourceDocument load_target(const std::string& target, const FetchOptions& options = {});

struct TargetFailure {
  std::string target;
  std::string message;
  int exit_code = 3;  // 2 input error, 3 fetch/parse failure
};

// Thrown by extract_pages when any target fails; lists every failure in
// target order.
class AuditFailure : public Error {
 public:
  explicit AuditFailure(std::vector<TargetFailure> failures);
  const std::vector<TargetFailure>& failures() const { return failures_; }
  int exit_code() const;

 private:
  std::vector<TargetFailure> failures_;
};

// Loads and parses every target on up to `options.jobs` threads. Results are
// in target order.
std::vector<PageFacts> extract_pages(std::span<const std::string> targets,
                                     const AuditOptions& options);

// Applies annotations, pools, scores and rolls up already-extracted pages.
AuditReport audit_pages(std::vector<PageFacts> pages, const AuditOptions& options);

AuditReport audit_targets(std::span<const std::string> targets, const AuditOptions& options);

// Rollup of externally measured attribute values; no HTML involved.
AuditReport score_only(std::vector<AttributeScore> scores, std::vector<Warning> warnings,
                       const AuditOptions& options);

}  // namespace uac
