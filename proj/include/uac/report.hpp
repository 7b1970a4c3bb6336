#pragma once

// Audit report model, recommendation rules, configuration file formats and
// rendering to JSON / Markdown.

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "uac/metrics.hpp"
#include "uac/rollup.hpp"

namespace uac {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

struct AuditConfig {
  std::optional<std::filesystem::path> weight_path;
  std::optional<std::filesystem::path> annotation_path;
  LanguageConfig languages;
  ContrastMode contrast_mode = ContrastMode::paper;
  std::optional<std::array<double, 4>> scale_breakpoints;
  std::optional<bool> deep_page_override;
};

enum class Severity { critical, major };

struct Recommendation {
  std::string attribute_id;
  Severity severity = Severity::major;
  std::optional<double> value;
  std::string message;

  friend bool operator==(const Recommendation&, const Recommendation&) = default;
};

struct Warning {
  std::string code;
  std::string message;

  friend bool operator==(const Warning&, const Warning&) = default;
};

// Appends unless an identical warning is already present.
void add_warning(std::vector<Warning>& warnings, Warning w);

struct PageSummary {
  std::string origin;
  std::size_t path_depth = 0;
  bool deep = false;
  double structured_navigation = 0.0;
  std::size_t images_total = 0;
  std::size_t images_with_meaningful_alt = 0;
  std::size_t contrast_groups = 0;
  std::size_t text_elements = 0;
  std::size_t videos_total = 0;
  std::size_t videos_with_tracks = 0;
  std::size_t interactive_total = 0;
  std::size_t interactive_keyboard_ok = 0;
  bool breadcrumbs_present = false;
  std::vector<int> heading_levels;
  std::size_t skipped_heading_levels = 0;
  std::size_t headings_total = 0;
  std::size_t assistable_fields_total = 0;
  std::size_t fields_with_assistance = 0;
  std::size_t forms_total = 0;
  std::size_t forms_with_error_support = 0;
  std::vector<std::string> languages_offered;

  friend bool operator==(const PageSummary&, const PageSummary&) = default;
};

struct PageTree {
  std::string origin;
  QualityTree tree;
  friend bool operator==(const PageTree&, const PageTree&) = default;
};

struct AuditReport {
  std::string tool_version = kToolVersion;
  std::string contrast_mode = "paper";
  std::vector<PageSummary> pages;
  QualityTree tree;  // attributes and level live here
  WeightSet weights;
  std::array<double, 4> scale_breakpoints = QualityScale::kGoldenBreakpoints;
  std::vector<Recommendation> recommendations;
  std::vector<Warning> warnings;
  std::vector<PageTree> per_page;

  friend bool operator==(const AuditReport&, const AuditReport&) = default;
};

std::string to_string(Severity s);

// critical: value 0, or missing a required annotation; major: below the
// excellent breakpoint. Sorted by severity then ascending value.
std::vector<Recommendation> recommend(const QualityTree& tree, const QualityScale& scale = {});

enum class ReportFormat { json, markdown };
std::optional<ReportFormat> parse_format(std::string_view text);

std::string render_report(const AuditReport& report, ReportFormat format);
AuditReport parse_report_json(std::string_view text);

// Markdown number: rounded to 5 decimals, trailing zeros dropped.
std::string format_value(double v);

nlohmann::json to_json(const AuditReport& report);
AuditReport report_from_json(const nlohmann::json& j);
nlohmann::json to_json(const PageFacts& facts);

// File formats. All throw InputError on unreadable or invalid content.
struct WeightFile {
  WeightSet weights;
  std::optional<LocalizationWeights> localization;
  std::optional<std::array<double, 4>> breakpoints;
};
WeightFile parse_weights(const nlohmann::json& j, WeightSet base = WeightSet::defaults());
AnnotationSet parse_annotations(const nlohmann::json& j);
nlohmann::json to_json(const AnnotationSet& a);
LanguageConfig parse_languages(const nlohmann::json& j);
// Attribute id -> value map for score-only evaluation.
std::vector<AttributeScore> parse_scores(const nlohmann::json& j, std::vector<Warning>& warnings);
std::array<double, 4> parse_breakpoints(std::string_view csv);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace uac
