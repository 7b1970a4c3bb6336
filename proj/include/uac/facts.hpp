#pragma once

// Extraction of countable accessibility evidence from one HTML page.

#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "uac/css.hpp"
#include "uac/html.hpp"

namespace uac {

struct SourceDocument {
  std::string origin;  // URL or file path
  std::string raw;     // UTF-8 HTML
  std::size_t path_depth = 0;
  // Same-origin external stylesheets already retrieved, keyed by the href
  // exactly as written in the page.
  std::map<std::string, std::string> external_stylesheets;
  // Set when `raw` had invalid UTF-8 replaced by U+FFFD.
  bool lossy_utf8 = false;
};

struct HeuristicConfig {
  std::vector<std::string> placeholder_alt_words{"image", "photo", "picture", "img", "icon"};
  std::vector<std::string> filename_extensions{"png", "jpg", "jpeg", "gif", "svg", "webp"};
  double large_text_px = 24.0;
  double large_bold_text_px = 18.66;
  int bold_weight = 700;
  std::vector<std::string> caption_track_kinds{"subtitles", "captions", "descriptions"};
  std::vector<std::string> assistable_input_types{"text",   "email",    "tel",   "url",
                                                  "search", "password", "number"};
  // Extra language tags considered offered on every page.
  std::vector<std::string> extra_languages;
};

struct ContrastGroup {
  Rgb foreground;
  Rgb background;
  bool is_main_text = true;  // false for large/auxiliary text
  std::size_t element_count = 0;

  friend bool operator==(const ContrastGroup&, const ContrastGroup&) = default;
};

enum class AltStatus { meaningful, missing, empty, filename, placeholder, decorative };

struct ImageRecord {
  std::string element_id;
  AltStatus status = AltStatus::missing;
  std::string alt;
};

struct MediaRecord {
  std::string element_id;
  std::string kind;  // "video" or "audio"
  bool captioned = false;
  bool overridden = false;
};

struct InteractiveRecord {
  std::string element_id;
  bool keyboard_ok = false;
  std::string reason;
  bool overridden = false;
};

struct FieldRecord {
  std::string element_id;
  bool assisted = false;
};

struct FormRecord {
  std::string element_id;
  bool error_support = false;
  bool overridden = false;
};

struct PageFacts {
  std::string origin;
  std::size_t path_depth = 0;

  std::size_t images_total = 0;
  std::size_t images_with_meaningful_alt = 0;
  std::vector<ContrastGroup> contrast_groups;
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
  std::set<std::string> languages_offered;

  // Per-element evidence; annotation overrides address these ids.
  std::vector<ImageRecord> images;  // includes decorative images
  std::vector<MediaRecord> media;
  std::vector<InteractiveRecord> interactive;
  std::vector<FieldRecord> fields;
  std::vector<FormRecord> forms;

  bool styles_partially_resolved = false;
  bool lossy_utf8 = false;
};

// Recomputes every count from the per-element records.
void recount(PageFacts& facts);

// Stable element identifier: "tag#id" when the element has an id, otherwise
// "tag[n]" with n the zero-based index among same-tag elements.
std::string element_identifier(const html::Node& element, std::size_t same_tag_index);

PageFacts parse_document(const SourceDocument& doc, const HeuristicConfig& heuristics = {});

// Building blocks of parse_document, exposed for direct use and testing.
std::vector<ContrastGroup> extract_contrast_groups(const SourceDocument& doc,
                                                   const HeuristicConfig& heuristics = {});
std::vector<ContrastGroup> extract_contrast_groups(const html::Document& dom,
                                                   const css::StyleMap& styles,
                                                   const HeuristicConfig& heuristics = {});
bool detect_breadcrumbs(const SourceDocument& doc);
bool detect_breadcrumbs(const html::Document& dom);
std::size_t count_skipped_heading_levels(std::span<const int> levels);

AltStatus classify_alt(const html::Node& image, const HeuristicConfig& heuristics);
bool is_large_text(const css::ComputedStyle& style, const HeuristicConfig& heuristics);

// Collected <style> blocks plus any fetched external sheets.
css::Stylesheet collect_stylesheet(const html::Document& dom, const SourceDocument& doc,
                                   bool* partially_resolved = nullptr);

// Throws EmptyDocument or MalformedDocument.
html::Document parse_dom(const SourceDocument& doc);

std::string to_string(AltStatus status);

}  // namespace uac
