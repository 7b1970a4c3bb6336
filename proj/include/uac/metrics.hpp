#pragma once

// Attribute scores for the accessibility model: the eight UAC-1.x.y-G
// attributes and the UAC-2.1-S localization score.

#include <array>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "uac/css.hpp"
#include "uac/facts.hpp"

namespace uac {

namespace ids {
inline constexpr const char* kAltText = "UAC-1.1.1-G";
inline constexpr const char* kContrast = "UAC-1.1.2-G";
inline constexpr const char* kMediaAlternatives = "UAC-1.1.3-G";
inline constexpr const char* kKeyboard = "UAC-1.2.1-G";
inline constexpr const char* kStructuredNavigation = "UAC-1.2.2-G";
inline constexpr const char* kClearInstructions = "UAC-1.3.1-G";
inline constexpr const char* kInputAssistance = "UAC-1.3.2-G";
inline constexpr const char* kErrorSupport = "UAC-1.3.3-G";
inline constexpr const char* kLocalization = "UAC-2.1-S";
}  // namespace ids

struct AttributeScore {
  std::string attribute_id;
  double value = 0.0;
  double numerator_evidence = 0.0;
  double denominator_evidence = 0.0;
  bool applicable = false;
  // Not applicable because a required human judgment was not supplied.
  bool missing_annotation = false;

  friend bool operator==(const AttributeScore&, const AttributeScore&) = default;
};

struct ClearInstructions {
  std::size_t clear = 0;
  std::size_t total = 0;
  friend bool operator==(const ClearInstructions&, const ClearInstructions&) = default;
};

// Human judgments and manual-test overrides. Element ids are those emitted by
// the facts dump; an id may be scoped to one page as "<origin>::<id>".
struct AnnotationSet {
  std::optional<ClearInstructions> clear_instructions;
  std::set<std::string> captioned_media_overrides;
  std::set<std::string> error_support_overrides;
  std::map<std::string, bool> keyboard_overrides;

  friend bool operator==(const AnnotationSet&, const AnnotationSet&) = default;
};

struct LanguagePresence {
  bool state_language = false;
  bool english = false;
  std::set<std::string> popular_european;  // subset of the configured tags, at most two
  bool other = false;
};

// Which language tags fill which indicator slot. Tags compare on their
// primary subtag ("en-GB" counts as "en").
struct LanguageConfig {
  std::string state_language = "uk";
  std::string english = "en";
  std::vector<std::string> popular_european{"de", "fr"};
  // When non-empty, only these tags fill the "other" slot; otherwise any
  // language outside the named slots does.
  std::vector<std::string> other;
  // Declared offered languages, added to whatever the pages advertise.
  std::vector<std::string> offered;
};

struct LocalizationWeights {
  double state_language = 0.6;
  double english = 0.2;
  double per_popular_european = 0.08;
  double other = 0.04;
};

enum class ContrastMode { paper, simple };

struct NavigationEvidence {
  std::string origin;
  bool breadcrumbs = false;
  std::size_t skipped_heading_levels = 0;
  std::size_t headings_total = 0;
  std::size_t path_depth = 0;
};

// Counts summed across pages. Merge is associative and commutative on every
// field the scores read.
struct PooledFacts {
  std::size_t page_count = 0;
  std::size_t images_total = 0;
  std::size_t images_with_meaningful_alt = 0;
  std::vector<ContrastGroup> contrast_groups;
  std::size_t videos_total = 0;
  std::size_t videos_with_tracks = 0;
  std::size_t interactive_total = 0;
  std::size_t interactive_keyboard_ok = 0;
  std::size_t assistable_fields_total = 0;
  std::size_t fields_with_assistance = 0;
  std::size_t forms_total = 0;
  std::size_t forms_with_error_support = 0;
  std::set<std::string> languages_offered;
  std::vector<NavigationEvidence> pages;

  static PooledFacts from_page(const PageFacts& page);
  PooledFacts& merge(const PooledFacts& other);
};

PooledFacts pool(std::span<const PageFacts> pages);

struct NavigationOptions {
  std::optional<bool> deep_override;  // --deep / --shallow
  std::size_t deep_path_depth = 2;
};

// WCAG relative luminance of an sRGB color.
double relative_luminance(const Rgb& color);
double contrast_ratio(const Rgb& a, const Rgb& b);

inline constexpr double kMainTextMinimum = 4.5;
inline constexpr double kLargeTextMinimum = 3.0;
bool passes_contrast(double ratio, bool is_main_text);

AttributeScore score_alt_text(const PooledFacts& facts);
AttributeScore score_contrast(std::span<const ContrastGroup> groups,
                              ContrastMode mode = ContrastMode::paper);
AttributeScore score_media_alternatives(const PooledFacts& facts);
AttributeScore score_keyboard(const PooledFacts& facts);

bool is_deep_page(const NavigationEvidence& page, const NavigationOptions& options);
// Per-page structured-navigation value in [0,1].
double structured_navigation_value(const NavigationEvidence& page, bool deep);
AttributeScore score_structured_navigation(const PooledFacts& facts,
                                           const NavigationOptions& options = {});

AttributeScore score_clear_instructions(const std::optional<AnnotationSet>& annotations);
AttributeScore score_input_assistance(const PooledFacts& facts);
AttributeScore score_error_support(const PooledFacts& facts);

LanguagePresence language_presence(const std::set<std::string>& offered,
                                   const LanguageConfig& config);
AttributeScore score_localization(const LanguagePresence& presence,
                                  const LocalizationWeights& weights = {});

struct ScoringOptions {
  ContrastMode contrast_mode = ContrastMode::paper;
  NavigationOptions navigation;
  LanguageConfig languages;
  LocalizationWeights localization;
};

// All nine scores in model order.
std::vector<AttributeScore> score_all(const PooledFacts& facts,
                                      const std::optional<AnnotationSet>& annotations,
                                      const ScoringOptions& options = {});

// Applies annotation overrides to one page in place and recounts. Returns the
// override ids that matched an element on this page.
std::set<std::string> apply_annotations(PageFacts& page, const AnnotationSet& annotations);

std::string to_string(ContrastMode mode);
std::optional<ContrastMode> parse_contrast_mode(std::string_view text);

}  // namespace uac
