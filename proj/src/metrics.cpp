#include "uac/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace uac {

namespace {

AttributeScore ratio_score(const char* id, double numerator, double denominator) {
  AttributeScore s;
  s.attribute_id = id;
  s.numerator_evidence = numerator;
  s.denominator_evidence = denominator;
  s.applicable = denominator > 0;
  s.value = s.applicable ? std::clamp(numerator / denominator, 0.0, 1.0) : 0.0;
  return s;
}

double linearize(std::uint8_t channel) {
  double c = channel / 255.0;
  return c <= 0.03928 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

std::string primary_subtag(std::string_view tag) {
  std::string lower = html::to_lower(html::trim(tag));
  return lower.substr(0, lower.find_first_of("-_"));
}

// Splits an optional "<origin>::" scope off an override id. Returns false when
// the scope names another page.
bool unscoped_for(std::string_view key, std::string_view origin, std::string_view& out) {
  if (auto sep = key.find("::"); sep != std::string_view::npos) {
    if (key.substr(0, sep) != origin) return false;
    out = key.substr(sep + 2);
    return true;
  }
  out = key;
  return true;
}

bool id_matches(std::string_view key, std::string_view origin, std::string_view element_id) {
  std::string_view bare;
  if (!unscoped_for(key, origin, bare)) return false;
  if (bare == element_id) return true;
  auto hash = element_id.find('#');
  return !bare.empty() && bare.front() == '#' && hash != std::string_view::npos &&
         element_id.substr(hash) == bare;
}

}  // namespace

PooledFacts PooledFacts::from_page(const PageFacts& p) {
  PooledFacts f;
  f.page_count = 1;
  f.images_total = p.images_total;
  f.images_with_meaningful_alt = p.images_with_meaningful_alt;
  f.contrast_groups = p.contrast_groups;
  f.videos_total = p.videos_total;
  f.videos_with_tracks = p.videos_with_tracks;
  f.interactive_total = p.interactive_total;
  f.interactive_keyboard_ok = p.interactive_keyboard_ok;
  f.assistable_fields_total = p.assistable_fields_total;
  f.fields_with_assistance = p.fields_with_assistance;
  f.forms_total = p.forms_total;
  f.forms_with_error_support = p.forms_with_error_support;
  f.languages_offered = p.languages_offered;
  f.pages.push_back(
      {p.origin, p.breadcrumbs_present, p.skipped_heading_levels, p.headings_total, p.path_depth});
  return f;
}

PooledFacts& PooledFacts::merge(const PooledFacts& o) {
  page_count += o.page_count;
  images_total += o.images_total;
  images_with_meaningful_alt += o.images_with_meaningful_alt;
  for (const auto& g : o.contrast_groups) {
    auto it = std::find_if(contrast_groups.begin(), contrast_groups.end(), [&](const auto& mine) {
      return mine.foreground == g.foreground && mine.background == g.background &&
             mine.is_main_text == g.is_main_text;
    });
    if (it == contrast_groups.end()) {
      contrast_groups.push_back(g);
    } else {
      it->element_count += g.element_count;
    }
  }
  videos_total += o.videos_total;
  videos_with_tracks += o.videos_with_tracks;
  interactive_total += o.interactive_total;
  interactive_keyboard_ok += o.interactive_keyboard_ok;
  assistable_fields_total += o.assistable_fields_total;
  fields_with_assistance += o.fields_with_assistance;
  forms_total += o.forms_total;
  forms_with_error_support += o.forms_with_error_support;
  languages_offered.insert(o.languages_offered.begin(), o.languages_offered.end());
  pages.insert(pages.end(), o.pages.begin(), o.pages.end());
  return *this;
}

PooledFacts pool(std::span<const PageFacts> pages) {
  PooledFacts pooled;
  for (const auto& page : pages) pooled.merge(PooledFacts::from_page(page));
  return pooled;
}

double relative_luminance(const Rgb& color) {
  return 0.2126 * linearize(color.r) + 0.7152 * linearize(color.g) + 0.0722 * linearize(color.b);
}

double contrast_ratio(const Rgb& a, const Rgb& b) {
  double la = relative_luminance(a);
  double lb = relative_luminance(b);
  auto [darker, lighter] = std::minmax(la, lb);
  return (lighter + 0.05) / (darker + 0.05);
}

bool passes_contrast(double ratio, bool is_main_text) {
  return ratio >= (is_main_text ? kMainTextMinimum : kLargeTextMinimum);
}

AttributeScore score_alt_text(const PooledFacts& f) {
  return ratio_score(ids::kAltText, double(f.images_with_meaningful_alt), double(f.images_total));
}

AttributeScore score_contrast(std::span<const ContrastGroup> groups, ContrastMode mode) {
  double passing = 0;
  double total = 0;
  for (const auto& g : groups) {
    double ratio = contrast_ratio(g.foreground, g.background);
    double weight = mode == ContrastMode::paper ? ratio : 1.0;
    double mass = weight * double(g.element_count);
    total += mass;
    if (passes_contrast(ratio, g.is_main_text)) passing += mass;
  }
  return ratio_score(ids::kContrast, passing, total);
}

AttributeScore score_media_alternatives(const PooledFacts& f) {
  return ratio_score(ids::kMediaAlternatives, double(f.videos_with_tracks), double(f.videos_total));
}

AttributeScore score_keyboard(const PooledFacts& f) {
  return ratio_score(ids::kKeyboard, double(f.interactive_keyboard_ok),
                     double(f.interactive_total));
}

bool is_deep_page(const NavigationEvidence& page, const NavigationOptions& options) {
  if (options.deep_override) return *options.deep_override;
  return page.path_depth >= options.deep_path_depth || page.breadcrumbs;
}

double structured_navigation_value(const NavigationEvidence& page, bool deep) {
  // More skipped levels than headings can occur (a lone h4 skips three), so
  // the heading term is clamped to [0,1].
  double skip_fraction = page.headings_total == 0
                             ? 0.0
                             : std::min(1.0, double(page.skipped_heading_levels) /
                                                 double(page.headings_total));
  double hierarchy = 1.0 - skip_fraction;
  return deep ? 0.5 * (page.breadcrumbs ? 1.0 : 0.0) + 0.5 * hierarchy : hierarchy;
}

AttributeScore score_structured_navigation(const PooledFacts& f, const NavigationOptions& options) {
  double sum = 0;
  for (const auto& page : f.pages) {
    sum += structured_navigation_value(page, is_deep_page(page, options));
  }
  return ratio_score(ids::kStructuredNavigation, sum, double(f.pages.size()));
}

AttributeScore score_clear_instructions(const std::optional<AnnotationSet>& annotations) {
  if (!annotations || !annotations->clear_instructions) {
    AttributeScore s = ratio_score(ids::kClearInstructions, 0, 0);
    s.missing_annotation = true;
    return s;
  }
  const auto& ci = *annotations->clear_instructions;
  return ratio_score(ids::kClearInstructions, double(ci.clear), double(ci.total));
}

AttributeScore score_input_assistance(const PooledFacts& f) {
  return ratio_score(ids::kInputAssistance, double(f.fields_with_assistance),
                     double(f.assistable_fields_total));
}

AttributeScore score_error_support(const PooledFacts& f) {
  return ratio_score(ids::kErrorSupport, double(f.forms_with_error_support),
                     double(f.forms_total));
}

LanguagePresence language_presence(const std::set<std::string>& offered,
                                   const LanguageConfig& config) {
  std::set<std::string> primaries;
  for (const auto& tag : offered) primaries.insert(primary_subtag(tag));
  for (const auto& tag : config.offered) primaries.insert(primary_subtag(tag));
  primaries.erase("");

  LanguagePresence p;
  std::set<std::string> known;
  std::string state = primary_subtag(config.state_language);
  std::string english = primary_subtag(config.english);
  p.state_language = primaries.contains(state);
  p.english = primaries.contains(english);
  known.insert(state);
  known.insert(english);
  for (const auto& tag : config.popular_european) {
    std::string primary = primary_subtag(tag);
    known.insert(primary);
    if (primaries.contains(primary) && p.popular_european.size() < 2) {
      p.popular_european.insert(primary);
    }
  }
  std::set<std::string> declared_other;
  for (const auto& tag : config.other) declared_other.insert(primary_subtag(tag));
  p.other = std::any_of(primaries.begin(), primaries.end(), [&](const std::string& lang) {
    return declared_other.empty() ? !known.contains(lang) : declared_other.contains(lang);
  });
  return p;
}

AttributeScore score_localization(const LanguagePresence& p, const LocalizationWeights& w) {
  double sum = (p.state_language ? w.state_language : 0.0) + (p.english ? w.english : 0.0) +
               w.per_popular_european * double(p.popular_european.size()) +
               (p.other ? w.other : 0.0);
  double best = w.state_language + w.english + 2 * w.per_popular_european + w.other;
  AttributeScore s;
  s.attribute_id = ids::kLocalization;
  s.numerator_evidence = sum;
  s.denominator_evidence = best;
  s.applicable = best > 0;
  s.value = std::clamp(sum, 0.0, 1.0);
  return s;
}

std::vector<AttributeScore> score_all(const PooledFacts& facts,
                                      const std::optional<AnnotationSet>& annotations,
                                      const ScoringOptions& options) {
  std::vector<AttributeScore> scores = {
      score_alt_text(facts),
      score_contrast(facts.contrast_groups, options.contrast_mode),
      score_media_alternatives(facts),
      score_keyboard(facts),
      score_structured_navigation(facts, options.navigation),
      score_clear_instructions(annotations),
      score_input_assistance(facts),
      score_error_support(facts),
      score_localization(language_presence(facts.languages_offered, options.languages),
                         options.localization),
  };
  if (facts.page_count == 0) {
    for (auto& s : scores) {
      s.applicable = false;
      s.value = 0;
      s.numerator_evidence = 0;
      s.denominator_evidence = 0;
      s.missing_annotation = false;
    }
  }
  return scores;
}

std::set<std::string> apply_annotations(PageFacts& page, const AnnotationSet& annotations) {
  std::set<std::string> matched;
  for (const auto& key : annotations.captioned_media_overrides) {
    for (auto& m : page.media) {
      if (!id_matches(key, page.origin, m.element_id)) continue;
      m.captioned = true;
      m.overridden = true;
      matched.insert(key);
    }
  }
  for (const auto& key : annotations.error_support_overrides) {
    for (auto& form : page.forms) {
      if (!id_matches(key, page.origin, form.element_id)) continue;
      form.error_support = true;
      form.overridden = true;
      matched.insert(key);
    }
  }
  for (const auto& [key, ok] : annotations.keyboard_overrides) {
    for (auto& item : page.interactive) {
      if (!id_matches(key, page.origin, item.element_id)) continue;
      item.keyboard_ok = ok;
      item.overridden = true;
      item.reason = "manual test override";
      matched.insert(key);
    }
  }
  recount(page);
  return matched;
}

std::string to_string(ContrastMode mode) {
  return mode == ContrastMode::paper ? "paper" : "simple";
}

std::optional<ContrastMode> parse_contrast_mode(std::string_view text) {
  if (text == "paper") return ContrastMode::paper;
  if (text == "simple") return ContrastMode::simple;
  return std::nullopt;
}

}  // namespace uac
