#include "uac/facts.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <unordered_map>

#include "json.hpp"

#include "uac/errors.hpp"

namespace uac {

namespace {

using html::iequals;
using html::icontains;
using html::Node;
using html::to_lower;
using html::trim;

bool contains(const std::vector<std::string>& set, std::string_view value) {
  return std::find(set.begin(), set.end(), value) != set.end();
}

std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.emplace_back(s.substr(start, i - start));
  }
  return out;
}

std::optional<int> tabindex_of(const Node& el) {
  const std::string* raw = el.attr("tabindex");
  if (!raw) return std::nullopt;
  std::string_view v = trim(*raw);
  int n = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
  if (ec != std::errc{} || v.empty()) return std::nullopt;
  return n;
}

bool is_natively_focusable(const Node& el) {
  const std::string& tag = el.tag();
  if (tag == "a") return el.has_attr("href");
  if (tag == "input") return !iequals(el.attr_or_empty("type"), "hidden");
  return tag == "button" || tag == "select" || tag == "textarea" || tag == "summary";
}

bool has_click_semantics(const Node& el) {
  std::string role = to_lower(trim(el.attr_or_empty("role")));
  return el.has_attr("onclick") || role == "button" || role == "link";
}

// Ids of every element, computed in one document-order pass.
std::unordered_map<const Node*, std::string> identify_elements(const html::Document& dom) {
  std::unordered_map<const Node*, std::string> ids;
  std::unordered_map<std::string, std::size_t> per_tag;
  html::for_each_element(dom.root(), [&](const Node& el) {
    ids.emplace(&el, element_identifier(el, per_tag[el.tag()]++));
  });
  return ids;
}

bool json_has_breadcrumb_type(const nlohmann::json& j) {
  if (j.is_object()) {
    if (auto it = j.find("@type"); it != j.end()) {
      if (it->is_string() && it->get<std::string>() == "BreadcrumbList") return true;
      if (it->is_array()) {
        for (const auto& t : *it) {
          if (t.is_string() && t.get<std::string>() == "BreadcrumbList") return true;
        }
      }
    }
    for (const auto& [key, value] : j.items()) {
      if (json_has_breadcrumb_type(value)) return true;
    }
  } else if (j.is_array()) {
    for (const auto& value : j) {
      if (json_has_breadcrumb_type(value)) return true;
    }
  }
  return false;
}

bool is_assisted(const Node& field, const html::Document& dom) {
  if (const std::string* ac = field.attr("autocomplete")) {
    std::string v = to_lower(trim(*ac));
    if (!v.empty() && v != "off") return true;
  }
  if (!trim(field.attr_or_empty("placeholder")).empty()) return true;
  if (const std::string* list = field.attr("list")) {
    const Node* target = dom.element_by_id(trim(*list));
    if (target && target->tag() == "datalist") return true;
  }
  if (const std::string* described = field.attr("aria-describedby")) {
    for (const auto& id : tokens(*described)) {
      const Node* target = dom.element_by_id(id);
      if (target && !trim(target->text_content()).empty()) return true;
    }
  }
  return !trim(field.attr_or_empty("title")).empty();
}

bool form_has_error_support(const Node& form) {
  bool found = false;
  html::for_each_element(form, [&](const Node& el) {
    if (found) return;
    std::string role = to_lower(trim(el.attr_or_empty("role")));
    found = role == "alert" || el.has_attr("aria-live") || el.has_attr("aria-invalid") ||
            el.has_attr("aria-errormessage");
  });
  return found;
}

std::string normalize_language(std::string_view tag) {
  std::string v = to_lower(trim(tag));
  std::replace(v.begin(), v.end(), '_', '-');
  return v;
}

}  // namespace

std::string to_string(AltStatus status) {
  switch (status) {
    case AltStatus::meaningful: return "meaningful";
    case AltStatus::missing: return "missing";
    case AltStatus::empty: return "empty";
    case AltStatus::filename: return "filename";
    case AltStatus::placeholder: return "placeholder";
    case AltStatus::decorative: return "decorative";
  }
  return "missing";
}

std::string element_identifier(const Node& element, std::size_t same_tag_index) {
  std::string id(trim(element.attr_or_empty("id")));
  if (!id.empty()) return element.tag() + "#" + id;
  return element.tag() + "[" + std::to_string(same_tag_index) + "]";
}

void recount(PageFacts& f) {
  f.images_total = 0;
  f.images_with_meaningful_alt = 0;
  for (const auto& img : f.images) {
    if (img.status == AltStatus::decorative) continue;
    ++f.images_total;
    if (img.status == AltStatus::meaningful) ++f.images_with_meaningful_alt;
  }
  f.videos_total = f.media.size();
  f.videos_with_tracks = static_cast<std::size_t>(
      std::count_if(f.media.begin(), f.media.end(), [](const auto& m) { return m.captioned; }));
  f.interactive_total = f.interactive.size();
  f.interactive_keyboard_ok = static_cast<std::size_t>(std::count_if(
      f.interactive.begin(), f.interactive.end(), [](const auto& i) { return i.keyboard_ok; }));
  f.assistable_fields_total = f.fields.size();
  f.fields_with_assistance = static_cast<std::size_t>(
      std::count_if(f.fields.begin(), f.fields.end(), [](const auto& x) { return x.assisted; }));
  f.forms_total = f.forms.size();
  f.forms_with_error_support = static_cast<std::size_t>(std::count_if(
      f.forms.begin(), f.forms.end(), [](const auto& x) { return x.error_support; }));
  f.headings_total = f.heading_levels.size();
  f.skipped_heading_levels = count_skipped_heading_levels(f.heading_levels);
}

std::size_t count_skipped_heading_levels(std::span<const int> levels) {
  std::size_t skipped = 0;
  int previous = 0;  // virtual level above h1
  for (int level : levels) {
    if (level > previous + 1) skipped += static_cast<std::size_t>(level - previous - 1);
    previous = level;
  }
  return skipped;
}

AltStatus classify_alt(const Node& image, const HeuristicConfig& heuristics) {
  std::optional<std::string> alt;
  if (image.tag() == "svg") {
    if (iequals(trim(image.attr_or_empty("aria-hidden")), "true")) return AltStatus::decorative;
    if (const std::string* label = image.attr("aria-label")) {
      alt = *label;
    } else {
      for (const auto& child : image.children()) {
        if (child->is_element() && child->tag() == "title") {
          alt = child->text_content();
          break;
        }
      }
    }
  } else if (const std::string* a = image.attr("alt")) {
    alt = *a;
  }
  if (!alt) return AltStatus::missing;

  std::string text(trim(*alt));
  if (text.empty()) {
    bool presentation = iequals(trim(image.attr_or_empty("role")), "presentation");
    bool hidden = iequals(trim(image.attr_or_empty("aria-hidden")), "true");
    return presentation || hidden ? AltStatus::decorative : AltStatus::empty;
  }
  std::string lower = to_lower(text);
  if (auto dot = lower.rfind('.'); dot != std::string::npos) {
    if (contains(heuristics.filename_extensions, std::string_view(lower).substr(dot + 1))) {
      return AltStatus::filename;
    }
  }
  if (contains(heuristics.placeholder_alt_words, lower)) return AltStatus::placeholder;
  return AltStatus::meaningful;
}

bool is_large_text(const css::ComputedStyle& style, const HeuristicConfig& heuristics) {
  return style.font_size_px >= heuristics.large_text_px ||
         (style.font_size_px >= heuristics.large_bold_text_px &&
          style.font_weight >= heuristics.bold_weight);
}

html::Document parse_dom(const SourceDocument& doc) {
  if (trim(doc.raw).empty()) throw EmptyDocument(doc.origin + ": document is empty");
  try {
    return html::parse(doc.raw);
  } catch (const MalformedDocument& e) {
    throw MalformedDocument(doc.origin + ": " + e.what());
  }
}

css::Stylesheet collect_stylesheet(const html::Document& dom, const SourceDocument& doc,
                                   bool* partially_resolved) {
  css::Stylesheet sheet;
  bool partial = false;
  html::for_each_element(dom.root(), [&](const Node& el) {
    if (el.tag() == "style") {
      sheet.append(el.text_content());
    } else if (el.tag() == "link") {
      auto rel = tokens(to_lower(el.attr_or_empty("rel")));
      if (!contains(rel, "stylesheet")) return;
      std::string href(trim(el.attr_or_empty("href")));
      if (auto it = doc.external_stylesheets.find(href); it != doc.external_stylesheets.end()) {
        sheet.append(it->second);
      } else {
        partial = true;
      }
    }
  });
  if (sheet.unsupported_selectors > 0) partial = true;
  if (partially_resolved) *partially_resolved = partial;
  return sheet;
}

std::vector<ContrastGroup> extract_contrast_groups(const html::Document& dom,
                                                   const css::StyleMap& styles,
                                                   const HeuristicConfig& heuristics) {
  std::vector<ContrastGroup> groups;
  html::for_each_element(dom.root(), [&](const Node& el) {
    auto it = styles.find(&el);
    if (it == styles.end() || it->second.hidden || !el.has_direct_text()) return;
    const css::ComputedStyle& style = it->second;
    bool main = !is_large_text(style, heuristics);
    auto group = std::find_if(groups.begin(), groups.end(), [&](const ContrastGroup& g) {
      return g.foreground == style.foreground && g.background == style.background &&
             g.is_main_text == main;
    });
    if (group == groups.end()) {
      groups.push_back({style.foreground, style.background, main, 1});
    } else {
      ++group->element_count;
    }
  });
  return groups;
}

std::vector<ContrastGroup> extract_contrast_groups(const SourceDocument& doc,
                                                   const HeuristicConfig& heuristics) {
  html::Document dom = parse_dom(doc);
  css::StyleMap styles = css::resolve_styles(dom, collect_stylesheet(dom, doc));
  return extract_contrast_groups(dom, styles, heuristics);
}

bool detect_breadcrumbs(const html::Document& dom) {
  bool found = false;
  // Rule 1: labelled nav landmark.
  html::for_each_element(dom.root(), [&](const Node& el) {
    if (found || el.tag() != "nav") return;
    if (icontains(el.attr_or_empty("aria-label"), "breadcrumb")) {
      found = true;
      return;
    }
    for (const auto& id : tokens(el.attr_or_empty("aria-labelledby"))) {
      const Node* label = dom.element_by_id(id);
      if (label && icontains(label->text_content(), "breadcrumb")) found = true;
    }
  });
  if (found) return true;
  // Rule 2: class token.
  html::for_each_element(dom.root(), [&](const Node& el) {
    if (found) return;
    for (const auto& cls : el.class_tokens()) {
      if (iequals(cls, "breadcrumb") || iequals(cls, "breadcrumbs")) found = true;
    }
  });
  if (found) return true;
  // Rule 3: structured data.
  html::for_each_element(dom.root(), [&](const Node& el) {
    if (found) return;
    if (icontains(el.attr_or_empty("itemtype"), "schema.org/breadcrumblist")) {
      found = true;
      return;
    }
    if (el.tag() == "script" && iequals(trim(el.attr_or_empty("type")), "application/ld+json")) {
      auto parsed = nlohmann::json::parse(el.text_content(), nullptr, false);
      found = parsed.is_discarded() ? el.text_content().find("\"BreadcrumbList\"") != std::string::npos
                                    : json_has_breadcrumb_type(parsed);
    }
  });
  return found;
}

bool detect_breadcrumbs(const SourceDocument& doc) { return detect_breadcrumbs(parse_dom(doc)); }

PageFacts parse_document(const SourceDocument& doc, const HeuristicConfig& heuristics) {
  html::Document dom = parse_dom(doc);
  PageFacts facts;
  facts.origin = doc.origin;
  facts.path_depth = doc.path_depth;
  facts.lossy_utf8 = doc.lossy_utf8;

  css::StyleMap styles = css::resolve_styles(
      dom, collect_stylesheet(dom, doc, &facts.styles_partially_resolved));
  facts.contrast_groups = extract_contrast_groups(dom, styles, heuristics);
  facts.breadcrumbs_present = detect_breadcrumbs(dom);

  auto ids = identify_elements(dom);
  html::for_each_element(dom.root(), [&](const Node& el) {
    const std::string& tag = el.tag();
    const std::string& id = ids.at(&el);

    if (tag == "img" ||
        (tag == "svg" && iequals(trim(el.attr_or_empty("role")), "img"))) {
      AltStatus status = classify_alt(el, heuristics);
      std::string alt = tag == "img" ? el.attr_or_empty("alt") : el.attr_or_empty("aria-label");
      facts.images.push_back({id, status, alt});
    }

    if (tag == "video" || tag == "audio") {
      bool captioned = false;
      for (const auto& child : el.children()) {
        if (!child->is_element() || child->tag() != "track") continue;
        // A track without kind is a subtitles track.
        std::string kind = to_lower(trim(child->attr_or_empty("kind")));
        if (kind.empty()) kind = "subtitles";
        if (contains(heuristics.caption_track_kinds, kind)) captioned = true;
      }
      facts.media.push_back({id, tag, captioned, false});
    }

    std::optional<int> tabindex = tabindex_of(el);
    if (is_natively_focusable(el)) {
      bool removed = tabindex && *tabindex < 0;
      facts.interactive.push_back(
          {id, !removed, removed ? "native control removed from tab order" : "native control", false});
    } else if (tabindex && *tabindex >= 0) {
      facts.interactive.push_back({id, true, "tabindex", false});
    } else if (has_click_semantics(el)) {
      facts.interactive.push_back({id, false, "click target without keyboard focus", false});
    }

    if (tag.size() == 2 && tag[0] == 'h' && tag[1] >= '1' && tag[1] <= '6') {
      facts.heading_levels.push_back(tag[1] - '0');
    }

    bool eligible_field = tag == "textarea";
    if (tag == "input") {
      std::string type = to_lower(trim(el.attr_or_empty("type")));
      if (type.empty()) type = "text";
      eligible_field = contains(heuristics.assistable_input_types, type);
    }
    if (eligible_field) facts.fields.push_back({id, is_assisted(el, dom)});

    if (tag == "form") facts.forms.push_back({id, form_has_error_support(el), false});

    if (tag == "html" && !trim(el.attr_or_empty("lang")).empty()) {
      facts.languages_offered.insert(normalize_language(el.attr_or_empty("lang")));
    }
    if ((tag == "a" || tag == "link") && el.has_attr("hreflang")) {
      std::string lang = normalize_language(el.attr_or_empty("hreflang"));
      if (!lang.empty() && lang != "x-default") facts.languages_offered.insert(lang);
    }
  });
  for (const auto& lang : heuristics.extra_languages) {
    if (!trim(lang).empty()) facts.languages_offered.insert(normalize_language(lang));
  }

  recount(facts);
  return facts;
}

}  // namespace uac
