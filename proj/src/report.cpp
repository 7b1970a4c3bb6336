#include "uac/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "uac/errors.hpp"

namespace uac {

using nlohmann::json;

namespace {

struct Advice {
  std::string_view id;
  std::string_view subject;  // what the evidence counts
  std::string_view action;
};

constexpr std::array<Advice, 9> kAdvice = {{
    {"UAC-1.1.1-G", "images with meaningful alternative text",
     "Give every informative image a descriptive alt attribute; mark decorative images with "
     "alt=\"\" and role=\"presentation\"."},
    {"UAC-1.1.2-G", "contrast-weighted text passing its threshold",
     "Raise text/background contrast to at least 4.5:1 for body text and 3:1 for large text."},
    {"UAC-1.1.3-G", "media elements with captions or descriptions",
     "Add <track kind=\"captions\"> or audio descriptions to video and audio content."},
    {"UAC-1.2.1-G", "interactive elements reachable by keyboard",
     "Use native controls or add tabindex=\"0\" and key handlers to custom click targets."},
    {"UAC-1.2.2-G", "mean structured-navigation score per page",
     "Add breadcrumbs on deep pages and avoid skipping heading levels."},
    {"UAC-1.3.1-G", "form instructions rated clear",
     "Review form instructions with users and rewrite unclear ones."},
    {"UAC-1.3.2-G", "input fields with autocomplete, hints or suggestions",
     "Add autocomplete tokens, placeholders, datalists or aria-describedby hints to text "
     "fields."},
    {"UAC-1.3.3-G", "forms with error messaging",
     "Announce validation errors with role=\"alert\"/aria-live and mark fields with "
     "aria-invalid."},
    {"UAC-2.1-S", "weighted language coverage",
     "Offer the state language and English first, then further widely used languages."},
}};

const Advice* advice_for(std::string_view id) {
  for (const auto& a : kAdvice) {
    if (a.id == id) return &a;
  }
  return nullptr;
}

std::string evidence_text(const AttributeScore& s) {
  const Advice* advice = advice_for(s.attribute_id);
  char buf[64];
  std::snprintf(buf, sizeof buf, ": %.6g of %.6g", s.numerator_evidence, s.denominator_evidence);
  return (advice ? std::string(advice->subject) : s.attribute_id) + buf;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> number_or_null(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

json score_to_json(const AttributeScore& s) {
  return {{"id", s.attribute_id},
          {"value", s.applicable ? json(s.value) : json(nullptr)},
          {"applicable", s.applicable},
          {"numerator", s.numerator_evidence},
          {"denominator", s.denominator_evidence},
          {"missing_annotation", s.missing_annotation}};
}

AttributeScore score_from_json(const json& j) {
  AttributeScore s;
  s.attribute_id = j.at("id").get<std::string>();
  s.applicable = j.at("applicable").get<bool>();
  s.value = j.at("value").is_null() ? 0.0 : j.at("value").get<double>();
  s.numerator_evidence = j.at("numerator").get<double>();
  s.denominator_evidence = j.at("denominator").get<double>();
  s.missing_annotation = j.value("missing_annotation", false);
  return s;
}

json level_to_json(const std::optional<QualityLevel>& level) {
  if (!level) return nullptr;
  return {{"label", to_string(level->label)},
          {"lower_bound", level->lower_bound},
          {"upper_bound", level->upper_bound}};
}

std::optional<QualityLevel> level_from_json(const json& j) {
  if (j.is_null()) return std::nullopt;
  auto label = parse_level(j.at("label").get<std::string>());
  if (!label) throw InputError("unknown level label in report");
  return QualityLevel{*label, j.at("lower_bound").get<double>(), j.at("upper_bound").get<double>()};
}

Tier tier_from_string(const std::string& s) {
  for (auto t : {Tier::attribute, Tier::subproperty, Tier::property, Tier::subcharacteristic}) {
    if (to_string(t) == s) return t;
  }
  throw InputError("unknown tier '" + s + "' in report");
}

json tree_to_json(const QualityTree& tree) {
  json nodes = json::array();
  for (const auto& n : tree.nodes) {
    nodes.push_back({{"id", n.id},
                     {"tier", to_string(n.tier)},
                     {"value", optional_number(n.value)},
                     {"weight", n.weight},
                     {"effective_weight", n.effective_weight}});
  }
  json attributes = json::array();
  for (const auto& s : tree.attributes) attributes.push_back(score_to_json(s));
  return {{"attributes", attributes},
          {"nodes", nodes},
          {"subcharacteristic", optional_number(tree.subcharacteristic)},
          {"level", level_to_json(tree.level)},
          {"redistributed", tree.redistributed}};
}

QualityTree tree_from_json(const json& j) {
  QualityTree tree;
  for (const auto& a : j.at("attributes")) tree.attributes.push_back(score_from_json(a));
  for (const auto& n : j.at("nodes")) {
    tree.nodes.push_back(TreeNode{n.at("id").get<std::string>(),
                                  tier_from_string(n.at("tier").get<std::string>()),
                                  number_or_null(n.at("value")), n.at("weight").get<double>(),
                                  n.at("effective_weight").get<double>()});
  }
  tree.subcharacteristic = number_or_null(j.at("subcharacteristic"));
  tree.level = level_from_json(j.at("level"));
  tree.redistributed = j.at("redistributed").get<std::vector<std::string>>();
  return tree;
}

json page_summary_to_json(const PageSummary& p) {
  return {{"origin", p.origin},
          {"path_depth", p.path_depth},
          {"deep", p.deep},
          {"structured_navigation", p.structured_navigation},
          {"images_total", p.images_total},
          {"images_with_meaningful_alt", p.images_with_meaningful_alt},
          {"contrast_groups", p.contrast_groups},
          {"text_elements", p.text_elements},
          {"videos_total", p.videos_total},
          {"videos_with_tracks", p.videos_with_tracks},
          {"interactive_total", p.interactive_total},
          {"interactive_keyboard_ok", p.interactive_keyboard_ok},
          {"breadcrumbs_present", p.breadcrumbs_present},
          {"heading_levels", p.heading_levels},
          {"skipped_heading_levels", p.skipped_heading_levels},
          {"headings_total", p.headings_total},
          {"assistable_fields_total", p.assistable_fields_total},
          {"fields_with_assistance", p.fields_with_assistance},
          {"forms_total", p.forms_total},
          {"forms_with_error_support", p.forms_with_error_support},
          {"languages_offered", p.languages_offered}};
}

PageSummary page_summary_from_json(const json& j) {
  PageSummary p;
  j.at("origin").get_to(p.origin);
  j.at("path_depth").get_to(p.path_depth);
  j.at("deep").get_to(p.deep);
  j.at("structured_navigation").get_to(p.structured_navigation);
  j.at("images_total").get_to(p.images_total);
  j.at("images_with_meaningful_alt").get_to(p.images_with_meaningful_alt);
  j.at("contrast_groups").get_to(p.contrast_groups);
  j.at("text_elements").get_to(p.text_elements);
  j.at("videos_total").get_to(p.videos_total);
  j.at("videos_with_tracks").get_to(p.videos_with_tracks);
  j.at("interactive_total").get_to(p.interactive_total);
  j.at("interactive_keyboard_ok").get_to(p.interactive_keyboard_ok);
  j.at("breadcrumbs_present").get_to(p.breadcrumbs_present);
  j.at("heading_levels").get_to(p.heading_levels);
  j.at("skipped_heading_levels").get_to(p.skipped_heading_levels);
  j.at("headings_total").get_to(p.headings_total);
  j.at("assistable_fields_total").get_to(p.assistable_fields_total);
  j.at("fields_with_assistance").get_to(p.fields_with_assistance);
  j.at("forms_total").get_to(p.forms_total);
  j.at("forms_with_error_support").get_to(p.forms_with_error_support);
  j.at("languages_offered").get_to(p.languages_offered);
  return p;
}

std::string ratio_cell(std::size_t a, std::size_t b) {
  return std::to_string(a) + "/" + std::to_string(b);
}

std::string cell(const std::optional<double>& v) { return v ? format_value(*v) : "n/a"; }

std::string render_markdown(const AuditReport& r) {
  std::ostringstream md;
  md << "# Accessibility audit report\n\n";

  md << "## Summary\n\n";
  md << "- Pages audited: " << r.pages.size() << "\n";
  md << "- Accessibility (UAC): " << cell(r.tree.subcharacteristic) << "\n";
  if (r.tree.level) {
    md << "- Quality level: " << to_string(r.tree.level->label) << " ["
       << format_value(r.tree.level->lower_bound) << ", " << format_value(r.tree.level->upper_bound)
       << (r.tree.level->label == LevelLabel::excellent ? "]" : ")") << "\n";
  } else {
    md << "- Quality level: n/a\n";
  }
  md << "- Contrast mode: " << r.contrast_mode
     << (r.contrast_mode == "simple" ? " (plain pass fraction, not ratio-weighted)" : "") << "\n";
  md << "- Tool version: " << r.tool_version << "\n\n";

  md << "## Table\n\n";
  md << "| ID | Value | Weight |\n|----|-------|--------|\n";
  const std::array<std::pair<Tier, const char*>, 4> sections = {{
      {Tier::attribute, "Quality attributes"},
      {Tier::subproperty, "Quality subproperties"},
      {Tier::property, "Quality properties"},
      {Tier::subcharacteristic, "Quality subcharacteristic"},
  }};
  for (const auto& [tier, title] : sections) {
    md << "| *" << title << "* | | |\n";
    for (const auto& n : r.tree.nodes) {
      if (n.tier != tier) continue;
      md << "| " << n.id << " | " << cell(n.value) << " | "
         << (tier == Tier::subcharacteristic ? "" : format_value(n.weight)) << " |\n";
    }
  }
  md << "\n";

  md << "## Recommendations\n\n";
  if (r.recommendations.empty()) md << "None.\n";
  for (std::size_t i = 0; i < r.recommendations.size(); ++i) {
    const auto& rec = r.recommendations[i];
    md << i + 1 << ". **" << to_string(rec.severity) << "** " << rec.attribute_id;
    const ModelNode* node = find_model_node(rec.attribute_id);
    if (node) md << " (" << node->name << ", " << cell(rec.value) << ")";
    md << ": " << rec.message << "\n";
  }
  md << "\n";

  md << "## Warnings\n\n";
  if (r.warnings.empty()) md << "None.\n";
  for (const auto& w : r.warnings) md << "- `" << w.code << "` " << w.message << "\n";
  md << "\n";

  md << "## Page Inventory\n\n";
  if (r.pages.empty()) {
    md << "No pages.\n";
  } else {
    md << "| Page | Depth | Deep | Images | Text elements | Media | Interactive | Headings "
          "(skipped/total) | Breadcrumbs | Fields | Forms | Languages |\n";
    md << "|---|---|---|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& p : r.pages) {
      std::string langs;
      for (const auto& l : p.languages_offered) langs += (langs.empty() ? "" : " ") + l;
      md << "| " << p.origin << " | " << p.path_depth << " | " << (p.deep ? "yes" : "no") << " | "
         << ratio_cell(p.images_with_meaningful_alt, p.images_total) << " | " << p.text_elements
         << " | " << ratio_cell(p.videos_with_tracks, p.videos_total) << " | "
         << ratio_cell(p.interactive_keyboard_ok, p.interactive_total) << " | "
         << ratio_cell(p.skipped_heading_levels, p.headings_total) << " | "
         << (p.breadcrumbs_present ? "yes" : "no") << " | "
         << ratio_cell(p.fields_with_assistance, p.assistable_fields_total) << " | "
         << ratio_cell(p.forms_with_error_support, p.forms_total) << " | " << langs << " |\n";
    }
  }

  if (!r.per_page.empty()) {
    md << "\n## Per-page Results\n";
    for (const auto& pt : r.per_page) {
      md << "\n### " << pt.origin << "\n\n| ID | Value |\n|----|-------|\n";
      for (const auto& n : pt.tree.nodes) md << "| " << n.id << " | " << cell(n.value) << " |\n";
    }
  }
  return md.str();
}

std::size_t as_count(const json& j, const char* what) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    throw InputError(std::string(what) + " must be an integer");
  }
  auto v = j.get<long long>();
  if (v < 0) throw InputError(std::string(what) + " must be non-negative");
  return static_cast<std::size_t>(v);
}

}  // namespace

void add_warning(std::vector<Warning>& warnings, Warning w) {
  if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) {
    warnings.push_back(std::move(w));
  }
}

std::string to_string(Severity s) { return s == Severity::critical ? "critical" : "major"; }

std::vector<Recommendation> recommend(const QualityTree& tree, const QualityScale& scale) {
  const double excellent = scale.lower_bound(LevelLabel::excellent);
  std::vector<Recommendation> out;
  for (const auto& s : tree.attributes) {
    const Advice* advice = advice_for(s.attribute_id);
    std::string action = advice ? std::string(advice->action) : std::string{};
    if (s.missing_annotation) {
      out.push_back({s.attribute_id, Severity::critical, std::nullopt,
                     "No manual rating supplied; provide an annotation file with clear/total "
                     "instruction counts. " + action});
      continue;
    }
    if (!s.applicable) continue;
    if (s.value <= 0.0) {
      out.push_back({s.attribute_id, Severity::critical, s.value,
                     "Not implemented (" + evidence_text(s) + "). " + action});
    } else if (s.value < excellent) {
      out.push_back({s.attribute_id, Severity::major, s.value,
                     "Below the excellent range (" + evidence_text(s) + "). " + action});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Recommendation& a, const Recommendation& b) {
    if (a.severity != b.severity) return a.severity < b.severity;
    return a.value.value_or(-1.0) < b.value.value_or(-1.0);
  });
  return out;
}

std::optional<ReportFormat> parse_format(std::string_view text) {
  if (text == "json") return ReportFormat::json;
  if (text == "markdown" || text == "md") return ReportFormat::markdown;
  return std::nullopt;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5f", v);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

json to_json(const AuditReport& r) {
  json weights = json::object();
  for (const auto* m : {&r.weights.attribute_weights, &r.weights.subproperty_weights,
                        &r.weights.property_weights}) {
    for (const auto& [id, w] : *m) weights[id] = w;
  }
  json pages = json::array();
  for (const auto& p : r.pages) pages.push_back(page_summary_to_json(p));
  json recs = json::array();
  for (const auto& rec : r.recommendations) {
    recs.push_back({{"attribute_id", rec.attribute_id},
                    {"severity", to_string(rec.severity)},
                    {"value", optional_number(rec.value)},
                    {"message", rec.message}});
  }
  json warnings = json::array();
  for (const auto& w : r.warnings) warnings.push_back({{"code", w.code}, {"message", w.message}});
  json per_page = json::array();
  for (const auto& pt : r.per_page) {
    per_page.push_back({{"origin", pt.origin}, {"tree", tree_to_json(pt.tree)}});
  }
  return {{"schema", kReportSchema},
          {"tool_version", r.tool_version},
          {"contrast_mode", r.contrast_mode},
          {"summary",
           {{"UAC", optional_number(r.tree.subcharacteristic)},
            {"level", r.tree.level ? json(to_string(r.tree.level->label)) : json(nullptr)}}},
          {"tree", tree_to_json(r.tree)},
          {"weights", weights},
          {"scale_breakpoints", r.scale_breakpoints},
          {"recommendations", recs},
          {"warnings", warnings},
          {"pages", pages},
          {"per_page", per_page}};
}

AuditReport report_from_json(const json& j) {
  try {
    if (j.at("schema").get<int>() != kReportSchema) throw InputError("unsupported report schema");
    AuditReport r;
    r.tool_version = j.at("tool_version").get<std::string>();
    r.contrast_mode = j.at("contrast_mode").get<std::string>();
    r.tree = tree_from_json(j.at("tree"));
    r.weights = WeightSet{};
    for (const auto& [id, w] : j.at("weights").items()) r.weights.set(id, w.get<double>());
    r.scale_breakpoints = j.at("scale_breakpoints").get<std::array<double, 4>>();
    for (const auto& rec : j.at("recommendations")) {
      std::string sev = rec.at("severity").get<std::string>();
      r.recommendations.push_back({rec.at("attribute_id").get<std::string>(),
                                   sev == "critical" ? Severity::critical : Severity::major,
                                   number_or_null(rec.at("value")),
                                   rec.at("message").get<std::string>()});
    }
    for (const auto& w : j.at("warnings")) {
      r.warnings.push_back({w.at("code").get<std::string>(), w.at("message").get<std::string>()});
    }
    for (const auto& p : j.at("pages")) r.pages.push_back(page_summary_from_json(p));
    for (const auto& pt : j.at("per_page")) {
      r.per_page.push_back({pt.at("origin").get<std::string>(), tree_from_json(pt.at("tree"))});
    }
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid report JSON: ") + e.what());
  }
}

std::string render_report(const AuditReport& report, ReportFormat format) {
  if (format == ReportFormat::json) return to_json(report).dump(2) + "\n";
  return render_markdown(report);
}

AuditReport parse_report_json(std::string_view text) {
  auto j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw InputError("report is not valid JSON");
  return report_from_json(j);
}

json to_json(const PageFacts& f) {
  json groups = json::array();
  for (const auto& g : f.contrast_groups) {
    groups.push_back({{"foreground", g.foreground.hex()},
                      {"background", g.background.hex()},
                      {"main_text", g.is_main_text},
                      {"element_count", g.element_count}});
  }
  json images = json::array();
  for (const auto& i : f.images) {
    images.push_back({{"id", i.element_id}, {"alt_status", to_string(i.status)}, {"alt", i.alt}});
  }
  json media = json::array();
  for (const auto& m : f.media) {
    media.push_back({{"id", m.element_id}, {"kind", m.kind}, {"captioned", m.captioned},
                     {"overridden", m.overridden}});
  }
  json interactive = json::array();
  for (const auto& i : f.interactive) {
    interactive.push_back({{"id", i.element_id}, {"keyboard_ok", i.keyboard_ok},
                           {"reason", i.reason}, {"overridden", i.overridden}});
  }
  json fields = json::array();
  for (const auto& x : f.fields) fields.push_back({{"id", x.element_id}, {"assisted", x.assisted}});
  json forms = json::array();
  for (const auto& x : f.forms) {
    forms.push_back({{"id", x.element_id}, {"error_support", x.error_support},
                     {"overridden", x.overridden}});
  }
  return {{"origin", f.origin},
          {"path_depth", f.path_depth},
          {"images_total", f.images_total},
          {"images_with_meaningful_alt", f.images_with_meaningful_alt},
          {"contrast_groups", groups},
          {"videos_total", f.videos_total},
          {"videos_with_tracks", f.videos_with_tracks},
          {"interactive_total", f.interactive_total},
          {"interactive_keyboard_ok", f.interactive_keyboard_ok},
          {"breadcrumbs_present", f.breadcrumbs_present},
          {"heading_levels", f.heading_levels},
          {"skipped_heading_levels", f.skipped_heading_levels},
          {"headings_total", f.headings_total},
          {"assistable_fields_total", f.assistable_fields_total},
          {"fields_with_assistance", f.fields_with_assistance},
          {"forms_total", f.forms_total},
          {"forms_with_error_support", f.forms_with_error_support},
          {"languages_offered", f.languages_offered},
          {"styles_partially_resolved", f.styles_partially_resolved},
          {"lossy_utf8", f.lossy_utf8},
          {"elements",
           {{"images", images},
            {"media", media},
            {"interactive", interactive},
            {"fields", fields},
            {"forms", forms}}}};
}

WeightFile parse_weights(const json& j, WeightSet base) {
  if (!j.is_object()) throw InputError("weights file must be a JSON object");
  WeightFile out;
  out.weights = std::move(base);
  for (const auto& [key, value] : j.items()) {
    if (key == "localization") {
      LocalizationWeights lw;
      if (value.is_array() && value.size() == 4 &&
          std::all_of(value.begin(), value.end(), [](const json& v) { return v.is_number(); })) {
        lw = {value[0].get<double>(), value[1].get<double>(), value[2].get<double>(),
              value[3].get<double>()};
      } else if (value.is_object()) {
        lw.state_language = value.value("state_language", lw.state_language);
        lw.english = value.value("english", lw.english);
        lw.per_popular_european = value.value("per_popular_european", lw.per_popular_european);
        lw.other = value.value("other", lw.other);
      } else {
        throw InputError("\"localization\" must be four numbers or an object");
      }
      for (double w : {lw.state_language, lw.english, lw.per_popular_european, lw.other}) {
        if (!(w >= 0)) throw WeightValidation("localization weights must be non-negative");
      }
      out.localization = lw;
    } else if (key == "breakpoints") {
      if (!value.is_array() || value.size() != 4) {
        throw InputError("\"breakpoints\" must be an array of four numbers");
      }
      std::array<double, 4> b{};
      for (std::size_t i = 0; i < 4; ++i) {
        if (!value[i].is_number()) throw InputError("breakpoints must be numbers");
        b[i] = value[i].get<double>();
      }
      QualityScale{b};  // validates
      out.breakpoints = b;
    } else {
      if (!value.is_number()) throw InputError("weight for " + key + " must be a number");
      out.weights.set(key, value.get<double>());
    }
  }
  out.weights.validate();
  return out;
}

AnnotationSet parse_annotations(const json& j) {
  if (!j.is_object()) throw InputError("annotation file must be a JSON object");
  AnnotationSet a;
  try {
    if (auto it = j.find("clear_instructions"); it != j.end() && !it->is_null()) {
      ClearInstructions ci{as_count(it->at("clear"), "clear_instructions.clear"),
                           as_count(it->at("total"), "clear_instructions.total")};
      if (ci.clear > ci.total) throw InputError("clear_instructions.clear exceeds total");
      a.clear_instructions = ci;
    }
    if (auto it = j.find("captioned_media"); it != j.end()) {
      for (const auto& id : *it) a.captioned_media_overrides.insert(id.get<std::string>());
    }
    if (auto it = j.find("error_support_forms"); it != j.end()) {
      for (const auto& id : *it) a.error_support_overrides.insert(id.get<std::string>());
    }
    if (auto it = j.find("keyboard"); it != j.end()) {
      for (const auto& [id, ok] : it->items()) a.keyboard_overrides[id] = ok.get<bool>();
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid annotation file: ") + e.what());
  }
  return a;
}

json to_json(const AnnotationSet& a) {
  json out = json::object();
  if (a.clear_instructions) {
    out["clear_instructions"] = {{"clear", a.clear_instructions->clear},
                                 {"total", a.clear_instructions->total}};
  }
  out["captioned_media"] = a.captioned_media_overrides;
  out["error_support_forms"] = a.error_support_overrides;
  out["keyboard"] = a.keyboard_overrides;
  return out;
}

LanguageConfig parse_languages(const json& j) {
  if (!j.is_object()) throw InputError("language config must be a JSON object");
  LanguageConfig c;
  try {
    if (j.contains("state")) c.state_language = j.at("state").get<std::string>();
    if (j.contains("english")) c.english = j.at("english").get<std::string>();
    if (j.contains("popular_european")) {
      c.popular_european = j.at("popular_european").get<std::vector<std::string>>();
      if (c.popular_european.size() > 2) {
        throw InputError("at most two popular European languages may be declared");
      }
    }
    if (j.contains("other")) c.other = j.at("other").get<std::vector<std::string>>();
    if (j.contains("offered")) c.offered = j.at("offered").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid language config: ") + e.what());
  }
  return c;
}

std::vector<AttributeScore> parse_scores(const json& input, std::vector<Warning>& warnings) {
  const json& j = input.contains("scores") ? input.at("scores") : input;
  if (!j.is_object()) throw InputError("scores file must map attribute ids to values");
  for (const auto& [key, value] : j.items()) {
    if (!find_model_node(key)) throw InputError("unknown attribute id '" + key + "'");
  }
  std::vector<AttributeScore> scores;
  for (const auto& node : accessibility_model()) {
    if (!model_children(node.id).empty()) continue;
    AttributeScore s;
    s.attribute_id = std::string(node.id);
    auto it = j.find(s.attribute_id);
    if (it == j.end() || it->is_null()) {
      add_warning(warnings, {"missing-score", s.attribute_id + " not supplied; treated as not "
                                                              "applicable"});
    } else {
      if (!it->is_number()) throw InputError("value of " + s.attribute_id + " must be a number");
      double v = it->get<double>();
      if (!(v >= 0.0 && v <= 1.0)) throw InputError("value of " + s.attribute_id + " outside [0,1]");
      s.value = v;
      s.numerator_evidence = v;
      s.denominator_evidence = 1.0;
      s.applicable = true;
    }
    scores.push_back(s);
  }
  return scores;
}

std::array<double, 4> parse_breakpoints(std::string_view csv) {
  std::array<double, 4> out{};
  std::size_t count = 0;
  std::size_t start = 0;
  while (start <= csv.size()) {
    std::size_t comma = csv.find(',', start);
    if (comma == std::string_view::npos) comma = csv.size();
    std::string item(html::trim(csv.substr(start, comma - start)));
    if (count >= 4) throw InputError("expected exactly four breakpoints");
    try {
      std::size_t used = 0;
      out[count++] = std::stod(item, &used);
      if (used != item.size()) throw InputError("bad breakpoint '" + item + "'");
    } catch (const std::logic_error&) {
      throw InputError("bad breakpoint '" + item + "'");
    }
    start = comma + 1;
  }
  if (count != 4) throw InputError("expected exactly four breakpoints");
  QualityScale{out};
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  auto j = json::parse(buf.str(), nullptr, false);
  if (j.is_discarded()) throw InputError(path.string() + " is not valid JSON");
  return j;
}

}  // namespace uac
