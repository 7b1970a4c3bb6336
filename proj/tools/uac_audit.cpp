// uac-audit: accessibility quality audit of web pages.
//
// Exit codes: 0 ok, 1 level below --fail-below, 2 input/config error,
// 3 fetch/parse failure.

#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "uac/audit.hpp"
#include "uac/report.hpp"

namespace {

enum Exit { kOk = 0, kBelowThreshold = 1, kInputError = 2, kFetchError = 3 };

struct CommonFlags {
  std::string weights_path;
  std::string annotations_path;
  std::string format = "markdown";
  std::string fail_below;
  std::string contrast_mode = "paper";
  std::string langs_path;
  bool deep = false;
  bool shallow = false;
  std::string breakpoints;
  bool per_page = false;
  std::size_t jobs = 4;
};

uac::AuditOptions build_options(const CommonFlags& f) {
  uac::AuditOptions options;
  std::optional<std::array<double, 4>> breakpoints;
  if (!f.weights_path.empty()) {
    auto file = uac::parse_weights(uac::read_json_file(f.weights_path));
    options.weights = file.weights;
    if (file.localization) options.scoring.localization = *file.localization;
    breakpoints = file.breakpoints;
  }
  if (!f.breakpoints.empty()) breakpoints = uac::parse_breakpoints(f.breakpoints);
  if (breakpoints) options.scale = uac::QualityScale(*breakpoints);

  if (!f.annotations_path.empty()) {
    options.annotations = uac::parse_annotations(uac::read_json_file(f.annotations_path));
  }
  if (!f.langs_path.empty()) {
    options.scoring.languages = uac::parse_languages(uac::read_json_file(f.langs_path));
  }
  auto mode = uac::parse_contrast_mode(f.contrast_mode);
  if (!mode) throw uac::InputError("--contrast-mode must be paper or simple");
  options.scoring.contrast_mode = *mode;
  if (f.deep && f.shallow) throw uac::InputError("--deep and --shallow are exclusive");
  if (f.deep) options.scoring.navigation.deep_override = true;
  if (f.shallow) options.scoring.navigation.deep_override = false;
  options.per_page = f.per_page;
  options.jobs = f.jobs == 0 ? 1 : f.jobs;
  return options;
}

uac::ReportFormat output_format(const CommonFlags& f) {
  auto fmt = uac::parse_format(f.format);
  if (!fmt) throw uac::InputError("--format must be json or markdown");
  return *fmt;
}

std::optional<uac::LevelLabel> threshold(const CommonFlags& f) {
  if (f.fail_below.empty()) return std::nullopt;
  auto level = uac::parse_level(f.fail_below);
  if (!level) throw uac::InputError("unknown level '" + f.fail_below + "'");
  return level;
}

int finish(const uac::AuditReport& report, const CommonFlags& f) {
  auto limit = threshold(f);
  std::cout << uac::render_report(report, output_format(f));
  std::cout.flush();
  for (const auto& w : report.warnings) std::cerr << "warning: " << w.code << ": " << w.message << "\n";
  if (!limit) return kOk;
  // No computable level cannot satisfy a threshold.
  if (!report.tree.level || report.tree.level->label < *limit) return kBelowThreshold;
  return kOk;
}

void add_common(CLI::App* cmd, CommonFlags& f, bool html_flags) {
  cmd->add_option("--weights", f.weights_path, "Weight file (JSON)");
  cmd->add_option("--format", f.format, "Output format: json or markdown")
      ->check(CLI::IsMember({"json", "markdown", "md"}));
  cmd->add_option("--fail-below", f.fail_below,
                  "Exit 1 when the level is below: very-poor, poor, satisfactory, good, excellent");
  cmd->add_option("--breakpoints", f.breakpoints, "Scale breakpoints a,b,c,d");
  if (!html_flags) return;
  cmd->add_option("--annotations", f.annotations_path, "Annotation file (JSON)");
  cmd->add_option("--contrast-mode", f.contrast_mode, "paper (ratio-weighted) or simple")
      ->check(CLI::IsMember({"paper", "simple"}));
  cmd->add_option("--langs", f.langs_path, "Language configuration (JSON)");
  cmd->add_flag("--deep", f.deep, "Treat every page as deep (breadcrumbs expected)");
  cmd->add_flag("--shallow", f.shallow, "Treat every page as shallow");
  cmd->add_flag("--per-page", f.per_page, "Also report each page's own tree");
  cmd->add_option("--jobs,-j", f.jobs, "Concurrent targets")->check(CLI::Range(1, 64));
}

int cmd_audit(const std::vector<std::string>& targets, const CommonFlags& f) {
  auto options = build_options(f);
  output_format(f);
  threshold(f);
  return finish(uac::audit_targets(targets, options), f);
}

int cmd_facts(const std::string& target, const CommonFlags& f) {
  auto options = build_options(f);
  std::vector<std::string> one{target};
  auto pages = uac::extract_pages(one, options);
  if (options.annotations) uac::apply_annotations(pages.front(), *options.annotations);
  std::cout << uac::to_json(pages.front()).dump(2) << "\n";
  return kOk;
}

int cmd_score(const std::string& scores_path, const CommonFlags& f) {
  auto options = build_options(f);
  std::vector<uac::Warning> warnings;
  auto scores = uac::parse_scores(uac::read_json_file(scores_path), warnings);
  return finish(uac::score_only(std::move(scores), std::move(warnings), options), f);
}

const char* formula(std::string_view id) {
  if (id == "UAC-1.1.1-G") return "images with meaningful alt / images (decorative excluded)";
  if (id == "UAC-1.1.2-G") {
    return "sum(ratio * n over passing groups) / sum(ratio * n); pass: 4.5 main, 3.0 large text";
  }
  if (id == "UAC-1.1.3-G") return "video/audio with caption or description tracks / media";
  if (id == "UAC-1.2.1-G") return "keyboard-operable interactive elements / interactive elements";
  if (id == "UAC-1.2.2-G") {
    return "mean over pages; deep: 0.5*breadcrumbs + 0.5*(1 - skipped/headings), shallow: "
           "1 - skipped/headings";
  }
  if (id == "UAC-1.3.1-G") return "clear instructions / instructions (annotation)";
  if (id == "UAC-1.3.2-G") return "text fields with autocomplete, hints or suggestions / fields";
  if (id == "UAC-1.3.3-G") return "forms with error messaging / forms";
  if (id == "UAC-2.1-S") return "0.6 state + 0.2 English + 0.08 per popular European (max 2) + 0.04 other";
  return "weighted sum of children; weight of not-applicable children redistributed";
}

int cmd_explain(const std::string& only, const CommonFlags& f) {
  auto options = build_options(f);
  if (!only.empty() && !uac::find_model_node(only)) {
    throw uac::InputError("unknown model node '" + only + "'");
  }
  std::function<void(std::string_view, int)> print = [&](std::string_view id, int depth) {
    const auto* node = uac::find_model_node(id);
    std::string weight =
        node->parent.empty() ? "" : " w=" + uac::format_value(*options.weights.weight(id));
    if (only.empty() || only == id) {
      std::cout << std::string(depth * 2, ' ') << node->id << "  " << node->name << weight
                << "\n"
                << std::string(depth * 2 + 4, ' ') << formula(id) << "\n";
    }
    for (auto child : uac::model_children(id)) print(child, depth + 1);
  };
  print(uac::kRootId, 0);
  if (only.empty()) {
    std::cout << "\nlevels:";
    const auto& b = options.scale.breakpoints();
    std::cout << " very poor [0, " << uac::format_value(b[0]) << ")"
              << ", poor [" << uac::format_value(b[0]) << ", " << uac::format_value(b[1]) << ")"
              << ", satisfactory [" << uac::format_value(b[1]) << ", " << uac::format_value(b[2])
              << ")"
              << ", good [" << uac::format_value(b[2]) << ", " << uac::format_value(b[3]) << ")"
              << ", excellent [" << uac::format_value(b[3]) << ", 1]\n";
  }
  return kOk;
}

// Ratings file: {"metrics": [ids], "ratings": [[expert 1 ...], ...]}.
int cmd_derive(const std::string& path) {
  auto j = uac::read_json_file(path);
  std::vector<std::string> metrics;
  std::vector<std::vector<double>> rows;
  try {
    metrics = j.at("metrics").get<std::vector<std::string>>();
    rows = j.at("ratings").get<std::vector<std::vector<double>>>();
  } catch (const nlohmann::json::exception& e) {
    throw uac::InputError(std::string("ratings file: ") + e.what());
  }
  Eigen::MatrixXd ratings(static_cast<Eigen::Index>(rows.size()),
                          static_cast<Eigen::Index>(metrics.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != metrics.size()) {
      throw uac::InputError("expert " + std::to_string(r + 1) + " rates " +
                            std::to_string(rows[r].size()) + " metrics, expected " +
                            std::to_string(metrics.size()));
    }
    for (std::size_t c = 0; c < metrics.size(); ++c) {
      ratings(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  auto result = uac::derive_weights(ratings, metrics);
  nlohmann::json out = {{"weights", result.weights},
                        {"coefficient_of_variation", result.coefficient_of_variation},
                        {"dispersed", result.dispersed}};
  std::cout << out.dump(2) << "\n";
  for (const auto& id : result.dispersed) {
    std::cerr << "warning: expert ratings for " << id << " disagree (coefficient of variation "
              << uac::format_value(result.coefficient_of_variation.at(id)) << ")\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Accessibility quality audit of web pages", "uac-audit"};
  app.set_version_flag("--version", std::string(uac::kToolVersion));
  app.require_subcommand(1);

  CommonFlags flags;
  std::vector<std::string> targets;
  auto* audit = app.add_subcommand("audit", "Audit pages and pool them into one score");
  audit->add_option("targets", targets, "Files or http(s) URLs")->required();
  add_common(audit, flags, true);

  std::string facts_target;
  auto* facts = app.add_subcommand("facts", "Dump the facts extracted from one page (JSON)");
  facts->add_option("target", facts_target, "File or http(s) URL")->required();
  add_common(facts, flags, true);

  std::string scores_path;
  auto* score = app.add_subcommand("score", "Roll up attribute values measured elsewhere");
  score->add_option("scores", scores_path, "JSON map of attribute id to value")->required();
  add_common(score, flags, false);

  std::string explain_id;
  auto* explain = app.add_subcommand("explain", "Print the model tree, weights and formulas");
  explain->add_option("node", explain_id, "Only this model node");
  explain->add_option("--weights", flags.weights_path, "Weight file (JSON)");
  explain->add_option("--breakpoints", flags.breakpoints, "Scale breakpoints a,b,c,d");

  std::string ratings_path;
  auto* derive = app.add_subcommand("derive-weights", "Normalize expert ratings into weights");
  derive->add_option("ratings", ratings_path, "JSON ratings file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*audit) return cmd_audit(targets, flags);
    if (*facts) return cmd_facts(facts_target, flags);
    if (*score) return cmd_score(scores_path, flags);
    if (*explain) return cmd_explain(explain_id, flags);
    if (*derive) return cmd_derive(ratings_path);
  } catch (const uac::AuditFailure& e) {
    for (const auto& f : e.failures()) std::cerr << "error: " << f.target << ": " << f.message << "\n";
    return e.exit_code();
  } catch (const uac::FetchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFetchError;
  } catch (const uac::MalformedDocument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFetchError;
  } catch (const uac::EmptyDocument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFetchError;
  } catch (const uac::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
