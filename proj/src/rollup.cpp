#include "uac/rollup.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "uac/errors.hpp"

namespace uac {

namespace {

constexpr std::array<ModelNode, 15> kModel = {{
    {"UAC-1.1.1-G", "Alternative text", Tier::attribute, "UAC-1.1-G"},
    {"UAC-1.1.2-G", "Color contrast", Tier::attribute, "UAC-1.1-G"},
    {"UAC-1.1.3-G", "Subtitles and audio descriptions", Tier::attribute, "UAC-1.1-G"},
    {"UAC-1.2.1-G", "Keyboard navigation", Tier::attribute, "UAC-1.2-G"},
    {"UAC-1.2.2-G", "Structured navigation", Tier::attribute, "UAC-1.2-G"},
    {"UAC-1.3.1-G", "Clear instructions", Tier::attribute, "UAC-1.3-G"},
    {"UAC-1.3.2-G", "Input assistance", Tier::attribute, "UAC-1.3-G"},
    {"UAC-1.3.3-G", "Correct input support", Tier::attribute, "UAC-1.3-G"},
    {"UAC-1.1-G", "Perceptiveness", Tier::subproperty, "UAC-1-G"},
    {"UAC-1.2-G", "Operability", Tier::subproperty, "UAC-1-G"},
    {"UAC-1.3-G", "Understandability", Tier::subproperty, "UAC-1-G"},
    {"UAC-2.1-S", "Localization", Tier::subproperty, "UAC-2-S"},
    {"UAC-1-G", "Accessibility for users with disabilities", Tier::property, "UAC"},
    {"UAC-2-S", "Supported languages adequacy", Tier::property, "UAC"},
    {"UAC", "Accessibility", Tier::subcharacteristic, ""},
}};

std::map<std::string, double>* tier_map(WeightSet& w, Tier tier) {
  switch (tier) {
    case Tier::attribute: return &w.attribute_weights;
    case Tier::subproperty: return &w.subproperty_weights;
    case Tier::property: return &w.property_weights;
    case Tier::subcharacteristic: return nullptr;
  }
  return nullptr;
}

}  // namespace

std::span<const ModelNode> accessibility_model() { return kModel; }

const ModelNode* find_model_node(std::string_view id) {
  auto it = std::find_if(kModel.begin(), kModel.end(), [&](const auto& n) { return n.id == id; });
  return it == kModel.end() ? nullptr : &*it;
}

std::vector<std::string_view> model_children(std::string_view id) {
  std::vector<std::string_view> out;
  for (const auto& n : kModel) {
    if (n.parent == id) out.push_back(n.id);
  }
  return out;
}

WeightSet WeightSet::defaults() {
  WeightSet w;
  w.attribute_weights = {{"UAC-1.1.1-G", 0.3}, {"UAC-1.1.2-G", 0.3}, {"UAC-1.1.3-G", 0.4},
                         {"UAC-1.2.1-G", 0.6}, {"UAC-1.2.2-G", 0.4}, {"UAC-1.3.1-G", 0.4},
                         {"UAC-1.3.2-G", 0.3}, {"UAC-1.3.3-G", 0.3}};
  w.subproperty_weights = {
      {"UAC-1.1-G", 0.3}, {"UAC-1.2-G", 0.3}, {"UAC-1.3-G", 0.4}, {"UAC-2.1-S", 1.0}};
  w.property_weights = {{"UAC-1-G", 0.6}, {"UAC-2-S", 0.4}};
  return w;
}

void WeightSet::set(std::string_view id, double weight) {
  const ModelNode* node = find_model_node(id);
  std::map<std::string, double>* target = node ? tier_map(*this, node->tier) : nullptr;
  if (!target) throw WeightValidation("no weighted model node named '" + std::string(id) + "'");
  (*target)[std::string(id)] = weight;
}

std::optional<double> WeightSet::weight(std::string_view id) const {
  for (const auto* m : {&attribute_weights, &subproperty_weights, &property_weights}) {
    if (auto it = m->find(std::string(id)); it != m->end()) return it->second;
  }
  return std::nullopt;
}

void WeightSet::validate() const {
  for (const auto* m : {&attribute_weights, &subproperty_weights, &property_weights}) {
    for (const auto& [id, w] : *m) {
      const ModelNode* node = find_model_node(id);
      if (!node || node->tier == Tier::subcharacteristic) {
        throw WeightValidation("weight given for unknown node '" + id + "'");
      }
      if (!std::isfinite(w) || w < 0) {
        throw WeightValidation("weight of " + id + " must be a non-negative number");
      }
    }
  }
  for (const auto& node : kModel) {
    auto children = model_children(node.id);
    if (children.empty()) continue;
    double sum = 0;
    for (auto child : children) {
      auto w = weight(child);
      if (!w) throw WeightValidation("missing weight for " + std::string(child));
      sum += *w;
    }
    if (std::abs(sum - 1.0) > kWeightTolerance) {
      throw WeightValidation("weights under " + std::string(node.id) + " sum to " +
                             std::to_string(sum) + ", expected 1");
    }
  }
}

double weighted_rollup(std::span<const RollupChild> children) {
  double total = 0;
  for (const auto& c : children) {
    if (c.applicable) total += c.weight;
  }
  if (total <= 0) throw NoApplicableChildren("no applicable child carries weight");
  double sum = 0;
  for (const auto& c : children) {
    if (c.applicable) sum += c.value * (c.weight / total);
  }
  return std::clamp(sum, 0.0, 1.0);
}

std::string to_string(LevelLabel label) {
  switch (label) {
    case LevelLabel::very_poor: return "very poor";
    case LevelLabel::poor: return "poor";
    case LevelLabel::satisfactory: return "satisfactory";
    case LevelLabel::good: return "good";
    case LevelLabel::excellent: return "excellent";
  }
  return "very poor";
}

std::optional<LevelLabel> parse_level(std::string_view text) {
  std::string t = html::to_lower(html::trim(text));
  std::replace(t.begin(), t.end(), '_', ' ');
  std::replace(t.begin(), t.end(), '-', ' ');
  for (auto l : {LevelLabel::very_poor, LevelLabel::poor, LevelLabel::satisfactory,
                 LevelLabel::good, LevelLabel::excellent}) {
    if (to_string(l) == t) return l;
  }
  return std::nullopt;
}

QualityScale::QualityScale(const std::array<double, 4>& breakpoints) : breakpoints_(breakpoints) {
  double previous = 0.0;
  for (double b : breakpoints_) {
    if (!(b > previous && b < 1.0)) {
      throw InputError("scale breakpoints must be strictly increasing within (0,1)");
    }
    previous = b;
  }
}

QualityScale QualityScale::exact_golden() {
  const double inv_phi = 2.0 / (1.0 + std::sqrt(5.0));
  return QualityScale({std::pow(inv_phi, 4), std::pow(inv_phi, 3), std::pow(inv_phi, 2), inv_phi});
}

double QualityScale::lower_bound(LevelLabel label) const {
  auto i = static_cast<std::size_t>(label);
  return i == 0 ? 0.0 : breakpoints_[i - 1];
}

QualityLevel QualityScale::classify(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw OutOfRange("quality value " + std::to_string(x) + " outside [0,1]");
  }
  std::size_t band = 0;
  while (band < breakpoints_.size() && x >= breakpoints_[band]) ++band;
  auto label = static_cast<LevelLabel>(band);
  double upper = band < breakpoints_.size() ? breakpoints_[band] : 1.0;
  return QualityLevel{label, lower_bound(label), upper};
}

std::optional<double> QualityTree::value(std::string_view id) const {
  const TreeNode* n = node(id);
  return n ? n->value : std::nullopt;
}

const TreeNode* QualityTree::node(std::string_view id) const {
  auto it = std::find_if(nodes.begin(), nodes.end(), [&](const auto& n) { return n.id == id; });
  return it == nodes.end() ? nullptr : &*it;
}

QualityTree evaluate_tree(std::span<const AttributeScore> scores, const WeightSet& weights,
                          const QualityScale& scale) {
  weights.validate();

  QualityTree tree;
  std::map<std::string, std::optional<double>> values;
  for (const auto& node : kModel) {
    std::string id(node.id);
    auto children = model_children(node.id);
    if (children.empty()) {
      auto it = std::find_if(scores.begin(), scores.end(),
                             [&](const AttributeScore& s) { return s.attribute_id == id; });
      AttributeScore score;
      if (it != scores.end()) {
        score = *it;
      } else {
        score.attribute_id = id;
      }
      if (node.tier == Tier::attribute) tree.attributes.push_back(score);
      values[id] = score.applicable ? std::optional<double>(std::clamp(score.value, 0.0, 1.0))
                                    : std::nullopt;
      continue;
    }
    // kModel lists children before parents, so child values are ready.
    std::vector<RollupChild> inputs;
    bool any_missing = false;
    for (auto child : children) {
      const auto& v = values.at(std::string(child));
      inputs.push_back({v.value_or(0.0), weights.weight(child).value_or(0.0), v.has_value()});
      any_missing = any_missing || !v.has_value();
    }
    try {
      values[id] = weighted_rollup(inputs);
      if (any_missing) tree.redistributed.push_back(id);
    } catch (const NoApplicableChildren&) {
      values[id] = std::nullopt;
    }
  }
  // Localization is scored as a leaf but reported among the attributes too.
  if (auto it = std::find_if(scores.begin(), scores.end(),
                             [](const auto& s) { return s.attribute_id == ids::kLocalization; });
      it != scores.end()) {
    tree.attributes.push_back(*it);
  } else {
    AttributeScore missing;
    missing.attribute_id = ids::kLocalization;
    tree.attributes.push_back(missing);
  }

  for (const auto& node : kModel) {
    TreeNode out;
    out.id = std::string(node.id);
    out.tier = node.tier;
    out.value = values.at(out.id);
    out.weight = node.parent.empty() ? 1.0 : weights.weight(node.id).value_or(0.0);
    if (out.value) {
      if (node.parent.empty()) {
        out.effective_weight = 1.0;
      } else {
        double total = 0;
        for (auto sibling : model_children(node.parent)) {
          if (values.at(std::string(sibling))) total += weights.weight(sibling).value_or(0.0);
        }
        out.effective_weight = total > 0 ? out.weight / total : 0.0;
      }
    }
    tree.nodes.push_back(out);
  }
  tree.subcharacteristic = values.at(std::string(kRootId));
  if (tree.subcharacteristic) tree.level = scale.classify(*tree.subcharacteristic);
  return tree;
}

WeightDerivation derive_weights(const Eigen::MatrixXd& ratings,
                                std::span<const std::string> metric_ids) {
  if (ratings.rows() < 2) throw DegenerateRatings("at least two experts are required");
  if (ratings.cols() < 1 || static_cast<std::size_t>(ratings.cols()) != metric_ids.size()) {
    throw DegenerateRatings("ratings need one column per metric id");
  }
  if (!ratings.allFinite() || (ratings.array() <= 0.0).any()) {
    throw DegenerateRatings("ratings must be positive numbers");
  }
  Eigen::RowVectorXd means = ratings.colwise().mean();
  const double total = means.sum();
  if (total <= 0) throw DegenerateRatings("column sums are zero");

  Eigen::ArrayXXd centered = (ratings.rowwise() - means).array();
  Eigen::RowVectorXd stddev =
      (centered.square().colwise().sum() / static_cast<double>(ratings.rows())).sqrt().matrix();

  WeightDerivation out;
  for (Eigen::Index j = 0; j < ratings.cols(); ++j) {
    const std::string& id = metric_ids[static_cast<std::size_t>(j)];
    out.weights[id] = means(j) / total;
    double cv = stddev(j) / means(j);
    out.coefficient_of_variation[id] = cv;
    if (cv > kDispersionWarning) out.dispersed.push_back(id);
  }
  return out;
}

std::string to_string(Tier tier) {
  switch (tier) {
    case Tier::attribute: return "attribute";
    case Tier::subproperty: return "subproperty";
    case Tier::property: return "property";
    case Tier::subcharacteristic: return "subcharacteristic";
  }
  return "attribute";
}

}  // namespace uac
