#pragma once

// Weighted aggregation through the accessibility model hierarchy and the
// five-level quality scale.

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "uac/metrics.hpp"

namespace uac {

enum class Tier { attribute, subproperty, property, subcharacteristic };

struct ModelNode {
  std::string_view id;
  std::string_view name;
  Tier tier;
  std::string_view parent;  // empty for the root
};

inline constexpr std::string_view kRootId = "UAC";

// The accessibility model in display order: attributes, subproperties,
// properties, subcharacteristic.
std::span<const ModelNode> accessibility_model();
const ModelNode* find_model_node(std::string_view id);
std::vector<std::string_view> model_children(std::string_view id);

struct WeightSet {
  std::map<std::string, double> attribute_weights;
  std::map<std::string, double> subproperty_weights;
  std::map<std::string, double> property_weights;

  // The expert weights used for the reference university portal audit.
  static WeightSet defaults();

  // Sets the weight of any model node, routing it to the right tier map.
  // Throws WeightValidation for an id outside the model.
  void set(std::string_view id, double weight);
  std::optional<double> weight(std::string_view id) const;

  // Throws WeightValidation when a sibling group is incomplete, negative or
  // does not sum to 1 within 1e-9.
  void validate() const;

  friend bool operator==(const WeightSet&, const WeightSet&) = default;
};

inline constexpr double kWeightTolerance = 1e-9;

struct RollupChild {
  double value = 0.0;
  double weight = 0.0;
  bool applicable = true;
};

// Sum of value * weight over applicable children, with the weight of
// inapplicable children spread proportionally over the rest. Throws
// NoApplicableChildren when nothing carries weight.
double weighted_rollup(std::span<const RollupChild> children);

enum class LevelLabel { very_poor, poor, satisfactory, good, excellent };

struct QualityLevel {
  LevelLabel label = LevelLabel::very_poor;
  double lower_bound = 0.0;
  double upper_bound = 1.0;

  friend bool operator==(const QualityLevel&, const QualityLevel&) = default;
};

std::string to_string(LevelLabel label);
std::optional<LevelLabel> parse_level(std::string_view text);

// Five bands split by four increasing breakpoints; a breakpoint belongs to the
// band above it.
class QualityScale {
 public:
  // 1/phi^4, 1/phi^3, 1/phi^2, 1/phi at four decimals.
  static constexpr std::array<double, 4> kGoldenBreakpoints{0.1459, 0.2361, 0.3820, 0.6180};

  QualityScale() : QualityScale(kGoldenBreakpoints) {}
  // Throws InputError unless strictly increasing inside (0,1).
  explicit QualityScale(const std::array<double, 4>& breakpoints);

  // Unrounded powers of the inverse golden ratio.
  static QualityScale exact_golden();

  const std::array<double, 4>& breakpoints() const { return breakpoints_; }
  double lower_bound(LevelLabel label) const;
  // Throws OutOfRange outside [0,1] or for NaN.
  QualityLevel classify(double x) const;

  friend bool operator==(const QualityScale&, const QualityScale&) = default;

 private:
  std::array<double, 4> breakpoints_;
};

struct TreeNode {
  std::string id;
  Tier tier = Tier::attribute;
  std::optional<double> value;  // empty when not applicable
  double weight = 0.0;          // nominal weight within its sibling group
  double effective_weight = 0.0;  // after redistribution; 0 when not applicable

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct QualityTree {
  std::vector<AttributeScore> attributes;
  std::vector<TreeNode> nodes;  // every model node, model order
  std::optional<double> subcharacteristic;
  std::optional<QualityLevel> level;
  // Parents whose children's weights were redistributed.
  std::vector<std::string> redistributed;

  std::optional<double> value(std::string_view id) const;
  const TreeNode* node(std::string_view id) const;

  friend bool operator==(const QualityTree&, const QualityTree&) = default;
};

// Scores missing from `scores` count as not applicable.
QualityTree evaluate_tree(std::span<const AttributeScore> scores, const WeightSet& weights,
                          const QualityScale& scale = {});

struct WeightDerivation {
  std::map<std::string, double> weights;
  std::map<std::string, double> coefficient_of_variation;
  std::vector<std::string> dispersed;  // metrics above the dispersion threshold
};

inline constexpr double kDispersionWarning = 0.5;

// Normalized mean expert rating per metric. `ratings` is expert x metric.
// Throws DegenerateRatings for non-positive ratings or fewer than two experts.
WeightDerivation derive_weights(const Eigen::MatrixXd& ratings,
                                std::span<const std::string> metric_ids);

std::string to_string(Tier tier);

}  // namespace uac
