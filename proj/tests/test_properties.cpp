#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "uac/rollup.hpp"

using namespace uac;

namespace {

std::vector<AttributeScore> random_scores(std::mt19937_64& rng, double not_applicable = 0.15) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<AttributeScore> out;
  for (const auto& node : accessibility_model()) {
    if (!model_children(node.id).empty()) continue;
    AttributeScore s;
    s.attribute_id = std::string(node.id);
    s.applicable = unit(rng) >= not_applicable;
    s.value = s.applicable ? unit(rng) : 0.0;
    out.push_back(s);
  }
  return out;
}

WeightSet random_weights(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> positive(0.05, 1.0);
  WeightSet w;
  for (const auto& node : accessibility_model()) {
    auto children = model_children(node.id);
    if (children.empty()) continue;
    std::vector<double> raw;
    double sum = 0;
    for (std::size_t i = 0; i < children.size(); ++i) {
      raw.push_back(positive(rng));
      sum += raw.back();
    }
    for (std::size_t i = 0; i < children.size(); ++i) w.set(children[i], raw[i] / sum);
  }
  return w;
}

void check_in_unit_interval(const QualityTree& tree) {
  for (const auto& n : tree.nodes) {
    if (!n.value) continue;
    REQUIRE(*n.value >= 0.0);
    REQUIRE(*n.value <= 1.0);
  }
  for (const auto& a : tree.attributes) {
    REQUIRE(a.value >= 0.0);
    REQUIRE(a.value <= 1.0);
  }
}

}  // namespace

TEST_CASE("every value stays in [0,1] for random pages") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> page_count(1, 4);
  std::bernoulli_distribution coin(0.5);
  for (int i = 0; i < 1000; ++i) {
    std::vector<PageFacts> pages;
    for (int p = 0, n = page_count(rng); p < n; ++p) pages.push_back(oracle::random_page(rng, p));
    std::optional<AnnotationSet> annotations;
    if (coin(rng)) {
      annotations.emplace();
      std::uniform_int_distribution<std::size_t> total(0, 10);
      std::size_t t = total(rng);
      annotations->clear_instructions = ClearInstructions{t / 2, t};
    }
    ScoringOptions options;
    options.contrast_mode = coin(rng) ? ContrastMode::paper : ContrastMode::simple;
    auto scores = score_all(pool(pages), annotations, options);
    for (const auto& s : scores) {
      REQUIRE(s.value >= 0.0);
      REQUIRE(s.value <= 1.0);
    }
    check_in_unit_interval(evaluate_tree(scores, WeightSet::defaults()));
  }
}

TEST_CASE("raising one attribute never lowers any node") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    auto scores = random_scores(rng);
    auto weights = random_weights(rng);
    auto before = evaluate_tree(scores, weights);
    std::uniform_int_distribution<std::size_t> pick(0, scores.size() - 1);
    auto& target = scores[pick(rng)];
    if (!target.applicable) continue;
    target.value += (1.0 - target.value) * unit(rng);
    auto after = evaluate_tree(scores, weights);
    for (std::size_t n = 0; n < before.nodes.size(); ++n) {
      if (!before.nodes[n].value) continue;
      REQUIRE(*after.nodes[n].value >= *before.nodes[n].value - 1e-12);
    }
  }
}

TEST_CASE("rescaling a sibling group leaves every value unchanged") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> factor(0.1, 10.0);
  for (int i = 0; i < 1000; ++i) {
    std::vector<RollupChild> kids(1 + static_cast<std::size_t>(unit(rng) * 5));
    for (auto& k : kids) k = {unit(rng), 0.05 + unit(rng), unit(rng) > 0.2};
    if (std::none_of(kids.begin(), kids.end(), [](const auto& k) { return k.applicable; })) continue;
    double base = weighted_rollup(kids);
    double c = factor(rng);
    for (auto& k : kids) k.weight *= c;
    REQUIRE(std::abs(weighted_rollup(kids) - base) < 1e-12);
  }

  // Whole trees: renormalizing already-normalized weights is a no-op.
  for (int i = 0; i < 200; ++i) {
    auto scores = random_scores(rng);
    auto weights = random_weights(rng);
    WeightSet scaled;
    for (const auto& node : accessibility_model()) {
      auto children = model_children(node.id);
      double c = factor(rng);
      double sum = 0;
      for (auto child : children) sum += *weights.weight(child) * c;
      for (auto child : children) scaled.set(child, *weights.weight(child) * c / sum);
    }
    auto a = evaluate_tree(scores, weights);
    auto b = evaluate_tree(scores, scaled);
    for (std::size_t n = 0; n < a.nodes.size(); ++n) {
      REQUIRE(a.nodes[n].value.has_value() == b.nodes[n].value.has_value());
      if (a.nodes[n].value) REQUIRE(std::abs(*a.nodes[n].value - *b.nodes[n].value) < 1e-12);
    }
  }
}

TEST_CASE("pooling is order independent") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    std::vector<PageFacts> pages;
    for (int p = 0; p < 4; ++p) pages.push_back(oracle::random_page(rng, p));
    auto forward = score_all(pool(pages), std::nullopt);
    std::reverse(pages.begin(), pages.end());
    auto backward = score_all(pool(pages), std::nullopt);
    for (std::size_t s = 0; s < forward.size(); ++s) {
      REQUIRE(std::abs(forward[s].value - backward[s].value) < 1e-12);
    }
  }
}
