#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "uac/errors.hpp"
#include "uac/rollup.hpp"

using namespace uac;

namespace {

std::vector<AttributeScore> reference_scores() {
  const std::pair<const char*, double> values[] = {
      {"UAC-1.1.1-G", 0.15}, {"UAC-1.1.2-G", 0.99}, {"UAC-1.1.3-G", 0.0},
      {"UAC-1.2.1-G", 1.0},  {"UAC-1.2.2-G", 0.47}, {"UAC-1.3.1-G", 1.0},
      {"UAC-1.3.2-G", 0.0},  {"UAC-1.3.3-G", 0.83}, {"UAC-2.1-S", 0.8}};
  std::vector<AttributeScore> out;
  for (auto [id, v] : values) {
    AttributeScore s;
    s.attribute_id = id;
    s.value = v;
    s.applicable = true;
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("model shape") {
  auto model = accessibility_model();
  CHECK(model.size() == 15);
  CHECK(model_children("UAC").size() == 2);
  CHECK(model_children("UAC-1.1-G").size() == 3);
  CHECK(model_children("UAC-2-S") == std::vector<std::string_view>{"UAC-2.1-S"});
  CHECK(find_model_node("UAC-1.2.2-G")->name == "Structured navigation");
  CHECK_FALSE(find_model_node("UAC-9"));
}

TEST_CASE("default weights validate") {
  CHECK_NOTHROW(WeightSet::defaults().validate());
  CHECK(*WeightSet::defaults().weight("UAC-1.2.1-G") == 0.6);
}

TEST_CASE("weight validation failures") {
  auto w = WeightSet::defaults();
  w.set("UAC-1.1.1-G", 0.4);
  CHECK_THROWS_AS(w.validate(), WeightValidation);
  w = WeightSet::defaults();
  w.set("UAC-1.1.1-G", -0.1);
  w.set("UAC-1.1.3-G", 0.8);
  CHECK_THROWS_AS(w.validate(), WeightValidation);
  w = WeightSet::defaults();
  w.attribute_weights.erase("UAC-1.3.2-G");
  CHECK_THROWS_AS(w.validate(), WeightValidation);
  CHECK_THROWS_AS(WeightSet::defaults().set("UAC", 1.0), WeightValidation);
  CHECK_THROWS_AS(WeightSet::defaults().set("nope", 1.0), WeightValidation);
  w = WeightSet::defaults();
  w.set("UAC-1.1.1-G", 0.3 + 1e-12);
  CHECK_NOTHROW(w.validate());
}

TEST_CASE("weighted rollup") {
  std::vector<RollupChild> kids = {{0.15, 0.3}, {0.99, 0.3}, {0.0, 0.4}};
  CHECK(weighted_rollup(kids) == doctest::Approx(0.342));
  std::vector<RollupChild> partial = {{0.5, 0.5}, {0.0, 0.5, false}};
  CHECK(weighted_rollup(partial) == doctest::Approx(0.5));
  std::vector<RollupChild> none = {{0.5, 0.5, false}};
  CHECK_THROWS_AS(weighted_rollup(none), NoApplicableChildren);
}

TEST_CASE("reference audit rollup") {
  auto tree = evaluate_tree(reference_scores(), WeightSet::defaults());
  CHECK(*tree.value("UAC-1.1-G") == doctest::Approx(0.342).epsilon(1e-12));
  CHECK(*tree.value("UAC-1.2-G") == doctest::Approx(0.788).epsilon(1e-12));
  CHECK(*tree.value("UAC-1.3-G") == doctest::Approx(0.649).epsilon(1e-12));
  CHECK(*tree.value("UAC-1-G") == doctest::Approx(0.5986).epsilon(1e-12));
  CHECK(*tree.value("UAC-2-S") == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(*tree.subcharacteristic == doctest::Approx(0.67916).epsilon(1e-12));
  REQUIRE(tree.level);
  CHECK(tree.level->label == LevelLabel::excellent);
  CHECK(tree.attributes.size() == 9);
  CHECK(tree.nodes.size() == 15);
  CHECK(tree.redistributed.empty());
}

TEST_CASE("not-applicable attributes redistribute weight") {
  auto scores = reference_scores();
  scores[2].applicable = false;  // UAC-1.1.3-G
  auto tree = evaluate_tree(scores, WeightSet::defaults());
  CHECK(*tree.value("UAC-1.1-G") == doctest::Approx((0.15 * 0.3 + 0.99 * 0.3) / 0.6));
  CHECK(tree.redistributed == std::vector<std::string>{"UAC-1.1-G"});
  CHECK(tree.node("UAC-1.1.1-G")->effective_weight == doctest::Approx(0.5));
  CHECK(tree.node("UAC-1.1.3-G")->effective_weight == 0.0);
  CHECK_FALSE(tree.node("UAC-1.1.3-G")->value);
}

TEST_CASE("a subtree with nothing applicable drops out") {
  auto scores = reference_scores();
  for (int i = 5; i < 8; ++i) scores[static_cast<std::size_t>(i)].applicable = false;
  auto tree = evaluate_tree(scores, WeightSet::defaults());
  CHECK_FALSE(tree.value("UAC-1.3-G"));
  double p1 = (0.342 * 0.3 + 0.788 * 0.3) / 0.6;
  CHECK(*tree.value("UAC-1-G") == doctest::Approx(p1));
}

TEST_CASE("no applicable attributes leaves the root undefined") {
  auto tree = evaluate_tree(std::vector<AttributeScore>{}, WeightSet::defaults());
  CHECK_FALSE(tree.subcharacteristic);
  CHECK_FALSE(tree.level);
  CHECK(tree.redistributed.empty());
}

TEST_CASE("scale classification") {
  QualityScale scale;
  CHECK(scale.classify(0.67916).label == LevelLabel::excellent);
  CHECK(scale.classify(0.0).label == LevelLabel::very_poor);
  CHECK(scale.classify(0.1459).label == LevelLabel::poor);
  CHECK(scale.classify(0.382).label == LevelLabel::good);
  CHECK(scale.classify(0.618).label == LevelLabel::excellent);
  CHECK(scale.classify(0.6179).label == LevelLabel::good);
  CHECK(scale.classify(1.0).label == LevelLabel::excellent);
  CHECK(scale.classify(0.5).lower_bound == 0.382);
  CHECK_THROWS_AS(scale.classify(1.01), OutOfRange);
  CHECK_THROWS_AS(scale.classify(-0.01), OutOfRange);
  CHECK_THROWS_AS(scale.classify(std::nan("")), OutOfRange);
  CHECK_THROWS_AS(QualityScale({0.2, 0.1, 0.3, 0.4}), InputError);
  CHECK_THROWS_AS(QualityScale({0.0, 0.1, 0.3, 0.4}), InputError);

  auto exact = QualityScale::exact_golden();
  CHECK(exact.breakpoints()[3] == doctest::Approx(0.6180339887));
  CHECK(exact.classify(0.618).label == LevelLabel::good);
}

TEST_CASE("scale agrees with the threshold table on a 1e-3 grid") {
  QualityScale scale;
  for (int i = 0; i <= 1000; ++i) {
    double x = i / 1000.0;
    REQUIRE(to_string(scale.classify(x).label) == oracle::level_of(x));
  }
}

TEST_CASE("level names") {
  CHECK(parse_level("very-poor") == LevelLabel::very_poor);
  CHECK(parse_level("Very Poor") == LevelLabel::very_poor);
  CHECK(parse_level("good") == LevelLabel::good);
  CHECK_FALSE(parse_level("great"));
}

TEST_CASE("derive weights") {
  Eigen::MatrixXd ratings(3, 2);
  ratings << 3, 1,
             3, 1,
             3, 1;
  std::vector<std::string> ids{"a", "b"};
  auto d = derive_weights(ratings, ids);
  CHECK(d.weights["a"] == doctest::Approx(0.75));
  CHECK(d.weights["b"] == doctest::Approx(0.25));
  CHECK(d.coefficient_of_variation["a"] == 0.0);
  CHECK(d.dispersed.empty());

  Eigen::MatrixXd single(2, 1);
  single << 5, 5;
  CHECK(derive_weights(single, std::vector<std::string>{"x"}).weights["x"] == 1.0);

  Eigen::MatrixXd spread(2, 2);
  spread << 1, 1,
            9, 1;
  auto s = derive_weights(spread, ids);
  CHECK(s.coefficient_of_variation["a"] == doctest::Approx(0.8));
  CHECK(s.dispersed == std::vector<std::string>{"a"});

  Eigen::MatrixXd one_expert(1, 2);
  one_expert << 1, 2;
  CHECK_THROWS_AS(derive_weights(one_expert, ids), DegenerateRatings);
  Eigen::MatrixXd zero(2, 2);
  zero << 0, 1, 1, 1;
  CHECK_THROWS_AS(derive_weights(zero, ids), DegenerateRatings);
  CHECK_THROWS_AS(derive_weights(spread, std::vector<std::string>{"a"}), DegenerateRatings);
}
