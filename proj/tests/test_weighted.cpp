#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pbd/core.hpp"
#include "pbd/cover.hpp"
#include "pbd/weighted.hpp"
#include "support/oracles.hpp"

using namespace pbd;

namespace {

WeightedSumSpec two_class(std::vector<double> a, std::vector<double> b,
                          std::int64_t w1, std::int64_t w2) {
  WeightedSumSpec spec;
  spec.classes.push_back({w1, 1, std::move(a)});
  spec.classes.push_back({w2, 1, std::move(b)});
  return spec;
}

WeightedShape shape_of(const WeightedSumSpec& spec) {
  WeightedShape shape;
  for (const auto& cls : spec.classes) {
    shape.classes.push_back(
        {cls.weight_num, cls.weight_den, cls.probs.size()});
  }
  return shape;
}

}  // namespace

TEST_CASE("weights (1,2) with fair coins spread evenly") {
  SparsePmf pmf = weighted_pmf(two_class({0.5}, {0.5}, 1, 2));
  for (std::int64_t v = 0; v <= 3; ++v) {
    CHECK(pmf.at(v) == doctest::Approx(0.25));
  }
}

TEST_CASE("a single class reduces to the plain pmf on a scaled support") {
  WeightedSumSpec spec;
  spec.classes.push_back({3, 1, {0.4, 0.7, 0.2}});
  SparsePmf pmf = weighted_pmf(spec);
  DensePmf plain = pbd_pmf(PbdSpec({0.4, 0.7, 0.2}));
  for (std::int64_t k = 0; k <= 3; ++k) {
    CHECK(pmf.at(3 * k) == doctest::Approx(plain.at(k)));
  }
}

TEST_CASE("weighted pmf equals tuple enumeration") {
  SplitMix64 rng(17);
  for (int i = 0; i < 12; ++i) {
    WeightedSumSpec spec;
    std::int64_t w = 1;
    std::size_t k = 1 + rng.next_below(3);
    for (std::size_t j = 0; j < k; ++j) {
      WeightedSumSpec::Class cls;
      w += 1 + static_cast<std::int64_t>(rng.next_below(4));
      cls.weight_num = w;
      cls.weight_den = 1;
      std::size_t nj = 1 + rng.next_below(4);
      for (std::size_t c = 0; c < nj; ++c) {
        cls.probs.push_back(rng.next_unit());
      }
      spec.classes.push_back(std::move(cls));
    }
    SparsePmf got = weighted_pmf(spec);
    SparsePmf want = testing::enumeration_weighted_pmf(spec);
    CHECK(exact_tv_weighted(got, want) <= 1e-12);
    CHECK(got.total() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("rational weights clear denominators") {
  WeightedSumSpec spec;
  spec.classes.push_back({1, 2, {0.5}});
  spec.classes.push_back({1, 3, {0.5}});
  CHECK(spec.scale() == 6);
  SparsePmf pmf = weighted_pmf(spec);
  // support {0, 1/3, 1/2, 5/6} scaled by 6 = {0, 2, 3, 5}
  CHECK(pmf.at(0) == doctest::Approx(0.25));
  CHECK(pmf.at(2) == doctest::Approx(0.25));
  CHECK(pmf.at(3) == doctest::Approx(0.25));
  CHECK(pmf.at(5) == doctest::Approx(0.25));
}

TEST_CASE("support stays inside the weight lattice") {
  SparsePmf pmf = weighted_pmf(two_class({0.3, 0.9}, {0.2, 0.8}, 1, 3));
  for (const auto& [v, p] : pmf.mass) {
    CHECK(v >= 0);
    CHECK(v <= 2 + 6);
    CHECK(p >= 0.0);
  }
}

TEST_CASE("cover size is the product of per-class sizes") {
  LearnConfig config;
  config.q_grid_denominator = 4;
  config.distinct_cap = 0;
  config.cover_max_ones = 0;
  WeightedShape shape;
  shape.classes.push_back({1, 1, 3});
  shape.classes.push_back({3, 1, 3});
  auto cover = build_weighted_cover(shape, 0.4, config);
  // per class: the all-zero form plus Bin(ell, q) for ell in 1..3 and
  // q in {1/4, 2/4, 3/4}
  CHECK(cover.size() == 10 * 10);
  for (const auto& spec : cover) spec.validate();
}

TEST_CASE("k = 1 reduces to a plain PBD cover") {
  LearnConfig config;
  config.q_grid_denominator = 6;
  WeightedShape shape;
  shape.classes.push_back({1, 1, 4});
  auto cover = build_weighted_cover(shape, 0.4, config);
  CHECK(!cover.empty());
  for (const auto& spec : cover) {
    CHECK(spec.classes.size() == 1);
    CHECK(spec.classes[0].probs.size() == 4);
  }
}

TEST_CASE("planted targets have a nearby cover member") {
  LearnConfig config;
  config.q_grid_denominator = 8;
  config.distinct_cap = 0;
  double eps = 0.6;
  WeightedShape shape;
  shape.classes.push_back({1, 1, 3});
  shape.classes.push_back({3, 1, 3});
  auto cover = build_weighted_cover(shape, eps, config);
  std::vector<SparsePmf> cover_pmfs;
  cover_pmfs.reserve(cover.size());
  for (const auto& c : cover) cover_pmfs.push_back(weighted_pmf(c));

  SplitMix64 rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    double q1 = rng.next_unit(), q2 = rng.next_unit();
    WeightedSumSpec target =
        two_class({q1, q1, q1}, {q2, q2, q2}, 1, 3);
    SparsePmf target_pmf = weighted_pmf(target);
    double best = 1.0;
    for (const auto& c : cover_pmfs) {
      best = std::min(best, exact_tv_weighted(target_pmf, c));
    }
    CHECK(best <= eps);
  }
}

TEST_CASE("oversized covers are refused") {
  LearnConfig config;
  config.candidate_budget = 1000;
  WeightedShape shape;
  shape.classes.push_back({1, 1, 20});
  shape.classes.push_back({3, 1, 20});
  CHECK_THROWS_AS(build_weighted_cover(shape, 0.2, config), BudgetExceeded);
}

TEST_CASE("learn_weighted recovers a planted product of binomials") {
  LearnConfig config;
  config.q_grid_denominator = 6;
  config.distinct_cap = 0;
  config.cover_max_ones = 0;
  double eps = 0.12;
  WeightedSumSpec target = two_class({0.5, 0.5, 0.5},
                                     {1.0 / 6, 1.0 / 6, 1.0 / 6}, 1, 3);
  SparsePmf target_pmf = weighted_pmf(target);
  WeightedShape shape = shape_of(target);
  int pass = 0;
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    WeightedSampleSource oracle(target, 6600 + trial);
    WeightedLearnResult res =
        learn_weighted(oracle, shape, eps, 0.1, config);
    if (!res.tournament_failed &&
        exact_tv_weighted(weighted_pmf(res.spec), target_pmf) <=
            6.0 * eps) {
      ++pass;
    }
  }
  CHECK(pass >= 9);
}

TEST_CASE("learn_weighted recovers a deterministic target exactly") {
  LearnConfig config;
  config.q_grid_denominator = 4;
  config.distinct_cap = 0;
  // point masses are pairwise TV 1 apart, so at 5 eps < 1 the planted
  // candidate wins its competitions outright and recovery is exact
  double eps = 0.15;
  WeightedSumSpec target = two_class({1.0, 1.0, 0.0}, {1.0, 0.0, 0.0}, 1, 3);
  SparsePmf target_pmf = weighted_pmf(target);
  WeightedShape shape = shape_of(target);
  WeightedSampleSource oracle(target, 42);
  WeightedLearnResult res = learn_weighted(oracle, shape, eps, 0.1, config);
  CHECK(exact_tv_weighted(weighted_pmf(res.spec), target_pmf) <= eps);
}

TEST_CASE("k = 1 weighted learning agrees with the proper learner") {
  LearnConfig config;
  config.q_grid_denominator = 8;
  config.distinct_cap = 0;
  double eps = 0.15;
  PbdSpec pbd_target(std::vector<double>(6, 0.5));
  WeightedSumSpec target;
  target.classes.push_back({1, 1, pbd_target.probs});
  SparsePmf target_pmf = weighted_pmf(target);
  WeightedShape shape = shape_of(target);
  WeightedSampleSource oracle(target, 7);
  WeightedLearnResult res = learn_weighted(oracle, shape, eps, 0.1, config);
  CHECK(!res.tournament_failed);
  CHECK(exact_tv_weighted(weighted_pmf(res.spec), target_pmf) <= 6.0 * eps);

  // the proper learner reaches eps-accuracy on the same target
  LearnConfig proper_config;
  SpecSampleSource pbd_oracle(pbd_target, 7);
  ProperResult proper =
      proper_learn_pbd(pbd_oracle, 6, 0.4, 0.2, proper_config);
  CHECK(exact_tv_target(pbd_target,
                        Hypothesis(HypothesisVariant(
                            PbdHypothesis(proper.spec)))) <= 0.4);
}
