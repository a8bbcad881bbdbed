#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pbd/birge.hpp"
#include "pbd/core.hpp"
#include "pbd/oracle.hpp"
#include "pbd/rng.hpp"
#include "support/oracles.hpp"

using namespace pbd;

namespace {

DensePmf hypothesis_pmf(const PiecewiseUniformHypothesis& h) {
  std::vector<double> mass;
  for (std::int64_t v = h.lo; v <= h.hi; ++v) mass.push_back(h.at(v));
  return DensePmf(h.lo, std::move(mass));
}

EmpiricalCdf random_cdf(std::size_t m, std::int64_t lo, std::int64_t hi,
                        std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::int64_t> values;
  values.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    values.push_back(lo + static_cast<std::int64_t>(rng.next_below(
                              static_cast<std::uint64_t>(hi - lo + 1))));
  }
  return EmpiricalCdf(values, lo, hi);
}

}  // namespace

TEST_CASE("two-point cdf gives a straight hull") {
  EmpiricalCdf cdf({3, 3, 9, 9}, 3, 9);
  auto mino = convex_minorant(cdf, 9);
  CHECK(mino.front().x == 2);
  CHECK(mino.front().y == doctest::Approx(0.0));
  CHECK(mino.back().x == 9);
  CHECK(mino.back().y == doctest::Approx(1.0));
  auto majo = concave_majorant(cdf, 3);
  CHECK(majo.front().x == 3);
  CHECK(majo.back().x == 9);
}

TEST_CASE("already-convex steps: minorant touches every corner") {
  // multiplicities double each step, so the cdf is convex
  std::vector<std::int64_t> values;
  for (int v = 0; v < 4; ++v) {
    for (int c = 0; c < (1 << v); ++c) values.push_back(v);
  }
  EmpiricalCdf cdf(values, 0, 3);
  auto hull = convex_minorant(cdf, 3);
  CHECK(hull.size() == cdf.xs().size());
  for (std::size_t i = 0; i < hull.size(); ++i) {
    CHECK(hull[i].x == cdf.xs()[i]);
    CHECK(hull[i].y == doctest::Approx(cdf.heights()[i]));
  }
  // mirrored: decreasing multiplicities give a concave cdf
  std::vector<std::int64_t> rev;
  for (int v = 0; v < 4; ++v) {
    for (int c = 0; c < (1 << (3 - v)); ++c) rev.push_back(v);
  }
  EmpiricalCdf ccdf(rev, 0, 3);
  auto upper = concave_majorant(ccdf, 0);
  CHECK(upper.size() == ccdf.xs().size() - 1);  // anchor excluded
}

TEST_CASE("random cdf: hulls dominate pointwise") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    EmpiricalCdf cdf = random_cdf(50, 0, 30, 100 + seed);
    auto mino = convex_minorant(cdf, 30);
    auto majo = concave_majorant(cdf, 0);
    // piecewise-linear eval of a hull
    auto eval = [](const std::vector<HullVertex>& hull, std::int64_t x) {
      for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        if (x >= hull[i].x && x <= hull[i + 1].x) {
          double frac = static_cast<double>(x - hull[i].x) /
                        static_cast<double>(hull[i + 1].x - hull[i].x);
          return hull[i].y + frac * (hull[i + 1].y - hull[i].y);
        }
      }
      return hull.back().y;
    };
    for (std::size_t i = 0; i < cdf.xs().size(); ++i) {
      CHECK(eval(mino, cdf.xs()[i]) <= cdf.heights()[i] + 1e-12);
      if (cdf.xs()[i] >= 0) {
        CHECK(eval(majo, cdf.xs()[i]) >= cdf.heights()[i] - 1e-12);
      }
    }
  }
}

TEST_CASE("deviation of a convex prefix is zero") {
  std::vector<std::int64_t> values;
  for (int v = 0; v < 4; ++v) {
    for (int c = 0; c < (1 << v); ++c) values.push_back(v);
  }
  EmpiricalCdf cdf(values, 0, 3);
  CHECK(deviation_minus(cdf, 3) == doctest::Approx(0.0));
}

TEST_CASE("single midpoint step deviates by a half") {
  // all mass at 5, domain [0, 11]: the chord from (-1, 0) to (11, 1)
  // sits 0.5 below the step at 5
  std::vector<std::int64_t> values(10, 5);
  EmpiricalCdf cdf(values, 0, 11);
  CHECK(deviation_minus(cdf, 11) == doctest::Approx(0.5));
}

TEST_CASE("deviations equal the brute-force scan") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    EmpiricalCdf cdf = random_cdf(60, 0, 25, 200 + seed);
    for (std::int64_t j : {3, 9, 14, 25}) {
      CHECK(deviation_minus(cdf, j) ==
            doctest::Approx(testing::brute_deviation_minus(cdf, j))
                .epsilon(1e-9));
      CHECK(deviation_plus(cdf, j) ==
            doctest::Approx(testing::brute_deviation_plus(cdf, j))
                .epsilon(1e-9));
    }
  }
}

TEST_CASE("locate_mode on constant samples") {
  std::vector<std::int64_t> values(40, 6);
  EmpiricalCdf cdf(values, 0, 12);
  CHECK(locate_mode(cdf, 0.05) == 6);
}

TEST_CASE("locate_mode is near the exhaustive minimum") {
  double eta = 0.05;
  auto exhaustive_min = [&](const EmpiricalCdf& cdf) {
    double best = 1e300;
    for (std::int64_t r = cdf.lo(); r <= cdf.hi(); ++r) {
      best = std::min(best, std::max(deviation_minus(cdf, r),
                                     deviation_plus(cdf, r)));
    }
    return best;
  };

  // monotone-decreasing target
  {
    std::vector<double> weights;
    for (int v = 0; v <= 30; ++v) weights.push_back(std::pow(0.85, v));
    AliasTable table(weights);
    SplitMix64 rng(5);
    std::vector<std::int64_t> values;
    for (int i = 0; i < 5000; ++i) {
      values.push_back(static_cast<std::int64_t>(table.draw(rng)));
    }
    EmpiricalCdf cdf(values, 0, 30);
    std::int64_t r = locate_mode(cdf, eta);
    double d_r = std::max(deviation_minus(cdf, r), deviation_plus(cdf, r));
    CHECK(d_r <= exhaustive_min(cdf) + eta);
  }

  // unimodal target with known mode
  {
    PbdSpec spec(std::vector<double>(50, 0.5));
    SampleBatch batch = pbd_sample(spec, 10000, 9);
    EmpiricalCdf cdf(batch.values, 0, 50);
    std::int64_t r = locate_mode(cdf, eta);
    double d_r = std::max(deviation_minus(cdf, r), deviation_plus(cdf, r));
    double d_mode =
        std::max(deviation_minus(cdf, 25), deviation_plus(cdf, 25));
    CHECK(d_r <= d_mode + eta);
  }
}

TEST_CASE("splice densities rise then fall") {
  PbdSpec spec(std::vector<double>(60, 0.4));
  SampleBatch batch = pbd_sample(spec, 8000, 3);
  EmpiricalCdf cdf(batch.values, 0, 60);
  std::int64_t r = locate_mode(cdf, 0.05);
  PiecewiseUniformHypothesis h = grenander_splice(cdf, r);
  h.validate();
  double prev = -1.0;
  bool falling = false;
  for (const auto& piece : h.pieces) {
    double density = piece.mass / static_cast<double>(piece.b - piece.a + 1);
    if (piece.a > r) falling = true;
    if (!falling) {
      CHECK(density >= prev - 1e-12);
    } else if (prev >= 0.0 && piece.a > r + 1) {
      CHECK(density <= prev + 1e-12);
    }
    prev = density;
  }
}

TEST_CASE("birge_learn on constant samples is a point mass") {
  SampleBatch batch;
  batch.values.assign(200, 4);
  LearnConfig config;
  PiecewiseUniformHypothesis h = birge_learn(batch, 4, 4, 0.2, 0.1, config);
  CHECK(h.at(4) == doctest::Approx(1.0));
}

TEST_CASE("birge_learn determinism") {
  PbdSpec spec(std::vector<double>(30, 0.5));
  SampleBatch batch = pbd_sample(spec, 20000, 77);
  LearnConfig config;
  PiecewiseUniformHypothesis a = birge_learn(batch, 0, 30, 0.2, 0.1, config);
  PiecewiseUniformHypothesis b = birge_learn(batch, 0, 30, 0.2, 0.1, config);
  CHECK(hypothesis_pmf(a).mass == hypothesis_pmf(b).mass);
}

TEST_CASE("birge_learn batch and stream paths agree") {
  PbdSpec spec(std::vector<double>(30, 0.5));
  LearnConfig config;
  config.c_b = 5.0;
  std::size_t total = birge_total_size(30, 0.25, 0.1, config);
  SampleBatch batch = pbd_sample(spec, total, 123);
  PiecewiseUniformHypothesis a = birge_learn(batch, 0, 30, 0.25, 0.1, config);
  RecordedSource source(batch.values);
  PiecewiseUniformHypothesis b =
      birge_learn_stream(source, 0, 30, 0.25, 0.1, config);
  CHECK(hypothesis_pmf(a).mass == hypothesis_pmf(b).mass);
}

TEST_CASE("learns a uniform target to 0.2") {
  LearnConfig config;
  config.c_b = 5.0;
  std::size_t batch_size = birge_total_size(99, 0.2, 0.1, config);
  DensePmf target(0, std::vector<double>(100, 0.01));
  int pass = 0;
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    SplitMix64 rng(9000 + trial);
    SampleBatch batch;
    batch.values.reserve(batch_size);
    for (std::size_t i = 0; i < batch_size; ++i) {
      batch.values.push_back(static_cast<std::int64_t>(rng.next_below(100)));
    }
    PiecewiseUniformHypothesis h =
        birge_learn(batch, 0, 99, 0.2, 0.1, config);
    if (tv_distance(hypothesis_pmf(h), target) <= 0.2) ++pass;
  }
  CHECK(pass >= 40);
}

TEST_CASE("learns Bin(200, 0.5) to 0.2") {
  LearnConfig config;
  config.c_b = 5.0;
  PbdSpec spec(std::vector<double>(200, 0.5));
  DensePmf target = pbd_pmf(spec);
  std::size_t batch_size = birge_total_size(200, 0.2, 0.1, config);
  int pass = 0;
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    SampleBatch batch = pbd_sample(spec, batch_size, 9100 + trial);
    PiecewiseUniformHypothesis h =
        birge_learn(batch, 0, 200, 0.2, 0.1, config);
    if (tv_distance(hypothesis_pmf(h), target) <= 0.2) ++pass;
  }
  CHECK(pass >= 40);
}

TEST_CASE("output masses always normalize") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    PbdSpec spec = testing::random_spec(40, 40 + seed);
    SampleBatch batch = pbd_sample(spec, 5000, seed);
    LearnConfig config;
    PiecewiseUniformHypothesis h =
        birge_learn(batch, 0, 40, 0.3, 0.2, config);
    double total = 0.0;
    for (const auto& piece : h.pieces) {
      CHECK(piece.mass >= 0.0);
      total += piece.mass;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}
