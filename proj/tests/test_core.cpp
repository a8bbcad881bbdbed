#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pbd/core.hpp"
#include "pbd/rng.hpp"
#include "support/oracles.hpp"

using namespace pbd;

TEST_CASE("pmf of a single fair Bernoulli") {
  DensePmf pmf = pbd_pmf(PbdSpec({0.5}));
  CHECK(pmf.at(0) == doctest::Approx(0.5));
  CHECK(pmf.at(1) == doctest::Approx(0.5));
}

TEST_CASE("pmf of a deterministic sum is a point mass") {
  DensePmf pmf = pbd_pmf(PbdSpec({1.0, 1.0}));
  CHECK(pmf.at(2) == doctest::Approx(1.0));
  CHECK(pmf.at(1) == 0.0);
  CHECK(pmf.at(0) == 0.0);
}

TEST_CASE("pmf matches subset enumeration") {
  PbdSpec spec({0.3, 0.7, 0.5});
  DensePmf pmf = pbd_pmf(spec);
  auto brute = testing::enumeration_pmf(spec.probs);
  for (std::size_t j = 0; j < brute.size(); ++j) {
    CHECK(std::fabs(pmf.at(static_cast<std::int64_t>(j)) - brute[j]) <=
          1e-12);
  }
}

TEST_CASE("pmf equals enumeration on random specs up to n = 15") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    std::size_t n = 1 + seed % 15;
    PbdSpec spec = testing::random_spec(n, 1000 + seed);
    DensePmf pmf = pbd_pmf(spec);
    auto brute = testing::enumeration_pmf(spec.probs);
    for (std::size_t j = 0; j < brute.size(); ++j) {
      CHECK(std::fabs(pmf.at(static_cast<std::int64_t>(j)) - brute[j]) <=
            1e-12);
    }
  }
}

TEST_CASE("pmf is unimodal") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    std::size_t n = 2 + (seed * 37) % 499;
    PbdSpec spec = testing::random_spec(n, 2000 + seed);
    DensePmf pmf = pbd_pmf(spec);
    std::size_t peak = 0;
    for (std::size_t j = 1; j < pmf.mass.size(); ++j) {
      if (pmf.mass[j] > pmf.mass[peak]) peak = j;
    }
    for (std::size_t j = 1; j <= peak; ++j) {
      CHECK(pmf.mass[j] >= pmf.mass[j - 1] * (1.0 - 1e-12) - 1e-300);
    }
    for (std::size_t j = peak + 1; j < pmf.mass.size(); ++j) {
      CHECK(pmf.mass[j] <= pmf.mass[j - 1] * (1.0 + 1e-12) + 1e-300);
    }
  }
}

TEST_CASE("moment inequality mean(n-mean)/n >= variance") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    std::size_t n = 1 + (seed * 13) % 500;
    PbdSpec spec = testing::random_spec(n, 3000 + seed);
    MomentSummary m = moments(spec);
    double nd = static_cast<double>(n);
    CHECK(m.mean * (nd - m.mean) / nd >= m.variance - 1e-12);
  }
}

TEST_CASE("sampling a deterministic spec") {
  SampleBatch batch = pbd_sample(PbdSpec({1.0, 0.0, 1.0}), 64, 7);
  for (std::int64_t v : batch.values) CHECK(v == 2);
}

TEST_CASE("sample mean concentrates") {
  PbdSpec spec(std::vector<double>(100, 0.5));
  SampleBatch batch = pbd_sample(spec, 100000, 42);
  double mean = 0.0;
  for (std::int64_t v : batch.values) mean += static_cast<double>(v);
  mean /= static_cast<double>(batch.count());
  CHECK(std::fabs(mean - 50.0) <= 3.0 * std::sqrt(25.0 / 100000.0));
}

TEST_CASE("sampling is deterministic per seed") {
  PbdSpec spec = testing::random_spec(20, 99);
  SampleBatch a = pbd_sample(spec, 500, 1234);
  SampleBatch b = pbd_sample(spec, 500, 1234);
  CHECK(a.values == b.values);
  SampleBatch c = pbd_sample(spec, 500, 1235);
  CHECK(a.values != c.values);
}

TEST_CASE("inverse-cdf sampling path used for large n") {
  std::vector<double> p(10500, 0.0);
  for (std::size_t i = 0; i < 40; ++i) p[i] = 0.5;
  PbdSpec spec(std::move(p));
  SampleBatch batch = pbd_sample(spec, 20000, 11);
  double mean = 0.0;
  for (std::int64_t v : batch.values) {
    CHECK(v >= 0);
    CHECK(v <= 40);
    mean += static_cast<double>(v);
  }
  mean /= static_cast<double>(batch.count());
  CHECK(std::fabs(mean - 20.0) <= 3.0 * std::sqrt(10.0 / 20000.0));
  CHECK(pbd_sample(spec, 20000, 11).values == batch.values);
}

TEST_CASE("empirical frequencies converge to the pmf") {
  PbdSpec spec = testing::random_spec(100, 5);
  SampleBatch batch = pbd_sample(spec, 100000, 17);
  DensePmf exact = pbd_pmf(spec);
  std::vector<double> freq(101, 0.0);
  for (std::int64_t v : batch.values) {
    freq[static_cast<std::size_t>(v)] += 1.0 / 100000.0;
  }
  DensePmf empirical(0, std::move(freq));
  CHECK(tv_distance(empirical, exact) <= 0.02);
}

TEST_CASE("tv distance identities") {
  DensePmf p = pbd_pmf(testing::random_spec(8, 21));
  CHECK(tv_distance(p, p) == doctest::Approx(0.0));
  DensePmf at0(0, {1.0});
  DensePmf at1(1, {1.0});
  CHECK(tv_distance(at0, at1) == doctest::Approx(1.0));
}

TEST_CASE("tv distance equals the max-event form") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    DensePmf p = pbd_pmf(testing::random_spec(6, 400 + seed));
    DensePmf q = pbd_pmf(testing::random_spec(9, 500 + seed));
    // max_S [P(S) - Q(S)] is attained at S = {v : P(v) > Q(v)}
    double max_event = 0.0;
    for (std::int64_t v = std::min(p.lo(), q.lo());
         v <= std::max(p.hi(), q.hi()); ++v) {
      double d = p.at(v) - q.at(v);
      if (d > 0) max_event += d;
    }
    CHECK(tv_distance(p, q) == doctest::Approx(max_event).epsilon(1e-12));
  }
}

TEST_CASE("tv distance is a metric on a random suite") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    DensePmf a = pbd_pmf(testing::random_spec(7, 600 + seed));
    DensePmf b = pbd_pmf(testing::random_spec(7, 700 + seed));
    DensePmf c = pbd_pmf(testing::random_spec(7, 800 + seed));
    CHECK(tv_distance(a, b) == doctest::Approx(tv_distance(b, a)));
    CHECK(tv_distance(a, c) <=
          tv_distance(a, b) + tv_distance(b, c) + 1e-12);
    CHECK(tv_distance(a, a) <= 1e-12);
  }
}

TEST_CASE("moments of simple specs") {
  MomentSummary m1 = moments(PbdSpec({0.5, 0.5}));
  CHECK(m1.mean == doctest::Approx(1.0));
  CHECK(m1.variance == doctest::Approx(0.5));
  MomentSummary m2 = moments(PbdSpec({1.0, 1.0, 1.0}));
  CHECK(m2.mean == doctest::Approx(3.0));
  CHECK(m2.variance == doctest::Approx(0.0));
}

TEST_CASE("moments agree with the pmf oracle") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    PbdSpec spec = testing::random_spec(40, 900 + seed);
    MomentSummary closed = moments(spec);
    MomentSummary from_pmf = pmf_moments(pbd_pmf(spec));
    CHECK(std::fabs(closed.mean - from_pmf.mean) <= 1e-9);
    CHECK(std::fabs(closed.variance - from_pmf.variance) <= 1e-9);
  }
}

TEST_CASE("conditional restriction") {
  DensePmf uniform(0, {0.25, 0.25, 0.25, 0.25});
  DensePmf full = conditional_restrict(uniform, 0, 3);
  CHECK(tv_distance(full, uniform) <= 1e-12);
  DensePmf mid = conditional_restrict(uniform, 1, 2);
  CHECK(mid.at(1) == doctest::Approx(0.5));
  CHECK(mid.at(2) == doctest::Approx(0.5));
  CHECK(mid.at(0) == 0.0);

  PbdSpec spec = testing::random_spec(12, 31);
  DensePmf pmf = pbd_pmf(spec);
  DensePmf restricted = conditional_restrict(pmf, 3, 9);
  CHECK(restricted.total() == doctest::Approx(1.0));
  // ratios preserved inside the window
  double r0 = pmf.at(4) / pmf.at(5);
  double r1 = restricted.at(4) / restricted.at(5);
  CHECK(r0 == doctest::Approx(r1).epsilon(1e-9));

  DensePmf point(5, {1.0});
  CHECK_THROWS_AS(conditional_restrict(point, 0, 3), std::domain_error);
}

TEST_CASE("binomial window evaluation matches the convolution") {
  DensePmf dp = pbd_pmf(PbdSpec(std::vector<double>(60, 0.3)));
  DensePmf win = binomial_pmf_window(60, 0.3, 0, 60);
  for (std::int64_t v = 0; v <= 60; ++v) {
    CHECK(win.at(v) == doctest::Approx(dp.at(v)).epsilon(1e-10));
  }
}

TEST_CASE("support window carries nearly all mass") {
  PbdSpec spec = testing::random_spec(400, 77);
  SupportWindow w = support_window(spec);
  DensePmf pmf = pbd_pmf(spec);
  double inside = 0.0;
  for (std::int64_t v = w.lo; v <= w.hi; ++v) inside += pmf.at(v);
  CHECK(inside >= 1.0 - 1e-9);
}
