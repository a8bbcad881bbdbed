#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <atomic>
#include <thread>

#include "pbd/poisson.hpp"
#include "support/oracles.hpp"

using namespace pbd;

TEST_CASE("bernoulli numbers: literals and recurrence") {
  CHECK(bernoulli_number(0) == ExactRational(1));
  CHECK(bernoulli_number(1) == ExactRational(-1, 2));
  CHECK(bernoulli_number(2) == ExactRational(1, 6));
  CHECK(bernoulli_number(3) == ExactRational(0));
  CHECK(bernoulli_number(4) == ExactRational(-1, 30));
  CHECK(bernoulli_number(12) == ExactRational(-691, 2730));
  for (unsigned j = 0; j <= 40; ++j) {
    CHECK(bernoulli_number(j) == testing::bernoulli_recurrence(j));
  }
}

TEST_CASE("stirling log factorial at tiny k") {
  for (std::int64_t t : {1L, 100L, 1000000L}) {
    CHECK(std::fabs(stirling_log_factorial(1, t).to_double()) <=
          1.0 / (10.0 * static_cast<double>(t)));
  }
}

TEST_CASE("stirling log factorial against exact factorials") {
  struct Case {
    std::uint64_t k;
    std::int64_t t;
  };
  for (Case c : {Case{10, 10000}, Case{1000, 1000000}, Case{21, 1000000},
                 Case{37, 100000}, Case{123456, 1000000}}) {
    double got = stirling_log_factorial(c.k, c.t).to_double();
    double want = testing::log_factorial_oracle(c.k);
    CHECK(std::fabs(got - want) <= 1.0 / (10.0 * static_cast<double>(c.t)));
  }
}

TEST_CASE("grid exp basics") {
  std::int64_t t = 100;
  double one = grid_exp(BigFloat::from_int(0, 96), t);
  CHECK(std::fabs(one - 1.0) <= 1.0 / (2.0 * static_cast<double>(t)));

  BigFloat minus_ln2 = -BigFloat::from_int(2, 128).ln();
  CHECK(std::fabs(grid_exp(minus_ln2, t) - 0.5) <= 0.005);

  CHECK(std::fabs(grid_exp(BigFloat::from_int(-50, 96), 1000) - 0.0) <=
        0.0005);
}

TEST_CASE("grid exp returns grid points near the oracle") {
  for (double alpha : {-0.001, -0.37, -1.0, -2.5, -7.0, -19.3}) {
    for (std::int64_t t : {10L, 1000L, 100000L}) {
      double got = grid_exp(BigFloat::from_double(alpha, 128), t);
      CHECK(std::fabs(got - testing::exp_oracle(alpha)) <=
            1.0 / (2.0 * static_cast<double>(t)));
      double scaled = got * 4.0 * static_cast<double>(t);
      CHECK(std::fabs(scaled - std::round(scaled)) <= 1e-9);
    }
  }
}

TEST_CASE("poisson pmf examples") {
  CHECK(std::fabs(poisson_pmf_approx({ExactRational(1), 0, 100}) -
                  0.3678794411714423) <= 0.01);
  double want = testing::poisson_oracle(ExactRational(10), 10);
  CHECK(std::fabs(poisson_pmf_approx({ExactRational(10), 10, 1000000}) -
                  want) <= 1e-6);
  CHECK(std::fabs(poisson_pmf_approx({ExactRational(1000), 0, 10})) <= 0.1);
}

TEST_CASE("poisson pmf additive contract across a grid") {
  // lambda in [2^-4, 2^10], k up to 4 lambda + 50, t in {1e2, 1e4, 1e6}
  std::uint64_t state = 12345;
  auto next = [&state]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  for (int i = 0; i < 40; ++i) {
    std::int64_t num = 1 + static_cast<std::int64_t>(next() % 16384);
    std::int64_t den = 1 + static_cast<std::int64_t>(next() % 16);
    ExactRational lambda(num, den);
    lambda.canonicalize();
    double lam = lambda.get_d();
    if (lam < 1.0 / 16 || lam > 1024) continue;
    std::uint64_t k = next() % (static_cast<std::uint64_t>(4 * lam) + 50);
    std::int64_t t = i % 3 == 0 ? 100 : (i % 3 == 1 ? 10000 : 1000000);
    double got = poisson_pmf_approx({lambda, k, t});
    double want = testing::poisson_oracle(lambda, k);
    CHECK(std::fabs(got - want) <= 1.0 / static_cast<double>(t));
  }
}

TEST_CASE("translated poisson definition arithmetic") {
  TranslatedPoissonParams zero_frac(5.0, 5.0);
  CHECK(zero_frac.shift() == 0);
  CHECK(zero_frac.rate() == doctest::Approx(5.0));
  for (std::int64_t i = 0; i <= 12; ++i) {
    double got = tp_pmf(zero_frac, i, 100000);
    double want = testing::poisson_oracle(ExactRational(5), i);
    CHECK(std::fabs(got - want) <= 1e-5);
  }

  TranslatedPoissonParams half(5.5, 5.0);
  CHECK(half.shift() == 0);
  CHECK(half.rate() == doctest::Approx(5.5));

  TranslatedPoissonParams shifted(10.75, 2.5);
  CHECK(shifted.shift() == 8);
  CHECK(shifted.rate() == doctest::Approx(2.75));
  CHECK(tp_pmf(shifted, 7, 1000) == 0.0);
}

TEST_CASE("bernoulli cache is safe under concurrent use") {
  std::vector<ExactRational> serial;
  for (unsigned j = 0; j <= 60; ++j) {
    serial.push_back(testing::bernoulli_recurrence(j));
  }
  std::vector<std::thread> workers;
  std::atomic<int> mismatches{0};
  for (int w = 0; w < 4; ++w) {
    workers.emplace_back([&, w]() {
      for (unsigned j = w % 2 == 0 ? 0 : 60; j <= 60; w % 2 == 0 ? ++j : --j) {
        if (bernoulli_number(j) != serial[j]) ++mismatches;
        if (j == 0) break;
      }
    });
  }
  for (auto& t : workers) t.join();
  CHECK(mismatches == 0);
}

TEST_CASE("translated poisson window mass") {
  TranslatedPoissonParams params(37.25, 11.5);
  TpWindow w = tp_window(params, 1e-9);
  std::int64_t t = 4 * (w.hi - w.lo + 1) * 1000;
  double total = 0.0;
  for (std::int64_t i = w.lo; i <= w.hi; ++i) total += tp_pmf(params, i, t);
  CHECK(total >= 1.0 - 1e-6);
  CHECK(total <= 1.0 + 1e-3);
}
