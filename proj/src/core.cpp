#include "pbd/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pbd {

namespace {

// Convolution DP over the nontrivial means only.
std::vector<double> convolve_bernoullis(const std::vector<double>& probs) {
  std::vector<double> mass{1.0};
  for (double p : probs) {
    std::vector<double> next(mass.size() + 1, 0.0);
    double q = 1.0 - p;
    for (std::size_t j = 0; j < mass.size(); ++j) {
      next[j] += mass[j] * q;
      next[j + 1] += mass[j] * p;
    }
    mass.swap(next);
  }
  return mass;
}

void renormalize(std::vector<double>& mass) {
  double total = 0.0;
  for (double m : mass) total += m;
  if (std::fabs(total - 1.0) > 1e-9) {
    throw std::runtime_error("pmf accumulation drift exceeded 1e-9");
  }
  for (double& m : mass) m /= total;
}

}  // namespace

DensePmf pbd_pmf(const PbdSpec& spec) {
  spec.validate();
  std::vector<double> nontrivial;
  nontrivial.reserve(spec.n());
  std::int64_t ones = 0;
  for (double p : spec.probs) {
    if (p == 0.0) continue;
    if (p == 1.0) {
      ++ones;
      continue;
    }
    nontrivial.push_back(p);
  }
  std::vector<double> mass = convolve_bernoullis(nontrivial);
  renormalize(mass);
  return DensePmf(ones, std::move(mass));
}

SampleBatch pbd_sample(const PbdSpec& spec, std::size_t m,
                       std::uint64_t seed) {
  spec.validate();
  if (m < 1) throw std::domain_error("sample count must be >= 1");
  SampleBatch batch;
  batch.seed = seed;
  batch.values.reserve(m);
  SplitMix64 rng(seed);
  if (spec.n() <= 10000) {
    for (std::size_t i = 0; i < m; ++i) {
      std::int64_t v = 0;
      for (double p : spec.probs) {
        if (rng.next_unit() < p) ++v;
      }
      batch.values.push_back(v);
    }
  } else {
    DensePmf pmf = pbd_pmf(spec);
    std::vector<double> cdf(pmf.mass.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < pmf.mass.size(); ++j) {
      acc += pmf.mass[j];
      cdf[j] = acc;
    }
    for (std::size_t i = 0; i < m; ++i) {
      double u = rng.next_unit();
      auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
      std::size_t j = it == cdf.end() ? cdf.size() - 1
                                      : static_cast<std::size_t>(
                                            it - cdf.begin());
      batch.values.push_back(pmf.origin + static_cast<std::int64_t>(j));
    }
  }
  return batch;
}

double tv_distance(const DensePmf& p, const DensePmf& q) {
  std::int64_t lo = std::min(p.lo(), q.lo());
  std::int64_t hi = std::max(p.hi(), q.hi());
  double sum = 0.0;
  for (std::int64_t v = lo; v <= hi; ++v) {
    sum += std::fabs(p.at(v) - q.at(v));
  }
  return 0.5 * sum;
}

MomentSummary moments(const PbdSpec& spec) {
  spec.validate();
  MomentSummary s;
  for (double p : spec.probs) {
    s.mean += p;
    s.variance += p * (1.0 - p);
  }
  return s;
}

MomentSummary pmf_moments(const DensePmf& p) {
  MomentSummary s;
  for (std::size_t j = 0; j < p.mass.size(); ++j) {
    double v = static_cast<double>(p.origin + static_cast<std::int64_t>(j));
    s.mean += v * p.mass[j];
  }
  for (std::size_t j = 0; j < p.mass.size(); ++j) {
    double v = static_cast<double>(p.origin + static_cast<std::int64_t>(j));
    s.variance += (v - s.mean) * (v - s.mean) * p.mass[j];
  }
  return s;
}

DensePmf conditional_restrict(const DensePmf& p, std::int64_t a,
                              std::int64_t b) {
  if (b < a) throw std::domain_error("empty restriction interval");
  std::int64_t lo = std::max(a, p.lo());
  std::int64_t hi = std::min(b, p.hi());
  double total = 0.0;
  for (std::int64_t v = lo; v <= hi; ++v) total += p.at(v);
  if (!(total > 0.0)) {
    throw std::domain_error("conditioning event has zero mass");
  }
  std::vector<double> mass;
  mass.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t v = lo; v <= hi; ++v) mass.push_back(p.at(v) / total);
  return DensePmf(lo, std::move(mass));
}

DensePmf binomial_pmf_window(std::int64_t n, double p, std::int64_t lo,
                             std::int64_t hi) {
  lo = std::max<std::int64_t>(lo, 0);
  hi = std::min(hi, n);
  if (hi < lo) throw std::domain_error("empty binomial window");
  std::vector<double> mass;
  mass.reserve(static_cast<std::size_t>(hi - lo + 1));
  if (p == 0.0 || p == 1.0) {
    std::int64_t point = p == 0.0 ? 0 : n;
    for (std::int64_t k = lo; k <= hi; ++k) mass.push_back(k == point);
    return DensePmf(lo, std::move(mass));
  }
  double lp = std::log(p), lq = std::log1p(-p);
  double lg_n = std::lgamma(static_cast<double>(n) + 1.0);
  for (std::int64_t k = lo; k <= hi; ++k) {
    double lg = lg_n - std::lgamma(static_cast<double>(k) + 1.0) -
                std::lgamma(static_cast<double>(n - k) + 1.0) +
                static_cast<double>(k) * lp +
                static_cast<double>(n - k) * lq;
    mass.push_back(std::exp(lg));
  }
  return DensePmf(lo, std::move(mass));
}

SupportWindow support_window(const PbdSpec& spec, double tail_bound) {
  MomentSummary m = moments(spec);
  // Bernstein: P(|X - mu| > s) <= 2 exp(-s^2 / (2 sigma^2 + 2s/3)).
  double sigma = std::sqrt(std::max(m.variance, 0.0));
  double s = 12.0 * sigma + 40.0;
  while (2.0 * std::exp(-s * s / (2.0 * m.variance + 2.0 * s / 3.0)) >
         tail_bound) {
    s *= 1.5;
  }
  SupportWindow w;
  w.lo = std::max<std::int64_t>(
      0, static_cast<std::int64_t>(std::floor(m.mean - s)));
  w.hi = std::min<std::int64_t>(
      static_cast<std::int64_t>(spec.n()),
      static_cast<std::int64_t>(std::ceil(m.mean + s)));
  w.tail_bound =
      2.0 * std::exp(-s * s / (2.0 * m.variance + 2.0 * s / 3.0));
  return w;
}

DensePmf pbd_pmf_window(const PbdSpec& spec, std::int64_t lo,
                        std::int64_t hi) {
  std::vector<double> nontrivial;
  std::int64_t ones = 0;
  bool all_equal = true;
  for (double p : spec.probs) {
    if (p == 0.0) continue;
    if (p == 1.0) {
      ++ones;
      continue;
    }
    if (!nontrivial.empty() && p != nontrivial.front()) all_equal = false;
    nontrivial.push_back(p);
  }
  if (all_equal && !nontrivial.empty() && nontrivial.size() > 20000) {
    DensePmf win = binomial_pmf_window(
        static_cast<std::int64_t>(nontrivial.size()), nontrivial.front(),
        lo - ones, hi - ones);
    win.origin += ones;
    return win;
  }
  DensePmf full = pbd_pmf(spec);
  std::int64_t a = std::max(lo, full.lo());
  std::int64_t b = std::min(hi, full.hi());
  if (b < a) return DensePmf(lo, {0.0});
  std::vector<double> mass;
  mass.reserve(static_cast<std::size_t>(b - a + 1));
  for (std::int64_t v = a; v <= b; ++v) mass.push_back(full.at(v));
  return DensePmf(a, std::move(mass));
}

}  // namespace pbd
