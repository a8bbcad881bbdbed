#include "pbd/learn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pbd {

std::size_t sparse_anchor_count(double eps, double delta) {
  if (!(eps > 0 && eps < 1) || !(delta > 0 && delta < 1)) {
    throw std::domain_error("eps, delta must be in (0,1)");
  }
  return static_cast<std::size_t>(
      std::ceil(32.0 * std::log(8.0 / delta) / (eps * eps)));
}

SparseIntervalHypothesis learn_sparse(SampleSource& oracle, std::int64_t n,
                                      double eps, double delta,
                                      const LearnConfig& config) {
  if (n < 1) throw std::domain_error("n must be >= 1");
  std::size_t m_anchor = sparse_anchor_count(eps, delta);
  std::vector<std::int64_t> samples;
  samples.reserve(m_anchor);
  oracle.draw_block(m_anchor, samples);
  auto [min_it, max_it] = std::minmax_element(samples.begin(), samples.end());
  std::int64_t range = *max_it - *min_it + 1;
  if (range <= static_cast<std::int64_t>(4 * m_anchor)) {
    // counting sort: anchor batches are large and integer-valued
    std::vector<std::int64_t> counts(static_cast<std::size_t>(range), 0);
    std::int64_t base = *min_it;
    for (std::int64_t v : samples) {
      ++counts[static_cast<std::size_t>(v - base)];
    }
    samples.clear();
    for (std::int64_t off = 0; off < range; ++off) {
      samples.insert(samples.end(),
                     static_cast<std::size_t>(
                         counts[static_cast<std::size_t>(off)]),
                     base + off);
    }
  } else {
    std::sort(samples.begin(), samples.end());
  }

  auto order_stat = [&](double rank) {
    // rank is 1-indexed
    std::size_t idx = static_cast<std::size_t>(rank) - 1;
    if (idx >= samples.size()) idx = samples.size() - 1;
    return samples[idx];
  };
  double m = static_cast<double>(m_anchor);
  std::int64_t a_hat = order_stat(std::ceil(2.0 * eps * m));
  std::int64_t b_hat = order_stat(std::floor((1.0 - 2.0 * eps) * m));
  if (b_hat < a_hat) b_hat = a_hat;

  double width_cap = std::pow(config.cover_c / eps, 3.0);
  if (static_cast<double>(b_hat - a_hat) > width_cap) {
    return SparseIntervalHypothesis::fail_hypothesis();
  }

  // Rejection-sample the conditional distribution on [a, b].  The cap is
  // rejection_factor times the expected number of pulls.
  std::size_t m_birge =
      birge_total_size(b_hat - a_hat, eps, delta / 4.0, config);
  double keep = std::max(0.5, 1.0 - 5.0 * eps);
  std::uint64_t cap = static_cast<std::uint64_t>(
      config.rejection_factor * static_cast<double>(m_birge) / keep + 16.0);
  RestrictedSource conditional(oracle, a_hat, b_hat, cap);
  PiecewiseUniformHypothesis fit = birge_learn_stream(
      conditional, a_hat, b_hat, eps, delta / 4.0, config);

  SparseIntervalHypothesis h;
  h.a = a_hat;
  h.b = b_hat;
  h.pmf.reserve(static_cast<std::size_t>(b_hat - a_hat + 1));
  for (std::int64_t v = a_hat; v <= b_hat; ++v) h.pmf.push_back(fit.at(v));
  h.validate();
  return h;
}

namespace {

double median_of(std::vector<double>& xs) {
  std::sort(xs.begin(), xs.end());
  return xs[xs.size() / 2];
}

}  // namespace

std::pair<double, double> estimate_mean_variance(SampleSource& oracle,
                                                 double eps, double delta) {
  if (!(eps > 0 && eps < 1) || !(delta > 0 && delta < 1)) {
    throw std::domain_error("eps, delta must be in (0,1)");
  }
  std::size_t m =
      static_cast<std::size_t>(std::ceil(3.0 / (eps * eps)));
  std::size_t r = static_cast<std::size_t>(
      std::ceil(18.0 * std::log(2.0 / delta)));
  if (r % 2 == 0) ++r;

  std::vector<double> means;
  means.reserve(r);
  std::vector<std::int64_t> buf;
  for (std::size_t run = 0; run < r; ++run) {
    buf.clear();
    oracle.draw_block(m, buf);
    double sum = 0.0;
    for (std::int64_t v : buf) sum += static_cast<double>(v);
    means.push_back(sum / static_cast<double>(m));
  }

  std::vector<double> vars;
  vars.reserve(r);
  for (std::size_t run = 0; run < r; ++run) {
    buf.clear();
    oracle.draw_block(m, buf);
    double sum = 0.0;
    for (std::int64_t v : buf) sum += static_cast<double>(v);
    double avg = sum / static_cast<double>(m);
    double ss = 0.0;
    for (std::int64_t v : buf) {
      ss += (static_cast<double>(v) - avg) * (static_cast<double>(v) - avg);
    }
    vars.push_back(ss / static_cast<double>(m - 1));
  }

  return {median_of(means), median_of(vars)};
}

TranslatedPoissonParams learn_poisson(SampleSource& oracle, std::int64_t n,
                                      double eps, double delta,
                                      const LearnConfig& config) {
  if (n < 1) throw std::domain_error("n must be >= 1");
  double inner = eps / std::sqrt(4.0 + 1.0 / (config.theta * config.theta));
  auto [mu_hat, sigma2_hat] = estimate_mean_variance(oracle, inner, delta);
  bool clamped = false;
  if (!(sigma2_hat > 0.0)) {
    sigma2_hat = config.sigma_floor;
    clamped = true;
  }
  return TranslatedPoissonParams(mu_hat, sigma2_hat, clamped);
}

DiscretizedTp discretize_tp(const TranslatedPoissonParams& tp,
                            const std::vector<std::int64_t>& support,
                            double eps) {
  if (!(eps > 0 && eps < 1)) throw std::domain_error("eps in (0,1)");
  std::size_t s = std::max<std::size_t>(1, support.size());
  std::int64_t point_t = static_cast<std::int64_t>(
      std::ceil(24.0 * static_cast<double>(s) / eps));
  DiscretizedTp table(tp, point_t);
  table.tabulate(support);
  return table;
}

LearnResult learn_pbd(SampleSource& oracle, std::int64_t n, double eps,
                      double delta, const LearnConfig& config) {
  if (!(eps > 0 && eps < 1) || !(delta > 0 && delta < 1)) {
    throw std::domain_error("eps, delta must be in (0,1)");
  }
  std::uint64_t start = oracle.draws_used();
  double eps_sub = eps / (12.0 * std::max(config.c1, config.c2));
  double delta_sub = delta / 3.0;

  SparseIntervalHypothesis hs =
      learn_sparse(oracle, n, eps_sub, delta_sub, config);
  TranslatedPoissonParams hp =
      learn_poisson(oracle, n, eps_sub, delta_sub, config);

  std::vector<std::int64_t> support;
  support.reserve(static_cast<std::size_t>(hs.b - hs.a + 1));
  for (std::int64_t v = hs.a; v <= hs.b; ++v) support.push_back(v);
  DiscretizedTp hp_table = discretize_tp(hp, support, eps);

  Hypothesis sparse_h{HypothesisVariant(hs)};
  Hypothesis poisson_h{HypothesisVariant(hp_table)};
  CompetitionOutcome outcome = choose_hypothesis(
      oracle, sparse_h, poisson_h, eps / 8.0, delta_sub);

  LearnResult result{
      outcome.winner.tag() == "sparse-interval" ? sparse_h : poisson_h,
      outcome.winner.tag() == "sparse-interval" ? LearnBranch::kSparse
                                                : LearnBranch::kPoisson,
      hs,
      hp,
      outcome.record,
      oracle.draws_used() - start};
  return result;
}

}  // namespace pbd
