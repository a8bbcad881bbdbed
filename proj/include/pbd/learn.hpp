#ifndef PBD_LEARN_HPP
#define PBD_LEARN_HPP

#include <cstdint>
#include <utility>

#include "pbd/birge.hpp"
#include "pbd/hypothesis.hpp"
#include "pbd/oracle.hpp"
#include "pbd/selection.hpp"
#include "pbd/types.hpp"

namespace pbd {

// Quantile-anchor sample count: ceil(32 ln(8/delta) / eps^2).
std::size_t sparse_anchor_count(double eps, double delta);

// Sparse-branch learner.  Anchors [a, b] at the 2eps / 1-2eps quantile
// order statistics of M sorted samples; if b - a exceeds (C/eps)^3 the
// trivial point mass at 0 is returned (the 'fail' hypothesis).
// Otherwise rejection-samples into [a, b] and runs the unimodal learner
// on the conditional distribution, returning an explicit pmf on [a, b].
SparseIntervalHypothesis learn_sparse(SampleSource& oracle, std::int64_t n,
                                      double eps, double delta,
                                      const LearnConfig& config);

// Median-boosted weak estimators for the mean and variance: each weak
// estimate averages m = ceil(3/eps^2) fresh draws (Bessel-corrected for
// the variance); the median of r = O(log 1/delta) runs is returned.
std::pair<double, double> estimate_mean_variance(SampleSource& oracle,
                                                 double eps, double delta);

// Poisson-branch learner: estimates the moments at the derated accuracy
// eps / sqrt(4 + 1/theta^2) and wraps them as TP(mu, sigma2).  A
// non-positive variance estimate is clamped to the configured floor and
// flagged.
TranslatedPoissonParams learn_poisson(SampleSource& oracle, std::int64_t n,
                                      double eps, double delta,
                                      const LearnConfig& config);

// Evaluates the TP hypothesis on a finite support to additive
// eps / (24 s) per point, s = |support|; off-support points evaluate
// lazily at the same accuracy.
DiscretizedTp discretize_tp(const TranslatedPoissonParams& tp,
                            const std::vector<std::int64_t>& support,
                            double eps);

enum class LearnBranch { kSparse, kPoisson };

struct LearnResult {
  Hypothesis hypothesis;              // the returned distribution
  LearnBranch branch = LearnBranch::kSparse;
  SparseIntervalHypothesis sparse;    // H_S as learned
  TranslatedPoissonParams poisson;    // H_P parameters as learned
  CompetitionRecord record;           // the H_S vs H_P competition
  std::uint64_t draws_used = 0;
};

// Non-proper learner: runs the sparse and Poisson branches at
// eps / (12 max{c1, c2}) with delta/3 each, discretizes the TP
// hypothesis on the sparse support, and selects via the competition at
// (eps/8, delta/3).  Returns the undiscretized TP when that side wins.
LearnResult learn_pbd(SampleSource& oracle, std::int64_t n, double eps,
                      double delta, const LearnConfig& config);

}  // namespace pbd

#endif  // PBD_LEARN_HPP
