#ifndef PBD_HYPOTHESIS_HPP
#define PBD_HYPOTHESIS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <variant>
#include <vector>

#include "pbd/core.hpp"
#include "pbd/poisson.hpp"
#include "pbd/types.hpp"

namespace pbd {

// PbdSpec used as a hypothesis: the pmf is computed once on a window
// that carries all but ~1e-12 of the mass.
struct PbdHypothesis {
  PbdSpec spec;
  std::shared_ptr<const DensePmf> pmf;

  explicit PbdHypothesis(PbdSpec s);
};

// Weighted-sum spec used as a hypothesis; pmf cached at construction.
struct WeightedHypothesis {
  WeightedSumSpec spec;
  std::shared_ptr<const SparsePmf> pmf;

  explicit WeightedHypothesis(WeightedSumSpec s);
};

// The discretized translated Poisson \hat{H}_P: every point is evaluated
// to additive 1/point_t via the Poisson evaluator; values are memoized
// so off-table points are computed lazily on demand.
class DiscretizedTp {
 public:
  DiscretizedTp(TranslatedPoissonParams params, std::int64_t point_t);

  // Precompute the table on an explicit support.
  void tabulate(const std::vector<std::int64_t>& support);

  double pmf(std::int64_t v) const;
  const TranslatedPoissonParams& params() const { return params_; }
  std::int64_t point_t() const { return point_t_; }

 private:
  TranslatedPoissonParams params_;
  std::int64_t point_t_;
  struct Cache {
    std::mutex mu;
    std::map<std::int64_t, double> values;
  };
  std::shared_ptr<Cache> cache_;
};

using HypothesisVariant =
    std::variant<SparseIntervalHypothesis, PiecewiseUniformHypothesis,
                 DiscretizedTp, PbdHypothesis, BinomialSpec,
                 WeightedHypothesis>;

// Tagged union of every hypothesis shape the learners emit.  Evaluation
// yields per-point probabilities; support_points() lists a finite set of
// candidate values carrying all but a negligible tail.
class Hypothesis {
 public:
  explicit Hypothesis(HypothesisVariant v) : value_(std::move(v)) {}

  double pmf(std::int64_t v) const;
  std::vector<std::int64_t> support_points() const;
  // Stable content key: tag plus payload, used to canonicalize draws.
  std::string canonical_key() const;
  std::string tag() const;

  const HypothesisVariant& value() const { return value_; }

 private:
  HypothesisVariant value_;
};

// Sorted union of the two hypotheses' support points.
std::vector<std::int64_t> union_support(const Hypothesis& h1,
                                        const Hypothesis& h2);

// Upper bound on TV(truth, h): half-L1 over the window union plus half
// the mass bounds outside it.
double exact_tv_upper(const DensePmf& truth_window, double truth_tail,
                      const Hypothesis& h);

// TV between a length-n target PBD and a hypothesis, evaluated on the
// target's 1e-12 support window (the reported value is an upper bound).
double exact_tv_target(const PbdSpec& target, const Hypothesis& h);

// Exact TV between two finite weighted-sum pmfs (same weight scale).
double exact_tv_weighted(const SparsePmf& a, const SparsePmf& b);

}  // namespace pbd

#endif  // PBD_HYPOTHESIS_HPP
