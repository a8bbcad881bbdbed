#ifndef PBD_WEIGHTED_HPP
#define PBD_WEIGHTED_HPP

#include <cstdint>
#include <vector>

#include "pbd/oracle.hpp"
#include "pbd/selection.hpp"
#include "pbd/types.hpp"

namespace pbd {

// Exact pmf of sum_j b_j S_j: per-class PBD pmfs scaled onto the
// weight-cleared integer support, convolved across classes.
SparsePmf weighted_pmf(const WeightedSumSpec& spec);

// Shape of a weighted learning problem: the distinct weights and the
// class sizes (the weights are known to the learner).
struct WeightedShape {
  struct Class {
    std::int64_t weight_num = 1;
    std::int64_t weight_den = 1;
    std::size_t count = 0;
  };
  std::vector<Class> classes;
};

// Cartesian product of per-class (eps/k)-covers, each built from
// sparse-form enumeration plus translated Binomial forms over the
// configured q grid.  Throws BudgetExceeded when the product would pass
// config.candidate_budget.
std::vector<WeightedSumSpec> build_weighted_cover(const WeightedShape& shape,
                                                  double eps,
                                                  const LearnConfig& config);

struct WeightedLearnResult {
  WeightedSumSpec spec;
  std::size_t cover_size = 0;
  std::uint64_t draws_used = 0;
  bool tournament_failed = false;
};

// Theorem-2 learner: cover product then all-pairs tournament; the
// winner expands to per-indicator probabilities in class order.
WeightedLearnResult learn_weighted(SampleSource& oracle,
                                   const WeightedShape& shape, double eps,
                                   double delta, const LearnConfig& config);

}  // namespace pbd

#endif  // PBD_WEIGHTED_HPP
