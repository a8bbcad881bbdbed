#ifndef PBD_COVER_HPP
#define PBD_COVER_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "pbd/learn.hpp"
#include "pbd/types.hpp"

namespace pbd {

// Visits every sparse form with k = ceil(C/eps): multiplicities over the
// grid {i/k^2} with at most distinct_cap distinct values and total count
// ell <= k^3, translated so the form's support [t, t+ell] covers
// [support_lo, support_hi].  Deterministic order: ell ascending, then
// grid-value combinations lexicographic, then translation descending.
// Returning false from the visitor stops the stream.
void enumerate_sparse_forms(
    double eps, std::int64_t support_lo, std::int64_t support_hi,
    int distinct_cap, const LearnConfig& config,
    const std::function<bool(const SparseFormSpec&)>& visit);

// Searches the sparse forms for one within exact TV eps/6 of the
// hypothesis; first hit wins.  Returns nullopt when the stream is
// exhausted without a hit.  Throws BudgetExceeded after
// config.candidate_budget TV evaluations.
std::optional<SparseFormSpec> locate_sparse(
    const SparseIntervalHypothesis& hs, double eps, const LearnConfig& config);

// The two variance tweaks and the Binomial construction:
//   sigma1^2 = min(sigma2_hat, n/4)
//   sigma2^2 = sigma1^2 if mu^2 <= n (mu - sigma1^2), else (n mu - mu^2)/n
//   n_hat = floor(mu^2 / (mu - sigma2^2)), p_hat = (mu - sigma2^2)/mu.
// Guarantees n_hat <= n and p_hat in [0,1].
BinomialSpec locate_binomial(double mu_hat, double sigma2_hat,
                             std::int64_t n);

// l_bar = n_hat, q_bar = p_hat rounded to the nearest multiple of 1/n.
std::pair<std::int64_t, double> round_binomial(const BinomialSpec& spec,
                                               std::int64_t n);

struct ProperResult {
  PbdSpec spec;
  LearnBranch branch = LearnBranch::kSparse;
  // Set when the sparse search failed and the Binomial branch was used.
  bool sparse_fallback = false;
  LearnResult inner;
};

// Proper learner: runs learn_pbd, then converts the winning hypothesis
// to a genuine length-n PBD via the sparse search or the Binomial
// construction.  A failed sparse search falls back to the Binomial
// branch with a flag.
ProperResult proper_learn_pbd(SampleSource& oracle, std::int64_t n,
                              double eps, double delta,
                              const LearnConfig& config);

}  // namespace pbd

#endif  // PBD_COVER_HPP
