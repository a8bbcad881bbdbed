#ifndef PBD_POISSON_HPP
#define PBD_POISSON_HPP

#include <gmpxx.h>

#include <cstdint>

#include "pbd/bigfloat.hpp"
#include "pbd/types.hpp"

namespace pbd {

// Exact rationals are GMP canonical-form rationals: reduced, positive
// denominator.
using ExactRational = mpq_class;

// Request to evaluate a Poisson pmf value lambda^k e^{-lambda} / k! to
// additive accuracy 1/t.
struct PoissonEvalRequest {
  ExactRational lambda;  // > 0, canonical form
  std::uint64_t k = 0;
  std::int64_t t = 1;  // inverse accuracy, >= 1

  PoissonEvalRequest(ExactRational lam, std::uint64_t kk, std::int64_t tt);
};

// Exact Bernoulli number B_j, convention B_1 = -1/2.  Memoized behind an
// internally synchronized cache.
ExactRational bernoulli_number(unsigned j);

// ln k! to additive 1/(10 t): the truncated Stirling series
//   (k + 1/2) ln k - k + ln(2 pi)/2
//     + sum_{j=2}^{m0} B_j (-1)^j / (j (j-1) k^{j-1})
// with m0 = ceil(|t| / |k|) + 1 (bit lengths).  Small k is computed from
// the exact integer factorial where the asymptotic series degrades.
BigFloat stirling_log_factorial(std::uint64_t k, std::int64_t t);

// e^alpha for alpha <= 0 by binary search over the grid {i/(4t)} in log
// scale, each grid log accurate to an additive 1/(16t).  The result is a
// grid point within 1/(2t) of e^alpha.
double grid_exp(const BigFloat& alpha, std::int64_t t);

// Poisson pmf at k to additive 1/t:  approximates the exponent
// E_k = -lambda + k ln lambda - ln k! to within 1/(4t), outputs 1 when
// the approximate exponent is >= 0, and exponentiates via grid_exp
// otherwise.
double poisson_pmf_approx(const PoissonEvalRequest& req);

// Translated Poisson pmf at i to additive 1/t; zero left of the shift.
double tp_pmf(const TranslatedPoissonParams& params, std::int64_t i,
              std::int64_t t);

// Plain double-precision Poisson pmf (lgamma based).  Support
// infrastructure for window sizing and TV evaluation; not the additive
// contract path above.
double poisson_pmf_double(double lambda, std::int64_t k);

// Window of the TP support whose complement carries at most `tail` mass.
struct TpWindow {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  double tail_bound = 0.0;
};
TpWindow tp_window(const TranslatedPoissonParams& params, double tail = 1e-12);

}  // namespace pbd

#endif  // PBD_POISSON_HPP
