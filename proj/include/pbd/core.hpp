#ifndef PBD_CORE_HPP
#define PBD_CORE_HPP

#include <cstdint>

#include "pbd/rng.hpp"
#include "pbd/types.hpp"

namespace pbd {

// Exact pmf of a PBD by iterative convolution of its Bernoulli factors.
// Deterministic indicators (p in {0,1}) only translate the support, so
// they are folded into the origin instead of widening the convolution.
// The result is renormalized; accumulated drift beyond 1e-9 is an error.
DensePmf pbd_pmf(const PbdSpec& spec);

// m i.i.d. draws, deterministic for a fixed seed.  Uses per-indicator
// Bernoulli draws for n <= 10^4 and inverse-cdf over pbd_pmf above that.
SampleBatch pbd_sample(const PbdSpec& spec, std::size_t m,
                       std::uint64_t seed);

// Total variation distance: half the L1 distance over the union of the
// two supports.
double tv_distance(const DensePmf& p, const DensePmf& q);

// mean = sum p_i, variance = sum p_i (1 - p_i).
MomentSummary moments(const PbdSpec& spec);

// Mean and variance of an explicit pmf.
MomentSummary pmf_moments(const DensePmf& p);

// Conditional distribution restricted to [a, b], renormalized.
// Throws std::domain_error if the interval carries no mass.
DensePmf conditional_restrict(const DensePmf& p, std::int64_t a,
                              std::int64_t b);

// Binomial pmf over a window, evaluated in log space; exact to double
// rounding even for n ~ 10^6 where the convolution DP is not an option.
DensePmf binomial_pmf_window(std::int64_t n, double p, std::int64_t lo,
                             std::int64_t hi);

// Window [lo, hi] around the mean of `spec` that carries all but at most
// `tail_bound` of the mass (Bernstein bound), clipped to [0, n].
struct SupportWindow {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  double tail_bound = 0.0;
};
SupportWindow support_window(const PbdSpec& spec, double tail_bound = 1e-12);

// Exact pmf of `spec` on a window: uses the convolution DP when the
// nontrivial count is small and the closed-form binomial evaluation when
// all nontrivial means are equal (so n = 10^6 binomials stay cheap).
// Falls back to the full DP otherwise.
DensePmf pbd_pmf_window(const PbdSpec& spec, std::int64_t lo, std::int64_t hi);

}  // namespace pbd

#endif  // PBD_CORE_HPP
