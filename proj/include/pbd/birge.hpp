#ifndef PBD_BIRGE_HPP
#define PBD_BIRGE_HPP

#include <cstdint>
#include <vector>

#include "pbd/oracle.hpp"
#include "pbd/types.hpp"

namespace pbd {

// Empirical cdf of integer samples over a declared domain [lo, hi].
// The step grid is the distinct sample values plus a zero-height anchor
// at lo-1 and a unit-height cap at hi; ties merge into one step.
class EmpiricalCdf {
 public:
  EmpiricalCdf(const std::vector<std::int64_t>& values, std::int64_t lo,
               std::int64_t hi);
  // counts[i] is the multiplicity of value lo + i.
  static EmpiricalCdf from_histogram(const std::vector<std::int64_t>& counts,
                                     std::int64_t lo, std::int64_t hi);

  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  std::size_t sample_count() const { return m_; }
  const std::vector<std::int64_t>& xs() const { return xs_; }
  const std::vector<double>& heights() const { return heights_; }
  // F(x): height of the last step at or before x.
  double at(std::int64_t x) const;

 private:
  EmpiricalCdf() = default;
  std::int64_t lo_ = 0;
  std::int64_t hi_ = 0;
  std::size_t m_ = 0;
  std::vector<std::int64_t> xs_;
  std::vector<double> heights_;
};

struct HullVertex {
  std::int64_t x = 0;
  double y = 0.0;
};

// Greatest convex function below the cdf steps on [lo-1, upto].
std::vector<HullVertex> convex_minorant(const EmpiricalCdf& cdf,
                                        std::int64_t upto);
// Least concave function above the cdf steps on [from, hi].
std::vector<HullVertex> concave_majorant(const EmpiricalCdf& cdf,
                                         std::int64_t from);

// d-(j): max over [lo, j] of (cdf - convex minorant over [lo, j]).
double deviation_minus(const EmpiricalCdf& cdf, std::int64_t j);
// d+(j): max over [j, hi] of (concave majorant over [j, hi] - cdf).
double deviation_plus(const EmpiricalCdf& cdf, std::int64_t j);

// Approximate minimizer of d(r) = max(d-(r), d+(r)): binary search over
// the sample steps, then over the bracketing integer gap.
std::int64_t locate_mode(const EmpiricalCdf& cdf, double eta);

// Derivative of the spliced hull (convex minorant left of r, concave
// majorant right of r): a piecewise-uniform distribution on [lo, hi].
PiecewiseUniformHypothesis grenander_splice(const EmpiricalCdf& cdf,
                                            std::int64_t r);

// Samples for one Grenander fit: ceil(c_b * ln(width + 2) / eps^3).
std::size_t birge_run_size(std::int64_t width, double eps,
                           const LearnConfig& config);
// Total batch consumed by birge_learn: R = ceil(log2(3/delta)) fits plus
// the selection tournament among them.
std::size_t birge_total_size(std::int64_t width, double eps, double delta,
                             const LearnConfig& config);

// Unimodal learner: R independent Grenander fits on consecutive sample
// chunks, then a tournament over the fitted hypotheses using the
// remaining samples for the pairwise competitions.
PiecewiseUniformHypothesis birge_learn(const SampleBatch& samples,
                                       std::int64_t lo, std::int64_t hi,
                                       double eps, double delta,
                                       const LearnConfig& config);

// Same algorithm fed directly from a sample source (the learner pulls
// exactly birge_total_size draws); avoids materializing large batches.
PiecewiseUniformHypothesis birge_learn_stream(SampleSource& source,
                                              std::int64_t lo,
                                              std::int64_t hi, double eps,
                                              double delta,
                                              const LearnConfig& config);

}  // namespace pbd

#endif  // PBD_BIRGE_HPP
