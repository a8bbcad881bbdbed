#ifndef PBD_TYPES_HPP
#define PBD_TYPES_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pbd {

// Thrown when a pull-based sample source cannot supply another draw
// (recorded stream ran out, or a rejection loop hit its cap).
class OracleExhausted : public std::runtime_error {
 public:
  explicit OracleExhausted(const std::string& what)
      : std::runtime_error(what) {}
};

// Thrown when a cover/tournament would exceed its configured candidate
// budget; the caller should coarsen eps or shrink distinct_cap.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what)
      : std::runtime_error(what) {}
};

// A Poisson Binomial Distribution: the vector of Bernoulli means.
struct PbdSpec {
  std::vector<double> probs;

  PbdSpec() = default;
  explicit PbdSpec(std::vector<double> p) : probs(std::move(p)) { validate(); }

  std::size_t n() const { return probs.size(); }
  void validate() const;
};

// Explicit pmf over a contiguous integer window [origin, origin+mass.size()).
// The origin offset lets restricted or translated supports avoid long
// runs of structural zeros.
struct DensePmf {
  std::int64_t origin = 0;
  std::vector<double> mass;

  DensePmf() = default;
  DensePmf(std::int64_t o, std::vector<double> m)
      : origin(o), mass(std::move(m)) {}

  std::int64_t lo() const { return origin; }
  std::int64_t hi() const {
    return origin + static_cast<std::int64_t>(mass.size()) - 1;
  }
  double at(std::int64_t v) const {
    if (v < lo() || v > hi()) return 0.0;
    return mass[static_cast<std::size_t>(v - origin)];
  }
  double total() const;
  void validate() const;
};

struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;
};

// A batch of integer draws together with the seed that produced it.
struct SampleBatch {
  std::vector<std::int64_t> values;
  std::uint64_t seed = 0;

  std::size_t count() const { return values.size(); }
};

// Parameters of a translated Poisson distribution TP(mu, sigma2):
// floor(mu - sigma2) + Poisson(sigma2 + frac(mu - sigma2)).
struct TranslatedPoissonParams {
  double mu = 0.0;
  double sigma2 = 1.0;
  // Set when a degenerate variance estimate was clamped to the floor.
  bool clamped = false;

  TranslatedPoissonParams() = default;
  TranslatedPoissonParams(double m, double s2, bool cl = false)
      : mu(m), sigma2(s2), clamped(cl) {
    if (!(sigma2 > 0)) throw std::domain_error("TP requires sigma2 > 0");
  }

  std::int64_t shift() const;
  double rate() const;
};

// Birge-style hypothesis: uniform over contiguous subintervals.
struct PiecewiseUniformHypothesis {
  struct Piece {
    std::int64_t a = 0;
    std::int64_t b = 0;
    double mass = 0.0;
  };
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::vector<Piece> pieces;

  double at(std::int64_t v) const;
  void validate() const;
};

// Output of the sparse-branch learner: explicit pmf on [a, b], or the
// trivial point mass at 0 when the width check failed.
struct SparseIntervalHypothesis {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::vector<double> pmf;  // pmf[i] = probability of a + i
  bool trivial_fail = false;

  static SparseIntervalHypothesis fail_hypothesis() {
    SparseIntervalHypothesis h;
    h.a = 0;
    h.b = 0;
    h.pmf = {1.0};
    h.trivial_fail = true;
    return h;
  }

  double at(std::int64_t v) const {
    if (v < a || v > b) return 0.0;
    return pmf[static_cast<std::size_t>(v - a)];
  }
  void validate() const;
};

// One Choose-Hypothesis run: the favoring set W1, the two masses on it,
// the empirical fraction tau, the sample count, and the verdict.
enum class Verdict { kFirstWins, kSecondWins, kDraw };

struct CompetitionRecord {
  std::vector<std::int64_t> w1;
  double p1 = 0.0;
  double q1 = 0.0;
  double tau = 0.0;
  std::size_t m = 0;
  Verdict verdict = Verdict::kDraw;
};

// Calibration constants.  The defaults are frozen by the acceptance
// suite; all of them can be overridden via a config document.
struct LearnConfig {
  double c1 = 3.0;      // sparse-branch accuracy constant
  double c2 = 3.0;      // Poisson-branch accuracy constant
  double cover_c = 2.0; // k(eps) <= C/eps in the cover
  double theta = 1.0;   // variance floor constant
  double c_b = 2.0;     // Birge sample-size constant
  double sigma_floor = 0.25;      // clamp for degenerate variance estimates
  double rejection_factor = 4.0;  // abort cap for rejection sampling
  std::size_t candidate_budget = 1000000;
  // Sparse-form enumeration cap on distinct grid values; when absent the
  // default ceil(log2(1/eps)) is used.
  std::optional<int> distinct_cap;
  // Denominator of the per-class binomial q grid; when absent the
  // default k * n_j * ceil(1/eps) is used.
  std::optional<std::int64_t> q_grid_denominator;
  // Cap on the translation count in per-class cover forms; when absent
  // every translation 0..n_j-ell is enumerated.
  std::optional<std::int64_t> cover_max_ones;

  int distinct_cap_for(double eps) const;
};

// Binomial hypothesis Bin(n_hat, p_hat).
struct BinomialSpec {
  std::int64_t n_hat = 1;
  double p_hat = 0.5;

  BinomialSpec() = default;
  BinomialSpec(std::int64_t n, double p) : n_hat(n), p_hat(p) { validate(); }
  void validate() const;
};

// A cover member in sparse form: multiplicities over the grid {i/k^2},
// plus a count of deterministic-one indicators (zeros are implicit).
struct SparseFormSpec {
  int grid_k = 1;
  // grid index i (value i / k^2) -> multiplicity
  std::map<int, std::int64_t> multiplicities;
  std::int64_t ones = 0;

  std::int64_t nontrivial_count() const {
    std::int64_t c = 0;
    for (const auto& [i, m] : multiplicities) c += m;
    return c;
  }
  // Expand to an explicit mean vector, padded with zeros to length n.
  PbdSpec expand(std::size_t n) const;
};

// A cover member in k-heavy Binomial form: Bin(ell, q) translated by t.
struct BinomialFormSpec {
  std::int64_t ell = 0;
  double q = 0.5;
  std::int64_t t = 0;

  // Whether the heavy-form lower bounds on mean and variance hold:
  // ell q >= k^2 - 1/k and ell q (1-q) >= k^2 - k - 1 - 3/k.
  bool certified_heavy(int k) const;
  PbdSpec expand(std::size_t n) const;
};

// Weighted sum of Bernoullis grouped by distinct weight.  Weights are
// rationals num/den; support arithmetic clears denominators so that all
// support values are integers scaled by `scale()`.
struct WeightedSumSpec {
  struct Class {
    std::int64_t weight_num = 1;
    std::int64_t weight_den = 1;
    std::vector<double> probs;
  };
  std::vector<Class> classes;

  std::size_t total_n() const;
  // Least common multiple of the weight denominators.
  std::int64_t scale() const;
  // Integer weight of class j after scaling.
  std::int64_t scaled_weight(std::size_t j) const;
  void validate() const;
};

// Sparse pmf over scaled-integer support values.
struct SparsePmf {
  std::int64_t scale = 1;
  std::map<std::int64_t, double> mass;

  double total() const;
  double at(std::int64_t scaled_value) const {
    auto it = mass.find(scaled_value);
    return it == mass.end() ? 0.0 : it->second;
  }
};

}  // namespace pbd

#endif  // PBD_TYPES_HPP
