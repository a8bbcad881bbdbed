#include "pbd/poisson.hpp"

#include <bit>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace pbd {

namespace {

// Description complexity |x| = ceil(log2 x); zero for x <= 1.
int bit_length(std::uint64_t x) {
  if (x <= 1) return 0;
  return std::bit_width(x - 1);
}

// Working precision per the exponent-evaluation error budget:
// ceil(log2(12 (3k+1) t^2 k lambda1 lambda2)) plus guard bits.
mpfr_prec_t working_prec(std::uint64_t k, const ExactRational& lambda,
                         std::int64_t t) {
  long bits = 4;  // log2(12)
  bits += bit_length(3 * k + 1);
  bits += 2 * bit_length(static_cast<std::uint64_t>(t));
  bits += bit_length(k == 0 ? 1 : k);
  bits += static_cast<long>(mpz_sizeinbase(lambda.get_num_mpz_t(), 2));
  bits += static_cast<long>(mpz_sizeinbase(lambda.get_den_mpz_t(), 2));
  long prec = bits + 32;
  return prec < 96 ? 96 : prec;
}

// Akiyama-Tanigawa state: the evolving row plus every B_j computed so
// far.  Guarded by a mutex so concurrent callers are safe.
struct BernoulliCache {
  std::mutex mu;
  std::vector<ExactRational> row;
  std::vector<ExactRational> values;  // values[j] = B_j (B_1 = +1/2 here)
};

BernoulliCache& bernoulli_cache() {
  static BernoulliCache cache;
  return cache;
}

}  // namespace

PoissonEvalRequest::PoissonEvalRequest(ExactRational lam, std::uint64_t kk,
                                       std::int64_t tt)
    : lambda(std::move(lam)), k(kk), t(tt) {
  lambda.canonicalize();
  if (lambda <= 0) throw std::domain_error("lambda must be positive");
  if (t < 1) throw std::domain_error("t must be >= 1");
}

ExactRational bernoulli_number(unsigned j) {
  BernoulliCache& cache = bernoulli_cache();
  std::scoped_lock lock(cache.mu);
  while (cache.values.size() <= j) {
    unsigned m = static_cast<unsigned>(cache.values.size());
    cache.row.push_back(ExactRational(1, m + 1));
    for (unsigned i = m; i >= 1; --i) {
      cache.row[i - 1] = static_cast<long>(i) *
                         (cache.row[i - 1] - cache.row[i]);
    }
    cache.values.push_back(cache.row[0]);
  }
  if (j == 1) return ExactRational(-1, 2);
  return cache.values[j];
}

BigFloat stirling_log_factorial(std::uint64_t k, std::int64_t t) {
  if (k < 1) throw std::domain_error("k must be >= 1");
  if (t < 1) throw std::domain_error("t must be >= 1");
  mpfr_prec_t prec = working_prec(k, ExactRational(1), t);
  // The asymptotic series degrades for tiny k; the exact integer
  // factorial is cheap there.
  if (k <= 20) {
    mpz_class fac;
    mpz_fac_ui(fac.get_mpz_t(), static_cast<unsigned long>(k));
    return BigFloat::from_mpz(fac, prec).ln();
  }
  int m0 = (bit_length(static_cast<std::uint64_t>(t)) + bit_length(k) - 1) /
               bit_length(k) +
           1;
  BigFloat kf = BigFloat::from_int(static_cast<std::int64_t>(k), prec);
  BigFloat two_pi = BigFloat::pi(prec) * BigFloat::from_int(2, prec);
  BigFloat half = BigFloat::from_int(1, prec) / BigFloat::from_int(2, prec);
  // (k + 1/2) ln k - k + ln(2 pi)/2 + series
  BigFloat sum = (kf + half) * kf.ln() - kf + half * two_pi.ln();
  mpz_class kz(static_cast<unsigned long>(k));
  for (int j = 2; j <= m0; ++j) {
    ExactRational bj = bernoulli_number(static_cast<unsigned>(j));
    if (bj == 0) continue;
    mpz_class kpow;
    mpz_pow_ui(kpow.get_mpz_t(), kz.get_mpz_t(),
               static_cast<unsigned long>(j - 1));
    ExactRational term = bj / (ExactRational(j) * ExactRational(j - 1));
    term /= ExactRational(kpow);
    if (j % 2 != 0) term = -term;
    sum = sum + BigFloat::from_mpq(term, prec);
  }
  return sum;
}

double grid_exp(const BigFloat& alpha, std::int64_t t) {
  if (alpha.sign() > 0) throw std::domain_error("alpha must be <= 0");
  if (t < 1) throw std::domain_error("t must be >= 1");
  std::int64_t grid = 4 * t;
  mpfr_prec_t prec =
      std::max<mpfr_prec_t>(96, bit_length(static_cast<std::uint64_t>(grid)) +
                                    48);
  BigFloat ln_grid = BigFloat::from_int(grid, prec).ln();
  auto grid_log = [&](std::int64_t i) {
    return BigFloat::from_int(i, prec).ln() - ln_grid;
  };
  // Largest i with rounded-log(i / 4t) <= alpha; the rounded grid is
  // monotone so binary search applies.
  double denom = static_cast<double>(grid);
  if (alpha < grid_log(1)) return 1.0 / denom;
  std::int64_t lo = 1, hi = grid;
  while (lo < hi) {
    std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (grid_log(mid) <= alpha) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  if (lo == grid) return 1.0;
  BigFloat below = (alpha - grid_log(lo)).abs();
  BigFloat above = (grid_log(lo + 1) - alpha).abs();
  std::int64_t best = below <= above ? lo : lo + 1;
  return static_cast<double>(best) / denom;
}

double poisson_pmf_approx(const PoissonEvalRequest& req) {
  mpfr_prec_t prec = working_prec(req.k, req.lambda, req.t);
  BigFloat ln_lambda =
      BigFloat::from_mpz(mpz_class(req.lambda.get_num()), prec).ln() -
      BigFloat::from_mpz(mpz_class(req.lambda.get_den()), prec).ln();
  BigFloat exponent = -BigFloat::from_mpq(req.lambda, prec);
  if (req.k > 0) {
    exponent =
        exponent +
        BigFloat::from_int(static_cast<std::int64_t>(req.k), prec) *
            ln_lambda -
        stirling_log_factorial(req.k, req.t);
  }
  if (exponent.sign() >= 0) return 1.0;
  return grid_exp(exponent, req.t);
}

double tp_pmf(const TranslatedPoissonParams& params, std::int64_t i,
              std::int64_t t) {
  if (t < 1) throw std::domain_error("t must be >= 1");
  std::int64_t shift = params.shift();
  if (i < shift) return 0.0;
  double rate = params.rate();
  ExactRational lambda(rate);  // doubles are exact binary rationals
  lambda.canonicalize();
  PoissonEvalRequest req(lambda, static_cast<std::uint64_t>(i - shift), t);
  return poisson_pmf_approx(req);
}

double poisson_pmf_double(double lambda, std::int64_t k) {
  if (k < 0) return 0.0;
  if (lambda <= 0.0) return k == 0 ? 1.0 : 0.0;
  double lg = static_cast<double>(k) * std::log(lambda) - lambda -
              std::lgamma(static_cast<double>(k) + 1.0);
  return std::exp(lg);
}

TpWindow tp_window(const TranslatedPoissonParams& params, double tail) {
  double lambda = params.rate();
  double s = 12.0 * std::sqrt(lambda) + 40.0;
  auto tail_at = [&](double w) {
    double upper = std::exp(-w * w / (2.0 * (lambda + w / 3.0)));
    double lower = std::exp(-w * w / (2.0 * lambda));
    return upper + lower;
  };
  while (tail_at(s) > tail) s *= 1.5;
  TpWindow w;
  std::int64_t shift = params.shift();
  std::int64_t lo_k =
      std::max<std::int64_t>(0, static_cast<std::int64_t>(lambda - s));
  std::int64_t hi_k = static_cast<std::int64_t>(std::ceil(lambda + s));
  w.lo = shift + lo_k;
  w.hi = shift + hi_k;
  w.tail_bound = tail_at(s);
  return w;
}

}  // namespace pbd
