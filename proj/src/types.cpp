#include "pbd/types.hpp"

#include <cmath>
#include <numeric>

namespace pbd {

namespace {
constexpr double kMassTolerance = 1e-9;
}

void PbdSpec::validate() const {
  if (probs.empty()) throw std::domain_error("PbdSpec requires n >= 1");
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::domain_error("PbdSpec mean outside [0,1]");
    }
  }
}

double DensePmf::total() const {
  double s = 0.0;
  for (double m : mass) s += m;
  return s;
}

void DensePmf::validate() const {
  if (mass.empty()) throw std::domain_error("DensePmf must be nonempty");
  for (double m : mass) {
    if (!(m >= 0.0)) throw std::domain_error("DensePmf has negative mass");
  }
  if (std::fabs(total() - 1.0) > kMassTolerance) {
    throw std::domain_error("DensePmf mass does not sum to 1");
  }
}

std::int64_t TranslatedPoissonParams::shift() const {
  return static_cast<std::int64_t>(std::floor(mu - sigma2));
}

double TranslatedPoissonParams::rate() const {
  double d = mu - sigma2;
  return sigma2 + (d - std::floor(d));
}

double PiecewiseUniformHypothesis::at(std::int64_t v) const {
  if (v < lo || v > hi) return 0.0;
  for (const auto& piece : pieces) {
    if (v >= piece.a && v <= piece.b) {
      return piece.mass / static_cast<double>(piece.b - piece.a + 1);
    }
  }
  return 0.0;
}

void PiecewiseUniformHypothesis::validate() const {
  if (pieces.empty()) throw std::domain_error("empty hypothesis");
  double total = 0.0;
  std::int64_t expect = lo;
  for (const auto& piece : pieces) {
    if (piece.a != expect || piece.b < piece.a) {
      throw std::domain_error("pieces must be contiguous and ordered");
    }
    if (!(piece.mass >= 0.0)) throw std::domain_error("negative piece mass");
    total += piece.mass;
    expect = piece.b + 1;
  }
  if (expect != hi + 1) throw std::domain_error("pieces must cover [lo,hi]");
  if (std::fabs(total - 1.0) > kMassTolerance) {
    throw std::domain_error("piece masses must sum to 1");
  }
}

void SparseIntervalHypothesis::validate() const {
  if (b < a) throw std::domain_error("invalid interval");
  if (pmf.size() != static_cast<std::size_t>(b - a + 1)) {
    throw std::domain_error("pmf length must match interval");
  }
  double total = 0.0;
  for (double p : pmf) {
    if (!(p >= 0.0)) throw std::domain_error("negative probability");
    total += p;
  }
  if (std::fabs(total - 1.0) > kMassTolerance) {
    throw std::domain_error("pmf must sum to 1");
  }
}

int LearnConfig::distinct_cap_for(double eps) const {
  if (distinct_cap) return *distinct_cap;
  if (eps >= 1.0) return 1;
  int cap = static_cast<int>(std::ceil(std::log2(1.0 / eps)));
  return cap < 1 ? 1 : cap;
}

void BinomialSpec::validate() const {
  if (n_hat < 1) throw std::domain_error("Binomial needs n_hat >= 1");
  if (!(p_hat >= 0.0 && p_hat <= 1.0)) {
    throw std::domain_error("Binomial needs p_hat in [0,1]");
  }
}

PbdSpec SparseFormSpec::expand(std::size_t n) const {
  std::vector<double> p;
  p.reserve(n);
  double k2 = static_cast<double>(grid_k) * grid_k;
  for (const auto& [i, m] : multiplicities) {
    for (std::int64_t c = 0; c < m; ++c) p.push_back(i / k2);
  }
  for (std::int64_t c = 0; c < ones; ++c) p.push_back(1.0);
  if (p.size() > n) throw std::domain_error("sparse form exceeds length n");
  p.resize(n, 0.0);
  return PbdSpec(std::move(p));
}

bool BinomialFormSpec::certified_heavy(int k) const {
  double kd = k;
  double mean = static_cast<double>(ell) * q;
  double var = mean * (1.0 - q);
  return mean >= kd * kd - 1.0 / kd &&
         var >= kd * kd - kd - 1.0 - 3.0 / kd;
}

PbdSpec BinomialFormSpec::expand(std::size_t n) const {
  std::vector<double> p;
  p.reserve(n);
  for (std::int64_t c = 0; c < ell; ++c) p.push_back(q);
  for (std::int64_t c = 0; c < t; ++c) p.push_back(1.0);
  if (p.size() > n) throw std::domain_error("binomial form exceeds length n");
  p.resize(n, 0.0);
  return PbdSpec(std::move(p));
}

std::size_t WeightedSumSpec::total_n() const {
  std::size_t n = 0;
  for (const auto& cls : classes) n += cls.probs.size();
  return n;
}

std::int64_t WeightedSumSpec::scale() const {
  std::int64_t l = 1;
  for (const auto& cls : classes) l = std::lcm(l, cls.weight_den);
  return l;
}

std::int64_t WeightedSumSpec::scaled_weight(std::size_t j) const {
  return classes[j].weight_num * (scale() / classes[j].weight_den);
}

void WeightedSumSpec::validate() const {
  if (classes.empty()) throw std::domain_error("weighted spec needs a class");
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& cls = classes[i];
    if (cls.weight_den <= 0) throw std::domain_error("weight denominator <= 0");
    if (cls.probs.empty()) throw std::domain_error("empty weight class");
    for (double p : cls.probs) {
      if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("p outside [0,1]");
    }
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      if (cls.weight_num * classes[j].weight_den ==
          classes[j].weight_num * cls.weight_den) {
        throw std::domain_error("weights must be pairwise distinct");
      }
    }
  }
}

double SparsePmf::total() const {
  double s = 0.0;
  for (const auto& [v, p] : mass) s += p;
  return s;
}

}  // namespace pbd
