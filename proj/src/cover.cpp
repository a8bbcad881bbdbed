#include "pbd/cover.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pbd/core.hpp"

namespace pbd {

namespace {

int cover_k(double eps, const LearnConfig& config) {
  if (!(eps > 0)) throw std::domain_error("eps must be positive");
  int k = static_cast<int>(std::ceil(config.cover_c / eps));
  return k < 1 ? 1 : k;
}

// Enumerate compositions of total into `slots` positive parts,
// lexicographically; forward each to fn until it returns false.
bool compositions(std::int64_t total, std::size_t slots,
                  std::vector<std::int64_t>& parts,
                  const std::function<bool()>& fn) {
  if (slots == 1) {
    parts.push_back(total);
    bool keep = fn();
    parts.pop_back();
    return keep;
  }
  for (std::int64_t first = 1; first <= total - static_cast<std::int64_t>(
                                            slots) + 1;
       ++first) {
    parts.push_back(first);
    bool keep = compositions(total - first, slots - 1, parts, fn);
    parts.pop_back();
    if (!keep) return false;
  }
  return true;
}

// Enumerate d-element ascending combinations of grid indices in
// [1, max_index]; forward until fn returns false.
bool combinations(int max_index, std::size_t d, std::vector<int>& chosen,
                  int next, const std::function<bool()>& fn) {
  if (chosen.size() == d) return fn();
  for (int v = next; v <= max_index; ++v) {
    chosen.push_back(v);
    bool keep = combinations(max_index, d, chosen, v + 1, fn);
    chosen.pop_back();
    if (!keep) return false;
  }
  return true;
}

}  // namespace

void enumerate_sparse_forms(
    double eps, std::int64_t support_lo, std::int64_t support_hi,
    int distinct_cap, const LearnConfig& config,
    const std::function<bool(const SparseFormSpec&)>& visit) {
  if (support_hi < support_lo) {
    throw std::domain_error("empty support constraint");
  }
  int k = cover_k(eps, config);
  std::int64_t grid_max = static_cast<std::int64_t>(k) * k - 1;
  std::int64_t ell_cap = static_cast<std::int64_t>(k) * k * k;
  std::int64_t width = support_hi - support_lo;

  auto emit_translations = [&](const std::vector<int>& values,
                               const std::vector<std::int64_t>& mults,
                               std::int64_t ell) {
    std::int64_t t_hi = support_lo;
    std::int64_t t_lo = std::max<std::int64_t>(0, support_hi - ell);
    for (std::int64_t t = t_hi; t >= t_lo; --t) {
      SparseFormSpec form;
      form.grid_k = k;
      for (std::size_t i = 0; i < values.size(); ++i) {
        form.multiplicities[values[i]] = mults[i];
      }
      form.ones = t;
      if (!visit(form)) return false;
    }
    return true;
  };

  // ell = 0: a pure translation; needs a singleton constraint.
  if (width == 0 && support_lo >= 0) {
    SparseFormSpec form;
    form.grid_k = k;
    form.ones = support_lo;
    if (!visit(form)) return;
  }
  if (grid_max < 1) return;

  for (std::int64_t ell = std::max<std::int64_t>(1, width); ell <= ell_cap;
       ++ell) {
    std::size_t max_d = static_cast<std::size_t>(std::min<std::int64_t>(
        distinct_cap, std::min<std::int64_t>(ell, grid_max)));
    for (std::size_t d = 1; d <= max_d; ++d) {
      std::vector<int> chosen;
      std::vector<std::int64_t> parts;
      bool keep = combinations(
          static_cast<int>(grid_max), d, chosen, 1, [&]() {
            return compositions(ell, d, parts, [&]() {
              return emit_translations(chosen, parts, ell);
            });
          });
      if (!keep) return;
    }
  }
}

std::optional<SparseFormSpec> locate_sparse(const SparseIntervalHypothesis& hs,
                                            double eps,
                                            const LearnConfig& config) {
  if (hs.trivial_fail) {
    throw std::domain_error("locate_sparse requires a non-trivial hypothesis");
  }
  // Trim to the nonzero extent: the form's support must cover it.
  std::int64_t a = hs.a, b = hs.b;
  while (a < b && hs.at(a) == 0.0) ++a;
  while (b > a && hs.at(b) == 0.0) --b;
  std::int64_t width = b - a;

  double hs_mean = 0.0;
  for (std::int64_t v = a; v <= b; ++v) hs_mean += hs.at(v) * v;

  double threshold = eps / 6.0;
  double k2 = 0.0;
  std::size_t evals = 0;
  std::optional<SparseFormSpec> found;

  enumerate_sparse_forms(
      eps, a, b, config.distinct_cap_for(eps), config,
      [&](const SparseFormSpec& form) {
        if (k2 == 0.0) {
          k2 = static_cast<double>(form.grid_k) * form.grid_k;
        }
        // Spread prune: a form whose standard deviation dwarfs the
        // hypothesis width cannot pack 1 - eps/6 mass inside it.
        double var = 0.0, mean_nt = 0.0;
        std::int64_t ell = 0;
        for (const auto& [i, mult] : form.multiplicities) {
          double p = i / k2;
          var += mult * p * (1.0 - p);
          mean_nt += mult * p;
          ell += mult;
        }
        if (std::sqrt(var) > 4.2 * static_cast<double>(width + 1)) {
          return true;
        }
        double span = static_cast<double>(
            std::max(form.ones + ell, b) - std::min(form.ones, a) + 1);
        double form_mean = mean_nt + static_cast<double>(form.ones);
        if (std::fabs(form_mean - hs_mean) > threshold * span + 1e-12) {
          return true;
        }
        if (++evals > config.candidate_budget) {
          throw BudgetExceeded("sparse-form search exceeded its budget");
        }
        std::vector<double> probs;
        probs.reserve(static_cast<std::size_t>(ell));
        for (const auto& [i, mult] : form.multiplicities) {
          for (std::int64_t c = 0; c < mult; ++c) probs.push_back(i / k2);
        }
        for (std::int64_t c = 0; c < form.ones; ++c) probs.push_back(1.0);
        DensePmf form_pmf =
            probs.empty() ? DensePmf(form.ones, {1.0})
                          : pbd_pmf(PbdSpec(std::move(probs)));
        double dist = 0.0;
        std::int64_t lo = std::min(form_pmf.lo(), a);
        std::int64_t hi = std::max(form_pmf.hi(), b);
        for (std::int64_t v = lo; v <= hi; ++v) {
          dist += std::fabs(form_pmf.at(v) - hs.at(v));
        }
        if (0.5 * dist <= threshold) {
          found = form;
          return false;
        }
        return true;
      });
  return found;
}

BinomialSpec locate_binomial(double mu_hat, double sigma2_hat,
                             std::int64_t n) {
  if (!(mu_hat > 0.0) || mu_hat > static_cast<double>(n)) {
    throw std::domain_error("mu_hat must lie in (0, n]");
  }
  if (!(sigma2_hat >= 0.0)) {
    throw std::domain_error("sigma2_hat must be nonnegative");
  }
  double nd = static_cast<double>(n);
  double sigma1 = std::min(sigma2_hat, nd / 4.0);
  double sigma2;
  if (mu_hat * mu_hat <= nd * (mu_hat - sigma1)) {
    sigma2 = sigma1;
  } else {
    sigma2 = (nd * mu_hat - mu_hat * mu_hat) / nd;
  }
  double denom = mu_hat - sigma2;
  if (!(denom > 0.0)) {
    throw std::domain_error(
        "degenerate variance tweak: mu_hat <= sigma2^2 after step (b)");
  }
  std::int64_t n_hat =
      static_cast<std::int64_t>(std::floor(mu_hat * mu_hat / denom));
  if (n_hat < 1) n_hat = 1;
  if (n_hat > n) n_hat = n;
  double p_hat = denom / mu_hat;
  if (p_hat > 1.0) p_hat = 1.0;
  if (p_hat < 0.0) p_hat = 0.0;
  return BinomialSpec(n_hat, p_hat);
}

std::pair<std::int64_t, double> round_binomial(const BinomialSpec& spec,
                                               std::int64_t n) {
  if (n < 1) throw std::domain_error("n must be >= 1");
  double nd = static_cast<double>(n);
  double q_bar = std::round(spec.p_hat * nd) / nd;
  if (q_bar > 1.0) q_bar = 1.0;
  if (q_bar < 0.0) q_bar = 0.0;
  return {spec.n_hat, q_bar};
}

ProperResult proper_learn_pbd(SampleSource& oracle, std::int64_t n,
                              double eps, double delta,
                              const LearnConfig& config) {
  LearnResult inner = learn_pbd(oracle, n, eps, delta, config);

  auto binomial_branch = [&](bool fallback) {
    double mu = inner.poisson.mu;
    if (!(mu > 0.0)) {
      // Degenerate all-zero estimate: the point mass at 0.
      return ProperResult{PbdSpec(std::vector<double>(n, 0.0)),
                          LearnBranch::kPoisson, fallback, inner};
    }
    if (mu > static_cast<double>(n)) mu = static_cast<double>(n);
    BinomialSpec bin = locate_binomial(mu, inner.poisson.sigma2, n);
    std::vector<double> p(static_cast<std::size_t>(n), 0.0);
    for (std::int64_t i = 0; i < bin.n_hat; ++i) {
      p[static_cast<std::size_t>(i)] = bin.p_hat;
    }
    return ProperResult{PbdSpec(std::move(p)), LearnBranch::kPoisson,
                        fallback, inner};
  };

  if (inner.branch == LearnBranch::kPoisson) return binomial_branch(false);

  if (inner.sparse.trivial_fail) {
    // The 'fail' hypothesis is the point mass at 0.
    return ProperResult{PbdSpec(std::vector<double>(n, 0.0)),
                        LearnBranch::kSparse, false, inner};
  }
  std::optional<SparseFormSpec> form;
  try {
    form = locate_sparse(inner.sparse, eps, config);
  } catch (const BudgetExceeded&) {
    form.reset();
  }
  if (form &&
      form->nontrivial_count() + form->ones <= static_cast<std::int64_t>(n)) {
    return ProperResult{form->expand(static_cast<std::size_t>(n)),
                        LearnBranch::kSparse, false, inner};
  }
  return binomial_branch(true);
}

}  // namespace pbd
