#include "pbd/weighted.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "pbd/core.hpp"
#include "pbd/cover.hpp"
#include "pbd/hypothesis.hpp"

namespace pbd {

SparsePmf weighted_pmf(const WeightedSumSpec& spec) {
  spec.validate();
  SparsePmf out;
  out.scale = spec.scale();
  std::map<std::int64_t, double> cur{{0, 1.0}};
  for (std::size_t j = 0; j < spec.classes.size(); ++j) {
    DensePmf pj = pbd_pmf(PbdSpec(spec.classes[j].probs));
    std::int64_t w = spec.scaled_weight(j);
    std::map<std::int64_t, double> next;
    for (const auto& [v, p] : cur) {
      for (std::size_t i = 0; i < pj.mass.size(); ++i) {
        if (pj.mass[i] == 0.0) continue;
        std::int64_t target =
            v + w * (pj.origin + static_cast<std::int64_t>(i));
        next[target] += p * pj.mass[i];
      }
    }
    cur.swap(next);
  }
  out.mass = std::move(cur);
  return out;
}

namespace {

// Per-class candidates as sorted probability vectors, deduped.  A class
// whose own cover passes the candidate budget already dooms the product,
// so enumeration refuses as soon as that happens.
std::vector<std::vector<double>> class_cover(std::size_t n_j, double eps_class,
                                             double eps_top, std::size_t k,
                                             const LearnConfig& config) {
  std::set<std::vector<double>> seen;
  std::vector<std::vector<double>> out;
  auto add = [&](std::vector<double> probs) {
    probs.resize(n_j, 0.0);
    std::sort(probs.begin(), probs.end());
    if (seen.insert(probs).second) {
      if (out.size() >= config.candidate_budget) {
        throw BudgetExceeded(
            "per-class cover exceeds the candidate budget; use a coarser "
            "eps or a smaller distinct_cap / q grid");
      }
      out.push_back(probs);
    }
  };

  // Sparse forms at class accuracy, re-translated over the class.
  enumerate_sparse_forms(
      eps_class, 0, 0, config.distinct_cap_for(eps_class), config,
      [&](const SparseFormSpec& form) {
        std::int64_t ell = form.nontrivial_count();
        if (ell > static_cast<std::int64_t>(n_j)) return false;  // ascending
        double k2 = static_cast<double>(form.grid_k) * form.grid_k;
        std::vector<double> base;
        base.reserve(static_cast<std::size_t>(ell));
        for (const auto& [i, mult] : form.multiplicities) {
          for (std::int64_t c = 0; c < mult; ++c) base.push_back(i / k2);
        }
        std::int64_t max_t = static_cast<std::int64_t>(n_j) - ell;
        if (config.cover_max_ones && *config.cover_max_ones < max_t) {
          max_t = *config.cover_max_ones;
        }
        for (std::int64_t t = 0; t <= max_t; ++t) {
          std::vector<double> probs = base;
          for (std::int64_t c = 0; c < t; ++c) probs.push_back(1.0);
          add(std::move(probs));
        }
        return true;
      });

  // Translated Binomial forms over the q grid.
  std::int64_t q_den = config.q_grid_denominator
                           ? *config.q_grid_denominator
                           : static_cast<std::int64_t>(
                                 static_cast<double>(k) *
                                 static_cast<double>(n_j) *
                                 std::ceil(1.0 / eps_top));
  if (q_den < 2) q_den = 2;
  for (std::int64_t ell = 1; ell <= static_cast<std::int64_t>(n_j); ++ell) {
    std::int64_t max_t = static_cast<std::int64_t>(n_j) - ell;
    if (config.cover_max_ones && *config.cover_max_ones < max_t) {
      max_t = *config.cover_max_ones;
    }
    for (std::int64_t t = 0; t <= max_t; ++t) {
      for (std::int64_t i = 1; i < q_den; ++i) {
        std::vector<double> probs(
            static_cast<std::size_t>(ell),
            static_cast<double>(i) / static_cast<double>(q_den));
        for (std::int64_t c = 0; c < t; ++c) probs.push_back(1.0);
        add(std::move(probs));
      }
    }
  }
  return out;
}

}  // namespace

std::vector<WeightedSumSpec> build_weighted_cover(const WeightedShape& shape,
                                                  double eps,
                                                  const LearnConfig& config) {
  if (shape.classes.empty()) throw std::domain_error("no weight classes");
  if (!(eps > 0 && eps < 1)) throw std::domain_error("eps in (0,1)");
  std::size_t k = shape.classes.size();
  double eps_class = eps / static_cast<double>(k);

  std::vector<std::vector<std::vector<double>>> per_class;
  per_class.reserve(k);
  std::size_t product = 1;
  for (const auto& cls : shape.classes) {
    per_class.push_back(class_cover(cls.count, eps_class, eps, k, config));
    if (per_class.back().empty()) {
      throw std::runtime_error("empty per-class cover");
    }
    if (product > config.candidate_budget / per_class.back().size()) {
      throw BudgetExceeded(
          "weighted cover product exceeds the candidate budget; use a "
          "coarser eps or a smaller distinct_cap / q grid");
    }
    product *= per_class.back().size();
  }

  std::vector<WeightedSumSpec> cover;
  cover.reserve(product);
  std::vector<std::size_t> idx(k, 0);
  for (;;) {
    WeightedSumSpec spec;
    spec.classes.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
      WeightedSumSpec::Class cls;
      cls.weight_num = shape.classes[j].weight_num;
      cls.weight_den = shape.classes[j].weight_den;
      cls.probs = per_class[j][idx[j]];
      spec.classes.push_back(std::move(cls));
    }
    cover.push_back(std::move(spec));
    std::size_t j = 0;
    while (j < k && ++idx[j] == per_class[j].size()) {
      idx[j] = 0;
      ++j;
    }
    if (j == k) break;
  }
  return cover;
}

WeightedLearnResult learn_weighted(SampleSource& oracle,
                                   const WeightedShape& shape, double eps,
                                   double delta, const LearnConfig& config) {
  std::uint64_t start = oracle.draws_used();
  std::vector<WeightedSumSpec> cover = build_weighted_cover(shape, eps, config);
  std::vector<Hypothesis> candidates;
  candidates.reserve(cover.size());
  for (const auto& spec : cover) {
    candidates.push_back(Hypothesis(WeightedHypothesis(spec)));
  }
  TournamentResult tour = tournament_select(oracle, candidates, eps, delta);
  std::size_t pick;
  bool failed = false;
  if (tour.winner) {
    pick = *tour.winner;
  } else {
    failed = true;
    pick = 0;
    for (std::size_t i = 1; i < tour.losses.size(); ++i) {
      if (tour.losses[i] < tour.losses[pick]) pick = i;
    }
  }
  return WeightedLearnResult{cover[pick], cover.size(),
                             oracle.draws_used() - start, failed};
}

}  // namespace pbd
