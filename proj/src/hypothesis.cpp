#include "pbd/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pbd/weighted.hpp"

namespace pbd {

namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

PbdHypothesis::PbdHypothesis(PbdSpec s) : spec(std::move(s)) {
  SupportWindow w = support_window(spec);
  pmf = std::make_shared<const DensePmf>(pbd_pmf_window(spec, w.lo, w.hi));
}

WeightedHypothesis::WeightedHypothesis(WeightedSumSpec s)
    : spec(std::move(s)) {
  pmf = std::make_shared<const SparsePmf>(weighted_pmf(spec));
}

DiscretizedTp::DiscretizedTp(TranslatedPoissonParams params,
                             std::int64_t point_t)
    : params_(params), point_t_(point_t), cache_(std::make_shared<Cache>()) {
  if (point_t_ < 1) throw std::domain_error("point_t must be >= 1");
}

void DiscretizedTp::tabulate(const std::vector<std::int64_t>& support) {
  for (std::int64_t v : support) pmf(v);
}

double DiscretizedTp::pmf(std::int64_t v) const {
  if (v < params_.shift()) return 0.0;
  std::scoped_lock lock(cache_->mu);
  auto it = cache_->values.find(v);
  if (it != cache_->values.end()) return it->second;
  double p = tp_pmf(params_, v, point_t_);
  cache_->values.emplace(v, p);
  return p;
}

double Hypothesis::pmf(std::int64_t v) const {
  return std::visit(
      [v](const auto& h) -> double {
        using T = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<T, SparseIntervalHypothesis>) {
          return h.at(v);
        } else if constexpr (std::is_same_v<T, PiecewiseUniformHypothesis>) {
          return h.at(v);
        } else if constexpr (std::is_same_v<T, DiscretizedTp>) {
          return h.pmf(v);
        } else if constexpr (std::is_same_v<T, PbdHypothesis>) {
          return h.pmf->at(v);
        } else if constexpr (std::is_same_v<T, BinomialSpec>) {
          if (v < 0 || v > h.n_hat) return 0.0;
          return binomial_pmf_window(h.n_hat, h.p_hat, v, v).at(v);
        } else {
          return h.pmf->at(v);
        }
      },
      value_);
}

std::vector<std::int64_t> Hypothesis::support_points() const {
  return std::visit(
      [](const auto& h) -> std::vector<std::int64_t> {
        using T = std::decay_t<decltype(h)>;
        std::vector<std::int64_t> pts;
        if constexpr (std::is_same_v<T, SparseIntervalHypothesis>) {
          for (std::int64_t v = h.a; v <= h.b; ++v) pts.push_back(v);
        } else if constexpr (std::is_same_v<T, PiecewiseUniformHypothesis>) {
          for (std::int64_t v = h.lo; v <= h.hi; ++v) pts.push_back(v);
        } else if constexpr (std::is_same_v<T, DiscretizedTp>) {
          TpWindow w = tp_window(h.params());
          for (std::int64_t v = w.lo; v <= w.hi; ++v) pts.push_back(v);
        } else if constexpr (std::is_same_v<T, PbdHypothesis>) {
          for (std::int64_t v = h.pmf->lo(); v <= h.pmf->hi(); ++v) {
            pts.push_back(v);
          }
        } else if constexpr (std::is_same_v<T, BinomialSpec>) {
          std::vector<double> probs(static_cast<std::size_t>(h.n_hat),
                                    h.p_hat);
          SupportWindow w = support_window(PbdSpec(std::move(probs)));
          for (std::int64_t v = w.lo; v <= w.hi; ++v) pts.push_back(v);
        } else {
          for (const auto& [v, p] : h.pmf->mass) pts.push_back(v);
        }
        return pts;
      },
      value_);
}

std::string Hypothesis::tag() const {
  return std::visit(
      [](const auto& h) -> std::string {
        using T = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<T, SparseIntervalHypothesis>) {
          return "sparse-interval";
        } else if constexpr (std::is_same_v<T, PiecewiseUniformHypothesis>) {
          return "piecewise-uniform";
        } else if constexpr (std::is_same_v<T, DiscretizedTp>) {
          return "translated-poisson";
        } else if constexpr (std::is_same_v<T, PbdHypothesis>) {
          return "pbd";
        } else if constexpr (std::is_same_v<T, BinomialSpec>) {
          return "binomial";
        } else {
          return "weighted";
        }
      },
      value_);
}

std::string Hypothesis::canonical_key() const {
  std::string key = tag();
  key += '|';
  std::visit(
      [&key](const auto& h) {
        using T = std::decay_t<decltype(h)>;
        if constexpr (std::is_same_v<T, SparseIntervalHypothesis>) {
          key += std::to_string(h.a) + ":" + std::to_string(h.b);
          for (double p : h.pmf) key += "," + fmt_double(p);
        } else if constexpr (std::is_same_v<T, PiecewiseUniformHypothesis>) {
          key += std::to_string(h.lo) + ":" + std::to_string(h.hi);
          for (const auto& piece : h.pieces) {
            key += "," + std::to_string(piece.a) + ":" +
                   std::to_string(piece.b) + ":" + fmt_double(piece.mass);
          }
        } else if constexpr (std::is_same_v<T, DiscretizedTp>) {
          key += fmt_double(h.params().mu) + "," +
                 fmt_double(h.params().sigma2) + "," +
                 std::to_string(h.point_t());
        } else if constexpr (std::is_same_v<T, PbdHypothesis>) {
          for (double p : h.spec.probs) key += fmt_double(p) + ",";
        } else if constexpr (std::is_same_v<T, BinomialSpec>) {
          key += std::to_string(h.n_hat) + "," + fmt_double(h.p_hat);
        } else {
          for (const auto& cls : h.spec.classes) {
            key += std::to_string(cls.weight_num) + "/" +
                   std::to_string(cls.weight_den) + ":";
            for (double p : cls.probs) key += fmt_double(p) + ",";
            key += ";";
          }
        }
      },
      value_);
  return key;
}

std::vector<std::int64_t> union_support(const Hypothesis& h1,
                                        const Hypothesis& h2) {
  std::vector<std::int64_t> a = h1.support_points();
  std::vector<std::int64_t> b = h2.support_points();
  std::vector<std::int64_t> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double exact_tv_upper(const DensePmf& truth_window, double truth_tail,
                      const Hypothesis& h) {
  std::vector<std::int64_t> pts = h.support_points();
  double sum = 0.0;
  for (std::int64_t v = truth_window.lo(); v <= truth_window.hi(); ++v) {
    sum += std::fabs(truth_window.at(v) - h.pmf(v));
  }
  for (std::int64_t v : pts) {
    if (v < truth_window.lo() || v > truth_window.hi()) {
      sum += h.pmf(v);
    }
  }
  return 0.5 * sum + 0.5 * (truth_tail + 1e-9);
}

double exact_tv_target(const PbdSpec& target, const Hypothesis& h) {
  SupportWindow w = support_window(target);
  DensePmf truth = pbd_pmf_window(target, w.lo, w.hi);
  return exact_tv_upper(truth, w.tail_bound, h);
}

double exact_tv_weighted(const SparsePmf& a, const SparsePmf& b) {
  if (a.scale != b.scale) {
    throw std::domain_error("weighted pmfs use different scales");
  }
  double sum = 0.0;
  for (const auto& [v, p] : a.mass) sum += std::fabs(p - b.at(v));
  for (const auto& [v, p] : b.mass) {
    if (!a.mass.count(v)) sum += p;
  }
  return 0.5 * sum;
}

}  // namespace pbd
