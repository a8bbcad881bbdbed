#include "pbd/birge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pbd/hypothesis.hpp"
#include "pbd/selection.hpp"

namespace pbd {

namespace {

// Cross product sign for hull turns.
double cross(const HullVertex& o, const HullVertex& a, const HullVertex& b) {
  return static_cast<double>(a.x - o.x) * (b.y - o.y) -
         static_cast<double>(b.x - o.x) * (a.y - o.y);
}

// Grid points (x, F(x)) for x in [from, upto], with a virtual point at
// either boundary when it falls between steps.
std::vector<HullVertex> grid_slice(const EmpiricalCdf& cdf,
                                   std::int64_t from, std::int64_t upto) {
  std::vector<HullVertex> pts;
  const auto& xs = cdf.xs();
  const auto& hs = cdf.heights();
  if (from < xs.front() || upto > cdf.hi()) {
    throw std::domain_error("hull bounds outside the cdf domain");
  }
  if (from > xs.front() && !std::binary_search(xs.begin(), xs.end(), from)) {
    pts.push_back({from, cdf.at(from)});
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] >= from && xs[i] <= upto) pts.push_back({xs[i], hs[i]});
  }
  if (upto < xs.back() && !std::binary_search(xs.begin(), xs.end(), upto)) {
    pts.push_back({upto, cdf.at(upto)});
  }
  std::sort(pts.begin(), pts.end(),
            [](const HullVertex& a, const HullVertex& b) { return a.x < b.x; });
  return pts;
}

std::vector<HullVertex> lower_hull(const std::vector<HullVertex>& pts) {
  std::vector<HullVertex> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2 &&
           cross(hull[hull.size() - 2], hull.back(), p) <= 0.0) {
      hull.pop_back();
    }
    hull.push_back(p);
  }
  return hull;
}

std::vector<HullVertex> upper_hull(const std::vector<HullVertex>& pts) {
  std::vector<HullVertex> hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2 &&
           cross(hull[hull.size() - 2], hull.back(), p) >= 0.0) {
      hull.pop_back();
    }
    hull.push_back(p);
  }
  return hull;
}

// Max vertical gap between the step points and the hull, signed so that
// `sign` = +1 measures cdf above hull and -1 measures hull above cdf.
double max_gap(const std::vector<HullVertex>& pts,
               const std::vector<HullVertex>& hull, double sign) {
  double best = 0.0;
  std::size_t seg = 0;
  for (const auto& p : pts) {
    while (seg + 1 < hull.size() && hull[seg + 1].x < p.x) ++seg;
    double hull_y;
    if (seg + 1 >= hull.size()) {
      hull_y = hull.back().y;
    } else {
      const auto& a = hull[seg];
      const auto& b = hull[seg + 1];
      double frac = static_cast<double>(p.x - a.x) /
                    static_cast<double>(b.x - a.x);
      hull_y = a.y + frac * (b.y - a.y);
    }
    best = std::max(best, sign * (p.y - hull_y));
  }
  return best;
}

}  // namespace

EmpiricalCdf::EmpiricalCdf(const std::vector<std::int64_t>& values,
                           std::int64_t lo, std::int64_t hi) {
  if (values.empty()) throw std::domain_error("empty sample");
  std::vector<std::int64_t> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.front() < lo || sorted.back() > hi) {
    throw std::domain_error("sample outside declared domain");
  }
  lo_ = lo;
  hi_ = hi;
  m_ = sorted.size();
  xs_.push_back(lo - 1);
  heights_.push_back(0.0);
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    xs_.push_back(sorted[i]);
    heights_.push_back(static_cast<double>(j) / static_cast<double>(m_));
    i = j;
  }
  if (xs_.back() < hi) {
    xs_.push_back(hi);
    heights_.push_back(1.0);
  }
}

EmpiricalCdf EmpiricalCdf::from_histogram(
    const std::vector<std::int64_t>& counts, std::int64_t lo,
    std::int64_t hi) {
  if (hi - lo + 1 != static_cast<std::int64_t>(counts.size())) {
    throw std::domain_error("histogram length must match domain");
  }
  EmpiricalCdf cdf;
  cdf.lo_ = lo;
  cdf.hi_ = hi;
  std::int64_t total = 0;
  for (std::int64_t c : counts) total += c;
  if (total <= 0) throw std::domain_error("empty sample");
  cdf.m_ = static_cast<std::size_t>(total);
  cdf.xs_.push_back(lo - 1);
  cdf.heights_.push_back(0.0);
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    acc += counts[i];
    cdf.xs_.push_back(lo + static_cast<std::int64_t>(i));
    cdf.heights_.push_back(static_cast<double>(acc) /
                           static_cast<double>(total));
  }
  if (cdf.xs_.back() < hi) {
    cdf.xs_.push_back(hi);
    cdf.heights_.push_back(1.0);
  }
  return cdf;
}

double EmpiricalCdf::at(std::int64_t x) const {
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  if (it == xs_.begin()) return 0.0;
  return heights_[static_cast<std::size_t>(it - xs_.begin()) - 1];
}

std::vector<HullVertex> convex_minorant(const EmpiricalCdf& cdf,
                                        std::int64_t upto) {
  return lower_hull(grid_slice(cdf, cdf.xs().front(), upto));
}

std::vector<HullVertex> concave_majorant(const EmpiricalCdf& cdf,
                                         std::int64_t from) {
  return upper_hull(grid_slice(cdf, from, cdf.hi()));
}

double deviation_minus(const EmpiricalCdf& cdf, std::int64_t j) {
  auto pts = grid_slice(cdf, cdf.xs().front(), j);
  return max_gap(pts, lower_hull(pts), +1.0);
}

double deviation_plus(const EmpiricalCdf& cdf, std::int64_t j) {
  auto pts = grid_slice(cdf, j, cdf.hi());
  return max_gap(pts, upper_hull(pts), -1.0);
}

std::int64_t locate_mode(const EmpiricalCdf& cdf, double eta) {
  if (!(eta > 0)) throw std::domain_error("eta must be positive");
  const auto& xs = cdf.xs();
  std::int64_t best_r = xs[1];  // first sample step
  double best_d = std::max(deviation_minus(cdf, best_r),
                           deviation_plus(cdf, best_r));
  auto consider = [&](std::int64_t r) {
    if (r < cdf.lo() || r > cdf.hi()) return false;
    double d = std::max(deviation_minus(cdf, r), deviation_plus(cdf, r));
    if (d < best_d) {
      best_d = d;
      best_r = r;
    }
    return deviation_minus(cdf, r) <= deviation_plus(cdf, r);
  };
  // Stage 1: bisect over the sample steps.
  std::size_t lo_i = 1, hi_i = xs.size() - 1;
  while (hi_i - lo_i > 1) {
    std::size_t mid = lo_i + (hi_i - lo_i) / 2;
    if (consider(xs[mid])) {
      lo_i = mid;
    } else {
      hi_i = mid;
    }
  }
  consider(xs[lo_i]);
  consider(xs[hi_i]);
  // Stage 2: bisect over the integers between the bracketing steps.
  std::int64_t lo_r = xs[lo_i], hi_r = xs[hi_i];
  while (hi_r - lo_r > 1) {
    std::int64_t mid = lo_r + (hi_r - lo_r) / 2;
    if (consider(mid)) {
      lo_r = mid;
    } else {
      hi_r = mid;
    }
  }
  return best_r;
}

PiecewiseUniformHypothesis grenander_splice(const EmpiricalCdf& cdf,
                                            std::int64_t r) {
  if (r < cdf.lo() || r > cdf.hi()) {
    throw std::domain_error("mode outside domain");
  }
  PiecewiseUniformHypothesis h;
  h.lo = cdf.lo();
  h.hi = cdf.hi();
  auto left = convex_minorant(cdf, r);
  auto right = r < cdf.hi() ? concave_majorant(cdf, r)
                            : std::vector<HullVertex>{};
  auto emit = [&h](const std::vector<HullVertex>& hull) {
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
      PiecewiseUniformHypothesis::Piece piece;
      piece.a = hull[i].x + 1;
      piece.b = hull[i + 1].x;
      piece.mass = hull[i + 1].y - hull[i].y;
      if (piece.mass < 0.0) piece.mass = 0.0;
      h.pieces.push_back(piece);
    }
  };
  emit(left);
  emit(right);
  // Guard against float drift in the hull heights.
  double total = 0.0;
  for (const auto& piece : h.pieces) total += piece.mass;
  if (std::fabs(total - 1.0) > 1e-9) {
    throw std::runtime_error("splice mass drifted from 1");
  }
  for (auto& piece : h.pieces) piece.mass /= total;
  h.validate();
  return h;
}

std::size_t birge_run_size(std::int64_t width, double eps,
                           const LearnConfig& config) {
  if (!(eps > 0 && eps < 1)) throw std::domain_error("eps in (0,1)");
  double w = static_cast<double>(width < 0 ? 0 : width);
  return static_cast<std::size_t>(
      std::ceil(config.c_b * std::log(w + 2.0) / (eps * eps * eps)));
}

namespace {

std::size_t amplification_runs(double delta) {
  if (!(delta > 0 && delta < 1)) throw std::domain_error("delta in (0,1)");
  return std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(std::log2(3.0 / delta))));
}

PiecewiseUniformHypothesis fit_one(const std::vector<std::int64_t>& counts,
                                   std::int64_t lo, std::int64_t hi,
                                   double eps) {
  EmpiricalCdf cdf = EmpiricalCdf::from_histogram(counts, lo, hi);
  std::int64_t r = locate_mode(cdf, eps);
  return grenander_splice(cdf, r);
}

PiecewiseUniformHypothesis birge_core(SampleSource& source, std::int64_t lo,
                                      std::int64_t hi, double eps,
                                      double delta, const LearnConfig& config,
                                      std::size_t available) {
  std::size_t runs = amplification_runs(delta);
  std::size_t m_run = birge_run_size(hi - lo, eps, config);
  std::size_t fit = std::min(runs, available / std::max<std::size_t>(
                                                   1, m_run));
  std::size_t width = static_cast<std::size_t>(hi - lo + 1);
  constexpr std::uint64_t kNoCap = ~std::uint64_t{0};
  if (fit <= 1) {
    // Not enough samples to amplify: one fit on everything available.
    std::vector<std::int64_t> counts(width, 0);
    source.fill_histogram(counts, lo, hi, available, kNoCap);
    return fit_one(counts, lo, hi, eps);
  }
  std::vector<Hypothesis> candidates;
  candidates.reserve(fit);
  for (std::size_t run = 0; run < fit; ++run) {
    std::vector<std::int64_t> counts(width, 0);
    source.fill_histogram(counts, lo, hi, m_run, kNoCap);
    candidates.push_back(Hypothesis(fit_one(counts, lo, hi, eps)));
  }
  std::size_t remaining = available - fit * m_run;
  TournamentResult tour =
      tournament_select(source, candidates, eps, delta / 2.0, remaining);
  std::size_t pick;
  if (tour.winner) {
    pick = *tour.winner;
  } else {
    // No undefeated candidate: fall back to the fewest losses.
    pick = 0;
    for (std::size_t i = 1; i < tour.losses.size(); ++i) {
      if (tour.losses[i] < tour.losses[pick]) pick = i;
    }
  }
  return std::get<PiecewiseUniformHypothesis>(candidates[pick].value());
}

}  // namespace

std::size_t birge_total_size(std::int64_t width, double eps, double delta,
                             const LearnConfig& config) {
  std::size_t runs = amplification_runs(delta);
  std::size_t m_run = birge_run_size(width, eps, config);
  if (runs == 1) return m_run;
  std::size_t pairs = runs * (runs - 1) / 2;
  std::size_t m_pair = competition_sample_count(
      eps, (delta / 2.0) / (2.0 * static_cast<double>(runs)));
  return runs * m_run + pairs * m_pair;
}

PiecewiseUniformHypothesis birge_learn(const SampleBatch& samples,
                                       std::int64_t lo, std::int64_t hi,
                                       double eps, double delta,
                                       const LearnConfig& config) {
  if (samples.values.empty()) throw std::domain_error("empty sample");
  if (hi < lo) throw std::domain_error("empty domain");
  for (std::int64_t v : samples.values) {
    if (v < lo || v > hi) throw std::domain_error("sample outside domain");
  }
  RecordedSource source(samples.values);
  return birge_core(source, lo, hi, eps, delta, config,
                    samples.values.size());
}

PiecewiseUniformHypothesis birge_learn_stream(SampleSource& source,
                                              std::int64_t lo,
                                              std::int64_t hi, double eps,
                                              double delta,
                                              const LearnConfig& config) {
  if (hi < lo) throw std::domain_error("empty domain");
  return birge_core(source, lo, hi, eps, delta, config,
                    birge_total_size(hi - lo, eps, delta, config));
}

}  // namespace pbd
