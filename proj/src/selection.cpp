#include "pbd/selection.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace pbd {

std::size_t competition_sample_count(double eps, double delta) {
  if (!(eps > 0 && eps < 1) || !(delta > 0 && delta < 1)) {
    throw std::domain_error("competition needs eps, delta in (0,1)");
  }
  return static_cast<std::size_t>(
      std::ceil(2.0 * std::log(2.0 / delta) / (eps * eps)));
}

CompetitionOutcome choose_hypothesis(SampleSource& oracle,
                                     const Hypothesis& h1,
                                     const Hypothesis& h2, double eps,
                                     double delta, std::size_t max_m) {
  std::vector<std::int64_t> support = union_support(h1, h2);
  std::vector<std::int64_t> w1, w2;
  double p1 = 0.0, q1 = 0.0;  // H1 and H2 mass on W1
  double p2 = 0.0, q2 = 0.0;  // H2 and H1 mass on W2
  for (std::int64_t w : support) {
    double a = h1.pmf(w);
    double b = h2.pmf(w);
    if (a > b) {
      w1.push_back(w);
      p1 += a;
      q1 += b;
    } else if (b > a) {
      w2.push_back(w);
      p2 += b;
      q2 += a;
    }
  }

  CompetitionRecord record;
  record.w1 = w1;
  record.p1 = p1;
  record.q1 = q1;

  auto draw_result = [&]() {
    record.verdict = Verdict::kDraw;
    const Hypothesis& pick =
        h1.canonical_key() <= h2.canonical_key() ? h1 : h2;
    return CompetitionOutcome{pick, record};
  };

  if (p1 - q1 <= 5.0 * eps) return draw_result();

  std::size_t m = std::min(competition_sample_count(eps, delta), max_m);
  record.m = m;
  if (m == 0) return draw_result();

  std::unordered_set<std::int64_t> in_w1(w1.begin(), w1.end());
  std::unordered_set<std::int64_t> in_w2(w2.begin(), w2.end());
  std::size_t c1 = 0, c2 = 0;
  for (std::size_t i = 0; i < m; ++i) {
    std::int64_t s = oracle.draw();
    if (in_w1.count(s)) {
      ++c1;
    } else if (in_w2.count(s)) {
      ++c2;
    }
  }
  double tau = static_cast<double>(c1) / static_cast<double>(m);
  double tau2 = static_cast<double>(c2) / static_cast<double>(m);
  record.tau = tau;

  bool first_good = tau > p1 - 1.5 * eps;
  bool second_good = tau2 > p2 - 1.5 * eps;
  if (first_good && !second_good) {
    record.verdict = Verdict::kFirstWins;
    return CompetitionOutcome{h1, record};
  }
  if (second_good && !first_good) {
    record.verdict = Verdict::kSecondWins;
    return CompetitionOutcome{h2, record};
  }
  return draw_result();
}

TournamentResult tournament_select(SampleSource& oracle,
                                   const std::vector<Hypothesis>& candidates,
                                   double eps, double delta,
                                   std::size_t max_total_samples) {
  std::size_t n = candidates.size();
  if (n == 0) throw std::domain_error("tournament needs a candidate");
  TournamentResult result;
  result.losses.assign(n, 0);
  if (n == 1) {
    result.winner = 0;
    return result;
  }
  double pair_delta = delta / (2.0 * static_cast<double>(n));
  std::size_t pairs = n * (n - 1) / 2;
  std::size_t m_pair = competition_sample_count(eps, pair_delta);
  std::size_t per_pair_cap = m_pair;
  if (pairs * m_pair > max_total_samples) {
    per_pair_cap = max_total_samples / pairs;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      CompetitionOutcome out = choose_hypothesis(
          oracle, candidates[i], candidates[j], eps, pair_delta,
          per_pair_cap);
      if (out.record.verdict == Verdict::kFirstWins) {
        ++result.losses[j];
      } else if (out.record.verdict == Verdict::kSecondWins) {
        ++result.losses[i];
      }
      result.records.push_back(out.record);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (result.losses[i] == 0) {
      result.winner = i;
      break;
    }
  }
  return result;
}

}  // namespace pbd
