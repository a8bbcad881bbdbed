#ifndef PBD_SELECTION_HPP
#define PBD_SELECTION_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "pbd/hypothesis.hpp"
#include "pbd/oracle.hpp"
#include "pbd/types.hpp"

namespace pbd {

// Competition between two hypotheses over the set W1 = {w : H1(w) > H2(w)}.
// Declares a draw immediately when d_TV(H1,H2) = p1-q1 <= 5 eps; otherwise
// draws m = ceil(2 ln(2/delta) / eps^2) samples and applies the tau
// thresholds.  The two win conditions are evaluated symmetrically, so the
// outcome names the same distribution regardless of argument order; a draw
// returns the hypothesis with the smaller canonical key.
struct CompetitionOutcome {
  Hypothesis winner;
  CompetitionRecord record;
};

CompetitionOutcome choose_hypothesis(
    SampleSource& oracle, const Hypothesis& h1, const Hypothesis& h2,
    double eps, double delta,
    std::size_t max_m = std::numeric_limits<std::size_t>::max());

// Sample count used by the competition at (eps, delta).
std::size_t competition_sample_count(double eps, double delta);

// All-pairs tournament: runs the competition for every pair at
// confidence delta/(2N) and returns a candidate that never lost, or
// nullopt when every candidate lost at least once.
struct TournamentResult {
  std::optional<std::size_t> winner;
  // losses[i] = number of competitions candidate i lost
  std::vector<std::size_t> losses;
  std::vector<CompetitionRecord> records;  // row-major over pairs (i<j)
};

TournamentResult tournament_select(
    SampleSource& oracle, const std::vector<Hypothesis>& candidates,
    double eps, double delta,
    std::size_t max_total_samples = std::numeric_limits<std::size_t>::max());

}  // namespace pbd

#endif  // PBD_SELECTION_HPP
