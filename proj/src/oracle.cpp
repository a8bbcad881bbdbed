#include "pbd/oracle.hpp"

#include <algorithm>

#include "pbd/weighted.hpp"

namespace pbd {

SpecSampleSource::SpecSampleSource(const PbdSpec& spec, std::uint64_t seed)
    : origin_(0), rng_(seed) {
  DensePmf pmf = pbd_pmf(spec);
  origin_ = pmf.origin;
  alias_ = AliasTable(pmf.mass);
}

void SpecSampleSource::draw_block(std::size_t m,
                                  std::vector<std::int64_t>& out) {
  out.reserve(out.size() + m);
  for (std::size_t i = 0; i < m; ++i) {
    out.push_back(origin_ + static_cast<std::int64_t>(alias_.draw(rng_)));
  }
  count_ += m;
}

std::uint64_t SpecSampleSource::fill_histogram(
    std::vector<std::int64_t>& counts, std::int64_t lo, std::int64_t hi,
    std::size_t accept, std::uint64_t max_pulls) {
  std::uint64_t pulls = 0;
  std::size_t got = 0;
  while (got < accept) {
    if (pulls >= max_pulls) {
      count_ += pulls;
      throw OracleExhausted("rejection sampling exceeded its draw budget");
    }
    ++pulls;
    std::int64_t v = origin_ + static_cast<std::int64_t>(alias_.draw(rng_));
    if (v >= lo && v <= hi) {
      ++counts[static_cast<std::size_t>(v - lo)];
      ++got;
    }
  }
  count_ += pulls;
  return pulls;
}

WeightedSampleSource::WeightedSampleSource(const WeightedSumSpec& spec,
                                           std::uint64_t seed)
    : rng_(seed) {
  SparsePmf pmf = weighted_pmf(spec);
  std::vector<double> weights;
  values_.reserve(pmf.mass.size());
  weights.reserve(pmf.mass.size());
  for (const auto& [v, p] : pmf.mass) {
    values_.push_back(v);
    weights.push_back(p);
  }
  alias_ = AliasTable(weights);
}

std::int64_t RecordedSource::draw() {
  if (pos_ >= values_.size()) {
    throw OracleExhausted("recorded sample stream exhausted");
  }
  ++count_;
  return values_[pos_++];
}

std::int64_t RestrictedSource::draw() {
  for (;;) {
    if (pulls_ >= max_pulls_) {
      throw OracleExhausted("rejection sampling exceeded its draw budget");
    }
    ++pulls_;
    std::int64_t v = parent_.draw();
    if (v >= lo_ && v <= hi_) {
      ++count_;
      return v;
    }
  }
}

std::uint64_t RestrictedSource::fill_histogram(
    std::vector<std::int64_t>& counts, std::int64_t lo, std::int64_t hi,
    std::size_t accept, std::uint64_t max_pulls) {
  std::uint64_t budget = std::min(max_pulls, max_pulls_ - pulls_);
  std::uint64_t pulls = parent_.fill_histogram(
      counts, std::max(lo, lo_), std::min(hi, hi_), accept, budget);
  pulls_ += pulls;
  count_ += accept;
  return pulls;
}

}  // namespace pbd
