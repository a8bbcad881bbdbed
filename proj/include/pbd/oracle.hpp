#ifndef PBD_ORACLE_HPP
#define PBD_ORACLE_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "pbd/core.hpp"
#include "pbd/rng.hpp"
#include "pbd/types.hpp"

namespace pbd {

// Pull-based sample source.  Learners draw one value at a time; the
// draw counter backs the sample-complexity audits.  The block and
// histogram entry points exist so that bulk consumers stay off the
// per-draw virtual path; overrides must behave exactly like the
// defaults, draw for draw.
class SampleSource {
 public:
  virtual ~SampleSource() = default;
  virtual std::int64_t draw() = 0;
  std::uint64_t draws_used() const { return count_; }

  // Append m draws to out.
  virtual void draw_block(std::size_t m, std::vector<std::int64_t>& out) {
    for (std::size_t i = 0; i < m; ++i) out.push_back(draw());
  }

  // Draw until `accept` values land in [lo, hi], bumping counts[v - lo];
  // gives up (OracleExhausted) once max_pulls draws were consumed.
  // Returns the number of draws consumed.
  virtual std::uint64_t fill_histogram(std::vector<std::int64_t>& counts,
                                       std::int64_t lo, std::int64_t hi,
                                       std::size_t accept,
                                       std::uint64_t max_pulls) {
    std::uint64_t pulls = 0;
    std::size_t got = 0;
    while (got < accept) {
      if (pulls >= max_pulls) {
        throw OracleExhausted("rejection sampling exceeded its draw budget");
      }
      ++pulls;
      std::int64_t v = draw();
      if (v >= lo && v <= hi) {
        ++counts[static_cast<std::size_t>(v - lo)];
        ++got;
      }
    }
    return pulls;
  }

 protected:
  std::uint64_t count_ = 0;
};

// Draws from a PbdSpec via an alias table over its exact pmf.
class SpecSampleSource final : public SampleSource {
 public:
  SpecSampleSource(const PbdSpec& spec, std::uint64_t seed);
  std::int64_t draw() override {
    ++count_;
    return origin_ + static_cast<std::int64_t>(alias_.draw(rng_));
  }
  void draw_block(std::size_t m, std::vector<std::int64_t>& out) override;
  std::uint64_t fill_histogram(std::vector<std::int64_t>& counts,
                               std::int64_t lo, std::int64_t hi,
                               std::size_t accept,
                               std::uint64_t max_pulls) override;

 private:
  std::int64_t origin_;
  AliasTable alias_;
  SplitMix64 rng_;
};

// Draws scaled-integer values from a weighted-sum spec.
class WeightedSampleSource final : public SampleSource {
 public:
  WeightedSampleSource(const WeightedSumSpec& spec, std::uint64_t seed);
  std::int64_t draw() override {
    ++count_;
    return values_[alias_.draw(rng_)];
  }

 private:
  std::vector<std::int64_t> values_;
  AliasTable alias_;
  SplitMix64 rng_;
};

// Replays a fixed stream; throws OracleExhausted at the end.
class RecordedSource final : public SampleSource {
 public:
  explicit RecordedSource(std::vector<std::int64_t> values)
      : values_(std::move(values)) {}
  std::int64_t draw() override;
  std::size_t remaining() const { return values_.size() - pos_; }

 private:
  std::vector<std::int64_t> values_;
  std::size_t pos_ = 0;
};

// Rejection view: draws from the parent until a value lands in [lo, hi];
// gives up (OracleExhausted) once the parent has supplied max_pulls.
class RestrictedSource final : public SampleSource {
 public:
  RestrictedSource(SampleSource& parent, std::int64_t lo, std::int64_t hi,
                   std::uint64_t max_pulls)
      : parent_(parent), lo_(lo), hi_(hi), max_pulls_(max_pulls) {}
  std::int64_t draw() override;
  std::uint64_t fill_histogram(std::vector<std::int64_t>& counts,
                               std::int64_t lo, std::int64_t hi,
                               std::size_t accept,
                               std::uint64_t max_pulls) override;

 private:
  SampleSource& parent_;
  std::int64_t lo_;
  std::int64_t hi_;
  std::uint64_t max_pulls_;
  std::uint64_t pulls_ = 0;
};

}  // namespace pbd

#endif  // PBD_ORACLE_HPP
