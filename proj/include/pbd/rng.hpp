#ifndef PBD_RNG_HPP
#define PBD_RNG_HPP

#include <cstdint>
#include <vector>

namespace pbd {

// SplitMix64: a splittable 64-bit generator.  Every API that produces
// randomness takes an explicit seed; child streams are derived with
// split() so that concurrent stages never share state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_unit() { return (next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) by rejection on the top range.
  std::uint64_t next_below(std::uint64_t bound) {
    std::uint64_t threshold = (0ULL - bound) % bound;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  // Deterministically derive an independent child stream.
  SplitMix64 split(std::uint64_t stream_id) {
    std::uint64_t s = next_u64();
    return SplitMix64(s ^ (0x632be59bd9b4e019ULL * (stream_id + 1)));
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

// Derive a child seed from a parent seed and a stream tag without
// consuming parent state.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (tag + 1)));
  g.next_u64();
  return g.next_u64();
}

// Walker alias table for O(1) draws from a finite pmf.  Slots carry the
// keep-probability as a 2^64-scaled integer cutoff so the hot path is a
// single integer compare (no float conversion).
class AliasTable {
 public:
  AliasTable() = default;
  explicit AliasTable(const std::vector<double>& weights);

  // Index in [0, size) distributed according to the table weights.  One
  // 64-bit draw supplies both the slot (high part of r * size) and the
  // within-slot coordinate (low part), which is uniform given the slot.
  std::size_t draw(SplitMix64& rng) const {
    unsigned __int128 wide =
        static_cast<unsigned __int128>(rng.next_u64()) * slots_.size();
    std::size_t i = static_cast<std::size_t>(wide >> 64);
    const Slot& slot = slots_[i];
    return static_cast<std::uint64_t>(wide) < slot.cutoff
               ? i
               : static_cast<std::size_t>(slot.alias);
  }

  std::size_t size() const { return slots_.size(); }

 private:
  struct Slot {
    std::uint64_t cutoff = ~std::uint64_t{0};
    std::uint32_t alias = 0;
    std::uint32_t pad = 0;
  };
  std::vector<Slot> slots_;
};

inline AliasTable::AliasTable(const std::vector<double>& weights) {
  std::size_t n = weights.size();
  slots_.assign(n, Slot{});
  double total = 0.0;
  for (double w : weights) total += w;
  std::vector<double> scaled(n);
  for (std::size_t i = 0; i < n; ++i) scaled[i] = weights[i] * n / total;
  std::vector<std::size_t> small, large;
  small.reserve(n);
  large.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  auto to_cutoff = [](double p) {
    return p >= 1.0 ? ~std::uint64_t{0}
                    : static_cast<std::uint64_t>(p * 0x1.0p64);
  };
  while (!small.empty() && !large.empty()) {
    std::size_t s = small.back();
    small.pop_back();
    std::size_t l = large.back();
    slots_[s].cutoff = to_cutoff(scaled[s]);
    slots_[s].alias = static_cast<std::uint32_t>(l);
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // leftovers keep their own slot with certainty
}

}  // namespace pbd

#endif  // PBD_RNG_HPP
