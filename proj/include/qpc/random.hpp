#pragma once

#include <cstdint>

namespace qpc {

/// Source of uniform randomness for coin flips and measurement outcomes.
/// Virtual so tests can substitute scripted or branch-enumerating sources.
class RandomSource {
  public:
    virtual ~RandomSource() = default;

    /// Returns true with probability p. Consumes exactly one uniform draw
    /// when 0 < p < 1; degenerate probabilities consume nothing.
    virtual bool bernoulli(double p) = 0;

    std::uint8_t uniform_bit() { return bernoulli(0.5) ? 1 : 0; }
};

/// splitmix64 finalizer; also used to derive substream seeds.
std::uint64_t mix64(std::uint64_t x);

/// Deterministic seeded stream (xoshiro256**). The generator and the
/// substream derivation are fully pinned so that a fixed seed reproduces
/// the same draw sequence on any platform.
class SeededRng final : public RandomSource {
  public:
    explicit SeededRng(std::uint64_t seed);

    /// Independent substream identified by (seed, tag, index). Parties and
    /// Monte Carlo trials each get their own.
    static SeededRng derive(std::uint64_t seed, std::uint64_t tag,
                            std::uint64_t index = 0);

    bool bernoulli(double p) override;

    std::uint64_t next_u64();
    /// Uniform in [0,1), 53 bits.
    double next_double();

  private:
    std::uint64_t state_[4];
};

} // namespace qpc
