#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qpc {

using Bit = std::uint8_t; // 0 or 1

class RandomSource;

/// Ordered sequence of bits. Position 0 corresponds to the leftmost
/// character of the text form; protocol round i (1-based) reads bit(i-1).
class BitString {
  public:
    BitString() = default;
    explicit BitString(std::vector<Bit> bits);

    static BitString zeros(std::size_t n);
    /// Parses a nonempty string of '0'/'1' characters.
    static BitString from_string(std::string_view text);
    /// Parses hex digits (optional 0x prefix) into exactly n_bits bits,
    /// big-endian. Rejects values that do not fit.
    static BitString from_hex(std::string_view hex, std::size_t n_bits);
    static BitString random(std::size_t n, RandomSource& rng);

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    Bit bit(std::size_t i) const { return bits_[i]; }
    void set(std::size_t i, Bit v) { bits_[i] = v; }

    std::string to_string() const;

    /// Bitwise XOR; lengths must match.
    BitString operator^(const BitString& rhs) const;
    friend bool operator==(const BitString&, const BitString&) = default;

    std::size_t hamming_distance(const BitString& rhs) const;

  private:
    std::vector<Bit> bits_;
};

} // namespace qpc
