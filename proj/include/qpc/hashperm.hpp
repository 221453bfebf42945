#pragma once

#include <cstdint>

#include "qpc/bitstring.hpp"

namespace qpc {

enum class HashMode : std::uint8_t { Identity = 0, Feistel = 1 };

/// Protocol-level default; both sides may override it together via the CLI.
inline constexpr std::uint64_t kDefaultHashKey = 0x715ea2d9c3b4f801ULL;

/// Public parameters of the shared bijection H on n-bit strings. A keyed
/// Feistel network over the two halves of the string gives a permutation at
/// any length, including odd n (unbalanced split). No cryptographic strength
/// is claimed; H only has to be 1-to-1 and mixing.
struct HashParams {
    HashMode mode = HashMode::Feistel;
    unsigned rounds = 8; // Feistel only, >= 4
    std::uint64_t key = kDefaultHashKey;

    /// 8-byte digest exchanged in the session handshake so both parties can
    /// verify they use identical parameters.
    std::uint64_t digest() const;

    friend bool operator==(const HashParams&, const HashParams&) = default;
};

/// Applies H. Output length equals input length; the map is a bijection on
/// {0,1}^n for fixed (params, n). Rejects empty input.
BitString hash(const BitString& x, const HashParams& params);

/// Inverse permutation: hash(inverse(y)) = y and inverse(hash(x)) = x.
BitString inverse(const BitString& y, const HashParams& params);

} // namespace qpc
