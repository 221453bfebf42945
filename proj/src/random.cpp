#include "qpc/random.hpp"

namespace qpc {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {
inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}
} // namespace

SeededRng::SeededRng(std::uint64_t seed) {
    // splitmix64 expansion; never yields the all-zero state.
    std::uint64_t s = seed;
    for (auto& word : state_) {
        s += 0x9e3779b97f4a7c15ULL;
        word = mix64(s);
    }
}

SeededRng SeededRng::derive(std::uint64_t seed, std::uint64_t tag,
                            std::uint64_t index) {
    std::uint64_t s = mix64(seed);
    s = mix64(s ^ tag);
    s = mix64(s ^ index);
    return SeededRng(s);
}

std::uint64_t SeededRng::next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double SeededRng::next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool SeededRng::bernoulli(double p) {
    if (p <= 0.0)
        return false;
    if (p >= 1.0)
        return true;
    return next_double() < p;
}

} // namespace qpc
