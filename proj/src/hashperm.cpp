#include "qpc/hashperm.hpp"

#include <stdexcept>
#include <vector>

#include "qpc/random.hpp"

namespace qpc {

namespace {

using Half = std::vector<Bit>;

std::vector<std::uint64_t> pack_words(const Half& bits) {
    std::vector<std::uint64_t> words((bits.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        words[i / 64] |= static_cast<std::uint64_t>(bits[i]) << (i % 64);
    return words;
}

// Round function: keyed mix of (half, round index) squeezed to out_width
// bits. Only needs to be a fixed public function, not a PRF.
Half round_function(const Half& input, unsigned round, std::uint64_t key,
                    std::size_t out_width) {
    std::uint64_t h = mix64(key ^ 0x8d1c9f6a2be47350ULL);
    h = mix64(h ^ round);
    h = mix64(h ^ (static_cast<std::uint64_t>(input.size()) << 32 |
                   static_cast<std::uint64_t>(out_width)));
    const auto words = pack_words(input);
    for (std::size_t i = 0; i < words.size(); ++i)
        h = mix64(h ^ words[i] ^ (i * 0x9e3779b97f4a7c15ULL));

    Half out(out_width, 0);
    std::uint64_t block = 0;
    for (std::size_t j = 0; j < out_width; ++j) {
        if (j % 64 == 0)
            block = mix64(h + j / 64 + 1);
        out[j] = static_cast<Bit>((block >> (j % 64)) & 1);
    }
    return out;
}

void xor_into(Half& dst, const Half& src) {
    for (std::size_t i = 0; i < dst.size(); ++i)
        dst[i] ^= src[i];
}

std::pair<Half, Half> split(const BitString& x) {
    const std::size_t n = x.size();
    const std::size_t left = (n + 1) / 2;
    Half l(left), r(n - left);
    for (std::size_t i = 0; i < left; ++i)
        l[i] = x.bit(i);
    for (std::size_t i = left; i < n; ++i)
        r[i - left] = x.bit(i);
    return {std::move(l), std::move(r)};
}

BitString join(const Half& l, const Half& r) {
    std::vector<Bit> bits;
    bits.reserve(l.size() + r.size());
    bits.insert(bits.end(), l.begin(), l.end());
    bits.insert(bits.end(), r.begin(), r.end());
    return BitString(std::move(bits));
}

void check_params(const BitString& x, const HashParams& params) {
    if (x.empty())
        throw std::invalid_argument("hash: empty input");
    if (params.mode == HashMode::Feistel && params.rounds < 4)
        throw std::invalid_argument("hash: Feistel needs at least 4 rounds");
}

} // namespace

std::uint64_t HashParams::digest() const {
    std::uint64_t h = mix64(static_cast<std::uint64_t>(mode) ^
                            0x5a3cf1b82d96e407ULL);
    h = mix64(h ^ rounds);
    h = mix64(h ^ key);
    return h;
}

BitString hash(const BitString& x, const HashParams& params) {
    check_params(x, params);
    if (params.mode == HashMode::Identity)
        return x;

    auto [l, r] = split(x);
    for (unsigned round = 0; round < params.rounds; ++round) {
        // (L, R) -> (R, L ^ F(R)); half widths swap when n is odd.
        Half f = round_function(r, round, params.key, l.size());
        xor_into(l, f);
        std::swap(l, r);
    }
    return join(l, r);
}

BitString inverse(const BitString& y, const HashParams& params) {
    check_params(y, params);
    if (params.mode == HashMode::Identity)
        return y;

    // Reconstruct the half-width schedule to split the final state.
    const std::size_t n = y.size();
    std::size_t left = (n + 1) / 2;
    std::size_t right = n - left;
    for (unsigned round = 0; round < params.rounds; ++round)
        std::swap(left, right);

    Half l(left), r(right);
    for (std::size_t i = 0; i < left; ++i)
        l[i] = y.bit(i);
    for (std::size_t i = left; i < n; ++i)
        r[i - left] = y.bit(i);

    for (unsigned round = params.rounds; round-- > 0;) {
        // Undo (L, R) -> (R, L ^ F(R)): before the round, L = R' ^ F(L'),
        // R = L'.
        std::swap(l, r);
        Half f = round_function(r, round, params.key, l.size());
        xor_into(l, f);
    }
    return join(l, r);
}

} // namespace qpc
