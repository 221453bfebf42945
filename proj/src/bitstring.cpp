#include "qpc/bitstring.hpp"

#include <stdexcept>

#include "qpc/random.hpp"

namespace qpc {

namespace {
int hex_digit(char c) {
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}
} // namespace

BitString::BitString(std::vector<Bit> bits) : bits_(std::move(bits)) {
    for (Bit b : bits_)
        if (b > 1)
            throw std::invalid_argument("BitString: bit value out of {0,1}");
}

BitString BitString::zeros(std::size_t n) {
    BitString s;
    s.bits_.assign(n, 0);
    return s;
}

BitString BitString::from_string(std::string_view text) {
    if (text.empty())
        throw std::invalid_argument("BitString: empty input");
    BitString s;
    s.bits_.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("BitString: invalid character '" +
                                        std::string(1, c) + "'");
        s.bits_.push_back(static_cast<Bit>(c - '0'));
    }
    return s;
}

BitString BitString::from_hex(std::string_view hex, std::size_t n_bits) {
    if (hex.substr(0, 2) == "0x" || hex.substr(0, 2) == "0X")
        hex.remove_prefix(2);
    if (hex.empty() || n_bits == 0)
        throw std::invalid_argument("BitString: empty hex input");

    // Big-endian nibbles, then keep the low n_bits and require the rest zero.
    std::vector<Bit> nibbles;
    nibbles.reserve(hex.size() * 4);
    for (char c : hex) {
        int v = hex_digit(c);
        if (v < 0)
            throw std::invalid_argument("BitString: invalid hex digit '" +
                                        std::string(1, c) + "'");
        for (int k = 3; k >= 0; --k)
            nibbles.push_back(static_cast<Bit>((v >> k) & 1));
    }
    if (nibbles.size() < n_bits)
        nibbles.insert(nibbles.begin(), n_bits - nibbles.size(), 0);
    const std::size_t drop = nibbles.size() - n_bits;
    for (std::size_t i = 0; i < drop; ++i)
        if (nibbles[i] != 0)
            throw std::invalid_argument(
                "BitString: hex value does not fit in requested bit length");
    return BitString(
        std::vector<Bit>(nibbles.begin() + static_cast<std::ptrdiff_t>(drop),
                         nibbles.end()));
}

BitString BitString::random(std::size_t n, RandomSource& rng) {
    BitString s = zeros(n);
    for (std::size_t i = 0; i < n; ++i)
        s.bits_[i] = rng.uniform_bit();
    return s;
}

std::string BitString::to_string() const {
    std::string out;
    out.reserve(bits_.size());
    for (Bit b : bits_)
        out.push_back(static_cast<char>('0' + b));
    return out;
}

BitString BitString::operator^(const BitString& rhs) const {
    if (size() != rhs.size())
        throw std::invalid_argument("BitString: XOR length mismatch");
    BitString out = *this;
    for (std::size_t i = 0; i < size(); ++i)
        out.bits_[i] ^= rhs.bits_[i];
    return out;
}

std::size_t BitString::hamming_distance(const BitString& rhs) const {
    if (size() != rhs.size())
        throw std::invalid_argument("BitString: distance length mismatch");
    std::size_t d = 0;
    for (std::size_t i = 0; i < size(); ++i)
        d += (bits_[i] != rhs.bits_[i]);
    return d;
}

} // namespace qpc
