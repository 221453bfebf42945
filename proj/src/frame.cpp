#include "qpc/frame.hpp"

#include <bit>
#include <cstring>

#include "qpc/errors.hpp"

namespace qpc {

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8)
        out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int shift = 56; shift >= 0; shift -= 8)
        out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_f64(std::vector<std::uint8_t>& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    put_u64(out, bits);
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) << 24 |
           static_cast<std::uint32_t>(p[1]) << 16 |
           static_cast<std::uint32_t>(p[2]) << 8 |
           static_cast<std::uint32_t>(p[3]);
}

std::uint64_t get_u64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
        v = v << 8 | p[i];
    return v;
}

double get_f64(const std::uint8_t* p) {
    const std::uint64_t bits = get_u64(p);
    double v;
    std::memcpy(&v, &bits, sizeof v);
    return v;
}

std::size_t expected_payload_length(Tag tag) {
    switch (tag) {
    case Tag::Qubit:
        return 16;
    case Tag::AnnounceReceiver:
    case Tag::AnnounceSender:
        return 1;
    case Tag::Abort:
        return 0;
    case Tag::HashParamsDigest:
        return 12;
    case Tag::Result:
        return 1;
    }
    throw FrameError(FrameError::Kind::BadType, "unknown tag");
}

} // namespace

std::vector<std::uint8_t> encode_frame(const Message& m) {
    std::vector<std::uint8_t> payload;
    switch (m.tag) {
    case Tag::Qubit: {
        const QubitState s = detail::in_flight_state(m.in_flight());
        put_f64(payload, s.amp0());
        put_f64(payload, s.amp1());
        break;
    }
    case Tag::AnnounceReceiver:
    case Tag::AnnounceSender:
        payload.push_back(m.announced_bit());
        break;
    case Tag::Abort:
        break;
    case Tag::HashParamsDigest:
        put_u64(payload, m.handshake_info().params_digest);
        put_u32(payload, m.handshake_info().n);
        break;
    case Tag::Result:
        payload.push_back(
            static_cast<std::uint8_t>(m.result_info().verdict));
        break;
    }

    std::vector<std::uint8_t> out;
    out.reserve(kFrameHeaderSize + payload.size());
    out.push_back(kFrameVersion);
    out.push_back(static_cast<std::uint8_t>(m.tag));
    put_u32(out, m.round);
    put_u16(out, static_cast<std::uint16_t>(payload.size()));
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

std::size_t
frame_payload_length(const std::uint8_t header[kFrameHeaderSize]) {
    return static_cast<std::size_t>(header[6]) << 8 | header[7];
}

Message decode_frame(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < kFrameHeaderSize)
        throw FrameError(FrameError::Kind::Truncated, "short header");
    if (bytes[0] != kFrameVersion)
        throw FrameError(FrameError::Kind::BadVersion,
                         "version " + std::to_string(bytes[0]));
    const std::uint8_t type = bytes[1];
    if (type < 0x01 || type > 0x06)
        throw FrameError(FrameError::Kind::BadType,
                         "type " + std::to_string(type));
    const Tag tag = static_cast<Tag>(type);
    const std::uint32_t round = get_u32(&bytes[2]);
    const std::size_t length = frame_payload_length(bytes.data());
    if (bytes.size() < kFrameHeaderSize + length)
        throw FrameError(FrameError::Kind::Truncated, "short payload");
    if (bytes.size() != kFrameHeaderSize + length ||
        length != expected_payload_length(tag))
        throw FrameError(FrameError::Kind::LengthMismatch,
                         "payload length " + std::to_string(length));
    const std::uint8_t* p = bytes.data() + kFrameHeaderSize;

    switch (tag) {
    case Tag::Qubit:
        return Message::qubit(round, QubitState(get_f64(p), get_f64(p + 8)));
    case Tag::AnnounceReceiver:
    case Tag::AnnounceSender: {
        if (p[0] > 1)
            throw FrameError(FrameError::Kind::LengthMismatch,
                             "announcement bit out of range");
        Message m{tag, round, static_cast<Bit>(p[0])};
        return m;
    }
    case Tag::Abort:
        return Message::abort_marker(round);
    case Tag::HashParamsDigest:
        return Message::handshake(get_u64(p), get_u32(p + 8));
    case Tag::Result:
        if (p[0] > 1)
            throw FrameError(FrameError::Kind::LengthMismatch,
                             "verdict byte out of range");
        return Message::result(round, static_cast<Verdict>(p[0]));
    }
    throw FrameError(FrameError::Kind::BadType, "unreachable");
}

} // namespace qpc
