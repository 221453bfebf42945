#pragma once

#include <cstdint>
#include <vector>

#include "qpc/message.hpp"

namespace qpc {

/// Wire framing, big-endian throughout:
///   version(1) type(1) round(4) length(2) payload(length)
/// Payloads: Qubit = two IEEE-754 doubles (16 bytes); announcements = one
/// byte in {0,1}; Abort = empty; HashParamsDigest = 8-byte params digest +
/// 4-byte string length; Result = one verdict byte.
inline constexpr std::uint8_t kFrameVersion = 0x01;
inline constexpr std::size_t kFrameHeaderSize = 8;

std::vector<std::uint8_t> encode_frame(const Message& m);

/// Decodes one complete frame; the buffer must contain exactly one frame.
Message decode_frame(const std::vector<std::uint8_t>& bytes);

/// Payload length promised by a frame header (for stream reads).
std::size_t frame_payload_length(const std::uint8_t header[kFrameHeaderSize]);

} // namespace qpc
