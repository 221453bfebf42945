#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qpc/quantum.hpp"

namespace qpc {

enum class Tag : std::uint8_t {
    Qubit = 0x01,
    AnnounceReceiver = 0x02,
    AnnounceSender = 0x03,
    Abort = 0x04,
    HashParamsDigest = 0x05,
    Result = 0x06,
};

const char* tag_name(Tag t);

class InFlightQubit;

namespace detail {
/// Transport/transcript privilege: the only way to read the amplitudes of a
/// qubit in transit. Party-facing code must go through measure().
QubitState in_flight_state(const InFlightQubit& q);
} // namespace detail

/// A qubit on the quantum lane. The receiving party can only measure it;
/// there is no public amplitude accessor.
class InFlightQubit {
  public:
    explicit InFlightQubit(const QubitState& state) : state_(state) {}

    Bit measure(Basis basis, RandomSource& rng) const {
        return qpc::measure(state_, basis, rng);
    }
    Bit helstrom_guess(RandomSource& rng) const {
        return qpc::helstrom_guess(state_, rng);
    }

    friend bool operator==(const InFlightQubit&,
                           const InFlightQubit&) = default;

  private:
    friend QubitState detail::in_flight_state(const InFlightQubit&);
    QubitState state_;
};

struct Handshake {
    std::uint64_t params_digest = 0;
    std::uint32_t n = 0;
    friend bool operator==(const Handshake&, const Handshake&) = default;
};

enum class Verdict : std::uint8_t { Equal = 0, NotEqual = 1 };

struct ResultInfo {
    Verdict verdict = Verdict::Equal;
    friend bool operator==(const ResultInfo&, const ResultInfo&) = default;
};

/// One unit on either lane. Qubit messages carry the opaque in-flight state;
/// everything else is classical.
struct Message {
    Tag tag;
    std::uint32_t round; // 0 for the handshake
    std::variant<std::monostate, Bit, InFlightQubit, Handshake, ResultInfo>
        payload;

    static Message qubit(std::uint32_t round, const QubitState& state) {
        return {Tag::Qubit, round, InFlightQubit(state)};
    }
    static Message announce_receiver(std::uint32_t round, Bit gamma) {
        return {Tag::AnnounceReceiver, round, gamma};
    }
    static Message announce_sender(std::uint32_t round, Bit gamma) {
        return {Tag::AnnounceSender, round, gamma};
    }
    static Message abort_marker(std::uint32_t round) {
        return {Tag::Abort, round, std::monostate{}};
    }
    static Message handshake(std::uint64_t digest, std::uint32_t n) {
        return {Tag::HashParamsDigest, 0, Handshake{digest, n}};
    }
    static Message result(std::uint32_t round, Verdict v) {
        return {Tag::Result, round, ResultInfo{v}};
    }

    Bit announced_bit() const { return std::get<Bit>(payload); }
    const InFlightQubit& in_flight() const {
        return std::get<InFlightQubit>(payload);
    }
    const Handshake& handshake_info() const {
        return std::get<Handshake>(payload);
    }
    const ResultInfo& result_info() const {
        return std::get<ResultInfo>(payload);
    }

    friend bool operator==(const Message&, const Message&) = default;
};

/// Protocol verdict as seen by one (or, in-process, both) parties.
struct SessionOutcome {
    Verdict verdict = Verdict::Equal;
    std::optional<std::uint32_t> abort_round; // present iff NotEqual
    std::uint32_t rounds_executed = 0;
    std::vector<Message> transcript;
};

/// Line format `round,tag,payload`; qubit amplitudes with 17 significant
/// digits.
std::string transcript_line(const Message& m);
std::string transcript_text(const std::vector<Message>& transcript);

} // namespace qpc
