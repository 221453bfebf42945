#include "qpc/message.hpp"

#include <cstdio>

namespace qpc {

namespace detail {
QubitState in_flight_state(const InFlightQubit& q) { return q.state_; }
} // namespace detail

const char* tag_name(Tag t) {
    switch (t) {
    case Tag::Qubit:
        return "Qubit";
    case Tag::AnnounceReceiver:
        return "AnnounceReceiver";
    case Tag::AnnounceSender:
        return "AnnounceSender";
    case Tag::Abort:
        return "Abort";
    case Tag::HashParamsDigest:
        return "HashParamsDigest";
    case Tag::Result:
        return "Result";
    }
    return "?";
}

std::string transcript_line(const Message& m) {
    char buf[128];
    switch (m.tag) {
    case Tag::Qubit: {
        const QubitState s = detail::in_flight_state(m.in_flight());
        std::snprintf(buf, sizeof buf, "%u,%s,%.17g %.17g", m.round,
                      tag_name(m.tag), s.amp0(), s.amp1());
        break;
    }
    case Tag::AnnounceReceiver:
    case Tag::AnnounceSender:
        std::snprintf(buf, sizeof buf, "%u,%s,%u", m.round, tag_name(m.tag),
                      static_cast<unsigned>(m.announced_bit()));
        break;
    case Tag::Abort:
        std::snprintf(buf, sizeof buf, "%u,%s,", m.round, tag_name(m.tag));
        break;
    case Tag::HashParamsDigest:
        std::snprintf(buf, sizeof buf, "%u,%s,%016llx:%u", m.round,
                      tag_name(m.tag),
                      static_cast<unsigned long long>(
                          m.handshake_info().params_digest),
                      m.handshake_info().n);
        break;
    case Tag::Result:
        std::snprintf(buf, sizeof buf, "%u,%s,%s", m.round, tag_name(m.tag),
                      m.result_info().verdict == Verdict::Equal ? "Equal"
                                                                : "NotEqual");
        break;
    }
    return buf;
}

std::string transcript_text(const std::vector<Message>& transcript) {
    std::string out;
    for (const Message& m : transcript) {
        out += transcript_line(m);
        out += '\n';
    }
    return out;
}

} // namespace qpc
