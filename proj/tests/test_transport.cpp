#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <thread>

#include "qpc/errors.hpp"
#include "qpc/frame.hpp"
#include "qpc/protocol.hpp"
#include "qpc/tcp.hpp"

using namespace qpc;

namespace {

Message random_message(SeededRng& rng) {
    switch (rng.next_u64() % 6) {
    case 0: {
        const double theta = static_cast<double>(rng.next_u64() % 100000) /
                             100000.0 * 2.0 * std::numbers::pi;
        return Message::qubit(
            static_cast<std::uint32_t>(rng.next_u64()),
            QubitState(std::cos(theta), std::sin(theta)));
    }
    case 1:
        return Message::announce_receiver(
            static_cast<std::uint32_t>(rng.next_u64()), rng.uniform_bit());
    case 2:
        return Message::announce_sender(
            static_cast<std::uint32_t>(rng.next_u64()), rng.uniform_bit());
    case 3:
        return Message::abort_marker(
            static_cast<std::uint32_t>(rng.next_u64()));
    case 4:
        return Message::handshake(rng.next_u64(),
                                  static_cast<std::uint32_t>(rng.next_u64()));
    default:
        return Message::result(static_cast<std::uint32_t>(rng.next_u64()),
                               rng.uniform_bit() ? Verdict::NotEqual
                                                 : Verdict::Equal);
    }
}

std::vector<std::pair<Tag, Bit>>
announcements(const std::vector<Message>& transcript) {
    std::vector<std::pair<Tag, Bit>> out;
    for (const Message& m : transcript)
        if (m.tag == Tag::AnnounceReceiver || m.tag == Tag::AnnounceSender)
            out.emplace_back(m.tag, m.announced_bit());
    return out;
}

} // namespace

TEST_CASE("in-process loopback delivers messages verbatim, in order") {
    auto [alice, bob] = channel_pair_inprocess();
    const Message m1 = Message::announce_receiver(3, 1);
    const Message m2 = Message::abort_marker(3);
    alice->send_classical(m1);
    alice->send_classical(m2);
    CHECK(bob->receive_message() == m1);
    CHECK(bob->receive_message() == m2);

    const QubitState state = prepare(1, kBasisX);
    bob->send_qubit(7, state);
    const Message q = alice->receive_message();
    CHECK(q.tag == Tag::Qubit);
    CHECK(q.round == 7);
    CHECK(q == Message::qubit(7, state));
}

TEST_CASE("in-process endpoints signal empty and closed states") {
    auto [alice, bob] = channel_pair_inprocess();
    CHECK_FALSE(alice->has_pending());
    CHECK_THROWS_AS(alice->receive_message(), ChannelEmpty);

    CHECK_THROWS_AS(alice->send_classical(Message::qubit(1, prepare(0, kBasisZ))),
                    ProtocolViolation);

    alice->close();
    CHECK_THROWS_AS(bob->send_classical(Message::abort_marker(1)),
                    ChannelError);
}

TEST_CASE("frame layout matches the pinned wire format") {
    const auto bytes = encode_frame(Message::announce_receiver(3, 1));
    const std::vector<std::uint8_t> expected{0x01, 0x02, 0x00, 0x00, 0x00,
                                             0x03, 0x00, 0x01, 0x01};
    CHECK(bytes == expected);
    CHECK(decode_frame(bytes) == Message::announce_receiver(3, 1));
}

TEST_CASE("qubit frames round-trip amplitudes bit-exactly") {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Message m = Message::qubit(9, QubitState(inv_sqrt2, -inv_sqrt2));
    const Message back = decode_frame(encode_frame(m));
    CHECK(back == m);
    const QubitState s = detail::in_flight_state(back.in_flight());
    CHECK(s.amp0() == inv_sqrt2);
    CHECK(s.amp1() == -inv_sqrt2);
}

TEST_CASE("codec failure modes are distinct") {
    auto good = encode_frame(Message::announce_sender(1, 0));

    auto bad_version = good;
    bad_version[0] = 0x02;
    try {
        decode_frame(bad_version);
        CHECK(false);
    } catch (const FrameError& e) {
        CHECK(e.kind() == FrameError::Kind::BadVersion);
    }

    auto bad_type = good;
    bad_type[1] = 0x07;
    try {
        decode_frame(bad_type);
        CHECK(false);
    } catch (const FrameError& e) {
        CHECK(e.kind() == FrameError::Kind::BadType);
    }

    auto truncated = good;
    truncated.resize(5);
    try {
        decode_frame(truncated);
        CHECK(false);
    } catch (const FrameError& e) {
        CHECK(e.kind() == FrameError::Kind::Truncated);
    }

    auto short_payload = good;
    short_payload.pop_back();
    try {
        decode_frame(short_payload);
        CHECK(false);
    } catch (const FrameError& e) {
        CHECK(e.kind() == FrameError::Kind::Truncated);
    }

    // Abort frame claiming a payload it should not have.
    auto wrong_length = encode_frame(Message::abort_marker(2));
    wrong_length[7] = 0x01;
    wrong_length.push_back(0x00);
    try {
        decode_frame(wrong_length);
        CHECK(false);
    } catch (const FrameError& e) {
        CHECK(e.kind() == FrameError::Kind::LengthMismatch);
    }
}

TEST_CASE("corrupt qubit frames cannot smuggle invalid states") {
    auto bytes = encode_frame(Message::qubit(1, prepare(0, kBasisZ)));
    // Overwrite amp0 with a NaN pattern; the decoded state must be refused.
    for (std::size_t i = 0; i < 8; ++i)
        bytes[kFrameHeaderSize + i] = 0xff;
    CHECK_THROWS_AS(decode_frame(bytes), std::invalid_argument);

    auto denormalized = encode_frame(Message::qubit(1, prepare(0, kBasisZ)));
    denormalized[kFrameHeaderSize] = 0x40; // amp0 = 2.0
    CHECK_THROWS_AS(decode_frame(denormalized), std::invalid_argument);
}

TEST_CASE("randomized messages survive the codec unchanged") {
    SeededRng rng(71);
    for (int t = 0; t < 10000; ++t) {
        const Message m = random_message(rng);
        const auto bytes = encode_frame(m);
        CHECK(decode_frame(bytes) == m);
        CHECK(encode_frame(decode_frame(bytes)) == bytes);
    }
}

template <typename Q>
constexpr bool exposes_amplitudes = requires(const Q& q) { q.amp0(); } ||
                                    requires(const Q& q) { q.amp1(); } ||
                                    requires(const Q& q) { q.state(); };

TEST_CASE("in-flight qubits expose no amplitude accessors") {
    static_assert(!exposes_amplitudes<InFlightQubit>);
    static_assert(exposes_amplitudes<QubitState>);
    CHECK(true);
}

TEST_CASE("TCP sessions reproduce in-process runs bit for bit") {
    const HashParams params{};
    const struct {
        const char* a;
        const char* b;
    } cases[] = {{"110011", "110011"}, {"110011", "110010"},
                 {"10101010", "01010101"}, {"1", "0"}};

    for (const auto& c : cases) {
        for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
            const BitString a = BitString::from_string(c.a);
            const BitString b = BitString::from_string(c.b);
            const SessionOutcome reference = run_session(
                a, b, Strategy::Honest, Strategy::Honest, params, seed);

            TcpListener listener(0, "127.0.0.1");
            SessionOutcome bob_outcome;
            std::thread bob_thread([&] {
                TcpChannel channel = listener.accept_one();
                SeededRng rng = SeededRng::derive(seed, kStreamBob);
                bob_outcome = run_party_session(
                    PartyConfig{Role::Bob, b, Strategy::Honest, params},
                    channel, rng);
            });
            TcpChannel channel =
                TcpChannel::connect("127.0.0.1", listener.port());
            SeededRng rng = SeededRng::derive(seed, kStreamAlice);
            const SessionOutcome alice_outcome = run_party_session(
                PartyConfig{Role::Alice, a, Strategy::Honest, params},
                channel, rng);
            bob_thread.join();

            const SessionOutcome& bob_view = bob_outcome;
            for (const SessionOutcome* tcp_outcome :
                 {&alice_outcome, &bob_view}) {
                CHECK(tcp_outcome->verdict == reference.verdict);
                CHECK(tcp_outcome->abort_round == reference.abort_round);
                CHECK(announcements(tcp_outcome->transcript) ==
                      announcements(reference.transcript));
                CHECK(transcript_text(tcp_outcome->transcript) ==
                      transcript_text(reference.transcript));
            }
        }
    }
}

TEST_CASE("handshake digest mismatch refuses the TCP session") {
    TcpListener listener(0, "127.0.0.1");
    const BitString secret = BitString::from_string("1010");

    bool bob_refused = false;
    std::thread bob_thread([&] {
        TcpChannel channel = listener.accept_one();
        SeededRng rng = SeededRng::derive(1, kStreamBob);
        try {
            run_party_session(
                PartyConfig{Role::Bob, secret, Strategy::Honest,
                            HashParams{HashMode::Feistel, 8, 0xfeedULL}},
                channel, rng);
        } catch (const HandshakeError&) {
            bob_refused = true;
        }
    });

    TcpChannel channel = TcpChannel::connect("127.0.0.1", listener.port());
    SeededRng rng = SeededRng::derive(1, kStreamAlice);
    bool alice_failed = false;
    try {
        run_party_session(
            PartyConfig{Role::Alice, secret, Strategy::Honest, HashParams{}},
            channel, rng);
    } catch (const std::exception&) {
        alice_failed = true; // peer vanished mid-handshake
    }
    bob_thread.join();
    CHECK(bob_refused);
    CHECK(alice_failed);
}

TEST_CASE("mid-session disconnect voids the session without a verdict") {
    TcpListener listener(0, "127.0.0.1");
    std::thread quitter([&] {
        TcpChannel channel = TcpChannel::connect("127.0.0.1", listener.port());
        channel.send_classical(
            Message::handshake(HashParams{}.digest(), 4));
        channel.close(); // walk away before round 1
    });

    TcpChannel channel = listener.accept_one();
    SeededRng rng = SeededRng::derive(1, kStreamBob);
    CHECK_THROWS_AS(
        run_party_session(PartyConfig{Role::Bob,
                                      BitString::from_string("1010"),
                                      Strategy::Honest, HashParams{}},
                          channel, rng),
        ChannelError);
    quitter.join();
}

TEST_CASE("receive times out when the peer stays silent") {
    TcpListener listener(0, "127.0.0.1");
    std::thread silent([&] {
        TcpChannel channel = TcpChannel::connect("127.0.0.1", listener.port());
        std::this_thread::sleep_for(std::chrono::milliseconds(1500));
        channel.close();
    });
    TcpChannel channel = listener.accept_one(std::chrono::seconds(1));
    CHECK_THROWS_AS((void)channel.receive_message(), ChannelError);
    silent.join();
}
