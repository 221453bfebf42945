#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "helpers.hpp"
#include "qpc/analysis.hpp"
#include "qpc/errors.hpp"
#include "qpc/protocol.hpp"

using namespace qpc;
using qpc::test::for_each_branch;
using qpc::test::within_3sigma;

namespace {

const HashParams kIdentity{HashMode::Identity, 8, 0};
const HashParams kFeistel{};

BitString bits_of(std::uint64_t x, std::size_t n) {
    BitString b = BitString::zeros(n);
    for (std::size_t i = 0; i < n; ++i)
        b.set(i, static_cast<Bit>((x >> i) & 1));
    return b;
}

// Transcript layout: handshakes, then per round Qubit / AnnounceReceiver /
// AnnounceSender (+ Abort closing the final round on NotEqual), then the
// two Results. Also checks abort minimality: nothing beyond the last round.
void check_transcript_shape(const SessionOutcome& outcome) {
    const auto& t = outcome.transcript;
    REQUIRE(t.size() >= 4);
    CHECK(t[0].tag == Tag::HashParamsDigest);
    CHECK(t[1].tag == Tag::HashParamsDigest);

    std::size_t idx = 2;
    for (std::uint32_t i = 1; i <= outcome.rounds_executed; ++i) {
        REQUIRE(idx + 2 < t.size());
        CHECK(t[idx].tag == Tag::Qubit);
        CHECK(t[idx].round == i);
        CHECK(t[idx + 1].tag == Tag::AnnounceReceiver);
        CHECK(t[idx + 1].round == i);
        CHECK(t[idx + 1].announced_bit() <= 1);
        CHECK(t[idx + 2].tag == Tag::AnnounceSender);
        CHECK(t[idx + 2].round == i);
        CHECK(t[idx + 2].announced_bit() <= 1);
        const bool final_abort = outcome.verdict == Verdict::NotEqual &&
                                 i == outcome.rounds_executed;
        // Every surviving round's announcements agree; only an aborting
        // final round differs.
        CHECK((t[idx + 1].announced_bit() == t[idx + 2].announced_bit()) !=
              final_abort);
        idx += 3;
        if (outcome.verdict == Verdict::NotEqual &&
            i == outcome.rounds_executed) {
            REQUIRE(idx < t.size());
            CHECK(t[idx].tag == Tag::Abort);
            CHECK(t[idx].round == i);
            ++idx;
        }
    }
    REQUIRE(idx + 2 == t.size());
    CHECK(t[idx].tag == Tag::Result);
    CHECK(t[idx + 1].tag == Tag::Result);

    for (const Message& m : t)
        CHECK(m.round <= outcome.rounds_executed);

    if (outcome.verdict == Verdict::NotEqual) {
        REQUIRE(outcome.abort_round.has_value());
        CHECK(*outcome.abort_round == outcome.rounds_executed);
        // The final round's announcements must actually differ.
        const Message& recv_ann = t[idx - 3];
        const Message& send_ann = t[idx - 2];
        CHECK(recv_ann.announced_bit() != send_ann.announced_bit());
    } else {
        CHECK_FALSE(outcome.abort_round.has_value());
    }
}

} // namespace

TEST_CASE("equal inputs always compare Equal") {
    SeededRng sampler(21);
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const std::size_t n = 1 + seed % 12;
        const BitString a = BitString::random(n, sampler);
        const SessionOutcome outcome = run_session(
            a, a, Strategy::Honest, Strategy::Honest, kFeistel, seed);
        CHECK(outcome.verdict == Verdict::Equal);
        CHECK(outcome.rounds_executed == n);
        check_transcript_shape(outcome);
    }
}

TEST_CASE("single cross-basis round aborts half the time") {
    constexpr std::uint64_t kTrials = 100000;
    const BitString a = BitString::from_string("0");
    const BitString b = BitString::from_string("1");
    std::uint64_t equal = 0;
    for (std::uint64_t t = 0; t < kTrials; ++t)
        equal += run_session(a, b, Strategy::Honest, Strategy::Honest,
                             kIdentity, t)
                     .verdict == Verdict::Equal;
    CHECK(within_3sigma(static_cast<double>(equal) / kTrials, 0.5, kTrials));
}

TEST_CASE("wrong-Equal frequency at n=8 matches the closed form") {
    constexpr std::uint64_t kTrials = 20000;
    const analysis::Estimate est =
        analysis::monte_carlo_pinc(8, kTrials, 1234, kFeistel);
    CHECK(std::abs(est.mean - analysis::p_inc(8)) <= 3.0 * est.std_error);
}

TEST_CASE("unequal-input transcripts are well-formed") {
    SeededRng sampler(22);
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const std::size_t n = 2 + seed % 10;
        const BitString a = BitString::random(n, sampler);
        BitString b = BitString::random(n, sampler);
        while (b == a)
            b = BitString::random(n, sampler);
        const SessionOutcome outcome = run_session(
            a, b, Strategy::Honest, Strategy::Honest, kFeistel, seed);
        check_transcript_shape(outcome);
    }
}

TEST_CASE("transcript lines carry round, tag, and payload") {
    CHECK(transcript_line(Message::announce_receiver(3, 1)) ==
          "3,AnnounceReceiver,1");
    CHECK(transcript_line(Message::abort_marker(4)) == "4,Abort,");
    CHECK(transcript_line(Message::result(8, Verdict::Equal)) ==
          "8,Result,Equal");
    CHECK(transcript_line(Message::handshake(0x1a2b3c4d5e6f7081ULL, 8)) ==
          "0,HashParamsDigest,1a2b3c4d5e6f7081:8");
    // Qubit amplitudes are printed with 17 significant digits so the state
    // is recoverable bit for bit.
    CHECK(transcript_line(Message::qubit(2, prepare(1, kBasisX))) ==
          "2,Qubit,0.70710678118654746 -0.70710678118654746");

    // Announcements never carry anything but the announced bit; bases have
    // no representation in the message schema at all.
    using Payload = decltype(Message::payload);
    static_assert(!std::is_constructible_v<Payload, Basis>);
}

TEST_CASE("transcripts are byte-identical for identical configuration") {
    const BitString a = BitString::from_string("1100101");
    const BitString b = BitString::from_string("1100111");
    const SessionOutcome first =
        run_session(a, b, Strategy::Honest, Strategy::Honest, kFeistel, 77);
    const SessionOutcome second =
        run_session(a, b, Strategy::Honest, Strategy::Honest, kFeistel, 77);
    CHECK(transcript_text(first.transcript) ==
          transcript_text(second.transcript));

    const SessionOutcome reseeded =
        run_session(a, b, Strategy::Honest, Strategy::Honest, kFeistel, 78);
    CHECK(transcript_text(first.transcript) !=
          transcript_text(reseeded.transcript));
}

TEST_CASE("a cheating sender keeps its sending rounds alive") {
    // n=1 means Alice only ever sends; cheating Alice copies Bob's
    // announcement, so the session can never abort.
    for (std::uint64_t seed = 0; seed < 500; ++seed) {
        const SessionOutcome outcome = run_session(
            bits_of(seed % 2, 1), bits_of((seed / 2) % 2, 1),
            Strategy::CheatOptimal, Strategy::Honest, kIdentity, seed);
        CHECK(outcome.verdict == Verdict::Equal);
    }
}

TEST_CASE("validation rejects malformed sessions") {
    const BitString a = BitString::from_string("101");
    CHECK_THROWS_AS(run_session(a, BitString::from_string("10"),
                                Strategy::Honest, Strategy::Honest, kFeistel,
                                1),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_session(BitString(), BitString(), Strategy::Honest,
                                Strategy::Honest, kFeistel, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(run_session(a, a, Strategy::CheatOptimal,
                                Strategy::CheatRandomGuess, kFeistel, 1),
                    std::invalid_argument);
}

TEST_CASE("out-of-order messages void the session") {
    auto [alice_end, bob_end] = channel_pair_inprocess();
    SeededRng rng(6);
    PartySession alice(
        PartyConfig{Role::Alice, BitString::from_string("1010"),
                    Strategy::Honest, kFeistel},
        *alice_end, rng);
    alice.start();
    // Expecting the peer handshake, not a round-3 announcement.
    CHECK_THROWS_AS(alice.on_message(Message::announce_receiver(3, 1)),
                    ProtocolViolation);
}

TEST_CASE("mismatched hash parameters refuse the session") {
    const BitString a = BitString::from_string("1010");
    PartyConfig alice{Role::Alice, a, Strategy::Honest, kFeistel};
    PartyConfig bob{Role::Bob, a, Strategy::Honest,
                    HashParams{HashMode::Feistel, 8, 0xbadULL}};
    CHECK_THROWS_AS(run_session(alice, bob, 5), HandshakeError);
}

TEST_CASE("exhaustive branches: equal inputs are Equal with probability 1") {
    for (std::size_t n = 1; n <= 3; ++n) {
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            const BitString a = bits_of(x, n);
            Rational total(0, 1);
            std::uint64_t branches = 0;
            for_each_branch(
                [&](RandomSource& rng) {
                    return run_session(
                        PartyConfig{Role::Alice, a, Strategy::Honest,
                                    kIdentity},
                        PartyConfig{Role::Bob, a, Strategy::Honest,
                                    kIdentity},
                        rng, rng);
                },
                [&](SessionOutcome outcome, Rational weight) {
                    CHECK(outcome.verdict == Verdict::Equal);
                    total = total + weight;
                    ++branches;
                });
            CHECK(total == Rational(1, 1));
            // With matching bases every measurement is deterministic, so
            // the only branch points are the n gamma draws.
            CHECK(branches == (std::uint64_t{1} << n));
        }
    }
}

TEST_CASE("exhaustive branches: wrong-Equal mass equals the closed form") {
    for (std::size_t n = 1; n <= 3; ++n) {
        Rational total(0, 1);
        std::uint64_t pairs = 0;
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); ++y) {
                if (x == y)
                    continue;
                ++pairs;
                const BitString a = bits_of(x, n);
                const BitString b = bits_of(y, n);
                for_each_branch(
                    [&](RandomSource& rng) {
                        return run_session(
                            PartyConfig{Role::Alice, a, Strategy::Honest,
                                        kIdentity},
                            PartyConfig{Role::Bob, b, Strategy::Honest,
                                        kIdentity},
                            rng, rng);
                    },
                    [&](SessionOutcome outcome, Rational weight) {
                        if (outcome.verdict == Verdict::Equal)
                            total = total + weight;
                    });
            }
        }
        // Average over uniformly drawn unequal (identity-hashed) pairs.
        CHECK(total / Rational(pairs, 1) == analysis::p_inc_exact(n));
    }
}

TEST_CASE("verify_rerun keeps equal inputs Equal") {
    const BitString a = BitString::from_string("110011");
    for (unsigned reruns : {0u, 1u, 3u}) {
        const RerunReport report = verify_rerun(a, a, reruns, kFeistel, 9);
        CHECK(report.outcome.verdict == Verdict::Equal);
        CHECK(report.runs_executed == reruns + 1);
    }
}

TEST_CASE("verify_rerun with reruns=0 is a single run") {
    const BitString a = BitString::from_string("0110");
    const BitString b = BitString::from_string("0111");
    const RerunReport report = verify_rerun(a, b, 0, kFeistel, 3);
    CHECK(report.runs_executed == 1);
    CHECK(report.masks.size() == 1);
    CHECK(report.masks[0] == BitString::zeros(4));
    check_transcript_shape(report.outcome);
}

TEST_CASE("one verification rerun cuts the wrong-Equal rate") {
    constexpr std::uint64_t kTrials = 30000;
    std::uint64_t wrong_single = 0;
    std::uint64_t wrong_rerun = 0;
    SeededRng sampler(31);
    for (std::uint64_t t = 0; t < kTrials; ++t) {
        const BitString a = BitString::random(4, sampler);
        BitString b = BitString::random(4, sampler);
        while (b == a)
            b = BitString::random(4, sampler);
        wrong_single += verify_rerun(a, b, 0, kFeistel, mix64(t))
                            .outcome.verdict == Verdict::Equal;
        wrong_rerun += verify_rerun(a, b, 1, kFeistel, mix64(t) ^ 0x5555)
                           .outcome.verdict == Verdict::Equal;
    }
    const double f0 = static_cast<double>(wrong_single) / kTrials;
    const double f1 = static_cast<double>(wrong_rerun) / kTrials;
    const double sigma_diff =
        std::sqrt(f0 * (1 - f0) / kTrials + f1 * (1 - f1) / kTrials);
    CHECK(f1 < f0 - 3.0 * sigma_diff);
}
