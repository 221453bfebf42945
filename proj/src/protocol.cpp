#include "qpc/protocol.hpp"

#include <stdexcept>
#include <string>

#include "qpc/errors.hpp"

namespace qpc {

const char* role_name(Role r) { return r == Role::Alice ? "alice" : "bob"; }

PartySession::PartySession(const PartyConfig& cfg, Channel& channel,
                           RandomSource& rng)
    : cfg_(cfg), channel_(channel), rng_(rng),
      n_(static_cast<std::uint32_t>(cfg.secret.size())),
      hash_value_(hash(cfg.secret, cfg.params)) {
    if (n_ == 0)
        throw std::invalid_argument("session: secret must be nonempty");
}

bool PartySession::is_sender(std::uint32_t round) const {
    const bool odd = round % 2 == 1;
    return odd == (cfg_.role == Role::Alice);
}

Basis PartySession::round_basis(std::uint32_t round) const {
    return Basis(hash_value_.bit(round - 1));
}

void PartySession::expect(const Message& m, Tag tag,
                          std::uint32_t round) const {
    if (m.tag != tag || m.round != round)
        throw ProtocolViolation(
            std::string("unexpected message ") + tag_name(m.tag) + "/" +
            std::to_string(m.round) + ", expected " + tag_name(tag) + "/" +
            std::to_string(round));
}

void PartySession::send_classical(const Message& m) {
    outcome_.transcript.push_back(m);
    channel_.send_classical(m);
}

void PartySession::start() {
    if (phase_ != Phase::Created)
        throw std::logic_error("session already started");
    if (cfg_.role == Role::Alice)
        send_classical(Message::handshake(cfg_.params.digest(), n_));
    phase_ = Phase::AwaitHandshake;
}

void PartySession::begin_round(std::uint32_t round) {
    if (round > n_) {
        conclude(Verdict::Equal, n_);
        return;
    }
    round_ = round;
    if (is_sender(round)) {
        gamma_ = rng_.uniform_bit();
        const QubitState state = prepare(gamma_, round_basis(round));
        outcome_.transcript.push_back(Message::qubit(round, state));
        channel_.send_qubit(round, state);
        phase_ = Phase::AwaitReceiverAnn;
    } else {
        phase_ = Phase::AwaitQubit;
    }
}

void PartySession::conclude(Verdict verdict, std::uint32_t rounds_executed) {
    outcome_.verdict = verdict;
    outcome_.rounds_executed = rounds_executed;
    if (verdict == Verdict::NotEqual)
        outcome_.abort_round = rounds_executed;
    if (cfg_.role == Role::Alice)
        send_classical(Message::result(rounds_executed, verdict));
    phase_ = Phase::AwaitResult;
}

void PartySession::on_message(const Message& m) {
    switch (phase_) {
    case Phase::AwaitHandshake: {
        expect(m, Tag::HashParamsDigest, 0);
        outcome_.transcript.push_back(m);
        const Handshake& peer = m.handshake_info();
        if (peer.params_digest != cfg_.params.digest())
            throw HandshakeError("hash parameter digest mismatch");
        if (peer.n != n_)
            throw HandshakeError("secret length mismatch: peer has " +
                                 std::to_string(peer.n) + ", local has " +
                                 std::to_string(n_));
        if (cfg_.role == Role::Bob)
            send_classical(Message::handshake(cfg_.params.digest(), n_));
        begin_round(1);
        return;
    }
    case Phase::AwaitQubit: {
        expect(m, Tag::Qubit, round_);
        outcome_.transcript.push_back(m);
        AnnouncementContext ctx;
        ctx.position = AnnouncePosition::First;
        ctx.received_state = &m.in_flight();
        ctx.own_basis = round_basis(round_);
        my_announcement_ = choose_announcement(cfg_.strategy, ctx, rng_);
        send_classical(Message::announce_receiver(round_, my_announcement_));
        phase_ = Phase::AwaitSenderAnn;
        return;
    }
    case Phase::AwaitReceiverAnn: {
        expect(m, Tag::AnnounceReceiver, round_);
        outcome_.transcript.push_back(m);
        const Bit peer = m.announced_bit();
        AnnouncementContext ctx;
        ctx.position = AnnouncePosition::Second;
        ctx.true_gamma = gamma_;
        ctx.peer_announcement = peer;
        my_announcement_ = choose_announcement(cfg_.strategy, ctx, rng_);
        send_classical(Message::announce_sender(round_, my_announcement_));
        if (my_announcement_ != peer)
            phase_ = Phase::AwaitAbort; // the measuring party aborts
        else
            begin_round(round_ + 1);
        return;
    }
    case Phase::AwaitSenderAnn: {
        expect(m, Tag::AnnounceSender, round_);
        outcome_.transcript.push_back(m);
        if (m.announced_bit() != my_announcement_) {
            send_classical(Message::abort_marker(round_));
            conclude(Verdict::NotEqual, round_);
        } else {
            begin_round(round_ + 1);
        }
        return;
    }
    case Phase::AwaitAbort: {
        expect(m, Tag::Abort, round_);
        outcome_.transcript.push_back(m);
        conclude(Verdict::NotEqual, round_);
        return;
    }
    case Phase::AwaitResult: {
        expect(m, Tag::Result, outcome_.rounds_executed);
        outcome_.transcript.push_back(m);
        if (m.result_info().verdict != outcome_.verdict)
            throw ProtocolViolation("result verdicts disagree");
        if (cfg_.role == Role::Bob)
            send_classical(
                Message::result(outcome_.rounds_executed, outcome_.verdict));
        phase_ = Phase::Done;
        return;
    }
    case Phase::Created:
    case Phase::Done:
        break;
    }
    throw ProtocolViolation("message outside an active session");
}

const SessionOutcome& PartySession::outcome() const {
    if (!done())
        throw std::logic_error("session not finished");
    return outcome_;
}

namespace {

void validate_pair(const PartyConfig& alice, const PartyConfig& bob) {
    if (alice.role != Role::Alice || bob.role != Role::Bob)
        throw std::invalid_argument("run_session: roles misassigned");
    if (alice.secret.empty() || bob.secret.empty())
        throw std::invalid_argument("run_session: secrets must be nonempty");
    if (alice.secret.size() != bob.secret.size())
        throw std::invalid_argument("run_session: secret length mismatch");
    if (is_cheating(alice.strategy) && is_cheating(bob.strategy))
        throw std::invalid_argument(
            "run_session: at most one party may cheat");
}

} // namespace

SessionOutcome run_session(const PartyConfig& alice, const PartyConfig& bob,
                           std::uint64_t seed) {
    SeededRng alice_rng = SeededRng::derive(seed, kStreamAlice);
    SeededRng bob_rng = SeededRng::derive(seed, kStreamBob);
    return run_session(alice, bob, alice_rng, bob_rng);
}

SessionOutcome run_session(const PartyConfig& alice, const PartyConfig& bob,
                           RandomSource& alice_rng, RandomSource& bob_rng) {
    validate_pair(alice, bob);

    auto [alice_end, bob_end] = channel_pair_inprocess();
    PartySession alice_session(alice, *alice_end, alice_rng);
    PartySession bob_session(bob, *bob_end, bob_rng);

    alice_session.start();
    bob_session.start();
    while (!(alice_session.done() && bob_session.done())) {
        bool progressed = false;
        if (!alice_session.done() && alice_end->has_pending()) {
            alice_session.on_message(alice_end->receive_message());
            progressed = true;
        }
        if (!bob_session.done() && bob_end->has_pending()) {
            bob_session.on_message(bob_end->receive_message());
            progressed = true;
        }
        if (!progressed)
            throw std::logic_error("run_session: driver stalled");
    }

    const SessionOutcome& a = alice_session.outcome();
    const SessionOutcome& b = bob_session.outcome();
    if (a.verdict != b.verdict || a.abort_round != b.abort_round ||
        !(a.transcript == b.transcript))
        throw std::logic_error("run_session: party outcomes diverged");
    return a;
}

SessionOutcome run_session(const BitString& a, const BitString& b,
                           Strategy strategy_a, Strategy strategy_b,
                           const HashParams& params, std::uint64_t seed) {
    return run_session(PartyConfig{Role::Alice, a, strategy_a, params},
                       PartyConfig{Role::Bob, b, strategy_b, params}, seed);
}

SessionOutcome run_party_session(const PartyConfig& cfg, Channel& channel,
                                 RandomSource& rng) {
    PartySession session(cfg, channel, rng);
    session.start();
    while (!session.done())
        session.on_message(channel.receive_message());
    return session.outcome();
}

RerunReport verify_rerun(const BitString& a, const BitString& b,
                         unsigned reruns, const HashParams& params,
                         std::uint64_t seed) {
    RerunReport report;
    const std::size_t n = a.size();
    for (unsigned run = 0; run <= reruns; ++run) {
        BitString mask = BitString::zeros(n);
        if (run > 0) {
            // Fresh public mask, drawn by Alice and announced in clear.
            SeededRng mask_rng =
                SeededRng::derive(seed, kStreamRerunMask, run);
            mask = BitString::random(n, mask_rng);
        }
        report.masks.push_back(mask);
        report.outcome = run_session(
            a ^ mask, b ^ mask, Strategy::Honest, Strategy::Honest, params,
            mix64(mix64(seed ^ kStreamRerunSession) ^ run));
        report.runs_executed = run + 1;
        if (report.outcome.verdict == Verdict::NotEqual)
            break;
    }
    return report;
}

} // namespace qpc
