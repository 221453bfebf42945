#pragma once

#include <cstdint>
#include <vector>

#include "qpc/channel.hpp"
#include "qpc/hashperm.hpp"
#include "qpc/strategy.hpp"

namespace qpc {

enum class Role : std::uint8_t { Alice = 0, Bob = 1 };

const char* role_name(Role r);

/// Substream tags: every party, trial, and rerun draws from its own stream
/// derived from the master seed.
inline constexpr std::uint64_t kStreamAlice = 1;
inline constexpr std::uint64_t kStreamBob = 2;
inline constexpr std::uint64_t kStreamRerunMask = 3;
inline constexpr std::uint64_t kStreamRerunSession = 4;
inline constexpr std::uint64_t kStreamTrial = 5;
inline constexpr std::uint64_t kStreamSampling = 6;

struct PartyConfig {
    Role role = Role::Alice;
    BitString secret;
    Strategy strategy = Strategy::Honest;
    HashParams params;
};

/// One party's side of a session, advanced message by message. Alice
/// prepares on odd rounds and measures on even rounds; Bob the reverse.
/// Per round the message order is Qubit, AnnounceReceiver, AnnounceSender,
/// then Abort iff the announcements differ; the measuring party sends the
/// Abort and both parties conclude NotEqual at that round. Sessions open
/// with a digest/length handshake and close with a Result exchange, Alice
/// speaking first in both.
class PartySession {
  public:
    PartySession(const PartyConfig& cfg, Channel& channel, RandomSource& rng);

    /// Sends the opening handshake (Alice) or waits for it (Bob).
    void start();
    /// Feeds one incoming message; sends whatever the protocol requires.
    void on_message(const Message& m);

    bool done() const { return phase_ == Phase::Done; }
    const SessionOutcome& outcome() const;

  private:
    enum class Phase {
        Created,
        AwaitHandshake,
        AwaitQubit,
        AwaitReceiverAnn,
        AwaitSenderAnn,
        AwaitAbort,
        AwaitResult,
        Done,
    };

    bool is_sender(std::uint32_t round) const;
    Basis round_basis(std::uint32_t round) const;
    void expect(const Message& m, Tag tag, std::uint32_t round) const;
    void send_classical(const Message& m);
    void begin_round(std::uint32_t round);
    void conclude(Verdict verdict, std::uint32_t rounds_executed);

    PartyConfig cfg_;
    Channel& channel_;
    RandomSource& rng_;
    std::uint32_t n_;
    BitString hash_value_;

    Phase phase_ = Phase::Created;
    std::uint32_t round_ = 0;
    Bit gamma_ = 0;           // bit prepared this round (sender turns)
    Bit my_announcement_ = 0; // announcement made this round
    SessionOutcome outcome_;
};

/// Runs a full in-process session between two configured parties, pumping
/// both state machines in one thread. Both parties' verdicts are checked to
/// agree; the common outcome is returned.
SessionOutcome run_session(const PartyConfig& alice, const PartyConfig& bob,
                           std::uint64_t seed);

/// Same, with caller-supplied randomness (may be the same source twice).
SessionOutcome run_session(const PartyConfig& alice, const PartyConfig& bob,
                           RandomSource& alice_rng, RandomSource& bob_rng);

/// Convenience wrapper with shared parameters.
SessionOutcome run_session(const BitString& a, const BitString& b,
                           Strategy strategy_a, Strategy strategy_b,
                           const HashParams& params, std::uint64_t seed);

/// Drives one party over an already-connected channel (used for TCP runs).
SessionOutcome run_party_session(const PartyConfig& cfg, Channel& channel,
                                 RandomSource& rng);

struct RerunReport {
    SessionOutcome outcome;        // the deciding run
    unsigned runs_executed = 0;    // 1 + reruns actually performed
    std::vector<BitString> masks;  // public XOR mask per run (run 0: zeros)
};

/// Runs the protocol, then up to `reruns` verification passes on a XOR b
/// masked inputs: after an Equal verdict Alice draws a fresh public random
/// mask s and both sides rerun on a^s, b^s from scratch. The first NotEqual
/// decides; Equal stands only if every run agrees. Honest parties only.
RerunReport verify_rerun(const BitString& a, const BitString& b,
                         unsigned reruns, const HashParams& params,
                         std::uint64_t seed);

} // namespace qpc
