#pragma once

#include <cstdint>
#include <vector>

#include "qpc/protocol.hpp"

namespace qpc {

/// Information ledger for one adversarial session, in the upper-bound
/// convention: every hash bit transmitted before the session ended counts
/// as leaked. k is the number of rounds in which the cheater had to
/// announce first (its guess rounds): even rounds for Alice, odd for Bob.
struct LeakageRecord {
    Role cheater = Role::Alice;
    std::uint32_t rounds = 0;            // abort round m, or n when Equal
    std::uint32_t leaked_bits_upper = 0; // = rounds
    std::uint32_t guess_rounds = 0;      // k
};

LeakageRecord leaked_bits(const SessionOutcome& outcome, Role cheater);

/// Abort-round histogram of adversarial sessions against an honest peer.
/// Inputs use the identity hash with both parties' strings drawn uniformly
/// per trial, so every guess round is a uniform-ensemble discrimination.
struct AbortHistogram {
    Role cheater = Role::Alice;
    Strategy strategy = Strategy::CheatOptimal;
    std::size_t n = 0;
    std::uint64_t trials = 0;
    std::vector<std::uint64_t> abort_counts; // index m-1, m in [1, n]
    std::uint64_t equal_verdicts = 0;        // sessions that never aborted
};

AbortHistogram abort_round_distribution(Role cheater, Strategy strategy,
                                        std::size_t n, std::uint64_t trials,
                                        std::uint64_t seed);

/// Per-guess-round survival probability of a cheating strategy against a
/// uniform-ensemble peer: cos^2(pi/8), 3/4, or 1/2.
double per_round_survival(Strategy strategy);

/// Model mass for "survives k-1 guess rounds, fails the k-th" under the
/// strategy's survival probability.
double predicted_abort_mass(Strategy strategy, unsigned k);

/// Session setup used by the adversarial experiments (exposed so estimators
/// and tests share one harness).
struct AdversarialTrial {
    PartyConfig alice;
    PartyConfig bob;
};
AdversarialTrial make_adversarial_trial(Role cheater, Strategy strategy,
                                        std::size_t n, RandomSource& rng);

} // namespace qpc
