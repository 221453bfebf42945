#pragma once

#include <optional>

#include "qpc/message.hpp"

namespace qpc {

/// Per-party behavior. Honest follows the protocol; the cheat variants
/// never abort on their own announcement turn (they copy the peer when
/// announcing second) and differ only in how they guess when forced to
/// announce first:
///   CheatOptimal      - minimum-error discrimination measurement
///   CheatHonestMeasure- measure in own basis, announce the outcome
///   CheatRandomGuess  - announce a uniform bit
enum class Strategy : std::uint8_t {
    Honest = 0,
    CheatOptimal = 1,
    CheatHonestMeasure = 2,
    CheatRandomGuess = 3,
};

inline bool is_cheating(Strategy s) { return s != Strategy::Honest; }

const char* strategy_name(Strategy s);

/// Whether this party announces first (it measured the qubit this round)
/// or second (it prepared the qubit and has heard the peer).
enum class AnnouncePosition : std::uint8_t { First, Second };

/// Everything a strategy may look at when picking its announcement.
/// received_state is present iff the party measured this round (First);
/// true_gamma and peer_announcement are present iff it prepared (Second).
struct AnnouncementContext {
    AnnouncePosition position = AnnouncePosition::First;
    const InFlightQubit* received_state = nullptr;
    std::optional<Basis> own_basis;
    std::optional<Bit> true_gamma;
    std::optional<Bit> peer_announcement;
};

/// The announcement the strategy makes in this round. Rejects inconsistent
/// contexts (e.g. missing state when measuring).
Bit choose_announcement(Strategy strategy, const AnnouncementContext& ctx,
                        RandomSource& rng);

} // namespace qpc
