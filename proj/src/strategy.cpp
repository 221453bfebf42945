#include "qpc/strategy.hpp"

#include <stdexcept>

namespace qpc {

const char* strategy_name(Strategy s) {
    switch (s) {
    case Strategy::Honest:
        return "honest";
    case Strategy::CheatOptimal:
        return "optimal";
    case Strategy::CheatHonestMeasure:
        return "measure";
    case Strategy::CheatRandomGuess:
        return "random";
    }
    return "?";
}

Bit choose_announcement(Strategy strategy, const AnnouncementContext& ctx,
                        RandomSource& rng) {
    if (ctx.position == AnnouncePosition::First) {
        if (ctx.received_state == nullptr || !ctx.own_basis ||
            ctx.peer_announcement || ctx.true_gamma)
            throw std::invalid_argument(
                "choose_announcement: inconsistent first-announcer context");
        switch (strategy) {
        case Strategy::Honest:
        case Strategy::CheatHonestMeasure:
            return ctx.received_state->measure(*ctx.own_basis, rng);
        case Strategy::CheatOptimal:
            return ctx.received_state->helstrom_guess(rng);
        case Strategy::CheatRandomGuess:
            return rng.uniform_bit();
        }
        throw std::invalid_argument("choose_announcement: unknown strategy");
    }

    if (ctx.received_state != nullptr || !ctx.true_gamma ||
        !ctx.peer_announcement)
        throw std::invalid_argument(
            "choose_announcement: inconsistent second-announcer context");
    // Announcing second: honest parties reveal the bit they prepared;
    // cheaters echo the peer so the round cannot abort.
    return is_cheating(strategy) ? *ctx.peer_announcement : *ctx.true_gamma;
}

} // namespace qpc
