#include "qpc/adversary.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qpc {

LeakageRecord leaked_bits(const SessionOutcome& outcome, Role cheater) {
    LeakageRecord record;
    record.cheater = cheater;
    record.rounds = outcome.rounds_executed;
    record.leaked_bits_upper = outcome.rounds_executed;
    // Guess rounds among rounds 1..m: the even ones for Alice (she announces
    // second on odd rounds), the odd ones for Bob.
    record.guess_rounds = cheater == Role::Alice
                              ? record.rounds / 2
                              : (record.rounds + 1) / 2;
    return record;
}

double per_round_survival(Strategy strategy) {
    switch (strategy) {
    case Strategy::CheatOptimal:
        return distinguish_bound();
    case Strategy::CheatHonestMeasure:
        // Same basis (probability 1/2) matches surely; cross basis is a
        // coin flip.
        return 0.75;
    case Strategy::CheatRandomGuess:
        return 0.5;
    case Strategy::Honest:
        break;
    }
    throw std::invalid_argument("per_round_survival: not a cheating strategy");
}

double predicted_abort_mass(Strategy strategy, unsigned k) {
    if (k < 1)
        throw std::invalid_argument("predicted_abort_mass: k must be >= 1");
    const double p = per_round_survival(strategy);
    return std::pow(p, k - 1) * (1.0 - p);
}

AdversarialTrial make_adversarial_trial(Role cheater, Strategy strategy,
                                        std::size_t n, RandomSource& rng) {
    if (!is_cheating(strategy))
        throw std::invalid_argument(
            "adversarial trial needs a cheating strategy");
    const HashParams identity{HashMode::Identity, 8, 0};
    AdversarialTrial trial;
    trial.alice = PartyConfig{Role::Alice, BitString::random(n, rng),
                              Strategy::Honest, identity};
    trial.bob = PartyConfig{Role::Bob, BitString::random(n, rng),
                            Strategy::Honest, identity};
    (cheater == Role::Alice ? trial.alice : trial.bob).strategy = strategy;
    return trial;
}

AbortHistogram abort_round_distribution(Role cheater, Strategy strategy,
                                        std::size_t n, std::uint64_t trials,
                                        std::uint64_t seed) {
    if (trials < 1)
        throw std::invalid_argument("abort_round_distribution: trials >= 1");
    AbortHistogram hist;
    hist.cheater = cheater;
    hist.strategy = strategy;
    hist.n = n;
    hist.trials = trials;
    hist.abort_counts.assign(n, 0);

    for (std::uint64_t t = 0; t < trials; ++t) {
        SeededRng trial_rng = SeededRng::derive(seed, kStreamSampling, t);
        const AdversarialTrial trial =
            make_adversarial_trial(cheater, strategy, n, trial_rng);
        const SessionOutcome outcome =
            run_session(trial.alice, trial.bob,
                        mix64(mix64(seed ^ kStreamTrial) ^ t));
        if (outcome.verdict == Verdict::NotEqual)
            ++hist.abort_counts[*outcome.abort_round - 1];
        else
            ++hist.equal_verdicts;
    }
    return hist;
}

} // namespace qpc
