#include "qpc/quantum.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qpc {

namespace {

constexpr double kNormTolerance = 1e-12;
// Probabilities this close to 0 or 1 are treated as deterministic. The
// smallest genuine outcome probability in this protocol is sin^2(pi/8).
constexpr double kDeterministicTolerance = 1e-12;

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const double kCosPi8 = std::cos(std::numbers::pi / 8.0);
const double kSinPi8 = std::sin(std::numbers::pi / 8.0);

// Outcome sampled from overlaps with the two basis vectors.
Bit sample_outcome(double overlap0, double overlap1, RandomSource& rng) {
    const double w0 = overlap0 * overlap0;
    const double w1 = overlap1 * overlap1;
    const double p0 = w0 / (w0 + w1);
    if (p0 >= 1.0 - kDeterministicTolerance)
        return 0;
    if (p0 <= kDeterministicTolerance)
        return 1;
    return rng.bernoulli(p0) ? 0 : 1;
}

} // namespace

QubitState::QubitState(double amp0, double amp1) : amp0_(amp0), amp1_(amp1) {
    const double norm = amp0 * amp0 + amp1 * amp1;
    // Written so that NaN amplitudes fail too.
    if (!(std::abs(norm - 1.0) <= kNormTolerance))
        throw std::invalid_argument("QubitState: amplitudes not normalized");
}

QubitState prepare(Bit gamma, Basis basis) {
    if (gamma > 1)
        throw std::invalid_argument("prepare: gamma must be 0 or 1");
    if (basis.value() == 0)
        return gamma == 0 ? QubitState(1.0, 0.0) : QubitState(0.0, 1.0);
    return gamma == 0 ? QubitState(kInvSqrt2, kInvSqrt2)
                      : QubitState(kInvSqrt2, -kInvSqrt2);
}

Bit measure(const QubitState& state, Basis basis, RandomSource& rng) {
    double o0, o1;
    if (basis.value() == 0) {
        o0 = state.amp0();
        o1 = state.amp1();
    } else {
        o0 = kInvSqrt2 * (state.amp0() + state.amp1());
        o1 = kInvSqrt2 * (state.amp0() - state.amp1());
    }
    return sample_outcome(o0, o1, rng);
}

Bit helstrom_guess(const QubitState& state, RandomSource& rng) {
    // Basis vectors (cos pi/8, sin pi/8) and (cos 5pi/8, sin 5pi/8).
    const double o0 = kCosPi8 * state.amp0() + kSinPi8 * state.amp1();
    const double o1 = -kSinPi8 * state.amp0() + kCosPi8 * state.amp1();
    return sample_outcome(o0, o1, rng);
}

double distinguish_bound() { return (2.0 + std::sqrt(2.0)) / 4.0; }

} // namespace qpc
