#pragma once

#include <stdexcept>

#include "qpc/bitstring.hpp"
#include "qpc/random.hpp"

namespace qpc {

/// Measurement basis: 0 = computational (Z), 1 = Hadamard (X).
class Basis {
  public:
    constexpr explicit Basis(Bit value)
        : value_(value <= 1
                     ? value
                     : throw std::invalid_argument("Basis: value not a bit")) {
    }
    constexpr Bit value() const { return value_; }
    friend constexpr bool operator==(Basis, Basis) = default;

  private:
    Bit value_;
};

inline constexpr Basis kBasisZ{0};
inline constexpr Basis kBasisX{1};

/// Single-qubit pure state with real amplitudes. Every state the protocol
/// touches (both preparation bases and the pi/8 discrimination basis) lies
/// in this real plane, so complex amplitudes are not represented.
class QubitState {
  public:
    /// Validates normalization: amp0^2 + amp1^2 = 1 within 1e-12.
    QubitState(double amp0, double amp1);

    double amp0() const { return amp0_; }
    double amp1() const { return amp1_; }

    friend bool operator==(const QubitState&, const QubitState&) = default;

  private:
    double amp0_;
    double amp1_;
};

/// The state |gamma> in the given basis. Basis 1 vectors are
/// (|0> + |1>)/sqrt2 and (|0> - |1>)/sqrt2.
QubitState prepare(Bit gamma, Basis basis);

/// Born-rule projective measurement in `basis`. Consumes one draw from the
/// rng only when both outcomes have nonzero probability; measuring a state
/// in its own preparation basis is deterministic on every trial.
Bit measure(const QubitState& state, Basis basis, RandomSource& rng);

/// Minimum-error discrimination between the gamma=0 and gamma=1 ensembles
/// (basis unknown, uniform): projects onto the basis rotated by pi/8 and
/// returns 0 if the first vector clicks, 1 otherwise. Succeeds with
/// probability cos^2(pi/8) over uniform (gamma, basis).
Bit helstrom_guess(const QubitState& state, RandomSource& rng);

/// cos^2(pi/8) = (2 + sqrt 2)/4, the optimal single-shot probability of
/// distinguishing the two ensembles above.
double distinguish_bound();

} // namespace qpc
