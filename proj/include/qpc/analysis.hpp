#pragma once

#include <cstdint>
#include <vector>

#include "qpc/adversary.hpp"
#include "qpc/rational.hpp"

namespace qpc::analysis {

/// Monte Carlo summary; std_error is the sample standard deviation divided
/// by sqrt(trials) (0 when trials == 1).
struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t trials = 0;
};

/// One row of the leakage-versus-length table.
struct AnalysisRow {
    std::size_t n = 0;
    double p_inc = 0.0;
    double i_alice = 0.0;
    double i_bob = 0.0;
};

/// Exact binomial coefficient; supported for n <= 64.
std::uint64_t binomial(unsigned n, unsigned j);

/// Probability that two distinct uniformly distributed n-bit hash values
/// differ in exactly j positions: C(n,j) / (2^n - 1). Exact integer
/// arithmetic up to n = 64, log-space beyond.
double p_j(std::size_t n, std::size_t j);
Rational p_j_exact(std::size_t n, std::size_t j); // n <= 20

/// Probability of a wrong Equal verdict for unequal inputs:
/// sum_j C(n,j) / ((2^n - 1) 2^j) = ((3/2)^n - 1) / (2^n - 1).
double p_inc(std::size_t n);
/// The sum form evaluated directly (cross-check route), n <= 64.
double p_inc_sum(std::size_t n);
/// Both routes in exact rational arithmetic, n <= 20.
Rational p_inc_exact(std::size_t n);
Rational p_inc_sum_exact(std::size_t n);

/// Mass for an optimal cheater to survive k-1 guess rounds and fail the
/// k-th: cos^(2(k-1))(pi/8) sin^2(pi/8).
double p_abort_m(unsigned k);

/// Expected hash bits transmitted before an abort under optimal cheating,
/// truncated at the available guess rounds:
///   Alice: sum_{k=1}^{floor(n/2)}     2k     cos^(2(k-1))(pi/8) sin^2(pi/8)
///   Bob:   sum_{k=1}^{floor((n+1)/2)} (2k-1) cos^(2(k-1))(pi/8) sin^2(pi/8)
double leakage_bound_alice(std::size_t n);
double leakage_bound_bob(std::size_t n);

/// Large-n limits: 2/sin^2(pi/8) = 4(2+sqrt2) and 4(2+sqrt2) - 1.
double leakage_limit_alice();
double leakage_limit_bob();

/// Extension, not the truncated sums above: adds the never-abort tail in
/// which the cheater survives every guess round (probability
/// cos^(2K)(pi/8)) and all n bits are announced. This is the exact mean of
/// leaked_bits_upper over adversarial sessions.
double leakage_mean_with_tail_alice(std::size_t n);
double leakage_mean_with_tail_bob(std::size_t n);

/// Independent oracle for p_inc: enumerates every ordered pair of distinct
/// hash strings and averages the exact survival probability 2^-hamming.
/// Exponential; n <= 4.
Rational brute_force_pinc(std::size_t n);

/// Samples unequal (a, b) uniformly, runs honest sessions, and reports the
/// wrong-Equal frequency.
Estimate monte_carlo_pinc(std::size_t n, std::uint64_t trials,
                          std::uint64_t seed,
                          const HashParams& params = HashParams{});

/// Averages leaked_bits_upper over adversarial sessions (identity hash,
/// uniform per-round peer hash bits). Strategy::Honest runs an
/// honest-vs-honest baseline on the same harness.
Estimate monte_carlo_leakage(std::size_t n, Role cheater, Strategy strategy,
                             std::uint64_t trials, std::uint64_t seed);

/// Rows n = 1, 1+step, ... up to n_max.
std::vector<AnalysisRow> fig1_table(std::size_t n_max, std::size_t step = 1);

} // namespace qpc::analysis
