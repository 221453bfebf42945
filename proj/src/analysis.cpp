#include "qpc/analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qpc::analysis {

namespace {

const double kSurvival = distinguish_bound();  // cos^2(pi/8)
const double kFail = 1.0 - kSurvival;          // sin^2(pi/8)

class Accumulator {
  public:
    void add(double x) {
        ++count_;
        sum_ += x;
        sum_sq_ += x * x;
    }

    Estimate estimate() const {
        Estimate e;
        e.trials = count_;
        if (count_ == 0)
            return e;
        e.mean = sum_ / static_cast<double>(count_);
        if (count_ > 1) {
            const double var =
                (sum_sq_ - sum_ * e.mean) / static_cast<double>(count_ - 1);
            e.std_error = std::sqrt(std::max(var, 0.0) /
                                    static_cast<double>(count_));
        }
        return e;
    }

  private:
    std::uint64_t count_ = 0;
    double sum_ = 0.0;
    double sum_sq_ = 0.0;
};

Rational pow2_rational(std::size_t e) {
    if (e >= 64)
        throw std::overflow_error("pow2_rational: exponent too large");
    return Rational(1, std::uint64_t{1} << e);
}

} // namespace

std::uint64_t binomial(unsigned n, unsigned j) {
    if (n > 64)
        throw std::invalid_argument("binomial: exact path needs n <= 64");
    if (j > n)
        return 0;
    j = std::min(j, n - j);
    unsigned __int128 r = 1;
    for (unsigned i = 1; i <= j; ++i) {
        r = r * (n - j + i) / i; // numerator is always divisible here
        if (r > UINT64_MAX)
            throw std::overflow_error("binomial: result out of range");
    }
    return static_cast<std::uint64_t>(r);
}

double p_j(std::size_t n, std::size_t j) {
    if (n < 1 || j < 1 || j > n)
        throw std::invalid_argument("p_j: need 1 <= j <= n");
    if (n <= 64) {
        const double denominator =
            n == 64 ? 18446744073709551615.0
                    : static_cast<double>((std::uint64_t{1} << n) - 1);
        return static_cast<double>(
                   binomial(static_cast<unsigned>(n),
                            static_cast<unsigned>(j))) /
               denominator;
    }
    const double nd = static_cast<double>(n);
    const double jd = static_cast<double>(j);
    const double log_choose = std::lgamma(nd + 1.0) - std::lgamma(jd + 1.0) -
                              std::lgamma(nd - jd + 1.0);
    const double log_den = nd * std::numbers::ln2 +
                           std::log1p(-std::exp2(-nd));
    return std::exp(log_choose - log_den);
}

Rational p_j_exact(std::size_t n, std::size_t j) {
    if (n < 1 || n > 20 || j < 1 || j > n)
        throw std::invalid_argument("p_j_exact: need 1 <= j <= n <= 20");
    return Rational(binomial(static_cast<unsigned>(n),
                             static_cast<unsigned>(j)),
                    (std::uint64_t{1} << n) - 1);
}

double p_inc(std::size_t n) {
    if (n < 1)
        throw std::invalid_argument("p_inc: need n >= 1");
    if (n <= 512)
        return (std::pow(1.5, static_cast<double>(n)) - 1.0) /
               (std::pow(2.0, static_cast<double>(n)) - 1.0);
    // (3/4)^n (1 - (2/3)^n) / (1 - 2^-n), stable for large n.
    const double nd = static_cast<double>(n);
    const double log_ratio = nd * std::log(0.75);
    const double correction =
        std::log1p(-std::exp(-nd * std::log(1.5))) -
        std::log1p(-std::exp2(-nd));
    return std::exp(log_ratio + correction);
}

double p_inc_sum(std::size_t n) {
    if (n < 1 || n > 64)
        throw std::invalid_argument("p_inc_sum: need 1 <= n <= 64");
    double total = 0.0;
    for (std::size_t j = n; j >= 1; --j)
        total += p_j(n, j) * std::exp2(-static_cast<double>(j));
    return total;
}

Rational p_inc_exact(std::size_t n) {
    if (n < 1 || n > 20)
        throw std::invalid_argument("p_inc_exact: need 1 <= n <= 20");
    // ((3/2)^n - 1) / (2^n - 1) = (3^n - 2^n) / (2^n (2^n - 1)).
    std::uint64_t pow3 = 1;
    for (std::size_t i = 0; i < n; ++i)
        pow3 *= 3;
    const std::uint64_t pow2 = std::uint64_t{1} << n;
    return Rational(pow3 - pow2, pow2) / Rational(pow2 - 1, 1);
}

Rational p_inc_sum_exact(std::size_t n) {
    if (n < 1 || n > 20)
        throw std::invalid_argument("p_inc_sum_exact: need 1 <= n <= 20");
    Rational total(0, 1);
    for (std::size_t j = 1; j <= n; ++j)
        total = total + p_j_exact(n, j) * pow2_rational(j);
    return total;
}

double p_abort_m(unsigned k) {
    if (k < 1)
        throw std::invalid_argument("p_abort_m: need k >= 1");
    return std::pow(kSurvival, k - 1) * kFail;
}

double leakage_bound_alice(std::size_t n) {
    const std::size_t terms = n / 2;
    double total = 0.0;
    double survival_pow = 1.0; // cos^(2(k-1))(pi/8)
    for (std::size_t k = 1; k <= terms; ++k) {
        total += static_cast<double>(2 * k) * survival_pow * kFail;
        survival_pow *= kSurvival;
    }
    return total;
}

double leakage_bound_bob(std::size_t n) {
    const std::size_t terms = (n + 1) / 2;
    double total = 0.0;
    double survival_pow = 1.0;
    for (std::size_t k = 1; k <= terms; ++k) {
        total += static_cast<double>(2 * k - 1) * survival_pow * kFail;
        survival_pow *= kSurvival;
    }
    return total;
}

double leakage_limit_alice() { return 2.0 / kFail; }

double leakage_limit_bob() { return 2.0 / kFail - 1.0; }

double leakage_mean_with_tail_alice(std::size_t n) {
    const double survive_all =
        std::pow(kSurvival, static_cast<double>(n / 2));
    return leakage_bound_alice(n) + static_cast<double>(n) * survive_all;
}

double leakage_mean_with_tail_bob(std::size_t n) {
    const double survive_all =
        std::pow(kSurvival, static_cast<double>((n + 1) / 2));
    return leakage_bound_bob(n) + static_cast<double>(n) * survive_all;
}

Rational brute_force_pinc(std::size_t n) {
    if (n < 1 || n > 4)
        throw std::invalid_argument("brute_force_pinc: need 1 <= n <= 4");
    const std::uint64_t space = std::uint64_t{1} << n;
    Rational total(0, 1);
    std::uint64_t pairs = 0;
    for (std::uint64_t ha = 0; ha < space; ++ha) {
        for (std::uint64_t hb = 0; hb < space; ++hb) {
            if (ha == hb)
                continue;
            // The session survives every differing round independently with
            // probability 1/2.
            const int differing = __builtin_popcountll(ha ^ hb);
            total = total + pow2_rational(static_cast<std::size_t>(differing));
            ++pairs;
        }
    }
    return total / Rational(pairs, 1);
}

Estimate monte_carlo_pinc(std::size_t n, std::uint64_t trials,
                          std::uint64_t seed, const HashParams& params) {
    if (n < 1)
        throw std::invalid_argument("monte_carlo_pinc: need n >= 1");
    if (trials < 1)
        throw std::invalid_argument("monte_carlo_pinc: trials >= 1");
    Accumulator acc;
    for (std::uint64_t t = 0; t < trials; ++t) {
        SeededRng sample_rng = SeededRng::derive(seed, kStreamSampling, t);
        const BitString a = BitString::random(n, sample_rng);
        BitString b = BitString::random(n, sample_rng);
        while (b == a)
            b = BitString::random(n, sample_rng);
        const SessionOutcome outcome =
            run_session(a, b, Strategy::Honest, Strategy::Honest, params,
                        mix64(mix64(seed ^ kStreamTrial) ^ t));
        acc.add(outcome.verdict == Verdict::Equal ? 1.0 : 0.0);
    }
    return acc.estimate();
}

Estimate monte_carlo_leakage(std::size_t n, Role cheater, Strategy strategy,
                             std::uint64_t trials, std::uint64_t seed) {
    if (n < 1)
        throw std::invalid_argument("monte_carlo_leakage: need n >= 1");
    if (trials < 1)
        throw std::invalid_argument("monte_carlo_leakage: trials >= 1");
    const HashParams identity{HashMode::Identity, 8, 0};
    Accumulator acc;
    for (std::uint64_t t = 0; t < trials; ++t) {
        SeededRng sample_rng = SeededRng::derive(seed, kStreamSampling, t);
        AdversarialTrial trial;
        if (strategy == Strategy::Honest) {
            // Honest baseline over the same input distribution.
            trial.alice = PartyConfig{Role::Alice,
                                      BitString::random(n, sample_rng),
                                      Strategy::Honest, identity};
            trial.bob = PartyConfig{Role::Bob,
                                    BitString::random(n, sample_rng),
                                    Strategy::Honest, identity};
        } else {
            trial = make_adversarial_trial(cheater, strategy, n, sample_rng);
        }
        const SessionOutcome outcome =
            run_session(trial.alice, trial.bob,
                        mix64(mix64(seed ^ kStreamTrial) ^ t));
        acc.add(static_cast<double>(
            leaked_bits(outcome, cheater).leaked_bits_upper));
    }
    return acc.estimate();
}

std::vector<AnalysisRow> fig1_table(std::size_t n_max, std::size_t step) {
    if (n_max < 1)
        throw std::invalid_argument("fig1_table: need n_max >= 1");
    if (step < 1)
        throw std::invalid_argument("fig1_table: need step >= 1");

    std::vector<AnalysisRow> rows;
    double i_alice = 0.0;
    double i_bob = 0.0;
    double alice_pow = 1.0; // cos^(2(k-1)) at the next Alice term
    double bob_pow = 1.0;
    std::size_t next_emit = 1;
    for (std::size_t n = 1; n <= n_max; ++n) {
        if (n % 2 == 0) {
            // n even adds Alice's guess round k = n/2.
            i_alice += static_cast<double>(n) * alice_pow * kFail;
            alice_pow *= kSurvival;
        } else {
            // n odd adds Bob's guess round k = (n+1)/2.
            i_bob += static_cast<double>(n) * bob_pow * kFail;
            bob_pow *= kSurvival;
        }
        if (n == next_emit) {
            rows.push_back(AnalysisRow{n, p_inc(n), i_alice, i_bob});
            next_emit += step;
        }
    }
    return rows;
}

} // namespace qpc::analysis
