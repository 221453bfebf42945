#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qpc/random.hpp"
#include "qpc/rational.hpp"

namespace qpc::test {

/// 3-sigma binomial acceptance: |freq - p| against sqrt(p(1-p)/trials).
inline bool within_3sigma(double freq, double p, std::uint64_t trials) {
    const double sigma = std::sqrt(p * (1.0 - p) /
                                   static_cast<double>(trials));
    return std::abs(freq - p) <= 3.0 * sigma;
}

/// Replays a prescribed branch per draw; extends with `false` past the
/// prescription and records what was taken and at what probability.
class EnumerationSource final : public RandomSource {
  public:
    explicit EnumerationSource(std::vector<bool> prescription)
        : prescription_(std::move(prescription)) {}

    bool bernoulli(double p) override {
        if (p <= 0.0)
            return false;
        if (p >= 1.0)
            return true;
        const bool outcome =
            index_ < prescription_.size() ? prescription_[index_] : false;
        ++index_;
        taken_.push_back(outcome);
        probs_.push_back(p);
        return outcome;
    }

    const std::vector<bool>& taken() const { return taken_; }
    const std::vector<double>& probs() const { return probs_; }

  private:
    std::vector<bool> prescription_;
    std::size_t index_ = 0;
    std::vector<bool> taken_;
    std::vector<double> probs_;
};

/// Exhaustively enumerates every randomness branch of `body`, which must
/// draw only probability-1/2 choices (asserted). Calls
/// visit(body's result, exact branch weight 2^-depth); the weights over all
/// branches sum to 1.
template <typename Body, typename Visit>
void for_each_branch(Body&& body, Visit&& visit) {
    std::vector<bool> path;
    while (true) {
        EnumerationSource source(path);
        auto result = body(source);
        for (double p : source.probs())
            if (p != 0.5)
                throw std::logic_error(
                    "branch enumeration needs dyadic 1/2 draws");
        const std::size_t depth = source.taken().size();
        if (depth >= 63)
            throw std::logic_error("branch enumeration too deep");
        visit(std::move(result), Rational(1, std::uint64_t{1} << depth));

        path.assign(source.taken().begin(), source.taken().end());
        while (!path.empty() && path.back())
            path.pop_back();
        if (path.empty())
            return;
        path.back() = true;
    }
}

/// Counts non-degenerate draws, forwarding to a backing source.
class CountingSource final : public RandomSource {
  public:
    explicit CountingSource(RandomSource& inner) : inner_(inner) {}
    bool bernoulli(double p) override {
        if (p > 0.0 && p < 1.0)
            ++draws_;
        return inner_.bernoulli(p);
    }
    std::uint64_t draws() const { return draws_; }

  private:
    RandomSource& inner_;
    std::uint64_t draws_ = 0;
};

} // namespace qpc::test
