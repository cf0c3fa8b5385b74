#pragma once

#include "carefree/harness.hpp"

#include <cstdint>
#include <string_view>

namespace carefree {

enum class MonteCarloEvent { CoprimePair, Carefree, StronglyCarefree, PairwiseCoprimeTriple, NoncoprimeTriple };

std::string_view to_string(MonteCarloEvent e);
// Accepts the canonical names and the short forms coprime, strongly, triple, noncoprime.
MonteCarloEvent parse_montecarlo_event(std::string_view text);

// Stateless counter-based generator: word(i, j) depends only on (seed, i, j),
// so sample i sees the same stream whichever thread evaluates it.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t word(std::uint64_t sample, std::uint64_t counter) const;

    // Uniform on [1, range] by multiply-shift with rejection; `counter` advances
    // past every word consumed.
    std::uint64_t uniform(std::uint64_t sample, std::uint64_t& counter, std::uint64_t range) const;

private:
    std::uint64_t seed_;
};

struct MonteCarloEstimate {
    MonteCarloEvent event = MonteCarloEvent::CoprimePair;
    std::uint64_t range_max = 0;
    std::uint64_t samples = 0;
    std::uint64_t successes = 0;
    std::uint64_t seed = 0;
    double estimate = 0;
    double std_error = 0; // sqrt(p (1 - p) / samples)
    double target = 0;
    // kind = event name, x = range_max, count = successes, scaled_error = abs_error / std_error
    DensityReportRow row;
};

// Squarefreeness of sampled n is decided by trial division by primes up to 10^4,
// which is complete for n <= 10^8; events involving it cap range_max there.
inline constexpr std::uint64_t kMonteCarloSquarefreeRange = 100'000'000;

// threads = 0 uses the hardware concurrency. The estimate does not depend on it.
MonteCarloEstimate montecarlo_density(MonteCarloEvent event, std::uint64_t range_max, std::uint64_t samples,
                                      std::uint64_t seed, unsigned threads = 0);

} // namespace carefree
