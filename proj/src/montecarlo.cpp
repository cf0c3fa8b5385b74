#include "carefree/montecarlo.hpp"

#include "carefree/constants.hpp"
#include "carefree/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

namespace carefree {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t splitmix(std::uint64_t z)
{
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

const std::vector<std::uint32_t>& small_primes()
{
    static const std::vector<std::uint32_t> primes = [] {
        constexpr std::uint32_t limit = 10'000;
        std::vector<char> composite(limit + 1, 0);
        std::vector<std::uint32_t> out;
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (composite[i])
                continue;
            out.push_back(i);
            for (std::uint32_t j = i * i; j <= limit; j += i)
                composite[j] = 1;
        }
        return out;
    }();
    return primes;
}

// Complete for n <= 10^8.
bool squarefree_small(std::uint64_t n)
{
    for (std::uint32_t p : small_primes()) {
        const std::uint64_t sq = std::uint64_t{p} * p;
        if (sq > n)
            return true;
        if (n % p == 0) {
            n /= p;
            if (n % p == 0)
                return false;
        }
    }
    return true;
}

bool involves_squarefree(MonteCarloEvent e)
{
    return e == MonteCarloEvent::Carefree || e == MonteCarloEvent::StronglyCarefree;
}

double event_target(MonteCarloEvent e)
{
    const DensityTargets& t = density_targets();
    switch (e) {
    case MonteCarloEvent::CoprimePair: return t.coprime.to_double();
    case MonteCarloEvent::Carefree: return t.k1.to_double();
    case MonteCarloEvent::StronglyCarefree: return t.k2.to_double();
    case MonteCarloEvent::PairwiseCoprimeTriple: return t.k2.to_double();
    case MonteCarloEvent::NoncoprimeTriple: return t.f3.to_double();
    }
    return 0;
}

bool sample_event(const CounterRng& rng, MonteCarloEvent e, std::uint64_t i, std::uint64_t range)
{
    std::uint64_t counter = 0;
    const std::uint64_t a = rng.uniform(i, counter, range);
    const std::uint64_t b = rng.uniform(i, counter, range);
    switch (e) {
    case MonteCarloEvent::CoprimePair: return std::gcd(a, b) == 1;
    case MonteCarloEvent::Carefree: return std::gcd(a, b) == 1 && squarefree_small(a);
    case MonteCarloEvent::StronglyCarefree:
        return std::gcd(a, b) == 1 && squarefree_small(a) && squarefree_small(b);
    case MonteCarloEvent::PairwiseCoprimeTriple: {
        const std::uint64_t c = rng.uniform(i, counter, range);
        return std::gcd(a, b) == 1 && std::gcd(a, c) == 1 && std::gcd(b, c) == 1;
    }
    case MonteCarloEvent::NoncoprimeTriple: {
        const std::uint64_t c = rng.uniform(i, counter, range);
        return std::gcd(a, b) > 1 && std::gcd(a, c) > 1 && std::gcd(b, c) > 1;
    }
    }
    return false;
}

} // namespace

std::string_view to_string(MonteCarloEvent e)
{
    switch (e) {
    case MonteCarloEvent::CoprimePair: return "coprime_pair";
    case MonteCarloEvent::Carefree: return "carefree";
    case MonteCarloEvent::StronglyCarefree: return "strongly_carefree";
    case MonteCarloEvent::PairwiseCoprimeTriple: return "pairwise_coprime_triple";
    case MonteCarloEvent::NoncoprimeTriple: return "noncoprime_triple";
    }
    return "?";
}

MonteCarloEvent parse_montecarlo_event(std::string_view text)
{
    if (text == "coprime_pair" || text == "coprime")
        return MonteCarloEvent::CoprimePair;
    if (text == "carefree")
        return MonteCarloEvent::Carefree;
    if (text == "strongly_carefree" || text == "strongly")
        return MonteCarloEvent::StronglyCarefree;
    if (text == "pairwise_coprime_triple" || text == "triple")
        return MonteCarloEvent::PairwiseCoprimeTriple;
    if (text == "noncoprime_triple" || text == "noncoprime")
        return MonteCarloEvent::NoncoprimeTriple;
    throw InvalidArgument("unknown Monte Carlo event '" + std::string(text) + "'");
}

std::uint64_t CounterRng::word(std::uint64_t sample, std::uint64_t counter) const
{
    return splitmix(seed_ ^ splitmix(sample * kGolden + splitmix(counter)));
}

std::uint64_t CounterRng::uniform(std::uint64_t sample, std::uint64_t& counter, std::uint64_t range) const
{
    if (range == 0)
        throw InvalidArgument("uniform range must be positive");
    using u128 = unsigned __int128;
    u128 m = static_cast<u128>(word(sample, counter++)) * range;
    auto low = static_cast<std::uint64_t>(m);
    if (low < range) {
        const std::uint64_t threshold = (0 - range) % range;
        while (low < threshold) {
            m = static_cast<u128>(word(sample, counter++)) * range;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64) + 1;
}

MonteCarloEstimate montecarlo_density(MonteCarloEvent event, std::uint64_t range_max, std::uint64_t samples,
                                      std::uint64_t seed, unsigned threads)
{
    if (samples == 0)
        throw InvalidArgument("Monte Carlo needs at least one sample");
    if (range_max == 0)
        throw InvalidArgument("Monte Carlo range must be positive");
    if (involves_squarefree(event) && range_max > kMonteCarloSquarefreeRange)
        throw CapacityError("range " + std::to_string(range_max) + " exceeds the squarefree-test cap " +
                            std::to_string(kMonteCarloSquarefreeRange));

    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, samples));

    const CounterRng rng(seed);
    std::vector<std::uint64_t> hits(threads, 0);
    auto work = [&](unsigned w) {
        const std::uint64_t begin = samples * w / threads;
        const std::uint64_t end = samples * (w + 1) / threads;
        std::uint64_t h = 0;
        for (std::uint64_t i = begin; i < end; ++i)
            h += sample_event(rng, event, i, range_max);
        hits[w] = h;
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w)
            pool.emplace_back(work, w);
        for (auto& th : pool)
            th.join();
    }

    MonteCarloEstimate est;
    est.event = event;
    est.range_max = range_max;
    est.samples = samples;
    est.seed = seed;
    est.successes = std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
    est.estimate = static_cast<double>(est.successes) / static_cast<double>(samples);
    est.std_error = std::sqrt(est.estimate * (1 - est.estimate) / static_cast<double>(samples));
    est.target = event_target(event);

    DensityReportRow& row = est.row;
    row.kind = std::string(to_string(event));
    row.x = range_max;
    row.count = static_cast<std::int64_t>(est.successes);
    row.density = est.estimate;
    row.target = est.target;
    row.abs_error = std::abs(est.estimate - est.target);
    row.scaled_error = est.std_error > 0 ? row.abs_error / est.std_error : 0.0;
    row.method = "montecarlo";
    return est;
}

} // namespace carefree
