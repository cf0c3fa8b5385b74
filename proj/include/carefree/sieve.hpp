#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

namespace carefree {

// n = prod prime^exponent, primes strictly increasing.
struct FactoredInteger {
    std::uint64_t n = 1;
    std::vector<std::pair<std::uint64_t, unsigned>> prime_powers;

    // Trial division backed by a deterministic Miller-Rabin test; works for any
    // 64-bit n but is meant for values above a sieve limit, not for large semiprimes.
    static FactoredInteger by_trial_division(std::uint64_t n);

    std::uint64_t radical() const;
    unsigned omega() const { return static_cast<unsigned>(prime_powers.size()); }
};

// Deterministic for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Per-integer arithmetic data for 1..limit, built by one linear-sieve pass.
// Immutable after construction; concurrent reads are safe.
class SieveTable {
public:
    static constexpr std::uint64_t kDefaultLimit = 10'000'000;
    static constexpr std::uint64_t kMaxLimit = 100'000'000;

    // Throws InvalidArgument for limit == 0 or limit > kMaxLimit.
    explicit SieveTable(std::uint64_t limit);

    std::uint64_t limit() const { return limit_; }

    int mobius(std::uint64_t n) const;
    unsigned omega(std::uint64_t n) const;
    std::uint32_t smallest_prime_factor(std::uint64_t n) const;
    bool is_prime(std::uint64_t n) const;
    bool is_squarefree(std::uint64_t n) const { return mobius(n) != 0; }

    std::uint64_t euler_phi(std::uint64_t n) const;
    std::uint64_t divisor_count(std::uint64_t n) const;
    std::uint64_t radical(std::uint64_t n) const;
    FactoredInteger factor(std::uint64_t n) const;

    // All 2^omega(d) squarefree divisors of d, increasing.
    std::vector<std::uint64_t> squarefree_divisors(std::uint64_t d) const;

    // Distinct primes of n, increasing.
    std::vector<std::uint64_t> prime_divisors(std::uint64_t n) const;

    // Primes p <= bound (bound <= limit), increasing.
    std::vector<std::uint32_t> primes_up_to(std::uint64_t bound) const;

    // Binary cache: "CFSV1", limit as u64 little-endian, then (mu: i8, omega: u8)
    // for n = 1..limit. load() throws CacheFormatError on any inconsistency.
    void save(const std::filesystem::path& path) const;
    static SieveTable load(const std::filesystem::path& path);

private:
    SieveTable() = default;
    void check_index(std::uint64_t n) const;
    void fill_smallest_prime_factors();

    std::uint64_t limit_ = 0;
    std::vector<std::int8_t> mu_;
    std::vector<std::uint8_t> omega_;
    std::vector<std::uint32_t> spf_;
};

inline SieveTable build_sieve(std::uint64_t limit) { return SieveTable(limit); }

} // namespace carefree
