#include "carefree/sieve.hpp"

#include "carefree/errors.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <string>

namespace carefree {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m)
{
    std::uint64_t result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1)
            result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

constexpr char kCacheMagic[5] = {'C', 'F', 'S', 'V', '1'};

} // namespace

bool is_prime_u64(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0)
            return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // These twelve bases are a deterministic witness set below 3.3e24.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (unsigned i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

FactoredInteger FactoredInteger::by_trial_division(std::uint64_t n)
{
    if (n == 0)
        throw InvalidArgument("cannot factor 0");
    FactoredInteger f;
    f.n = n;
    std::uint64_t m = n;
    bool cofactor_prime = is_prime_u64(m);
    for (std::uint64_t p = 2; !cofactor_prime && p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p != 0)
            continue;
        unsigned e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        f.prime_powers.emplace_back(p, e);
        cofactor_prime = is_prime_u64(m);
    }
    if (m > 1)
        f.prime_powers.emplace_back(m, 1);
    return f;
}

std::uint64_t FactoredInteger::radical() const
{
    std::uint64_t r = 1;
    for (const auto& [p, e] : prime_powers)
        r *= p;
    return r;
}

SieveTable::SieveTable(std::uint64_t limit)
{
    if (limit == 0)
        throw InvalidArgument("sieve limit must be positive");
    if (limit > kMaxLimit)
        throw InvalidArgument("sieve limit " + std::to_string(limit) + " exceeds cap " + std::to_string(kMaxLimit));

    limit_ = limit;
    mu_.assign(limit + 1, 0);
    omega_.assign(limit + 1, 0);
    spf_.assign(limit + 1, 0);
    mu_[1] = 1;
    spf_[1] = 1;

    std::vector<std::uint32_t> primes;
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (spf_[i] == 0) {
            spf_[i] = static_cast<std::uint32_t>(i);
            mu_[i] = -1;
            omega_[i] = 1;
            primes.push_back(static_cast<std::uint32_t>(i));
        }
        const std::uint32_t si = spf_[i];
        for (std::uint32_t p : primes) {
            const std::uint64_t ip = i * p;
            if (p > si || ip > limit)
                break;
            spf_[ip] = p;
            if (p == si) {
                mu_[ip] = 0;
                omega_[ip] = omega_[i];
            } else {
                mu_[ip] = static_cast<std::int8_t>(-mu_[i]);
                omega_[ip] = static_cast<std::uint8_t>(omega_[i] + 1);
            }
        }
    }
}

void SieveTable::check_index(std::uint64_t n) const
{
    if (n == 0)
        throw InvalidArgument("arithmetic functions are defined for n >= 1");
    if (n > limit_)
        throw CapacityError("n = " + std::to_string(n) + " exceeds sieve limit " + std::to_string(limit_));
}

int SieveTable::mobius(std::uint64_t n) const
{
    check_index(n);
    return mu_[n];
}

unsigned SieveTable::omega(std::uint64_t n) const
{
    check_index(n);
    return omega_[n];
}

std::uint32_t SieveTable::smallest_prime_factor(std::uint64_t n) const
{
    check_index(n);
    return spf_[n];
}

bool SieveTable::is_prime(std::uint64_t n) const
{
    check_index(n);
    return n > 1 && spf_[n] == n;
}

FactoredInteger SieveTable::factor(std::uint64_t n) const
{
    check_index(n);
    FactoredInteger f;
    f.n = n;
    while (n > 1) {
        const std::uint32_t p = spf_[n];
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.prime_powers.emplace_back(p, e);
    }
    return f;
}

std::uint64_t SieveTable::euler_phi(std::uint64_t n) const
{
    std::uint64_t phi = n;
    for (const auto& [p, e] : factor(n).prime_powers)
        phi = phi / p * (p - 1);
    return phi;
}

std::uint64_t SieveTable::divisor_count(std::uint64_t n) const
{
    std::uint64_t count = 1;
    for (const auto& [p, e] : factor(n).prime_powers)
        count *= e + 1;
    return count;
}

std::uint64_t SieveTable::radical(std::uint64_t n) const
{
    check_index(n);
    std::uint64_t r = 1;
    while (n > 1) {
        const std::uint32_t p = spf_[n];
        r *= p;
        while (n % p == 0)
            n /= p;
    }
    return r;
}

std::vector<std::uint64_t> SieveTable::prime_divisors(std::uint64_t n) const
{
    check_index(n);
    std::vector<std::uint64_t> out;
    while (n > 1) {
        const std::uint32_t p = spf_[n];
        out.push_back(p);
        while (n % p == 0)
            n /= p;
    }
    return out;
}

std::vector<std::uint64_t> SieveTable::squarefree_divisors(std::uint64_t d) const
{
    std::vector<std::uint64_t> divisors{1};
    for (std::uint64_t p : prime_divisors(d)) {
        const std::size_t half = divisors.size();
        for (std::size_t i = 0; i < half; ++i)
            divisors.push_back(divisors[i] * p);
    }
    std::sort(divisors.begin(), divisors.end());
    return divisors;
}

std::vector<std::uint32_t> SieveTable::primes_up_to(std::uint64_t bound) const
{
    if (bound > limit_)
        throw CapacityError("prime bound " + std::to_string(bound) + " exceeds sieve limit " + std::to_string(limit_));
    std::vector<std::uint32_t> primes;
    for (std::uint64_t n = 2; n <= bound; ++n) {
        if (spf_[n] == n)
            primes.push_back(static_cast<std::uint32_t>(n));
    }
    return primes;
}

void SieveTable::save(const std::filesystem::path& path) const
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open sieve cache for writing: " + path.string());
    out.write(kCacheMagic, sizeof kCacheMagic);
    std::array<char, 8> le{};
    for (int i = 0; i < 8; ++i)
        le[i] = static_cast<char>((limit_ >> (8 * i)) & 0xff);
    out.write(le.data(), le.size());

    std::vector<char> records(2 * limit_);
    for (std::uint64_t n = 1; n <= limit_; ++n) {
        records[2 * (n - 1)] = static_cast<char>(mu_[n]);
        records[2 * (n - 1) + 1] = static_cast<char>(omega_[n]);
    }
    out.write(records.data(), static_cast<std::streamsize>(records.size()));
    if (!out)
        throw std::runtime_error("failed writing sieve cache: " + path.string());
}

SieveTable SieveTable::load(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw CacheFormatError("cannot open sieve cache: " + path.string());

    char magic[sizeof kCacheMagic];
    std::array<unsigned char, 8> le{};
    in.read(magic, sizeof magic);
    in.read(reinterpret_cast<char*>(le.data()), le.size());
    if (!in || std::memcmp(magic, kCacheMagic, sizeof magic) != 0)
        throw CacheFormatError("sieve cache has a bad header: " + path.string());

    std::uint64_t limit = 0;
    for (int i = 0; i < 8; ++i)
        limit |= static_cast<std::uint64_t>(le[i]) << (8 * i);
    if (limit == 0 || limit > kMaxLimit)
        throw CacheFormatError("sieve cache declares invalid limit " + std::to_string(limit));

    std::error_code ec;
    const auto size = std::filesystem::file_size(path, ec);
    if (ec || size != sizeof kCacheMagic + 8 + 2 * limit)
        throw CacheFormatError("sieve cache size does not match its declared limit");

    std::vector<char> records(2 * limit);
    in.read(records.data(), static_cast<std::streamsize>(records.size()));
    if (!in)
        throw CacheFormatError("sieve cache is truncated");

    SieveTable t;
    t.limit_ = limit;
    t.mu_.assign(limit + 1, 0);
    t.omega_.assign(limit + 1, 0);
    for (std::uint64_t n = 1; n <= limit; ++n) {
        const auto mu = static_cast<std::int8_t>(records[2 * (n - 1)]);
        const auto om = static_cast<std::uint8_t>(records[2 * (n - 1) + 1]);
        if (mu < -1 || mu > 1 || om > 26)
            throw CacheFormatError("sieve cache record out of range at n = " + std::to_string(n));
        t.mu_[n] = mu;
        t.omega_[n] = om;
    }
    t.fill_smallest_prime_factors();

    if (t.mu_[1] != 1 || t.omega_[1] != 0)
        throw CacheFormatError("sieve cache record for n = 1 is wrong");
    for (std::uint64_t n = 2; n <= limit; ++n) {
        const bool prime = t.spf_[n] == n;
        if ((prime && (t.mu_[n] != -1 || t.omega_[n] != 1)) || (!prime && t.omega_[n] < 1))
            throw CacheFormatError("sieve cache disagrees with prime structure at n = " + std::to_string(n));
    }
    return t;
}

void SieveTable::fill_smallest_prime_factors()
{
    spf_.assign(limit_ + 1, 0);
    spf_[1] = 1;
    for (std::uint64_t p = 2; p <= limit_; ++p) {
        if (spf_[p] != 0)
            continue;
        spf_[p] = static_cast<std::uint32_t>(p);
        for (std::uint64_t m = p * p; m <= limit_; m += p) {
            if (spf_[m] == 0)
                spf_[m] = static_cast<std::uint32_t>(p);
        }
    }
}

} // namespace carefree
