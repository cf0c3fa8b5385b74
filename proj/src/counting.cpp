#include "carefree/counting.hpp"

#include "carefree/errors.hpp"

#include <algorithm>
#include <bit>
#include <bitset>
#include <cctype>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

namespace carefree {

namespace {

using Clock = std::chrono::steady_clock;
using i128 = __int128;

struct SignedDivisor {
    std::uint64_t value;
    int mu;
};

std::uint64_t isqrt(std::uint64_t x)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(x)));
    while (r > 0 && r * r > x)
        --r;
    while ((r + 1) * (r + 1) <= x)
        ++r;
    return r;
}

void signed_squarefree_divisors(const SieveTable& t, std::uint64_t d, std::vector<SignedDivisor>& out)
{
    out.clear();
    out.push_back({1, 1});
    for (std::uint64_t p : t.prime_divisors(d)) {
        const std::size_t half = out.size();
        for (std::size_t i = 0; i < half; ++i)
            out.push_back({out[i].value * p, -out[i].mu});
    }
}

std::int64_t coprime_count_from(const std::vector<SignedDivisor>& divisors, std::uint64_t x)
{
    std::int64_t sum = 0;
    for (const auto& [a, mu] : divisors)
        sum += mu * static_cast<std::int64_t>(x / a);
    return sum;
}

std::int64_t squarefree_coprime_from(const SieveTable& t, std::uint64_t d,
                                     const std::vector<SignedDivisor>& divisors, std::uint64_t x)
{
    std::int64_t sum = 0;
    const std::uint64_t root = isqrt(x);
    for (std::uint64_t m = 1; m <= root; ++m) {
        const int mu = t.mobius(m);
        if (mu == 0 || std::gcd(m, d) != 1)
            continue;
        sum += mu * coprime_count_from(divisors, x / (m * m));
    }
    return sum;
}

void require_table(const SieveTable& t, std::uint64_t x, const char* what)
{
    if (x > t.limit())
        throw CapacityError(std::string(what) + ": x = " + std::to_string(x) + " exceeds sieve limit " +
                            std::to_string(t.limit()));
}

void require_cap(std::uint64_t x, std::uint64_t cap, const char* what)
{
    if (x > cap)
        throw CapacityError(std::string(what) + ": x = " + std::to_string(x) + " exceeds cap " + std::to_string(cap));
}

template <typename F>
CountResult timed(CountKind kind, std::uint64_t x, CountMethod method, F&& body)
{
    const auto start = Clock::now();
    CountResult r;
    r.kind = kind;
    r.x = x;
    r.method = method;
    r.count = x == 0 ? 0 : body();
    r.elapsed = Clock::now() - start;
    return r;
}

std::string upper(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
    return out;
}

std::int64_t c1_asum(const SieveTable& t, std::uint64_t x)
{
    std::vector<SignedDivisor> divisors;
    std::int64_t sum = 0;
    for (std::uint64_t a = 1; a <= x; ++a) {
        if (t.mobius(a) == 0)
            continue;
        signed_squarefree_divisors(t, a, divisors);
        sum += coprime_count_from(divisors, x);
    }
    return sum;
}

std::int64_t c1_dsum(const SieveTable& t, std::uint64_t x)
{
    std::vector<SignedDivisor> divisors;
    std::int64_t sum = 0;
    for (std::uint64_t d = 1; d <= x; ++d) {
        const int mu = t.mobius(d);
        if (mu == 0)
            continue;
        const std::uint64_t y = x / d;
        signed_squarefree_divisors(t, d, divisors);
        sum += mu * static_cast<std::int64_t>(y) * squarefree_coprime_from(t, d, divisors, y);
    }
    return sum;
}

std::int64_t c2_dsum(const SieveTable& t, std::uint64_t x)
{
    std::vector<SignedDivisor> divisors;
    std::int64_t sum = 0;
    for (std::uint64_t d = 1; d <= x; ++d) {
        const int mu = t.mobius(d);
        if (mu == 0)
            continue;
        signed_squarefree_divisors(t, d, divisors);
        const std::int64_t s = squarefree_coprime_from(t, d, divisors, x / d);
        sum += mu * s * s;
    }
    return sum;
}

std::int64_t i2_formula(const SieveTable& t, std::uint64_t x)
{
    std::int64_t sum = 0;
    for (std::uint64_t d = 1; d <= x; ++d) {
        const auto q = static_cast<std::int64_t>(x / d);
        sum += t.mobius(d) * q * q;
    }
    return sum;
}

// ---- brute force ---------------------------------------------------------

std::vector<char> squarefree_flags(std::uint64_t x)
{
    std::vector<char> flags(x + 1, 0);
    for (std::uint64_t n = 1; n <= x; ++n)
        flags[n] = is_squarefree_by_trial_division(n);
    return flags;
}

std::int64_t brute_pairs(CountKind kind, std::uint64_t x)
{
    const auto sf = squarefree_flags(x);
    std::int64_t count = 0;
    for (std::uint64_t a = 1; a <= x; ++a) {
        for (std::uint64_t b = 1; b <= x; ++b) {
            if (std::gcd(a, b) != 1)
                continue;
            switch (kind) {
            case CountKind::C1: count += sf[a]; break;
            case CountKind::C2: count += sf[a] && sf[b]; break;
            case CountKind::C3: count += sf[a] || sf[b]; break;
            default: ++count; break;
            }
        }
    }
    return count;
}

std::int64_t brute_triples(std::uint64_t x)
{
    std::int64_t count = 0;
    for (std::uint64_t a = 1; a <= x; ++a) {
        for (std::uint64_t b = 1; b <= x; ++b) {
            if (std::gcd(a, b) != 1)
                continue;
            for (std::uint64_t c = 1; c <= x; ++c)
                count += std::gcd(a, c) == 1 && std::gcd(b, c) == 1;
        }
    }
    return count;
}

std::int64_t brute_tuples(std::vector<std::uint64_t>& chosen, int k, std::uint64_t x)
{
    if (static_cast<int>(chosen.size()) == k)
        return 1;
    std::int64_t count = 0;
    for (std::uint64_t a = 1; a <= x; ++a) {
        bool ok = true;
        for (std::uint64_t c : chosen) {
            if (std::gcd(a, c) != 1) {
                ok = false;
                break;
            }
        }
        if (!ok)
            continue;
        chosen.push_back(a);
        count += brute_tuples(chosen, k, x);
        chosen.pop_back();
    }
    return count;
}

std::int64_t brute_noncoprime_triples(std::uint64_t x)
{
    // rows[a] has bit c set iff gcd(a, c) > 1
    const std::size_t words = (x + 64) / 64;
    std::vector<std::uint64_t> rows((x + 1) * words, 0);
    for (std::uint64_t a = 1; a <= x; ++a) {
        for (std::uint64_t c = 1; c <= x; ++c) {
            if (std::gcd(a, c) > 1)
                rows[a * words + c / 64] |= 1ULL << (c % 64);
        }
    }
    std::int64_t count = 0;
    for (std::uint64_t a = 2; a <= x; ++a) {
        for (std::uint64_t b = 2; b <= x; ++b) {
            if (std::gcd(a, b) == 1)
                continue;
            const std::uint64_t* ra = &rows[a * words];
            const std::uint64_t* rb = &rows[b * words];
            for (std::size_t w = 0; w < words; ++w)
                count += std::popcount(ra[w] & rb[w]);
        }
    }
    return count;
}

// ---- I_k^(u) recursion ---------------------------------------------------

using PrimeMask = std::bitset<128>;

class TupleRecursion {
public:
    TupleRecursion(const SieveTable& t, std::uint64_t n) : n_(n)
    {
        primes_ = t.primes_up_to(std::max<std::uint64_t>(n, 1));
        masks_.assign(n + 1, PrimeMask{});
        for (std::uint64_t j = 2; j <= n; ++j) {
            for (std::uint64_t p : t.prime_divisors(j))
                masks_[j].set(index_of(p));
        }
    }

    PrimeMask mask_of(std::uint64_t u, const SieveTable& t) const
    {
        PrimeMask m;
        std::vector<std::uint64_t> primes;
        if (u <= t.limit()) {
            primes = t.prime_divisors(u);
        } else {
            for (const auto& [p, e] : FactoredInteger::by_trial_division(u).prime_powers)
                primes.push_back(p);
        }
        for (std::uint64_t p : primes) {
            if (p <= n_)
                m.set(index_of(p));
        }
        return m;
    }

    std::int64_t count(int k, const PrimeMask& excluded)
    {
        if (k == 1)
            return coprime_to_mask(excluded);
        auto& memo = memo_[k];
        if (auto it = memo.find(excluded); it != memo.end())
            return it->second;
        std::int64_t sum = 0;
        for (std::uint64_t j = 1; j <= n_; ++j) {
            if ((masks_[j] & excluded).none())
                sum += count(k - 1, excluded | masks_[j]);
        }
        memo.emplace(excluded, sum);
        return sum;
    }

private:
    std::size_t index_of(std::uint64_t p) const
    {
        return static_cast<std::size_t>(std::lower_bound(primes_.begin(), primes_.end(), p) - primes_.begin());
    }

    // T_u(n) = sum over squarefree a | u of mu(a) floor(n / a); products above n vanish.
    std::int64_t coprime_to_mask(const PrimeMask& excluded) const
    {
        std::vector<std::uint64_t> ps;
        for (std::size_t i = 0; i < primes_.size(); ++i) {
            if (excluded.test(i))
                ps.push_back(primes_[i]);
        }
        return inclusion_exclusion(ps, 0, 1, 1);
    }

    std::int64_t inclusion_exclusion(const std::vector<std::uint64_t>& ps, std::size_t from, std::uint64_t product,
                                     int sign) const
    {
        std::int64_t sum = sign * static_cast<std::int64_t>(n_ / product);
        for (std::size_t i = from; i < ps.size(); ++i) {
            if (product * ps[i] > n_)
                break;
            sum += inclusion_exclusion(ps, i + 1, product * ps[i], -sign);
        }
        return sum;
    }

    std::uint64_t n_;
    std::vector<std::uint32_t> primes_;
    std::vector<PrimeMask> masks_;
    std::unordered_map<int, std::unordered_map<PrimeMask, std::int64_t>> memo_;
};

} // namespace

std::string_view to_string(CountKind k)
{
    switch (k) {
    case CountKind::C1: return "C1";
    case CountKind::C2: return "C2";
    case CountKind::C3: return "C3";
    case CountKind::I2: return "I2";
    case CountKind::I3: return "I3";
    case CountKind::IkU: return "IkU";
    case CountKind::NC3: return "NC3";
    case CountKind::Kernel: return "KERNEL";
    case CountKind::Omega3: return "OMEGA3";
    case CountKind::Omega2Sf: return "OMEGA2SF";
    case CountKind::T: return "T";
    case CountKind::S: return "S";
    case CountKind::Lemma2: return "LEMMA2";
    }
    return "?";
}

std::string_view to_string(CountMethod m)
{
    switch (m) {
    case CountMethod::Formula: return "formula";
    case CountMethod::Brute: return "brute";
    case CountMethod::Recursion: return "recursion";
    }
    return "?";
}

CountKind parse_count_kind(std::string_view text)
{
    const std::string s = upper(text);
    for (CountKind k : {CountKind::C1, CountKind::C2, CountKind::C3, CountKind::I2, CountKind::I3, CountKind::IkU,
                        CountKind::NC3, CountKind::Kernel, CountKind::Omega3, CountKind::Omega2Sf, CountKind::T,
                        CountKind::S, CountKind::Lemma2}) {
        if (upper(to_string(k)) == s)
            return k;
    }
    throw InvalidArgument("unknown count kind '" + std::string(text) + "'");
}

CountMethod parse_count_method(std::string_view text)
{
    const std::string s = upper(text);
    if (s == "FORMULA")
        return CountMethod::Formula;
    if (s == "BRUTE")
        return CountMethod::Brute;
    if (s == "RECURSION")
        return CountMethod::Recursion;
    throw InvalidArgument("unknown count method '" + std::string(text) + "'");
}

bool is_squarefree_by_trial_division(std::uint64_t n)
{
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0)
            continue;
        n /= p;
        if (n % p == 0)
            return false;
    }
    return true;
}

std::int64_t coprime_count(const SieveTable& t, std::uint64_t d, std::uint64_t x)
{
    if (d == 0)
        throw InvalidArgument("T_d(x) needs d >= 1");
    std::vector<SignedDivisor> divisors;
    signed_squarefree_divisors(t, d, divisors);
    return coprime_count_from(divisors, x);
}

std::int64_t squarefree_coprime_count(const SieveTable& t, std::uint64_t d, std::uint64_t x)
{
    if (d == 0)
        throw InvalidArgument("S_d(x) needs d >= 1");
    if (x == 0)
        return 0;
    if (isqrt(x) > t.limit())
        throw CapacityError("S_d(x): sqrt(x) exceeds sieve limit " + std::to_string(t.limit()));
    std::vector<SignedDivisor> divisors;
    signed_squarefree_divisors(t, d, divisors);
    return squarefree_coprime_from(t, d, divisors, x);
}

CountResult carefree_count(const SieveTable& t, std::uint64_t x, CountMethod method, C1Strategy strategy)
{
    return timed(CountKind::C1, x, method, [&]() -> std::int64_t {
        switch (method) {
        case CountMethod::Brute:
            return brute_force_oracle(CountKind::C1, x);
        case CountMethod::Formula:
            require_table(t, x, "C1");
            if (strategy == C1Strategy::DSum ||
                (strategy == C1Strategy::Auto && x <= CountCaps::kC1DSumDefault))
                return c1_dsum(t, x);
            return c1_asum(t, x);
        case CountMethod::Recursion: break;
        }
        throw InvalidArgument("C1 has no recursion method");
    });
}

CountResult strongly_carefree_count(const SieveTable& t, std::uint64_t x, CountMethod method)
{
    return timed(CountKind::C2, x, method, [&]() -> std::int64_t {
        switch (method) {
        case CountMethod::Brute:
            return brute_force_oracle(CountKind::C2, x);
        case CountMethod::Formula:
            require_table(t, x, "C2");
            require_cap(x, CountCaps::kC2Formula, "C2 formula");
            return c2_dsum(t, x);
        case CountMethod::Recursion: break;
        }
        throw InvalidArgument("C2 has no recursion method");
    });
}

CountResult weakly_carefree_count(const SieveTable& t, std::uint64_t x, CountMethod method)
{
    return timed(CountKind::C3, x, method, [&]() -> std::int64_t {
        switch (method) {
        case CountMethod::Brute:
            return brute_force_oracle(CountKind::C3, x);
        case CountMethod::Formula:
            return 2 * carefree_count(t, x).count - strongly_carefree_count(t, x).count;
        case CountMethod::Recursion: break;
        }
        throw InvalidArgument("C3 has no recursion method");
    });
}

CountResult coprime_pair_count(const SieveTable& t, std::uint64_t x, CountMethod method)
{
    return timed(CountKind::I2, x, method, [&]() -> std::int64_t {
        switch (method) {
        case CountMethod::Brute:
            return brute_force_oracle(CountKind::I2, x);
        case CountMethod::Formula:
            require_table(t, x, "I2");
            return i2_formula(t, x);
        case CountMethod::Recursion:
            require_cap(x, CountCaps::kRecursion, "I2 recursion");
            return pairwise_coprime_count_recursive(t, 2, 1, x);
        }
        return 0;
    });
}

std::int64_t triple_mobius_sum(const SieveTable& t, std::uint64_t x, std::array<int, 3> nesting, bool descending_outer)
{
    require_table(t, x, "I3");
    {
        auto sorted = nesting;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != std::array<int, 3>{0, 1, 2})
            throw InvalidArgument("nesting must be a permutation of {0, 1, 2}");
    }
    if (x == 0)
        return 0;

    std::vector<std::uint64_t> squarefree;
    for (std::uint64_t d = 1; d <= x; ++d) {
        if (t.mobius(d) != 0)
            squarefree.push_back(d);
    }
    auto lcm_within = [x](std::uint64_t a, std::uint64_t b) {
        const std::uint64_t l = a / std::gcd(a, b) * b;
        return l <= x ? l : 0;
    };

    // partners[i]: squarefree e with lcm(squarefree[i], e) <= x
    std::vector<std::vector<std::uint64_t>> partners(squarefree.size());
    for (std::size_t i = 0; i < squarefree.size(); ++i) {
        for (std::uint64_t e : squarefree) {
            if (lcm_within(squarefree[i], e) != 0)
                partners[i].push_back(e);
        }
    }

    i128 sum = 0;
    const std::size_t count = squarefree.size();
    for (std::size_t step = 0; step < count; ++step) {
        const std::size_t i = descending_outer ? count - 1 - step : step;
        const std::uint64_t a = squarefree[i];
        for (std::uint64_t b : partners[i]) {
            for (std::uint64_t c : partners[i]) {
                if (lcm_within(b, c) == 0)
                    continue;
                std::array<std::uint64_t, 3> d{};
                d[nesting[0]] = a;
                d[nesting[1]] = b;
                d[nesting[2]] = c;
                const int mu = t.mobius(d[0]) * t.mobius(d[1]) * t.mobius(d[2]);
                const auto f12 = static_cast<i128>(x / lcm_within(d[0], d[1]));
                const auto f13 = static_cast<i128>(x / lcm_within(d[0], d[2]));
                const auto f23 = static_cast<i128>(x / lcm_within(d[1], d[2]));
                sum += mu * f12 * f13 * f23;
            }
        }
    }
    return static_cast<std::int64_t>(sum);
}

CountResult pairwise_coprime_triple_count(const SieveTable& t, std::uint64_t x, CountMethod method)
{
    return timed(CountKind::I3, x, method, [&]() -> std::int64_t {
        switch (method) {
        case CountMethod::Brute:
            return brute_force_oracle(CountKind::I3, x);
        case CountMethod::Formula:
            require_cap(x, CountCaps::kI3Formula, "I3 formula");
            return triple_mobius_sum(t, x, {0, 1, 2});
        case CountMethod::Recursion:
            return pairwise_coprime_count_recursive(t, 3, 1, x);
        }
        return 0;
    });
}

std::int64_t pairwise_coprime_count_recursive(const SieveTable& t, int k, std::uint64_t u, std::uint64_t n)
{
    if (k < 1)
        throw InvalidArgument("I_k^(u) needs k >= 1");
    if (u == 0)
        throw InvalidArgument("I_k^(u) needs u >= 1");
    if (k > CountCaps::kRecursionDepth)
        throw CapacityError("recursion depth k = " + std::to_string(k) + " exceeds cap " +
                            std::to_string(CountCaps::kRecursionDepth));
    require_cap(n, CountCaps::kRecursion, "I_k^(u) recursion");
    require_table(t, n, "I_k^(u) recursion");
    if (n == 0)
        return 0;
    TupleRecursion rec(t, n);
    return rec.count(k, rec.mask_of(u, t));
}

std::int64_t coprime_to_first_pairs(const SieveTable& t, std::uint64_t x)
{
    require_table(t, x, "sum T_a(x)^2");
    std::vector<SignedDivisor> divisors;
    std::int64_t sum = 0;
    for (std::uint64_t a = 1; a <= x; ++a) {
        signed_squarefree_divisors(t, a, divisors);
        const std::int64_t ta = coprime_count_from(divisors, x);
        sum += ta * ta;
    }
    return sum;
}

CountResult noncoprime_triple_count(const SieveTable& t, std::uint64_t x, CountMethod method)
{
    return timed(CountKind::NC3, x, method, [&]() -> std::int64_t {
        switch (method) {
        case CountMethod::Brute:
            return brute_force_oracle(CountKind::NC3, x);
        case CountMethod::Formula: {
            const auto xi = static_cast<std::int64_t>(x);
            return xi * xi * xi - 3 * xi * coprime_pair_count(t, x).count + 3 * coprime_to_first_pairs(t, x) -
                   pairwise_coprime_triple_count(t, x).count;
        }
        case CountMethod::Recursion: break;
        }
        throw InvalidArgument("NC3 has no recursion method");
    });
}

std::int64_t kernel_sum(const SieveTable& t, std::uint64_t x)
{
    require_table(t, x, "kernel sum");
    std::int64_t sum = 0;
    for (std::uint64_t n = 1; n <= x; ++n)
        sum += static_cast<std::int64_t>(t.radical(n));
    return sum;
}

OmegaPowerSums omega_power_sums(const SieveTable& t, std::uint64_t x)
{
    require_table(t, x, "omega power sums");
    static constexpr std::array<std::int64_t, 16> pow3 = [] {
        std::array<std::int64_t, 16> p{};
        p[0] = 1;
        for (std::size_t i = 1; i < p.size(); ++i)
            p[i] = 3 * p[i - 1];
        return p;
    }();
    OmegaPowerSums s;
    for (std::uint64_t n = 1; n <= x; ++n) {
        const unsigned w = t.omega(n);
        s.three_pow_omega += pow3[w];
        if (t.mobius(n) != 0)
            s.squarefree_two_pow_omega += std::int64_t{1} << w;
    }
    return s;
}

Lemma2Sums lemma2_sums(const SieveTable& t, std::uint64_t x)
{
    require_cap(x, CountCaps::kLemma2, "Lemma2 sums");
    require_table(t, x, "Lemma2 sums");
    using Integer = PrecisionReal::Integer;
    using Rational = PrecisionReal::Rational;

    Integer common = 1;
    for (std::uint64_t d = 2; d <= x; ++d)
        common = common / boost::multiprecision::gcd(common, Integer(d)) * d;

    Integer num2 = 0;
    Integer num4 = 0;
    PrecisionReal root_sum(0);
    for (std::uint64_t d = 1; d <= x; ++d) {
        const unsigned w = t.omega(d);
        const Integer share = common / d;
        num2 += share << w;
        num4 += share << (2 * w);
        PrecisionReal term(std::int64_t{1} << w);
        term /= sqrt(PrecisionReal(static_cast<std::int64_t>(d)));
        root_sum += term;
    }
    Lemma2Sums out;
    out.two_pow_omega_over_d = Rational(num2, common);
    out.four_pow_omega_over_d = Rational(num4, common);
    out.two_pow_omega_over_sqrt_d = root_sum;
    out.two_pow_omega_over_sqrt_d.require(20);
    return out;
}

std::int64_t brute_force_oracle(CountKind kind, std::uint64_t x, int k)
{
    if (x == 0)
        return 0;
    switch (kind) {
    case CountKind::C1:
    case CountKind::C2:
    case CountKind::C3:
    case CountKind::I2:
        require_cap(x, CountCaps::kBrutePairs, "brute pairs");
        return brute_pairs(kind, x);
    case CountKind::I3:
        require_cap(x, CountCaps::kBruteTriples, "brute triples");
        return brute_triples(x);
    case CountKind::IkU: {
        if (k < 1 || k > 4)
            throw InvalidArgument("brute k-tuples support 1 <= k <= 4");
        require_cap(x, CountCaps::kBruteTuples, "brute k-tuples");
        std::vector<std::uint64_t> chosen;
        return brute_tuples(chosen, k, x);
    }
    case CountKind::NC3:
        require_cap(x, CountCaps::kNC3Brute, "brute NC3");
        return brute_noncoprime_triples(x);
    default: break;
    }
    throw InvalidArgument("no brute-force oracle for " + std::string(to_string(kind)));
}

} // namespace carefree
