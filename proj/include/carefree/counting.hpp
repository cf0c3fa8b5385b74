#pragma once

#include "carefree/precision_real.hpp"
#include "carefree/sieve.hpp"

#include <array>
#include <chrono>
#include <cstdint>
#include <string_view>

namespace carefree {

// Counting functions. Pair counts are over 1 <= a, b <= x, triple counts over
// 1 <= a, b, c <= x. Every function returns 0 for x = 0.
enum class CountKind {
    C1,       // carefree couples: a squarefree, gcd(a, b) = 1
    C2,       // strongly carefree: a and b squarefree, gcd(a, b) = 1
    C3,       // weakly carefree: gcd(a, b) = 1, a or b squarefree
    I2,       // coprime pairs
    I3,       // pairwise coprime triples
    IkU,      // pairwise coprime k-tuples, each coordinate coprime to u
    NC3,      // triples with all three pairwise gcds > 1
    Kernel,   // sum of squarefree kernels
    Omega3,   // sum of 3^omega(n)
    Omega2Sf, // sum of mu(n)^2 2^omega(n)
    T,        // integers coprime to d
    S,        // squarefree integers coprime to d
    Lemma2,   // the three 2^omega / 4^omega sums
};

enum class CountMethod { Formula, Brute, Recursion };

std::string_view to_string(CountKind k);
std::string_view to_string(CountMethod m);
CountKind parse_count_kind(std::string_view text);
CountMethod parse_count_method(std::string_view text);

struct CountResult {
    CountKind kind = CountKind::C1;
    std::uint64_t x = 0;
    std::int64_t count = 0;
    CountMethod method = CountMethod::Formula;
    std::chrono::nanoseconds elapsed{0};
};

// Caps on x (engineering limits, not properties of the counts).
struct CountCaps {
    static constexpr std::uint64_t kC2Formula = 10'000'000;
    static constexpr std::uint64_t kC1DSumDefault = 100'000; // d-sum is the default up to here
    static constexpr std::uint64_t kI3Formula = 2'000;
    static constexpr std::uint64_t kRecursion = 400;
    static constexpr int kRecursionDepth = 6;
    static constexpr std::uint64_t kNC3Brute = 2'000;
    static constexpr std::uint64_t kBrutePairs = 3'000;
    static constexpr std::uint64_t kBruteTriples = 200;
    static constexpr std::uint64_t kBruteTuples = 40;
    static constexpr std::uint64_t kLemma2 = 5'000;
};

// T_d(x) = #{n <= x : gcd(n, d) = 1} = sum_{a | d} mu(a) floor(x / a).
std::int64_t coprime_count(const SieveTable& t, std::uint64_t d, std::uint64_t x);

// S_d(x) = #{n <= x : n squarefree, gcd(n, d) = 1}
//        = sum_{m <= sqrt x, gcd(m, d) = 1} mu(m) T_d(floor(x / m^2)).
std::int64_t squarefree_coprime_count(const SieveTable& t, std::uint64_t d, std::uint64_t x);

// C1 has two exact identities:
//   ASum: sum_{a <= x} mu(a)^2 T_a(x)
//   DSum: sum_{d <= x} mu(d) floor(x/d) S_d(floor(x/d))
// Auto picks DSum up to CountCaps::kC1DSumDefault and ASum above.
enum class C1Strategy { Auto, ASum, DSum };

CountResult carefree_count(const SieveTable& t, std::uint64_t x, CountMethod method = CountMethod::Formula,
                           C1Strategy strategy = C1Strategy::Auto);

// C2(x) = sum_{d <= x} mu(d) S_d(floor(x/d))^2
CountResult strongly_carefree_count(const SieveTable& t, std::uint64_t x, CountMethod method = CountMethod::Formula);

// C3(x) = 2 C1(x) - C2(x)
CountResult weakly_carefree_count(const SieveTable& t, std::uint64_t x, CountMethod method = CountMethod::Formula);

// I2(x) = sum_d mu(d) floor(x/d)^2
CountResult coprime_pair_count(const SieveTable& t, std::uint64_t x, CountMethod method = CountMethod::Formula);

// I3 by the triple Moebius identity
//   sum mu(d1) mu(d2) mu(d3) floor(x/[d1,d2]) floor(x/[d1,d3]) floor(x/[d2,d3]),
// by the I_k^(u) recursion, or by brute force.
CountResult pairwise_coprime_triple_count(const SieveTable& t, std::uint64_t x,
                                          CountMethod method = CountMethod::Formula);

// The triple Moebius sum with its three summation variables nested in the order
// given by `nesting` (a permutation of {0, 1, 2}: outermost first) and the
// outermost loop optionally run from x downwards. Exposed for symmetry checks.
std::int64_t triple_mobius_sum(const SieveTable& t, std::uint64_t x, std::array<int, 3> nesting,
                               bool descending_outer = false);

// I_k^(u)(n): k-tuples in [1, n]^k, pairwise coprime, every coordinate coprime to u.
// I_1^(u)(n) = T_u(n); I_{k+1}^(u)(n) = sum_{j <= n, gcd(j, u) = 1} I_k^(ju)(n).
std::int64_t pairwise_coprime_count_recursive(const SieveTable& t, int k, std::uint64_t u, std::uint64_t n);

// NC3 by brute force (method Brute) or by the inclusion-exclusion identity
// x^3 - 3x I2(x) + 3 sum_{a <= x} T_a(x)^2 - I3(x) (method Formula).
CountResult noncoprime_triple_count(const SieveTable& t, std::uint64_t x, CountMethod method = CountMethod::Brute);

// sum_{a <= x} T_a(x)^2, the number of (a, b, c) with gcd(a, b) = gcd(a, c) = 1.
std::int64_t coprime_to_first_pairs(const SieveTable& t, std::uint64_t x);

// sum_{n <= x} prod_{p | n} p
std::int64_t kernel_sum(const SieveTable& t, std::uint64_t x);

struct OmegaPowerSums {
    std::int64_t three_pow_omega = 0;        // sum 3^omega(n)
    std::int64_t squarefree_two_pow_omega = 0; // sum mu(n)^2 2^omega(n)
};
OmegaPowerSums omega_power_sums(const SieveTable& t, std::uint64_t x);

struct Lemma2Sums {
    PrecisionReal::Rational two_pow_omega_over_d;   // sum 2^omega(d) / d
    PrecisionReal two_pow_omega_over_sqrt_d;        // sum 2^omega(d) / sqrt(d), 20 digits
    PrecisionReal::Rational four_pow_omega_over_d;  // sum 4^omega(d) / d
};
Lemma2Sums lemma2_sums(const SieveTable& t, std::uint64_t x);

// Literal definitional counts using only gcd and trial-division squarefreeness.
// k is used by IkU only (u = 1). Caps: pairs 3000, triples 200, k-tuples 40
// (k <= 4), NC3 2000.
std::int64_t brute_force_oracle(CountKind kind, std::uint64_t x, int k = 4);

// Trial-division squarefree test, independent of any sieve table.
bool is_squarefree_by_trial_division(std::uint64_t n);

} // namespace carefree
