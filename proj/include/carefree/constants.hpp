#pragma once

#include "carefree/precision_real.hpp"
#include "carefree/sieve.hpp"

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace carefree {

enum class ConstantKind {
    K1,        // carefree
    K2,        // strongly carefree
    K3,        // weakly carefree, 2 K1 - K2
    F3,        // triples with all three pairwise gcds > 1
    DK,        // pairwise-coprime k-tuples, param = k
    Zeta2SqK1, // zeta(2)^2 K1
    Zeta2CuK2, // zeta(2)^3 K2
    HM,        // (1 - 1/zeta(2))^C(n,2), param = n
};

struct ConstantId {
    ConstantKind kind = ConstantKind::K1;
    int param = 0;

    // "K1", "DK(3)", "HM(3)", "ZETA2SQ_K1", ...
    std::string name() const;
    // Accepts the names above, case-insensitively, plus "DK3"/"HM3" shorthands.
    static ConstantId parse(std::string_view text);

    friend bool operator==(const ConstantId&, const ConstantId&) = default;
};

enum class ConstantMethod { Euler, Zeta, Derived };

std::string_view to_string(ConstantMethod m);
ConstantMethod parse_constant_method(std::string_view text);

struct ConstantResult {
    ConstantId id;
    PrecisionReal value;
    ConstantMethod method = ConstantMethod::Zeta;
    int precision = 0;
    // prime limit for Euler products, k_max for zeta products, 0 for derived values
    std::uint64_t truncation = 0;
    std::chrono::nanoseconds elapsed{0};
};

// Integer exponents of the zeta-product expansions.
//   E: e_k = (1/k) sum_{d|k} b_d mu(k/d), b_0 = 2, b_1 = -1, b_{k+2} = -b_{k+1} + b_k
//   F: f_k = (1/k) sum_{d|k} (-2)^d mu(k/d)
// values[k] is defined for 2 <= k <= k_max (entries 0 and 1 are zero).
struct ExponentSequence {
    enum class Kind { E, F };
    Kind kind = Kind::E;
    std::vector<PrecisionReal::Integer> values;
    std::vector<PrecisionReal::Integer> b_values; // kind E only, indices 0..k_max

    int k_max() const { return static_cast<int>(values.size()) - 1; }
};

// Both throw std::logic_error if a divisor sum is not divisible by k.
ExponentSequence exponent_sequence_e(int k_max);
ExponentSequence exponent_sequence_f(int k_max);

// Smallest k_max whose analytic tail bound is below 10^-(precision + 2).
int zeta_product_k_max(ExponentSequence::Kind kind, int precision);

void check_precision(int precision);

// K1 = prod_{k>=2} zeta(k)^-e_k.
ConstantResult carefree_constant(int precision);
// K2 = (1/2) prod_{k>=2} (zeta(k)(1 - 2^-k))^-f_k.
ConstantResult strongly_carefree_constant(int precision);

enum class EulerFactorKind {
    K1,       // zeta(2)^-1   prod (1 - 1/(p(p+1)))
    K2FormA,  // zeta(2)^-2   prod (1 - 1/(p+1)^2)
    K2FormB,  // zeta(2)^-1   prod (1 - 2/(p(p+1)))
    K2FormC,  //              prod (1 - 1/p)^2 (1 + 2/p)
    DK,       //              prod (1 - 1/p)^(k-1) (1 + (k-1)/p)
};

struct EulerFactorId {
    EulerFactorKind kind = EulerFactorKind::K1;
    int k = 0; // DK only, k >= 2

    std::string name() const;
};

// Prefactor times the product of local factors over primes <= prime_limit, with
// no tail correction. Needs prime_limit <= t.limit().
PrecisionReal partial_euler_product(const SieveTable& t, EulerFactorId id, std::uint64_t prime_limit);

// Partial product times exp(log of the tail over p > prime_limit), the tail
// expanded as sum_j c_j P_{>prime_limit}(j) with prime-zeta values. The error
// bound covers the truncated j-series, the prime-zeta truncations and rounding.
ConstantResult euler_product(const SieveTable& t, EulerFactorId id, std::uint64_t prime_limit, int precision);

// K3, F3, zeta(2)^2 K1, zeta(2)^3 K2, HM(3), in that order.
std::vector<ConstantResult> derived_constants(int precision);

// (1 - 1/zeta(2))^C(n,2)
ConstantResult havas_majewski(int n, int precision);

// Any supported constant by its preferred (or requested) method. Euler-product
// requests use prime_limit and need a sieve that covers it.
ConstantResult compute_constant(const ConstantId& id, int precision, ConstantMethod method,
                                const SieveTable* sieve = nullptr, std::uint64_t prime_limit = 1'000'000);

ConstantMethod default_method(const ConstantId& id);

// High-precision values used as density targets, computed once per process at 30 digits.
struct DensityTargets {
    PrecisionReal zeta2;
    PrecisionReal k1;
    PrecisionReal k2;
    PrecisionReal k3;
    PrecisionReal f3;
    PrecisionReal coprime; // 1/zeta(2)
};
const DensityTargets& density_targets();

} // namespace carefree
