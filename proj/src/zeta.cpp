#include "carefree/zeta.hpp"

#include "carefree/errors.hpp"
#include "carefree/sieve.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <vector>

namespace carefree {

using Float = PrecisionReal::Float;
using Rational = PrecisionReal::Rational;

namespace {

constexpr unsigned kMaxBernoulli = 202;
constexpr int kTargetDigits = PrecisionReal::kMaxPrecision + PrecisionReal::kGuardDigits;

const std::vector<Rational>& bernoulli_table()
{
    static const std::vector<Rational> table = [] {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        std::vector<Rational> b(kMaxBernoulli + 1);
        b[0] = 1;
        for (unsigned m = 1; m <= kMaxBernoulli; ++m) {
            if (m > 1 && m % 2 == 1) {
                b[m] = 0;
                continue;
            }
            Rational sum = 0;
            PrecisionReal::Integer binom = 1; // C(m+1, j)
            for (unsigned j = 0; j < m; ++j) {
                if (b[j] != 0)
                    sum += Rational(binom) * b[j];
                binom = binom * (m + 1 - j) / (j + 1);
            }
            b[m] = -sum / Rational(m + 1);
        }
        return b;
    }();
    return table;
}

// B_2k / (2k)! for k = 1..kMaxBernoulli/2.
const std::vector<Float>& euler_maclaurin_coefficients()
{
    static const std::vector<Float> coeffs = [] {
        const auto& b = bernoulli_table();
        std::vector<Float> c(kMaxBernoulli / 2 + 1);
        PrecisionReal::Integer factorial = 1;
        for (unsigned n = 1; n <= kMaxBernoulli; ++n) {
            factorial *= n;
            if (n % 2 == 0)
                c[n / 2] = Float(numerator(b[n])) / Float(denominator(b[n])) / Float(factorial);
        }
        return c;
    }();
    return coeffs;
}

// log of |B_2k/(2k)!| * (s)_(2k-1) * N^(1-s-2k), the k-th correction magnitude.
double log_correction(unsigned s, unsigned k, double n)
{
    const double two_k = 2.0 * k;
    const double log_coeff = std::log(2.0) - two_k * std::log(2.0 * std::numbers::pi);
    return log_coeff + std::lgamma(s + two_k - 1.0) - std::lgamma(static_cast<double>(s)) +
           (1.0 - s - two_k) * std::log(n);
}

PrecisionReal compute_zeta_minus_one(unsigned s)
{
    // Target: relative accuracy 10^-kTargetDigits against zeta(s) - 1 ~ 2^-s.
    const double log_tau = -static_cast<double>(s) * std::log(2.0) - (kTargetDigits + 2) * std::log(10.0);

    unsigned n_cut = 8;
    unsigned order = 0;
    for (;;) {
        order = 0;
        for (unsigned k = 1; k < kMaxBernoulli / 2; ++k) {
            if (log_correction(s, k + 1, n_cut) + std::log(2.0) < log_tau) {
                order = k;
                break;
            }
            if (log_correction(s, k + 1, n_cut) > log_correction(s, k, n_cut))
                break;
        }
        if (order != 0)
            break;
        n_cut *= 2;
    }

    const auto& coeff = euler_maclaurin_coefficients();
    Float sum = 0;
    for (unsigned n = 2; n < n_cut; ++n)
        sum += boost::multiprecision::pow(Float(n), -static_cast<int>(s));

    const Float big_n = n_cut;
    const Float n_pow = boost::multiprecision::pow(big_n, -static_cast<int>(s)); // N^-s
    sum += n_pow * big_n / (s - 1);
    sum += n_pow / 2;

    // rising = (s)_(2k-1), power = N^(1-s-2k)
    Float rising = s;
    Float power = n_pow / big_n;
    const Float inv_n2 = 1 / (big_n * big_n);
    Float omitted = 0;
    for (unsigned k = 1; k <= order + 1; ++k) {
        const Float term = coeff[k] * rising * power;
        if (k <= order)
            sum += term;
        else
            omitted = abs(term);
        rising *= Float(s + 2 * k - 1) * Float(s + 2 * k);
        power *= inv_n2;
    }

    const Float rounding = PrecisionReal::unit_roundoff(sum) * (n_cut + order + 8);
    return {sum, 2 * omitted + rounding};
}

int small_mobius(unsigned m)
{
    const auto f = FactoredInteger::by_trial_division(m);
    for (const auto& [p, e] : f.prime_powers) {
        if (e > 1)
            return 0;
    }
    return f.omega() % 2 == 0 ? 1 : -1;
}

} // namespace

const Rational& bernoulli_number(unsigned n)
{
    if (n > kMaxBernoulli)
        throw InvalidArgument("Bernoulli index above " + std::to_string(kMaxBernoulli));
    return bernoulli_table()[n];
}

PrecisionReal zeta_minus_one(unsigned s)
{
    if (s < 2)
        throw InvalidArgument("zeta(s) diverges for s <= 1");
    static std::mutex mutex;
    static std::map<unsigned, PrecisionReal> cache;
    {
        std::lock_guard lock(mutex);
        if (auto it = cache.find(s); it != cache.end())
            return it->second;
    }
    PrecisionReal v = compute_zeta_minus_one(s);
    std::lock_guard lock(mutex);
    cache.emplace(s, v);
    return v;
}

PrecisionReal zeta_value(int k, int precision)
{
    if (k <= 1)
        throw InvalidArgument("zeta(" + std::to_string(k) + ") is not finite");
    if (precision < 1 || precision > PrecisionReal::kMaxPrecision)
        throw InvalidArgument("precision must be in 1.." + std::to_string(PrecisionReal::kMaxPrecision));
    PrecisionReal z = PrecisionReal(1) + zeta_minus_one(static_cast<unsigned>(k));
    z.require(precision);
    return z;
}

PrecisionReal log_zeta(unsigned s)
{
    return log1p(zeta_minus_one(s));
}

PrecisionReal prime_zeta(unsigned s)
{
    if (s < 2)
        throw InvalidArgument("prime zeta needs s >= 2");
    // log zeta(t) <= zeta(t) - 1 <= 3 * 2^-t, so the tail after m = M is below 6 * 2^-((M+1)s).
    const double log2_tau = -static_cast<double>(s) - (kTargetDigits + 2) * std::log2(10.0);
    PrecisionReal sum(0);
    unsigned m = 1;
    for (;; ++m) {
        const int mu = small_mobius(m);
        if (mu != 0) {
            PrecisionReal term = log_zeta(m * s);
            term.div_u64(m);
            if (mu > 0)
                sum += term;
            else
                sum -= term;
        }
        if (std::log2(6.0) - static_cast<double>((m + 1) * s) < log2_tau)
            break;
    }
    const Float tail = 6 * boost::multiprecision::pow(Float(2), -static_cast<int>((m + 1) * s));
    sum.add_error(tail);
    return sum;
}

} // namespace carefree
