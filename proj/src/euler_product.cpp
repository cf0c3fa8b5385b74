#include "carefree/constants.hpp"

#include "carefree/errors.hpp"
#include "carefree/zeta.hpp"

#include <cmath>

namespace carefree {

using Float = PrecisionReal::Float;
using Integer = PrecisionReal::Integer;

namespace {

using Clock = std::chrono::steady_clock;

// Monic integer polynomial in p, coefficients of p^0..p^d.
struct MonicPoly {
    std::vector<std::int64_t> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    std::uint64_t eval(std::uint64_t p) const
    {
        std::int64_t v = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
            v = v * static_cast<std::int64_t>(p) + *it;
        return static_cast<std::uint64_t>(v);
    }

    // Cauchy bound on the roots.
    double root_bound() const
    {
        std::int64_t m = 0;
        for (int i = 0; i < degree(); ++i)
            m = std::max<std::int64_t>(m, std::abs(coeffs[i]));
        return 1.0 + static_cast<double>(m);
    }

    // s_j for log(x^d q(1/x)) = sum_j (s_j / j) x^j, j = 1..j_max (index 0 unused).
    std::vector<Integer> log_power_sums(int j_max) const
    {
        const int d = degree();
        std::vector<Integer> g(static_cast<std::size_t>(j_max) + 1, 0);
        for (int i = 0; i <= d && i <= j_max; ++i)
            g[i] = coeffs[d - i];
        std::vector<Integer> s(static_cast<std::size_t>(j_max) + 1, 0);
        for (int i = 1; i <= j_max; ++i) {
            Integer v = Integer(i) * g[i];
            for (int t = 1; t < i; ++t)
                v -= g[t] * s[i - t];
            s[i] = v;
        }
        return s;
    }
};

// Local factor num(p)/den(p) with every polynomial monic and deg num == deg den,
// times zeta(2)^-zeta2_power.
struct LocalFactor {
    std::vector<MonicPoly> num;
    std::vector<MonicPoly> den;
    unsigned zeta2_power = 0;

    double root_bound() const
    {
        double b = 1.0;
        for (const auto& q : num)
            b = std::max(b, q.root_bound());
        for (const auto& q : den)
            b = std::max(b, q.root_bound());
        return b;
    }

    int total_degree() const
    {
        int d = 0;
        for (const auto& q : num)
            d += q.degree();
        for (const auto& q : den)
            d += q.degree();
        return d;
    }

    // Integer j * c_j where log(local factor) = sum_j c_j p^-j.
    std::vector<Integer> log_coefficients_times_j(int j_max) const
    {
        std::vector<Integer> total(static_cast<std::size_t>(j_max) + 1, 0);
        for (const auto& q : num) {
            const auto s = q.log_power_sums(j_max);
            for (int j = 1; j <= j_max; ++j)
                total[j] += s[j];
        }
        for (const auto& q : den) {
            const auto s = q.log_power_sums(j_max);
            for (int j = 1; j <= j_max; ++j)
                total[j] -= s[j];
        }
        return total;
    }
};

const MonicPoly kP{{0, 1}};
const MonicPoly kPMinus1{{-1, 1}};
const MonicPoly kPPlus1{{1, 1}};
const MonicPoly kPPlus2{{2, 1}};

LocalFactor local_factor(const EulerFactorId& id)
{
    LocalFactor f;
    switch (id.kind) {
    case EulerFactorKind::K1:
        // 1 - 1/(p(p+1)) = (p^2 + p - 1) / (p (p+1))
        f.num = {MonicPoly{{-1, 1, 1}}};
        f.den = {kP, kPPlus1};
        f.zeta2_power = 1;
        break;
    case EulerFactorKind::K2FormA:
        // 1 - 1/(p+1)^2 = p (p+2) / (p+1)^2
        f.num = {kP, kPPlus2};
        f.den = {kPPlus1, kPPlus1};
        f.zeta2_power = 2;
        break;
    case EulerFactorKind::K2FormB:
        // 1 - 2/(p(p+1)) = (p-1)(p+2) / (p (p+1))
        f.num = {kPMinus1, kPPlus2};
        f.den = {kP, kPPlus1};
        f.zeta2_power = 1;
        break;
    case EulerFactorKind::K2FormC:
        f.num = {kPMinus1, kPMinus1, kPPlus2};
        f.den = {kP, kP, kP};
        break;
    case EulerFactorKind::DK:
        if (id.k < 2 || id.k > 64)
            throw InvalidArgument("DK(k) needs 2 <= k <= 64");
        f.num.assign(static_cast<std::size_t>(id.k - 1), kPMinus1);
        f.num.push_back(MonicPoly{{id.k - 1, 1}});
        f.den.assign(static_cast<std::size_t>(id.k), kP);
        break;
    }
    return f;
}

PrecisionReal zeta2_prefactor(unsigned power)
{
    PrecisionReal v(1);
    if (power == 0)
        return v;
    const PrecisionReal z2 = PrecisionReal(1) + zeta_minus_one(2);
    for (unsigned i = 0; i < power; ++i)
        v /= z2;
    return v;
}

// prod over primes of num/den, rounding bounded by one unit per operation.
PrecisionReal product_over_primes(const LocalFactor& f, const std::vector<std::uint32_t>& primes)
{
    Float v = 1;
    std::uint64_t ops = 0;
    for (std::uint32_t p : primes) {
        for (const auto& q : f.num)
            v *= q.eval(p);
        for (const auto& q : f.den)
            v /= q.eval(p);
        ops += f.num.size() + f.den.size();
    }
    return {v, PrecisionReal::unit_roundoff(v) * (ops + 1) * 2};
}

} // namespace

std::string EulerFactorId::name() const
{
    switch (kind) {
    case EulerFactorKind::K1: return "K1";
    case EulerFactorKind::K2FormA: return "K2_FORM_A";
    case EulerFactorKind::K2FormB: return "K2_FORM_B";
    case EulerFactorKind::K2FormC: return "K2_FORM_C";
    case EulerFactorKind::DK: return "DK(" + std::to_string(k) + ")";
    }
    return "?";
}

PrecisionReal partial_euler_product(const SieveTable& t, EulerFactorId id, std::uint64_t prime_limit)
{
    const LocalFactor f = local_factor(id);
    return zeta2_prefactor(f.zeta2_power) * product_over_primes(f, t.primes_up_to(prime_limit));
}

ConstantResult euler_product(const SieveTable& t, EulerFactorId id, std::uint64_t prime_limit, int precision)
{
    check_precision(precision);
    const auto start = Clock::now();
    const LocalFactor f = local_factor(id);
    const double big_p = static_cast<double>(prime_limit);
    const double root_bound = f.root_bound();
    if (big_p < 2.0 * root_bound || prime_limit < 10)
        throw InvalidArgument("prime limit " + std::to_string(prime_limit) + " too small for the tail expansion of " +
                              id.name());

    // Tail of the log series beyond j_max:
    //   sum_{j>J} |c_j| P_{>P}(j) <= D P (B/P)^(J+1) / (J (J+1) (1 - B/P)),
    // from |j c_j| <= D B^j and P_{>P}(j) <= P^(1-j)/(j-1).
    const int dim = f.total_degree();
    const double log10_target = -(precision + PrecisionReal::kGuardDigits);
    auto log10_tail = [&](int j_max) {
        return std::log10(dim * big_p / (j_max * (j_max + 1.0) * (1.0 - root_bound / big_p))) +
               (j_max + 1) * std::log10(root_bound / big_p);
    };
    int j_max = 2;
    while (log10_tail(j_max) > log10_target)
        ++j_max;

    const std::vector<std::uint32_t> primes = t.primes_up_to(prime_limit);
    PrecisionReal value = zeta2_prefactor(f.zeta2_power) * product_over_primes(f, primes);

    // Partial power sums sum_{p <= P} p^-j, j = 2..j_max.
    std::vector<Float> partial(static_cast<std::size_t>(j_max) + 1, 0);
    for (std::uint32_t p : primes) {
        Float term = Float(1) / p;
        for (int j = 2; j <= j_max; ++j) {
            term /= p;
            partial[j] += term;
        }
    }

    const std::vector<Integer> jc = f.log_coefficients_times_j(j_max);
    if (jc[1] != 0)
        throw std::logic_error("local factor of " + id.name() + " is not 1 + O(1/p^2)");

    PrecisionReal log_tail(0);
    for (int j = 2; j <= j_max; ++j) {
        if (jc[j] == 0)
            continue;
        const PrecisionReal partial_j(partial[j],
                                      PrecisionReal::unit_roundoff(partial[j]) * (2 * primes.size() + j + 2));
        PrecisionReal tail_j = prime_zeta(static_cast<unsigned>(j)) - partial_j;
        tail_j *= PrecisionReal::exact(jc[j]);
        tail_j.div_u64(static_cast<std::uint64_t>(j));
        log_tail += tail_j;
    }
    log_tail.add_error(boost::multiprecision::pow(Float(10), Float(log10_tail(j_max))));
    value *= exp(log_tail);

    ConstantResult r;
    switch (id.kind) {
    case EulerFactorKind::K1: r.id = {ConstantKind::K1, 0}; break;
    case EulerFactorKind::DK: r.id = {ConstantKind::DK, id.k}; break;
    default: r.id = {ConstantKind::K2, 0}; break;
    }
    r.value = std::move(value);
    r.value.require(precision);
    r.method = ConstantMethod::Euler;
    r.precision = precision;
    r.truncation = prime_limit;
    r.elapsed = Clock::now() - start;
    return r;
}

} // namespace carefree
