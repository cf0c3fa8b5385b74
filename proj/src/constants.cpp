#include "carefree/constants.hpp"

#include "carefree/errors.hpp"
#include "carefree/zeta.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace carefree {

using Float = PrecisionReal::Float;
using Integer = PrecisionReal::Integer;

namespace {

using Clock = std::chrono::steady_clock;

int mobius_small(int n)
{
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p != 0)
            continue;
        n /= p;
        if (n % p == 0)
            return 0;
        result = -result;
    }
    if (n > 1)
        result = -result;
    return result;
}

// (1/k) sum_{d|k} a_d mu(k/d), checked for exact divisibility.
std::vector<Integer> mobius_invert_over_k(const std::vector<Integer>& a, int k_max, const char* label)
{
    std::vector<Integer> out(static_cast<std::size_t>(k_max) + 1, 0);
    for (int k = 2; k <= k_max; ++k) {
        Integer sum = 0;
        for (int d = 1; d <= k; ++d) {
            if (k % d != 0)
                continue;
            const int mu = mobius_small(k / d);
            if (mu > 0)
                sum += a[d];
            else if (mu < 0)
                sum -= a[d];
        }
        if (sum % k != 0)
            throw std::logic_error(std::string(label) + " divisor sum not divisible by k = " + std::to_string(k));
        out[k] = sum / k;
    }
    return out;
}

std::string upper(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::toupper(c); });
    return out;
}

PrecisionReal exponent_product_log(const ExponentSequence& seq, bool odd_part)
{
    // sum_k c_k log(zeta(k)) or sum_k c_k log(zeta(k)(1 - 2^-k))
    PrecisionReal sum(0);
    for (int k = 2; k <= seq.k_max(); ++k) {
        if (seq.values[k] == 0)
            continue;
        PrecisionReal l = log_zeta(static_cast<unsigned>(k));
        if (odd_part) {
            const Float half_pow = boost::multiprecision::pow(Float(2), -k);
            l += log1p(PrecisionReal(-half_pow, PrecisionReal::unit_roundoff(half_pow)));
        }
        sum += PrecisionReal::exact(seq.values[k]) * l;
    }
    return sum;
}

Float zeta_product_tail_bound(ExponentSequence::Kind kind, int k_max)
{
    const double k1 = k_max + 1.0;
    if (kind == ExponentSequence::Kind::E) {
        // |e_k| <= 4 phi^k / k and log zeta(k) < 2^(2-k): tail <= 16/(K+1) (phi/2)^(K+1) / (1 - phi/2)
        const double ratio = (1.0 + std::sqrt(5.0)) / 4.0;
        return Float(16.0 / k1 / (1.0 - ratio)) * boost::multiprecision::pow(Float(ratio), k_max + 1);
    }
    // |f_k| <= 2 * 2^k / k and log(zeta(k)(1 - 2^-k)) < 3 * 3^-k: tail <= 6/(K+1) (2/3)^(K+1) * 3
    return Float(18.0 / k1) * boost::multiprecision::pow(Float(2) / 3, k_max + 1);
}

} // namespace

std::string ConstantId::name() const
{
    switch (kind) {
    case ConstantKind::K1: return "K1";
    case ConstantKind::K2: return "K2";
    case ConstantKind::K3: return "K3";
    case ConstantKind::F3: return "F3";
    case ConstantKind::DK: return "DK(" + std::to_string(param) + ")";
    case ConstantKind::Zeta2SqK1: return "ZETA2SQ_K1";
    case ConstantKind::Zeta2CuK2: return "ZETA2CU_K2";
    case ConstantKind::HM: return "HM(" + std::to_string(param) + ")";
    }
    return "?";
}

ConstantId ConstantId::parse(std::string_view text)
{
    const std::string s = upper(text);
    if (s == "K1")
        return {ConstantKind::K1, 0};
    if (s == "K2")
        return {ConstantKind::K2, 0};
    if (s == "K3")
        return {ConstantKind::K3, 0};
    if (s == "F3")
        return {ConstantKind::F3, 0};
    if (s == "ZETA2SQ_K1")
        return {ConstantKind::Zeta2SqK1, 0};
    if (s == "ZETA2CU_K2")
        return {ConstantKind::Zeta2CuK2, 0};
    for (auto [prefix, kind] : {std::pair{"DK", ConstantKind::DK}, std::pair{"HM", ConstantKind::HM}}) {
        if (s.rfind(prefix, 0) != 0)
            continue;
        std::string digits = s.substr(2);
        if (digits.size() >= 2 && digits.front() == '(' && digits.back() == ')')
            digits = digits.substr(1, digits.size() - 2);
        if (digits.empty() || digits.size() > 3 ||
            !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }))
            break;
        const int n = std::stoi(digits);
        if (n < 2)
            throw InvalidArgument(std::string(prefix) + " parameter must be at least 2");
        return {kind, n};
    }
    throw InvalidArgument("unknown constant id '" + std::string(text) + "'");
}

std::string_view to_string(ConstantMethod m)
{
    switch (m) {
    case ConstantMethod::Euler: return "euler";
    case ConstantMethod::Zeta: return "zeta";
    case ConstantMethod::Derived: return "derived";
    }
    return "?";
}

ConstantMethod parse_constant_method(std::string_view text)
{
    const std::string s = upper(text);
    if (s == "EULER")
        return ConstantMethod::Euler;
    if (s == "ZETA")
        return ConstantMethod::Zeta;
    if (s == "DERIVED")
        return ConstantMethod::Derived;
    throw InvalidArgument("unknown constant method '" + std::string(text) + "'");
}

ExponentSequence exponent_sequence_e(int k_max)
{
    if (k_max < 2)
        throw InvalidArgument("k_max must be at least 2");
    ExponentSequence seq;
    seq.kind = ExponentSequence::Kind::E;
    seq.b_values.resize(static_cast<std::size_t>(k_max) + 1);
    seq.b_values[0] = 2;
    seq.b_values[1] = -1;
    for (int k = 2; k <= k_max; ++k)
        seq.b_values[k] = -seq.b_values[k - 1] + seq.b_values[k - 2];
    seq.values = mobius_invert_over_k(seq.b_values, k_max, "e_k");
    return seq;
}

ExponentSequence exponent_sequence_f(int k_max)
{
    if (k_max < 2)
        throw InvalidArgument("k_max must be at least 2");
    ExponentSequence seq;
    seq.kind = ExponentSequence::Kind::F;
    std::vector<Integer> powers(static_cast<std::size_t>(k_max) + 1);
    powers[0] = 1;
    for (int d = 1; d <= k_max; ++d)
        powers[d] = powers[d - 1] * -2;
    seq.values = mobius_invert_over_k(powers, k_max, "f_k");
    return seq;
}

void check_precision(int precision)
{
    if (precision < PrecisionReal::kMinPrecision || precision > PrecisionReal::kMaxPrecision)
        throw InvalidArgument("precision " + std::to_string(precision) + " outside supported range " +
                              std::to_string(PrecisionReal::kMinPrecision) + ".." +
                              std::to_string(PrecisionReal::kMaxPrecision));
}

int zeta_product_k_max(ExponentSequence::Kind kind, int precision)
{
    const Float target = boost::multiprecision::pow(Float(10), -(precision + 2));
    int k = 2;
    while (zeta_product_tail_bound(kind, k) >= target)
        ++k;
    return k;
}

ConstantResult carefree_constant(int precision)
{
    check_precision(precision);
    const auto start = Clock::now();
    const int k_max = zeta_product_k_max(ExponentSequence::Kind::E, precision);
    const ExponentSequence e = exponent_sequence_e(k_max);

    PrecisionReal log_k1 = -exponent_product_log(e, false);
    log_k1.add_error(zeta_product_tail_bound(e.kind, k_max));

    ConstantResult r;
    r.id = {ConstantKind::K1, 0};
    r.value = exp(log_k1);
    r.value.require(precision);
    r.method = ConstantMethod::Zeta;
    r.precision = precision;
    r.truncation = static_cast<std::uint64_t>(k_max);
    r.elapsed = Clock::now() - start;
    return r;
}

ConstantResult strongly_carefree_constant(int precision)
{
    check_precision(precision);
    const auto start = Clock::now();
    const int k_max = zeta_product_k_max(ExponentSequence::Kind::F, precision);
    const ExponentSequence f = exponent_sequence_f(k_max);

    PrecisionReal log_2k2 = -exponent_product_log(f, true);
    log_2k2.add_error(zeta_product_tail_bound(f.kind, k_max));

    ConstantResult r;
    r.id = {ConstantKind::K2, 0};
    r.value = exp(log_2k2);
    r.value.div_u64(2);
    r.value.require(precision);
    r.method = ConstantMethod::Zeta;
    r.precision = precision;
    r.truncation = static_cast<std::uint64_t>(k_max);
    r.elapsed = Clock::now() - start;
    return r;
}

ConstantResult havas_majewski(int n, int precision)
{
    check_precision(precision);
    if (n < 2)
        throw InvalidArgument("HM(n) needs n >= 2");
    const auto start = Clock::now();
    const PrecisionReal z2 = zeta_value(2, PrecisionReal::kMaxPrecision);
    const PrecisionReal base = PrecisionReal(1) - PrecisionReal(1) / z2;
    ConstantResult r;
    r.id = {ConstantKind::HM, n};
    r.value = pow(base, static_cast<unsigned>(n * (n - 1) / 2));
    r.value.require(precision);
    r.method = ConstantMethod::Derived;
    r.precision = precision;
    r.elapsed = Clock::now() - start;
    return r;
}

std::vector<ConstantResult> derived_constants(int precision)
{
    check_precision(precision);
    const auto start = Clock::now();
    const int working = std::min(precision + 5, PrecisionReal::kMaxPrecision);
    const PrecisionReal k1 = carefree_constant(working).value;
    const PrecisionReal k2 = strongly_carefree_constant(working).value;
    const PrecisionReal z2 = zeta_value(2, PrecisionReal::kMaxPrecision);

    auto make = [&](ConstantKind kind, PrecisionReal v) {
        ConstantResult r;
        r.id = {kind, 0};
        r.value = std::move(v);
        r.value.require(precision);
        r.method = ConstantMethod::Derived;
        r.precision = precision;
        r.elapsed = Clock::now() - start;
        return r;
    };

    std::vector<ConstantResult> out;
    out.push_back(make(ConstantKind::K3, PrecisionReal(2) * k1 - k2));
    out.push_back(make(ConstantKind::F3, PrecisionReal(1) - PrecisionReal(3) / z2 + PrecisionReal(3) * k1 - k2));
    out.push_back(make(ConstantKind::Zeta2SqK1, z2 * z2 * k1));
    out.push_back(make(ConstantKind::Zeta2CuK2, z2 * z2 * z2 * k2));
    out.push_back(havas_majewski(3, precision));
    return out;
}

ConstantMethod default_method(const ConstantId& id)
{
    switch (id.kind) {
    case ConstantKind::K1:
    case ConstantKind::K2: return ConstantMethod::Zeta;
    case ConstantKind::DK: return ConstantMethod::Euler;
    default: return ConstantMethod::Derived;
    }
}

ConstantResult compute_constant(const ConstantId& id, int precision, ConstantMethod method, const SieveTable* sieve,
                                 std::uint64_t prime_limit)
{
    check_precision(precision);
    auto need_sieve = [&]() -> const SieveTable& {
        if (sieve == nullptr)
            throw InvalidArgument("Euler-product evaluation needs a sieve table");
        return *sieve;
    };

    switch (id.kind) {
    case ConstantKind::K1:
        if (method == ConstantMethod::Zeta)
            return carefree_constant(precision);
        if (method == ConstantMethod::Euler)
            return euler_product(need_sieve(), {EulerFactorKind::K1, 0}, prime_limit, precision);
        break;
    case ConstantKind::K2:
        if (method == ConstantMethod::Zeta)
            return strongly_carefree_constant(precision);
        if (method == ConstantMethod::Euler)
            return euler_product(need_sieve(), {EulerFactorKind::K2FormA, 0}, prime_limit, precision);
        break;
    case ConstantKind::DK:
        if (method == ConstantMethod::Euler)
            return euler_product(need_sieve(), {EulerFactorKind::DK, id.param}, prime_limit, precision);
        break;
    case ConstantKind::HM:
        if (method == ConstantMethod::Derived)
            return havas_majewski(id.param, precision);
        break;
    case ConstantKind::K3:
    case ConstantKind::F3:
    case ConstantKind::Zeta2SqK1:
    case ConstantKind::Zeta2CuK2:
        if (method == ConstantMethod::Derived) {
            for (auto& r : derived_constants(precision)) {
                if (r.id == id)
                    return r;
            }
        }
        break;
    }
    throw InvalidArgument("method '" + std::string(to_string(method)) + "' is not available for " + id.name());
}

const DensityTargets& density_targets()
{
    static const DensityTargets targets = [] {
        constexpr int digits = 30;
        DensityTargets t;
        t.zeta2 = zeta_value(2, PrecisionReal::kMaxPrecision);
        t.k1 = carefree_constant(digits).value;
        t.k2 = strongly_carefree_constant(digits).value;
        t.k3 = PrecisionReal(2) * t.k1 - t.k2;
        t.f3 = PrecisionReal(1) - PrecisionReal(3) / t.zeta2 + PrecisionReal(3) * t.k1 - t.k2;
        t.coprime = PrecisionReal(1) / t.zeta2;
        return t;
    }();
    return targets;
}

} // namespace carefree
