#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carefree/constants.hpp"
#include "carefree/errors.hpp"
#include "carefree/zeta.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>

using namespace carefree;
using Float = PrecisionReal::Float;
using Integer = PrecisionReal::Integer;

namespace {

const SieveTable& table()
{
    static const SieveTable t(1'000'000);
    return t;
}

int naive_mobius(int n)
{
    int mu = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p)
            continue;
        n /= p;
        if (n % p == 0)
            return 0;
        mu = -mu;
    }
    return n > 1 ? -mu : mu;
}

// Oracle: the divisor sums written out directly, exact in big integers.
Integer oracle_e(int k)
{
    std::vector<Integer> b(static_cast<std::size_t>(k) + 1);
    b[0] = 2;
    if (k >= 1)
        b[1] = -1;
    for (int i = 2; i <= k; ++i)
        b[i] = -b[i - 1] + b[i - 2];
    Integer sum = 0;
    for (int d = 1; d <= k; ++d)
        if (k % d == 0)
            sum += b[d] * naive_mobius(k / d);
    return sum / k;
}

Integer oracle_f(int k)
{
    Integer sum = 0;
    for (int d = 1; d <= k; ++d) {
        if (k % d != 0)
            continue;
        Integer term = Integer(1) << d;
        if (d % 2 == 1)
            term = -term;
        sum += term * naive_mobius(k / d);
    }
    return sum / k;
}

bool within_bounds(const PrecisionReal& a, const PrecisionReal& b)
{
    return abs(a.value() - b.value()) <= a.error_bound() + b.error_bound();
}

} // namespace

TEST_CASE("exponent sequences: recurrence prefix and first values")
{
    const ExponentSequence e = exponent_sequence_e(64);
    const long prefix[] = {2, -1, 3, -4, 7, -11, 18};
    for (int i = 0; i < 7; ++i)
        CHECK(e.b_values[i] == prefix[i]);
    CHECK(e.values[2] == 2);
    CHECK(e.values[3] == -1);
    CHECK(e.values[4] == 1);

    const ExponentSequence f = exponent_sequence_f(64);
    CHECK(f.values[2] == 3);
    CHECK(f.values[3] == -2);
    CHECK(f.values[4] == 3);
}

TEST_CASE("exponent sequences match the literal divisor sums up to 64")
{
    const ExponentSequence e = exponent_sequence_e(64);
    const ExponentSequence f = exponent_sequence_f(64);
    REQUIRE(e.k_max() == 64);
    REQUIRE(f.k_max() == 64);
    for (int k = 2; k <= 64; ++k) {
        CHECK(e.values[k] == oracle_e(k));
        CHECK(f.values[k] == oracle_f(k));
    }
    CHECK_THROWS_AS(exponent_sequence_e(1), InvalidArgument);
}

TEST_CASE("K1 and K2 by zeta products")
{
    CHECK(carefree_constant(20).value.to_string(20) == "0.42824950567709444022");
    CHECK(carefree_constant(5).value.to_string(5) == "0.42825");
    CHECK(strongly_carefree_constant(20).value.to_string(20) == "0.28674742843447873411");
    CHECK(strongly_carefree_constant(5).value.to_string(5) == "0.28675");

    const ConstantResult k1 = carefree_constant(50);
    CHECK(k1.value.meets(50));
    CHECK(k1.method == ConstantMethod::Zeta);
    CHECK(k1.truncation >= 2);
    // Lower precision results lie within their bounds of the 50-digit value.
    for (int p : {5, 12, 25, 40})
        CHECK(within_bounds(carefree_constant(p).value, k1.value));

    CHECK_THROWS_AS(carefree_constant(4), InvalidArgument);
    CHECK_THROWS_AS(carefree_constant(51), InvalidArgument);
    CHECK_THROWS_AS(strongly_carefree_constant(60), InvalidArgument);
}

TEST_CASE("k_max grows with precision")
{
    for (auto kind : {ExponentSequence::Kind::E, ExponentSequence::Kind::F}) {
        int prev = 0;
        for (int p = 5; p <= 50; p += 5) {
            const int k = zeta_product_k_max(kind, p);
            CHECK(k >= prev);
            prev = k;
        }
    }
}

TEST_CASE("Euler products agree with zeta products")
{
    const auto& t = table();
    const PrecisionReal k1 = carefree_constant(30).value;
    const PrecisionReal k2 = strongly_carefree_constant(30).value;

    const ConstantResult e1 = euler_product(t, {EulerFactorKind::K1, 0}, 1'000'000, 30);
    CHECK(within_bounds(e1.value, k1));
    CHECK(e1.value.meets(25));
    CHECK(e1.truncation == 1'000'000);
    CHECK(euler_product(t, {EulerFactorKind::K1, 0}, 100'000, 25).value.to_string(5) == "0.42825");

    for (auto kind : {EulerFactorKind::K2FormA, EulerFactorKind::K2FormB, EulerFactorKind::K2FormC}) {
        const ConstantResult r = euler_product(t, {kind, 0}, 1'000'000, 30);
        CHECK(within_bounds(r.value, k2));
    }
    CHECK(within_bounds(euler_product(t, {EulerFactorKind::DK, 3}, 1'000'000, 30).value, k2));
}

TEST_CASE("the three K2 forms agree with each other at prime limit 10^6")
{
    const auto& t = table();
    const auto a = euler_product(t, {EulerFactorKind::K2FormA, 0}, 1'000'000, 30).value;
    const auto b = euler_product(t, {EulerFactorKind::K2FormB, 0}, 1'000'000, 30).value;
    const auto c = euler_product(t, {EulerFactorKind::K2FormC, 0}, 1'000'000, 30).value;
    CHECK(within_bounds(a, b));
    CHECK(within_bounds(b, c));
    CHECK(within_bounds(a, c));
}

TEST_CASE("DK(2) is 1/zeta(2)")
{
    const auto d2 = euler_product(table(), {EulerFactorKind::DK, 2}, 100'000, 30).value;
    CHECK(d2.to_string(12) == "0.607927101854");
    const Float pi = boost::math::constants::pi<Float>();
    CHECK(abs(d2.value() - Float(6) / (pi * pi)) <= d2.error_bound() + Float("1e-70"));
}

TEST_CASE("partial Euler products decrease as primes are added")
{
    const auto& t = table();
    const EulerFactorId ids[] = {{EulerFactorKind::K1, 0},      {EulerFactorKind::K2FormA, 0},
                                 {EulerFactorKind::K2FormB, 0}, {EulerFactorKind::K2FormC, 0},
                                 {EulerFactorKind::DK, 3},      {EulerFactorKind::DK, 5}};
    for (const auto& id : ids) {
        Float prev = partial_euler_product(t, id, 2).value();
        for (std::uint64_t p : {3, 5, 7, 11, 101, 1009, 10007, 100003}) {
            const Float cur = partial_euler_product(t, id, p).value();
            CHECK(cur < prev);
            prev = cur;
        }
        // The tail-corrected limit sits below every partial product.
        CHECK(euler_product(t, id, 1'000'000, 20).value.value() < prev);
    }
}

TEST_CASE("Euler product preconditions")
{
    const auto& t = table();
    CHECK_THROWS_AS(euler_product(t, {EulerFactorKind::K1, 0}, 5, 20), InvalidArgument);
    CHECK_THROWS_AS(euler_product(t, {EulerFactorKind::DK, 1}, 1000, 20), InvalidArgument);
    CHECK_THROWS_AS(euler_product(t, {EulerFactorKind::DK, 20}, 20, 20), InvalidArgument);
    CHECK_THROWS_AS(euler_product(t, {EulerFactorKind::K1, 0}, 2'000'000, 20), CapacityError);
    CHECK_THROWS_AS(euler_product(t, {EulerFactorKind::K1, 0}, 1000, 99), InvalidArgument);
}

TEST_CASE("derived constants")
{
    const auto d = derived_constants(30);
    REQUIRE(d.size() == 5);
    CHECK(d[0].id.name() == "K3");
    CHECK(d[0].value.to_string(10) == "0.5697515829");
    CHECK(d[1].id.name() == "F3");
    // Reference digits 0.1742197830347247005 end in a truncated digit.
    CHECK(d[1].value.to_string(18) == "0.174219783034724701");
    CHECK(d[1].value.to_string(22).substr(0, 21) == "0.1742197830347247005");
    CHECK(d[2].value.to_string(6) == "1.15876");
    CHECK(d[3].value.to_string(12).substr(0, 7) == "1.27627");
    CHECK(d[4].id.name() == "HM(3)");
    CHECK(d[4].value.to_string(1) == "0.06");
    CHECK(d[4].value.to_string(3) == "0.0603");

    // Positive correlation between squarefreeness and coprimality.
    CHECK(d[2].value.value() > 1);
    CHECK(d[3].value.value() > 1);
}

TEST_CASE("derived identities hold at the arithmetic level")
{
    // derived_constants works five digits above the requested precision.
    const PrecisionReal k1 = carefree_constant(35).value;
    const PrecisionReal k2 = strongly_carefree_constant(35).value;
    const PrecisionReal z2 = zeta_value(2, 50);
    const auto d = derived_constants(30);
    const PrecisionReal k3 = PrecisionReal(2) * k1 - k2;
    const PrecisionReal f3 = PrecisionReal(1) - PrecisionReal(3) / z2 + PrecisionReal(3) * k1 - k2;
    CHECK(d[0].value.value() == k3.value());
    CHECK(d[1].value.value() == f3.value());

    const double hm = std::pow(1 - 6 / (M_PI * M_PI), 3);
    CHECK(d[4].value.to_double() == doctest::Approx(hm).epsilon(1e-14));
    CHECK(havas_majewski(4, 20).value.to_double() == doctest::Approx(std::pow(1 - 6 / (M_PI * M_PI), 6)));
    CHECK_THROWS_AS(havas_majewski(1, 20), InvalidArgument);
}

TEST_CASE("constant ids")
{
    CHECK(ConstantId::parse("K1") == ConstantId{ConstantKind::K1, 0});
    CHECK(ConstantId::parse("k2") == ConstantId{ConstantKind::K2, 0});
    CHECK(ConstantId::parse("DK(3)") == ConstantId{ConstantKind::DK, 3});
    CHECK(ConstantId::parse("DK3") == ConstantId{ConstantKind::DK, 3});
    CHECK(ConstantId::parse("HM(4)") == ConstantId{ConstantKind::HM, 4});
    CHECK(ConstantId::parse("ZETA2SQ_K1").kind == ConstantKind::Zeta2SqK1);
    CHECK(ConstantId::parse("ZETA2CU_K2").kind == ConstantKind::Zeta2CuK2);
    for (const char* name : {"K1", "K2", "K3", "F3", "DK(7)", "HM(3)", "ZETA2SQ_K1", "ZETA2CU_K2"})
        CHECK(ConstantId::parse(name).name() == name);
    CHECK_THROWS_AS(ConstantId::parse("K9"), InvalidArgument);
    CHECK_THROWS_AS(ConstantId::parse("DK(1)"), InvalidArgument);
    CHECK_THROWS_AS(parse_constant_method("magic"), InvalidArgument);
}

TEST_CASE("compute_constant dispatch")
{
    const auto& t = table();
    CHECK(default_method(ConstantId::parse("K1")) == ConstantMethod::Zeta);
    CHECK(default_method(ConstantId::parse("DK(4)")) == ConstantMethod::Euler);
    CHECK(default_method(ConstantId::parse("F3")) == ConstantMethod::Derived);

    const auto k1z = compute_constant(ConstantId::parse("K1"), 20, ConstantMethod::Zeta);
    const auto k1e = compute_constant(ConstantId::parse("K1"), 20, ConstantMethod::Euler, &t, 1'000'000);
    CHECK(k1e.method == ConstantMethod::Euler);
    CHECK(within_bounds(k1z.value, k1e.value));
    CHECK(compute_constant(ConstantId::parse("K3"), 10, ConstantMethod::Derived).value.to_string(10) ==
          "0.5697515829");
    CHECK_THROWS_AS(compute_constant(ConstantId::parse("K1"), 20, ConstantMethod::Euler), InvalidArgument);
    CHECK_THROWS_AS(compute_constant(ConstantId::parse("K3"), 20, ConstantMethod::Zeta), InvalidArgument);
    CHECK_THROWS_AS(compute_constant(ConstantId::parse("DK(4)"), 20, ConstantMethod::Zeta), InvalidArgument);
}

TEST_CASE("density targets")
{
    const auto& d = density_targets();
    CHECK(d.k1.to_string(20) == "0.42824950567709444022");
    CHECK(d.k2.to_string(20) == "0.28674742843447873411");
    CHECK(d.k3.to_string(10) == "0.5697515829");
    CHECK(d.coprime.to_string(12) == "0.607927101854");
    CHECK(d.zeta2.to_string(15) == "1.64493406684823");
    CHECK(d.f3.to_string(18) == "0.174219783034724701");
}
