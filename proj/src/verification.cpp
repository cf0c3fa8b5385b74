#include "carefree/verification.hpp"

#include "carefree/constants.hpp"
#include "carefree/counting.hpp"
#include "carefree/errors.hpp"
#include "carefree/harness.hpp"
#include "carefree/montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>

namespace carefree {

namespace {

using Float = PrecisionReal::Float;
using Clock = std::chrono::steady_clock;

struct Params {
    std::uint64_t euler_prime_limit = 10'000'000;
    std::uint64_t oracle_pairs = 300;
    std::uint64_t oracle_i3 = 60;
    std::uint64_t oracle_i4 = 40;
    std::uint64_t oracle_nc3 = 200;
    std::uint64_t density_x = 1'000'000;
    bool theorem2 = true;
    bool scaled_errors = true;
    std::uint64_t mc_samples = 1'000'000;
    std::uint64_t kernel_x = 1'000'000;
};

Params params_for(Scale scale)
{
    Params p;
    if (scale == Scale::Quick) {
        p.euler_prime_limit = 100'000;
        p.oracle_pairs = 100;
        p.oracle_i3 = 30;
        p.oracle_i4 = 20;
        p.oracle_nc3 = 80;
        p.density_x = 100'000;
        p.theorem2 = false;
        p.scaled_errors = false;
        p.mc_samples = 100'000;
        p.kernel_x = 100'000;
    }
    return p;
}

double seconds_since(Clock::time_point start)
{
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool agrees_to_digits(const Float& a, const Float& b, int digits)
{
    return abs(a - b) <= abs(b) * Float(5) * pow(Float(10), -digits);
}

std::string fixed(double v, int decimals)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.setf(std::ios::fixed);
    os.precision(decimals);
    os << v;
    return os.str();
}

std::string sci(double v)
{
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.setf(std::ios::scientific);
    os.precision(2);
    os << v;
    return os.str();
}

CheckOutcome constant_reproduction()
{
    CheckOutcome c{1, "constant reproduction", true, false, {}};
    const Float tol("1e-20");
    std::ostringstream d;
    auto one = [&](const char* name, const ConstantResult& r, const char* ref, double secs) {
        const bool ok = abs(r.value.value() - Float(ref)) <= tol && r.value.meets(20) && secs < 10.0;
        c.passed = c.passed && ok;
        d << name << " = " << r.value.to_string(20) << " (reference " << ref << ")" << (ok ? "" : " MISMATCH")
          << (secs < 10.0 ? "" : " SLOW") << "; ";
    };
    auto start = Clock::now();
    const ConstantResult k1 = carefree_constant(25);
    one("K1", k1, "0.42824950567709444022", seconds_since(start));
    start = Clock::now();
    const ConstantResult k2 = strongly_carefree_constant(25);
    one("K2", k2, "0.28674742843447873411", seconds_since(start));
    c.detail = d.str();
    c.detail.resize(c.detail.size() - 2);
    return c;
}

CheckOutcome derived_reproduction()
{
    CheckOutcome c{2, "derived constants", true, false, {}};
    const auto values = derived_constants(25);
    struct Want {
        const char* name;
        std::string reference;
        int digits;
    };
    const Want wants[] = {
        {"K3", "0.5697515829", 10},
        {"F3", round_decimal_string("0.1742197830347247005", 18), 18},
        {"zeta(2)^2 K1", "1.15876", 6},
        {"zeta(2)^3 K2", "1.27627", 6},
        {"HM(3)", "0.06", 1},
    };
    std::ostringstream d;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const std::string got = values[i].value.to_string(wants[i].digits);
        const bool ok = got == wants[i].reference && values[i].value.meets(wants[i].digits);
        c.passed = c.passed && ok;
        d << wants[i].name << " " << got;
        if (!ok) {
            d << " != " << wants[i].reference;
            // A reference that is the truncation rather than the rounding of the value.
            const std::string longer = values[i].value.to_string(wants[i].digits + 6);
            if (longer.compare(0, wants[i].reference.size(), wants[i].reference) == 0)
                d << " (reference matches truncation " << longer << ")";
        }
        if (i + 1 < values.size())
            d << "; ";
    }
    c.detail = d.str();
    return c;
}

CheckOutcome cross_method(const SieveTable& t, std::uint64_t prime_limit)
{
    CheckOutcome c{3, "cross-method agreement", true, false, {}};
    const Float k1 = carefree_constant(25).value.value();
    const Float k2 = strongly_carefree_constant(25).value.value();
    struct Case {
        EulerFactorId id;
        const Float* reference;
        const char* against;
    };
    const Case cases[] = {
        {{EulerFactorKind::K1, 0}, &k1, "K1"},
        {{EulerFactorKind::K2FormA, 0}, &k2, "K2"},
        {{EulerFactorKind::K2FormB, 0}, &k2, "K2"},
        {{EulerFactorKind::K2FormC, 0}, &k2, "K2"},
        {{EulerFactorKind::DK, 3}, &k2, "K2"},
    };
    std::ostringstream d;
    d << "prime limit " << prime_limit << ":";
    for (const auto& cs : cases) {
        const ConstantResult r = euler_product(t, cs.id, prime_limit, 25);
        const bool ok = agrees_to_digits(r.value.value(), *cs.reference, 6);
        c.passed = c.passed && ok;
        d << " " << cs.id.name() << " " << r.value.to_string(12) << (ok ? " ~ " : " !~ ") << cs.against << ";";
    }
    c.detail = d.str();
    c.detail.pop_back();
    return c;
}

CheckOutcome oracle_equivalence(const SieveTable& t, const Params& p)
{
    CheckOutcome c{4, "oracle equivalence", true, false, {}};
    const auto start = Clock::now();
    std::ostringstream d;
    auto fail = [&](const std::string& what, std::uint64_t x) {
        if (c.passed)
            d << "first mismatch: " << what << " at x = " << x << "; ";
        c.passed = false;
    };
    for (std::uint64_t x = 1; x <= p.oracle_pairs; ++x) {
        const std::int64_t a = carefree_count(t, x, CountMethod::Formula, C1Strategy::ASum).count;
        const std::int64_t ds = carefree_count(t, x, CountMethod::Formula, C1Strategy::DSum).count;
        const std::int64_t c1 = brute_force_oracle(CountKind::C1, x);
        if (a != ds || a != c1)
            fail("C1", x);
        const std::int64_t c2 = strongly_carefree_count(t, x).count;
        if (c2 != brute_force_oracle(CountKind::C2, x))
            fail("C2", x);
        if (2 * a - c2 != brute_force_oracle(CountKind::C3, x) || weakly_carefree_count(t, x).count != 2 * a - c2)
            fail("C3", x);
    }
    for (std::uint64_t x = 1; x <= p.oracle_i3; ++x) {
        const std::int64_t f = pairwise_coprime_triple_count(t, x, CountMethod::Formula).count;
        if (f != pairwise_coprime_triple_count(t, x, CountMethod::Recursion).count ||
            f != brute_force_oracle(CountKind::I3, x))
            fail("I3", x);
    }
    for (std::uint64_t x = 1; x <= p.oracle_i4; ++x) {
        if (pairwise_coprime_count_recursive(t, 4, 1, x) != brute_force_oracle(CountKind::IkU, x, 4))
            fail("I4", x);
    }
    for (std::uint64_t x = 1; x <= p.oracle_nc3; ++x) {
        if (noncoprime_triple_count(t, x, CountMethod::Brute).count !=
            noncoprime_triple_count(t, x, CountMethod::Formula).count)
            fail("NC3", x);
    }
    const double secs = seconds_since(start);
    if (secs >= 120.0) {
        c.passed = false;
        d << "exceeded the 2 minute budget; ";
    }
    d << "C1/C2/C3 x <= " << p.oracle_pairs << ", I3 x <= " << p.oracle_i3 << ", I4 x <= " << p.oracle_i4
      << ", NC3 x <= " << p.oracle_nc3;
    c.detail = d.str();
    return c;
}

CheckOutcome density_convergence(const SieveTable& t, std::uint64_t x)
{
    CheckOutcome c{5, "density convergence", true, false, {}};
    struct Case {
        CountKind kind;
        double tolerance;
    };
    const Case cases[] = {{CountKind::C1, 1e-4}, {CountKind::C2, 1e-3}, {CountKind::I2, 1e-4}};
    std::ostringstream d;
    d << "x = " << x << ":";
    for (const auto& cs : cases) {
        const auto row = density_scan(t, cs.kind, {x}).front();
        if (row.failed)
            throw CapacityError(row.failure);
        const bool ok = row.abs_error < cs.tolerance;
        c.passed = c.passed && ok;
        d << " " << row.kind << " |err| " << sci(row.abs_error) << (ok ? " < " : " >= ") << sci(cs.tolerance)
          << ";";
    }
    c.detail = d.str();
    c.detail.pop_back();
    return c;
}

CheckOutcome theorem2(const SieveTable& t)
{
    CheckOutcome c{6, "pairwise coprime and noncoprime triples", true, false, {}};
    std::ostringstream d;
    const auto i3 = make_density_row(CountKind::I3, 2000,
                                     pairwise_coprime_triple_count(t, 2000, CountMethod::Formula).count,
                                     CountMethod::Formula);
    const auto brute = make_density_row(CountKind::I3, 200, brute_force_oracle(CountKind::I3, 200),
                                        CountMethod::Brute);
    const auto nc3 = make_density_row(CountKind::NC3, 2000,
                                      noncoprime_triple_count(t, 2000, CountMethod::Brute).count, CountMethod::Brute);
    const double hm3 = havas_majewski(3, 20).value.to_double();
    const bool ok_i3 = i3.abs_error < 5e-3;
    const bool ok_brute = brute.abs_error < 2e-2;
    const bool ok_nc3 = nc3.abs_error < 2e-2;
    const bool ok_hm = nc3.density > 2 * hm3;
    c.passed = ok_i3 && ok_brute && ok_nc3 && ok_hm;
    d << "I3(2000) density " << fixed(i3.density, 6) << " |err| " << sci(i3.abs_error) << (ok_i3 ? " < " : " >= ")
      << "5e-3; I3(200) brute |err| " << sci(brute.abs_error) << (ok_brute ? " < " : " >= ")
      << "2e-2; NC3(2000) density " << fixed(nc3.density, 6) << " |err| " << sci(nc3.abs_error)
      << (ok_nc3 ? " < " : " >= ") << "2e-2, " << (ok_hm ? "> " : "<= ") << "2 HM(3) = " << fixed(2 * hm3, 6);
    c.detail = d.str();
    return c;
}

CheckOutcome scaled_error_bound(const SieveTable& t)
{
    CheckOutcome c{7, "error-scale boundedness", true, false, {}};
    const auto rows = density_scan(t, CountKind::C1, {1'000, 10'000, 100'000, 1'000'000});
    double lo = HUGE_VAL, hi = 0;
    std::uint64_t hi_x = 0;
    std::ostringstream d;
    d << "scaled C1 errors:";
    for (const auto& r : rows) {
        if (r.failed)
            throw CapacityError(r.failure);
        lo = std::min(lo, r.scaled_error);
        if (r.scaled_error > hi) {
            hi = r.scaled_error;
            hi_x = r.x;
        }
        d << " " << sci(r.scaled_error);
    }
    const double ratio = lo > 0 ? hi / lo : HUGE_VAL;
    c.passed = ratio < 50.0;
    d << "; max/min " << fixed(ratio, 2) << (c.passed ? " < 50" : " >= 50") << ", largest at x = " << hi_x;
    c.detail = d.str();
    return c;
}

CheckOutcome integer_sequences()
{
    CheckOutcome c{8, "integer sequences", true, false, {}};
    std::ostringstream d;
    // Both constructors throw if some e_k or f_k is not an integer.
    const ExponentSequence e = exponent_sequence_e(64);
    const ExponentSequence f = exponent_sequence_f(64);
    const long want[] = {2, -1, 3, -4, 7, -11, 18};
    bool prefix = true;
    d << "b prefix [";
    for (std::size_t i = 0; i < 7; ++i) {
        prefix = prefix && e.b_values[i] == want[i];
        d << e.b_values[i] << (i + 1 < 7 ? ", " : "]");
    }
    c.passed = prefix && e.k_max() == 64 && f.k_max() == 64;
    d << "; e_k, f_k integral for k <= 64; e_2..e_5 = " << e.values[2] << ", " << e.values[3] << ", "
      << e.values[4] << ", " << e.values[5] << "; f_2..f_5 = " << f.values[2] << ", " << f.values[3] << ", "
      << f.values[4] << ", " << f.values[5];
    c.detail = d.str();
    return c;
}

CheckOutcome montecarlo_check(std::uint64_t samples)
{
    CheckOutcome c{9, "Monte Carlo", true, false, {}};
    constexpr std::uint64_t range = 100'000'000;
    const auto base = montecarlo_density(MonteCarloEvent::Carefree, range, samples, 42, 1);
    bool identical = true;
    for (unsigned threads : {1u, 2u, 4u, 7u, 0u}) {
        const auto again = montecarlo_density(MonteCarloEvent::Carefree, range, samples, 42, threads);
        identical = identical && again.successes == base.successes && again.estimate == base.estimate &&
                    again.std_error == base.std_error;
    }
    const double z = base.row.scaled_error;
    c.passed = z < 5.0 && identical;
    std::ostringstream d;
    d << samples << " samples, range " << range << ", seed 42: estimate " << fixed(base.estimate, 6) << " +- "
      << sci(base.std_error) << ", K1 " << fixed(base.target, 6) << ", " << fixed(z, 2) << " standard errors"
      << (z < 5.0 ? "" : " (>= 5)") << "; " << (identical ? "identical" : "NOT identical")
      << " across repeats and thread counts";
    c.detail = d.str();
    return c;
}

CheckOutcome kernel_check(const SieveTable& t, std::uint64_t x)
{
    CheckOutcome c{10, "kernel-sum resolution", true, false, {}};
    const KernelDiagnostic k = kernel_sum_diagnostic(t, x);
    c.passed = k.winner != "none";
    std::ostringstream d;
    d << "x = " << x << ": sum k(n) / x^2 = " << fixed(k.ratio, 6) << "; zeta(2)/2 = " << fixed(k.zeta2_half, 6)
      << " (off " << fixed(100 * k.rel_diff_zeta2_half, 2) << "%), zeta(2)*K1/2 = " << fixed(k.zeta2_k1_half, 6)
      << " (off " << fixed(100 * k.rel_diff_zeta2_k1_half, 2) << "%); winner " << k.winner;
    c.detail = d.str();
    return c;
}

CheckOutcome guarded(int criterion, const char* name, const std::function<CheckOutcome()>& body)
{
    try {
        return body();
    } catch (const std::exception& e) {
        return CheckOutcome{criterion, name, false, false, std::string("error: ") + e.what()};
    }
}

CheckOutcome skipped(int criterion, const char* name)
{
    return CheckOutcome{criterion, name, true, true, "not part of the quick run"};
}

} // namespace

std::uint64_t required_sieve_limit(Scale scale)
{
    const Params p = params_for(scale);
    return std::max({p.euler_prime_limit, p.density_x, p.kernel_x, std::uint64_t{2000}});
}

std::vector<CheckOutcome> run_acceptance(Scale scale, const SieveTable& t)
{
    const Params p = params_for(scale);
    std::vector<CheckOutcome> out;
    out.push_back(guarded(1, "constant reproduction", [] { return constant_reproduction(); }));
    out.push_back(guarded(2, "derived constants", [] { return derived_reproduction(); }));
    out.push_back(guarded(3, "cross-method agreement", [&] { return cross_method(t, p.euler_prime_limit); }));
    out.push_back(guarded(4, "oracle equivalence", [&] { return oracle_equivalence(t, p); }));
    out.push_back(guarded(5, "density convergence", [&] { return density_convergence(t, p.density_x); }));
    out.push_back(p.theorem2 ? guarded(6, "pairwise coprime and noncoprime triples", [&] { return theorem2(t); })
                             : skipped(6, "pairwise coprime and noncoprime triples"));
    out.push_back(p.scaled_errors ? guarded(7, "error-scale boundedness", [&] { return scaled_error_bound(t); })
                                  : skipped(7, "error-scale boundedness"));
    out.push_back(guarded(8, "integer sequences", [] { return integer_sequences(); }));
    out.push_back(guarded(9, "Monte Carlo", [&] { return montecarlo_check(p.mc_samples); }));
    out.push_back(guarded(10, "kernel-sum resolution", [&] { return kernel_check(t, p.kernel_x); }));
    return out;
}

std::string format_outcome(const CheckOutcome& c)
{
    std::ostringstream os;
    os << (c.skipped ? "SKIP" : c.passed ? "PASS" : "FAIL") << "  " << (c.criterion < 10 ? " " : "") << c.criterion
       << "  " << c.name << ": " << c.detail;
    return os.str();
}

std::string round_decimal_string(const std::string& value, int digits)
{
    if (digits < 1)
        throw InvalidArgument("digit count must be positive");
    const auto point = value.find('.');
    std::string raw;
    for (char ch : value) {
        if (ch == '.')
            continue;
        if (ch < '0' || ch > '9')
            throw InvalidArgument("not a plain decimal string: " + value);
        raw.push_back(ch);
    }
    std::size_t int_len = point == std::string::npos ? raw.size() : point;
    const std::size_t first = raw.find_first_not_of('0');
    if (first == std::string::npos)
        return value;
    const std::size_t keep = first + static_cast<std::size_t>(digits);
    if (keep >= raw.size())
        return value;

    const bool up = raw[keep] >= '5';
    raw.resize(keep);
    if (up) {
        std::size_t i = raw.size();
        while (i > 0) {
            --i;
            if (raw[i] == '9') {
                raw[i] = '0';
            } else {
                ++raw[i];
                break;
            }
            if (i == 0) {
                raw.insert(raw.begin(), '1');
                ++int_len;
                break;
            }
        }
    }
    // A carry out of the leading digit adds a significant digit; the trailing one is a zero.
    if (raw.find_first_not_of('0') + static_cast<std::size_t>(digits) < raw.size() && raw.size() > int_len)
        raw.pop_back();
    if (raw.size() < int_len)
        raw.append(int_len - raw.size(), '0');
    if (raw.size() == int_len)
        return raw;
    return raw.substr(0, int_len) + "." + raw.substr(int_len);
}

} // namespace carefree
