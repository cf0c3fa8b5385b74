#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "carefree/constants.hpp"
#include "carefree/errors.hpp"
#include "carefree/harness.hpp"
#include "carefree/montecarlo.hpp"
#include "carefree/report.hpp"
#include "carefree/verification.hpp"

#include <json.hpp>

#include <cmath>
#include <set>
#include <sstream>

using namespace carefree;

namespace {

const SieveTable& table()
{
    static const SieveTable t(200'000);
    return t;
}

DensityReportRow synthetic_row(std::uint64_t x, double abs_error)
{
    DensityReportRow r;
    r.kind = "C1";
    r.x = x;
    r.abs_error = abs_error;
    r.method = "formula";
    return r;
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ','))
        out.push_back(f);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

} // namespace

TEST_CASE("density scan worked values")
{
    const auto& t = table();
    const double k1 = density_target(CountKind::C1);
    CHECK(k1 == doctest::Approx(0.428249505677094).epsilon(1e-14));

    const auto one = density_scan(t, CountKind::C1, {1});
    REQUIRE(one.size() == 1);
    CHECK(one[0].count == 1);
    CHECK(one[0].density == 1.0);
    CHECK(one[0].abs_error == doctest::Approx(0.571750494322906).epsilon(1e-12));
    CHECK(one[0].scaled_error == one[0].abs_error); // error scale is 1 at x = 1
    CHECK(one[0].method == "formula");

    const auto hundred = density_scan(t, CountKind::C1, {100});
    CHECK(hundred[0].count == brute_force_oracle(CountKind::C1, 100));
    CHECK(hundred[0].density == doctest::Approx(hundred[0].count / 1e4));

    const auto ten = density_scan(t, CountKind::I2, {10});
    CHECK(ten[0].count == 63);
    CHECK(ten[0].density == doctest::Approx(0.63));
    CHECK(ten[0].target == doctest::Approx(6 / (M_PI * M_PI)).epsilon(1e-14));
}

TEST_CASE("row fields are consistent")
{
    const auto& t = table();
    const std::vector<std::uint64_t> xs{10, 100, 1000};
    for (auto kind : {CountKind::C1, CountKind::C2, CountKind::C3, CountKind::I2, CountKind::I3, CountKind::NC3}) {
        for (const auto& r : density_scan(t, kind, xs)) {
            const double xa = std::pow(static_cast<double>(r.x), arity(kind));
            CHECK(r.density == doctest::Approx(r.count / xa).epsilon(1e-14));
            CHECK(r.abs_error == doctest::Approx(std::fabs(r.density - r.target)).epsilon(1e-12));
            CHECK(r.scaled_error == doctest::Approx(r.abs_error * error_scale(kind, r.x)).epsilon(1e-12));
            CHECK(r.kind == to_string(kind));
            CHECK_FALSE(r.failed);
        }
    }
    CHECK(error_scale(CountKind::C1, 1) == 1.0);
    CHECK(error_scale(CountKind::C1, 100) == doctest::Approx(100 / std::log(100.0)));
    CHECK(error_scale(CountKind::C2, 100) == doctest::Approx(100 / std::pow(std::log(100.0), 3)));
    CHECK(error_scale(CountKind::I3, 100) == doctest::Approx(100 / std::pow(std::log(100.0), 2)));
    CHECK_THROWS_AS(arity(CountKind::Kernel), InvalidArgument);
}

TEST_CASE("density scan input validation and failed rows")
{
    const auto& t = table();
    CHECK_THROWS_AS(density_scan(t, CountKind::C1, {10, 10}), InvalidArgument);
    CHECK_THROWS_AS(density_scan(t, CountKind::C1, {20, 10}), InvalidArgument);
    CHECK_THROWS_AS(density_scan(t, CountKind::C1, {0, 10}), InvalidArgument);
    CHECK(density_scan(t, CountKind::C1, {}).empty());

    const auto rows = density_scan(t, CountKind::I3, {100, CountCaps::kI3Formula + 1});
    REQUIRE(rows.size() == 2);
    CHECK_FALSE(rows[0].failed);
    CHECK(rows[1].failed);
    CHECK(std::isnan(rows[1].density));
    CHECK_FALSE(rows[1].failure.empty());

    const auto beyond = density_scan(t, CountKind::C1, {t.limit() + 1});
    CHECK(beyond[0].failed);
}

TEST_CASE("geometric points")
{
    const auto p = geometric_points(1000, 100'000, 5);
    CHECK(p == std::vector<std::uint64_t>{1000, 3162, 10'000, 31'623, 100'000});
    CHECK(geometric_points(5, 5, 3) == std::vector<std::uint64_t>{5});
    CHECK_THROWS_AS(geometric_points(10, 5, 3), InvalidArgument);
}

TEST_CASE("error exponent fit")
{
    std::vector<DensityReportRow> pure;
    std::vector<DensityReportRow> xlog;
    for (std::uint64_t x = 1000; x <= 1'000'000; x *= 10) {
        const double xd = static_cast<double>(x);
        pure.push_back(synthetic_row(x, xd / (xd * xd)));
        xlog.push_back(synthetic_row(x, xd * std::log(xd) / (xd * xd)));
    }
    const FitResult f = error_exponent_fit(pure);
    CHECK(f.slope == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(f.residual < 1e-9);
    CHECK(f.points_used == 4);

    const FitResult g = error_exponent_fit(xlog);
    CHECK(g.slope > 1.0);
    CHECK(g.slope < 1.2);

    auto with_bad = pure;
    with_bad.push_back(synthetic_row(5000, 0));
    with_bad.back().failed = true;
    with_bad.push_back(synthetic_row(7000, 0));
    CHECK(error_exponent_fit(with_bad).points_used == 4);

    pure.resize(2);
    CHECK_THROWS_AS(error_exponent_fit(pure), InvalidArgument);
}

TEST_CASE("CSV report")
{
    std::ostringstream empty;
    write_report({}, ReportFormat::Csv, empty);
    CHECK(empty.str() == "kind,x,count,density,target,abs_error,scaled_error,method\n");

    const auto& t = table();
    const auto one = density_scan(t, CountKind::C1, {100});
    std::ostringstream out;
    write_report(one, ReportFormat::Csv, out);
    std::istringstream lines(out.str());
    std::string header, line;
    std::getline(lines, header);
    std::getline(lines, line);
    const auto fields = split(line);
    REQUIRE(fields.size() == 8);
    CHECK(fields[0] == "C1");
    CHECK(fields[1] == "100");
    CHECK(fields[2] == std::to_string(one[0].count));
    CHECK(fields[7] == "formula");
}

TEST_CASE("CSV round trip of 20 rows")
{
    const auto& t = table();
    const auto xs = geometric_points(10, 2000, 20);
    REQUIRE(xs.size() == 20);
    std::vector<DensityReportRow> rows = density_scan(t, CountKind::C2, xs);
    rows.push_back(density_scan(t, CountKind::I3, {CountCaps::kI3Formula + 1})[0]);

    std::stringstream buf;
    write_report(rows, ReportFormat::Csv, buf);
    const auto back = read_report_csv(buf);
    REQUIRE(back.size() == rows.size());
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        CHECK(back[i].kind == rows[i].kind);
        CHECK(back[i].x == rows[i].x);
        CHECK(back[i].count == rows[i].count);
        CHECK(back[i].method == rows[i].method);
        CHECK(format_real(back[i].density) == format_real(rows[i].density));
        CHECK(format_real(back[i].scaled_error) == format_real(rows[i].scaled_error));
    }
    CHECK(back.back().failed);
    CHECK(back.back().method == "failed");

    // Writing the parsed rows again reproduces the bytes.
    std::stringstream again;
    write_report(back, ReportFormat::Csv, again);
    CHECK(again.str() == buf.str());

    std::istringstream bad("kind,x\nC1,1\n");
    CHECK_THROWS_AS(read_report_csv(bad), InvalidArgument);
}

TEST_CASE("JSON report")
{
    const auto& t = table();
    auto rows = density_scan(t, CountKind::I2, {10, 100});
    rows.push_back(density_scan(t, CountKind::I3, {CountCaps::kI3Formula + 1})[0]);
    std::ostringstream out;
    write_report(rows, ReportFormat::Json, out);
    const auto j = nlohmann::json::parse(out.str());
    REQUIRE(j.is_array());
    REQUIRE(j.size() == 3);
    const std::set<std::string> keys{"kind", "x", "count", "density", "target", "abs_error", "scaled_error", "method"};
    for (const auto& obj : j) {
        std::set<std::string> got;
        for (const auto& [k, v] : obj.items())
            got.insert(k);
        CHECK(got == keys);
    }
    CHECK(j[0]["count"] == 63);
    CHECK(j[0]["density"].get<double>() == doctest::Approx(0.63));
    CHECK(j[2]["method"] == "failed");
    CHECK(j[2]["density"].is_null());

    CHECK(parse_report_format("csv") == ReportFormat::Csv);
    CHECK(parse_report_format("json") == ReportFormat::Json);
    CHECK_THROWS_AS(parse_report_format("xml"), InvalidArgument);
}

TEST_CASE("real formatting")
{
    CHECK(format_real(0.63) == "0.63");
    CHECK(format_real(1.0 / 3.0) == "0.333333333333");
    CHECK(format_real(std::nan("")) == "nan");
}

TEST_CASE("counter RNG")
{
    const CounterRng rng(42);
    CHECK(rng.word(3, 7) == CounterRng(42).word(3, 7));
    CHECK(rng.word(3, 7) != rng.word(3, 8));
    CHECK(rng.word(3, 7) != CounterRng(43).word(3, 7));

    std::uint64_t counter = 0;
    std::vector<int> hits(7, 0);
    for (std::uint64_t s = 0; s < 70'000; ++s) {
        const std::uint64_t v = rng.uniform(s, counter, 7);
        REQUIRE(v >= 1);
        REQUIRE(v <= 7);
        ++hits[v - 1];
    }
    for (int h : hits)
        CHECK(std::abs(h - 10'000) < 600);
    std::uint64_t c1 = 0;
    CHECK(rng.uniform(0, c1, 1) == 1);
    CHECK_THROWS_AS(rng.uniform(0, c1, 0), InvalidArgument);
}

TEST_CASE("Monte Carlo determinism and accuracy")
{
    const auto a = montecarlo_density(MonteCarloEvent::CoprimePair, 100'000'000, 100'000, 7, 1);
    for (unsigned threads : {2u, 3u, 8u, 0u}) {
        const auto b = montecarlo_density(MonteCarloEvent::CoprimePair, 100'000'000, 100'000, 7, threads);
        CHECK(b.successes == a.successes);
        CHECK(b.row == a.row);
    }
    CHECK(a.estimate == static_cast<double>(a.successes) / 100'000);
    CHECK(a.std_error == doctest::Approx(std::sqrt(a.estimate * (1 - a.estimate) / 100'000)));
    CHECK(std::fabs(a.estimate - a.target) < 5 * a.std_error);
    CHECK(a.row.method == "montecarlo");
    CHECK(a.row.kind == "coprime_pair");
    CHECK(a.row.scaled_error == doctest::Approx(a.row.abs_error / a.std_error));

    const auto cf = montecarlo_density(MonteCarloEvent::Carefree, 1'000'000, 100'000, 9);
    CHECK(std::fabs(cf.estimate - cf.target) < 5 * cf.std_error);
    CHECK(cf.target == density_target(CountKind::C1));

    CHECK(montecarlo_density(MonteCarloEvent::CoprimePair, 1000, 5000, 1).successes !=
          montecarlo_density(MonteCarloEvent::CoprimePair, 1000, 5000, 2).successes);
}

TEST_CASE("Monte Carlo argument checks")
{
    CHECK_THROWS_AS(montecarlo_density(MonteCarloEvent::CoprimePair, 1000, 0, 1), InvalidArgument);
    CHECK_THROWS_AS(montecarlo_density(MonteCarloEvent::CoprimePair, 0, 10, 1), InvalidArgument);
    CHECK_THROWS_AS(montecarlo_density(MonteCarloEvent::Carefree, kMonteCarloSquarefreeRange + 1, 10, 1),
                    CapacityError);
    CHECK_THROWS_AS(montecarlo_density(MonteCarloEvent::StronglyCarefree, kMonteCarloSquarefreeRange + 1, 10, 1),
                    CapacityError);
    CHECK_NOTHROW(montecarlo_density(MonteCarloEvent::PairwiseCoprimeTriple, kMonteCarloSquarefreeRange * 10, 10, 1));

    CHECK(parse_montecarlo_event("coprime") == MonteCarloEvent::CoprimePair);
    CHECK(parse_montecarlo_event("strongly") == MonteCarloEvent::StronglyCarefree);
    CHECK(parse_montecarlo_event("noncoprime_triple") == MonteCarloEvent::NoncoprimeTriple);
    CHECK_THROWS_AS(parse_montecarlo_event("dice"), InvalidArgument);
}

TEST_CASE("kernel and omega diagnostics")
{
    const auto& t = table();
    const auto k = kernel_sum_diagnostic(t, 100'000);
    CHECK(k.sum == kernel_sum(t, 100'000));
    CHECK(k.ratio == doctest::Approx(k.sum / 1e10));
    CHECK(k.winner == "zeta(2)*K1/2");
    CHECK(k.rel_diff_zeta2_k1_half < 1e-3);
    CHECK(k.rel_diff_zeta2_half > 0.5);

    const auto loose = kernel_sum_diagnostic(t, 100'000, 10.0);
    CHECK(loose.winner == "none");

    const auto o = omega_diagnostic(t, 10'000);
    CHECK(o.sums.three_pow_omega == omega_power_sums(t, 10'000).three_pow_omega);
    CHECK(o.k2 == doctest::Approx(density_target(CountKind::C2)));
    CHECK(o.k2_half == doctest::Approx(o.k2 / 2));
}

TEST_CASE("decimal string rounding")
{
    CHECK(round_decimal_string("1.27627721751", 6) == "1.27628");
    CHECK(round_decimal_string("0.1742197830347247005", 18) == "0.174219783034724701");
    CHECK(round_decimal_string("0.065", 1) == "0.07");
    CHECK(round_decimal_string("9.9996", 4) == "10.00");
    CHECK(round_decimal_string("123.4", 2) == "120");
    CHECK(round_decimal_string("0.99", 1) == "1");
    CHECK(round_decimal_string("0.0996", 2) == "0.10");
    CHECK_THROWS_AS(round_decimal_string("abc", 2), InvalidArgument);
}
