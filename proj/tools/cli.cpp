#include "cli.hpp"

#include "carefree/constants.hpp"
#include "carefree/counting.hpp"
#include "carefree/errors.hpp"
#include "carefree/harness.hpp"
#include "carefree/montecarlo.hpp"
#include "carefree/report.hpp"
#include "carefree/sieve.hpp"
#include "carefree/verification.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

namespace carefree::cli {

namespace {

using nlohmann::json;

enum class OutputFormat { Text, Csv, Json };

struct Options {
    // shared
    std::string format = "text";
    std::string output = "-";
    std::string sieve_cache;
    // constants
    std::vector<std::string> ids;
    int digits = 30;
    std::string method;
    std::uint64_t prime_limit = 1'000'000;
    // count and scan
    std::string kind;
    std::uint64_t x = 0;
    int k = 3;
    std::uint64_t u = 1;
    std::uint64_t d = 1;
    std::uint64_t from = 1000;
    std::uint64_t to = 100'000;
    int points = 5;
    // montecarlo
    std::string event;
    std::uint64_t range = 100'000'000;
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 42;
    unsigned threads = 0;
    // selftest
    bool quick = false;
};

OutputFormat parse_format(const std::string& s)
{
    if (s == "text")
        return OutputFormat::Text;
    if (s == "csv")
        return OutputFormat::Csv;
    if (s == "json")
        return OutputFormat::Json;
    throw InvalidArgument("unknown format '" + s + "' (expected text, csv or json)");
}

std::uint64_t configured_sieve_limit()
{
    const char* env = std::getenv("CAREFREE_SIEVE_LIMIT");
    if (env == nullptr || *env == '\0')
        return SieveTable::kDefaultLimit;
    const std::string_view s(env);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v == 0)
        throw InvalidArgument("CAREFREE_SIEVE_LIMIT must be a positive integer, got '" + std::string(s) + "'");
    return v;
}

// Builds (or loads) the sieve the first time a command needs it.
class LazySieve {
public:
    LazySieve(std::string cache, std::uint64_t limit) : cache_(std::move(cache)), limit_(limit) {}

    const SieveTable& get()
    {
        if (!table_) {
            if (!cache_.empty() && std::filesystem::exists(cache_)) {
                table_ = SieveTable::load(cache_);
            } else {
                table_.emplace(limit_);
                if (!cache_.empty())
                    table_->save(cache_);
            }
        }
        return *table_;
    }

private:
    std::string cache_;
    std::uint64_t limit_;
    std::optional<SieveTable> table_;
};

// Standard output or the --output file.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback)
    {
        if (path != "-") {
            file_.open(path, std::ios::binary);
            if (!file_)
                throw std::runtime_error("cannot open output file " + path);
            stream_ = &file_;
        }
        stream_->imbue(std::locale::classic());
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

std::string rational_string(const PrecisionReal::Rational& q)
{
    return numerator(q).str() + "/" + denominator(q).str();
}

int run_constants(const Options& o, LazySieve& sieve, std::ostream& out)
{
    const OutputFormat fmt = parse_format(o.format);
    if (fmt == OutputFormat::Csv)
        throw InvalidArgument("constants supports text or json output");
    std::vector<ConstantId> ids;
    for (const auto& s : o.ids)
        ids.push_back(ConstantId::parse(s));
    if (ids.empty())
        ids = {ConstantId{ConstantKind::K1, 0}, ConstantId{ConstantKind::K2, 0}, ConstantId{ConstantKind::K3, 0},
               ConstantId{ConstantKind::F3, 0}};
    std::optional<ConstantMethod> method;
    if (!o.method.empty())
        method = parse_constant_method(o.method);

    Sink sink(o.output, out);
    json doc = json::array();
    for (const auto& id : ids) {
        const ConstantMethod m = method.value_or(default_method(id));
        const SieveTable* t = m == ConstantMethod::Euler ? &sieve.get() : nullptr;
        const ConstantResult r = compute_constant(id, o.digits, m, t, o.prime_limit);
        const std::string value = r.value.to_string(o.digits);
        if (fmt == OutputFormat::Json) {
            doc.push_back({{"id", id.name()},
                           {"value", value},
                           {"digits", o.digits},
                           {"method", std::string(to_string(r.method))},
                           {"error_bound", r.value.error_string()},
                           {"truncation", r.truncation}});
        } else {
            *sink << id.name() << " = " << value << "  (" << to_string(r.method) << ", error bound "
                  << r.value.error_string() << ")\n";
        }
    }
    if (fmt == OutputFormat::Json)
        *sink << doc.dump(2) << '\n';
    return kOk;
}

int run_count(const Options& o, LazySieve& sieve, std::ostream& out)
{
    const OutputFormat fmt = parse_format(o.format);
    if (fmt == OutputFormat::Csv)
        throw InvalidArgument("count supports text or json output");
    const CountKind kind = parse_count_kind(o.kind);
    const CountMethod method = o.method.empty() ? CountMethod::Formula : parse_count_method(o.method);

    static const SieveTable tiny(1);
    auto table = [&]() -> const SieveTable& { return method == CountMethod::Brute ? tiny : sieve.get(); };
    auto formula_only = [&]() {
        if (method != CountMethod::Formula)
            throw InvalidArgument(std::string(to_string(kind)) + " only supports the formula method");
    };

    json j{{"kind", std::string(to_string(kind))}, {"x", o.x}, {"method", std::string(to_string(method))}};
    std::ostringstream text;
    std::int64_t count = 0;
    switch (kind) {
    case CountKind::C1: count = carefree_count(table(), o.x, method).count; break;
    case CountKind::C2: count = strongly_carefree_count(table(), o.x, method).count; break;
    case CountKind::C3: count = weakly_carefree_count(table(), o.x, method).count; break;
    case CountKind::I2: count = coprime_pair_count(table(), o.x, method).count; break;
    case CountKind::I3: count = pairwise_coprime_triple_count(table(), o.x, method).count; break;
    case CountKind::NC3: count = noncoprime_triple_count(table(), o.x, method).count; break;
    case CountKind::IkU:
        j["k"] = o.k;
        j["u"] = o.u;
        if (method == CountMethod::Brute) {
            if (o.u != 1)
                throw InvalidArgument("the brute-force k-tuple count supports u = 1 only");
            count = brute_force_oracle(CountKind::IkU, o.x, o.k);
        } else {
            j["method"] = "recursion";
            count = o.x == 0 ? 0 : pairwise_coprime_count_recursive(sieve.get(), o.k, o.u, o.x);
        }
        break;
    case CountKind::Kernel:
        formula_only();
        count = o.x == 0 ? 0 : kernel_sum(sieve.get(), o.x);
        break;
    case CountKind::Omega3:
        formula_only();
        count = o.x == 0 ? 0 : omega_power_sums(sieve.get(), o.x).three_pow_omega;
        break;
    case CountKind::Omega2Sf:
        formula_only();
        count = o.x == 0 ? 0 : omega_power_sums(sieve.get(), o.x).squarefree_two_pow_omega;
        break;
    case CountKind::T:
    case CountKind::S:
        formula_only();
        j["d"] = o.d;
        if (o.d == 0)
            throw InvalidArgument("--d must be positive");
        if (o.x == 0)
            count = 0;
        else if (kind == CountKind::T)
            count = coprime_count(sieve.get(), o.d, o.x);
        else
            count = squarefree_coprime_count(sieve.get(), o.d, o.x);
        break;
    case CountKind::Lemma2: {
        formula_only();
        if (o.x == 0) {
            j["two_pow_omega_over_d"] = "0";
            j["two_pow_omega_over_sqrt_d"] = "0";
            j["four_pow_omega_over_d"] = "0";
            text << "sum 2^omega(d)/d = 0\nsum 2^omega(d)/sqrt(d) = 0\nsum 4^omega(d)/d = 0\n";
            break;
        }
        const Lemma2Sums s = lemma2_sums(sieve.get(), o.x);
        const std::string a = rational_string(s.two_pow_omega_over_d);
        const std::string b = s.two_pow_omega_over_sqrt_d.to_string(20);
        const std::string c = rational_string(s.four_pow_omega_over_d);
        j["two_pow_omega_over_d"] = a;
        j["two_pow_omega_over_sqrt_d"] = b;
        j["four_pow_omega_over_d"] = c;
        text << "sum 2^omega(d)/d = " << a << "\nsum 2^omega(d)/sqrt(d) = " << b << "\nsum 4^omega(d)/d = " << c
             << '\n';
        break;
    }
    }
    if (kind != CountKind::Lemma2) {
        j["count"] = count;
        text << count << '\n';
    }

    Sink sink(o.output, out);
    if (fmt == OutputFormat::Json)
        *sink << j.dump(2) << '\n';
    else
        *sink << text.str();
    return kOk;
}

void write_text_rows(const std::vector<DensityReportRow>& rows, std::ostream& os)
{
    os << std::left << std::setw(6) << "kind" << std::right << std::setw(12) << "x" << std::setw(22) << "count"
       << std::setw(20) << "density" << std::setw(20) << "target" << std::setw(20) << "abs_error" << std::setw(20)
       << "scaled_error" << "  method\n";
    for (const auto& r : rows) {
        os << std::left << std::setw(6) << r.kind << std::right << std::setw(12) << r.x;
        if (r.failed) {
            os << "  failed: " << r.failure << '\n';
            continue;
        }
        os << std::setw(22) << r.count << std::setw(20) << format_real(r.density) << std::setw(20)
           << format_real(r.target) << std::setw(20) << format_real(r.abs_error) << std::setw(20)
           << format_real(r.scaled_error) << "  " << r.method << '\n';
    }
}

int run_scan(const Options& o, LazySieve& sieve, std::ostream& out)
{
    const OutputFormat fmt = parse_format(o.format);
    const CountKind kind = parse_count_kind(o.kind);
    arity(kind);
    const CountMethod method = o.method.empty() ? CountMethod::Formula : parse_count_method(o.method);
    const auto xs = geometric_points(o.from, o.to, o.points);

    static const SieveTable tiny(1);
    const SieveTable& t = method == CountMethod::Brute ? tiny : sieve.get();
    const auto rows = density_scan(t, kind, xs, method);

    Sink sink(o.output, out);
    if (fmt == OutputFormat::Text) {
        write_text_rows(rows, *sink);
        try {
            const FitResult fit = error_exponent_fit(rows);
            *sink << "error exponent fit: slope " << format_real(fit.slope) << ", intercept "
                  << format_real(fit.intercept) << ", rms residual " << format_real(fit.residual) << " over "
                  << fit.points_used << " points\n";
        } catch (const InvalidArgument&) {
            *sink << "error exponent fit: fewer than 3 usable points\n";
        }
    } else {
        write_report(rows, fmt == OutputFormat::Csv ? ReportFormat::Csv : ReportFormat::Json, *sink);
    }
    for (const auto& r : rows) {
        if (r.failed)
            return kComputationError;
    }
    return kOk;
}

int run_montecarlo(const Options& o, std::ostream& out)
{
    const OutputFormat fmt = parse_format(o.format);
    const MonteCarloEvent event = parse_montecarlo_event(o.event);
    const MonteCarloEstimate e = montecarlo_density(event, o.range, o.samples, o.seed, o.threads);

    Sink sink(o.output, out);
    switch (fmt) {
    case OutputFormat::Text:
        *sink << "event " << to_string(e.event) << "\nrange " << e.range_max << "\nsamples " << e.samples
              << "\nseed " << e.seed << "\nsuccesses " << e.successes << "\nestimate " << format_real(e.estimate)
              << "\nstd_error " << format_real(e.std_error) << "\ntarget " << format_real(e.target)
              << "\nstandard_errors_from_target " << format_real(e.row.scaled_error) << '\n';
        break;
    case OutputFormat::Csv: write_report({e.row}, ReportFormat::Csv, *sink); break;
    case OutputFormat::Json: {
        const json j{{"event", std::string(to_string(e.event))},
                     {"range", e.range_max},
                     {"samples", e.samples},
                     {"seed", e.seed},
                     {"successes", e.successes},
                     {"estimate", e.estimate},
                     {"std_error", e.std_error},
                     {"target", e.target}};
        *sink << j.dump(2) << '\n';
        break;
    }
    }
    return kOk;
}

int run_selftest(const Options& o, std::ostream& out)
{
    const OutputFormat fmt = parse_format(o.format);
    if (fmt == OutputFormat::Csv)
        throw InvalidArgument("selftest supports text or json output");
    const Scale scale = o.quick ? Scale::Quick : Scale::Full;
    LazySieve sieve(o.sieve_cache, required_sieve_limit(scale));
    const auto outcomes = run_acceptance(scale, sieve.get());

    int passed = 0, failed = 0, skipped = 0;
    json doc = json::array();
    Sink sink(o.output, out);
    for (const auto& c : outcomes) {
        if (c.skipped)
            ++skipped;
        else if (c.passed)
            ++passed;
        else
            ++failed;
        if (fmt == OutputFormat::Json)
            doc.push_back({{"criterion", c.criterion},
                           {"name", c.name},
                           {"status", c.skipped ? "skip" : c.passed ? "pass" : "fail"},
                           {"detail", c.detail}});
        else
            *sink << format_outcome(c) << '\n';
    }
    if (fmt == OutputFormat::Json)
        *sink << doc.dump(2) << '\n';
    else
        *sink << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
    return failed == 0 ? kOk : kComputationError;
}

void add_shared(CLI::App* sub, Options& o)
{
    sub->add_option("--format", o.format, "text, csv or json")->capture_default_str();
    sub->add_option("--output", o.output, "output file, - for standard output")->capture_default_str();
    sub->add_option("--sieve-cache", o.sieve_cache, "binary sieve cache: loaded if present, written otherwise");
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Options o;
    CLI::App app{"Exact counts and density constants for carefree couples and coprime tuples", "carefree"};
    app.require_subcommand(1, 1);

    auto* constants = app.add_subcommand("constants", "compute density constants");
    constants->add_option("--id", o.ids, "K1, K2, K3, F3, DK(k), HM(n), ZETA2SQ_K1, ZETA2CU_K2")->delimiter(',');
    constants->add_option("--digits", o.digits, "significant digits")->capture_default_str();
    constants->add_option("--method", o.method, "euler, zeta or derived (default per constant)");
    constants->add_option("--prime-limit", o.prime_limit, "prime limit for Euler products")->capture_default_str();
    add_shared(constants, o);

    auto* count = app.add_subcommand("count", "exact counting functions");
    count->add_option("--kind", o.kind, "C1 C2 C3 I2 I3 IkU NC3 KERNEL OMEGA3 OMEGA2SF T S LEMMA2")->required();
    count->add_option("--x", o.x, "upper bound")->required();
    count->add_option("--method", o.method, "formula, brute or recursion");
    count->add_option("--k", o.k, "tuple length for IkU")->capture_default_str();
    count->add_option("--u", o.u, "coprimality modulus for IkU")->capture_default_str();
    count->add_option("--d", o.d, "modulus for T and S")->capture_default_str();
    add_shared(count, o);

    auto* scan = app.add_subcommand("scan", "density scan over geometrically spaced x");
    scan->add_option("--kind", o.kind, "C1 C2 C3 I2 I3 NC3")->required();
    scan->add_option("--from", o.from)->capture_default_str();
    scan->add_option("--to", o.to)->capture_default_str();
    scan->add_option("--points", o.points)->capture_default_str();
    scan->add_option("--method", o.method, "formula, brute or recursion");
    add_shared(scan, o);

    auto* mc = app.add_subcommand("montecarlo", "Monte Carlo density estimate");
    mc->add_option("--event", o.event, "coprime, carefree, strongly, triple, noncoprime")->required();
    mc->add_option("--range", o.range, "sample uniformly from [1, range]")->capture_default_str();
    mc->add_option("--samples", o.samples)->capture_default_str();
    mc->add_option("--seed", o.seed)->capture_default_str();
    mc->add_option("--threads", o.threads, "0 = hardware concurrency")->capture_default_str();
    add_shared(mc, o);

    auto* selftest = app.add_subcommand("selftest", "run the acceptance checks");
    selftest->add_flag("--quick", o.quick, "smaller subset");
    add_shared(selftest, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        parse_format(o.format);
        LazySieve sieve(o.sieve_cache, configured_sieve_limit());
        if (constants->parsed()) {
            check_precision(o.digits);
            return run_constants(o, sieve, out);
        }
        if (count->parsed())
            return run_count(o, sieve, out);
        if (scan->parsed())
            return run_scan(o, sieve, out);
        if (mc->parsed())
            return run_montecarlo(o, out);
        return run_selftest(o, out);
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kComputationError;
    }
}

} // namespace carefree::cli
