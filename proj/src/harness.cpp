#include "carefree/harness.hpp"

#include "carefree/constants.hpp"
#include "carefree/errors.hpp"

#include <cmath>
#include <string>

namespace carefree {

namespace {

using Float = PrecisionReal::Float;

const PrecisionReal& target_value(CountKind kind)
{
    const DensityTargets& t = density_targets();
    switch (kind) {
    case CountKind::C1: return t.k1;
    case CountKind::C2: return t.k2;
    case CountKind::C3: return t.k3;
    case CountKind::I2: return t.coprime;
    case CountKind::I3: return t.k2;
    case CountKind::NC3: return t.f3;
    default: break;
    }
    throw InvalidArgument("no density target for " + std::string(to_string(kind)));
}

CountResult run_count(const SieveTable& t, CountKind kind, std::uint64_t x, CountMethod method)
{
    switch (kind) {
    case CountKind::C1: return carefree_count(t, x, method);
    case CountKind::C2: return strongly_carefree_count(t, x, method);
    case CountKind::C3: return weakly_carefree_count(t, x, method);
    case CountKind::I2: return coprime_pair_count(t, x, method);
    case CountKind::I3: return pairwise_coprime_triple_count(t, x, method);
    case CountKind::NC3: return noncoprime_triple_count(t, x, method);
    default: break;
    }
    throw InvalidArgument("density scans do not support " + std::string(to_string(kind)));
}

} // namespace

int arity(CountKind kind)
{
    switch (kind) {
    case CountKind::C1:
    case CountKind::C2:
    case CountKind::C3:
    case CountKind::I2: return 2;
    case CountKind::I3:
    case CountKind::NC3: return 3;
    default: break;
    }
    throw InvalidArgument("no arity for " + std::string(to_string(kind)));
}

double density_target(CountKind kind)
{
    return target_value(kind).to_double();
}

double error_scale(CountKind kind, std::uint64_t x)
{
    if (x <= 1)
        return 1.0;
    const double xd = static_cast<double>(x);
    const double l = std::log(xd);
    switch (kind) {
    case CountKind::C1:
    case CountKind::I2: return xd / l;
    case CountKind::C2:
    case CountKind::C3: return xd / (l * l * l);
    case CountKind::I3:
    case CountKind::NC3: return xd / (l * l);
    default: break;
    }
    throw InvalidArgument("no error scale for " + std::string(to_string(kind)));
}

DensityReportRow make_density_row(CountKind kind, std::uint64_t x, std::int64_t count, CountMethod method)
{
    if (x == 0)
        throw InvalidArgument("density rows need x >= 1");
    const int a = arity(kind);
    Float denom = 1;
    for (int i = 0; i < a; ++i)
        denom *= Float(x);
    const Float density = Float(count) / denom;
    const Float& target = target_value(kind).value();

    DensityReportRow row;
    row.kind = std::string(to_string(kind));
    row.x = x;
    row.count = count;
    row.density = density.convert_to<double>();
    row.target = target.convert_to<double>();
    row.abs_error = Float(abs(density - target)).convert_to<double>();
    row.scaled_error = row.abs_error * error_scale(kind, x);
    row.method = std::string(to_string(method));
    return row;
}

std::vector<DensityReportRow> density_scan(const SieveTable& t, CountKind kind,
                                           const std::vector<std::uint64_t>& x_values, CountMethod method)
{
    arity(kind);
    for (std::size_t i = 0; i < x_values.size(); ++i) {
        if (x_values[i] == 0)
            throw InvalidArgument("scan values must be positive");
        if (i > 0 && x_values[i] <= x_values[i - 1])
            throw InvalidArgument("scan values must be strictly increasing");
    }
    std::vector<DensityReportRow> rows;
    rows.reserve(x_values.size());
    for (std::uint64_t x : x_values) {
        try {
            const CountResult r = run_count(t, kind, x, method);
            rows.push_back(make_density_row(kind, x, r.count, method));
        } catch (const CapacityError& e) {
            DensityReportRow row;
            row.kind = std::string(to_string(kind));
            row.x = x;
            row.method = std::string(to_string(method));
            row.failed = true;
            row.failure = e.what();
            row.density = row.target = row.abs_error = row.scaled_error = std::nan("");
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<std::uint64_t> geometric_points(std::uint64_t from, std::uint64_t to, int points)
{
    if (from == 0 || to < from)
        throw InvalidArgument("need 1 <= from <= to");
    if (points < 1)
        throw InvalidArgument("need at least one point");
    std::vector<std::uint64_t> out;
    if (points == 1 || from == to) {
        out.push_back(from);
        if (points > 1 && to != from)
            out.push_back(to);
        return out;
    }
    const double lf = std::log(static_cast<double>(from));
    const double lt = std::log(static_cast<double>(to));
    for (int i = 0; i < points; ++i) {
        std::uint64_t v;
        if (i == 0)
            v = from;
        else if (i == points - 1)
            v = to;
        else
            v = static_cast<std::uint64_t>(std::llround(std::exp(lf + (lt - lf) * i / (points - 1))));
        if (out.empty() || v > out.back())
            out.push_back(v);
    }
    return out;
}

FitResult error_exponent_fit(const std::vector<DensityReportRow>& rows)
{
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& r : rows) {
        if (r.failed || r.x == 0 || !(r.abs_error > 0) || !std::isfinite(r.abs_error))
            continue;
        const int a = arity(parse_count_kind(r.kind));
        const double lx = std::log(static_cast<double>(r.x));
        xs.push_back(lx);
        ys.push_back(std::log(r.abs_error) + a * lx);
    }
    if (xs.size() < 3)
        throw InvalidArgument("error fit needs at least 3 rows with nonzero error");

    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0)
        throw InvalidArgument("error fit needs distinct x values");

    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    fit.points_used = static_cast<int>(xs.size());
    return fit;
}

KernelDiagnostic kernel_sum_diagnostic(const SieveTable& t, std::uint64_t x, double tolerance)
{
    if (x == 0)
        throw InvalidArgument("kernel diagnostic needs x >= 1");
    const DensityTargets& tg = density_targets();
    KernelDiagnostic d;
    d.x = x;
    d.sum = kernel_sum(t, x);
    d.ratio = (Float(d.sum) / (Float(x) * Float(x))).convert_to<double>();
    d.zeta2_half = (tg.zeta2.value() / 2).convert_to<double>();
    d.zeta2_k1_half = (tg.zeta2.value() * tg.k1.value() / 2).convert_to<double>();
    d.rel_diff_zeta2_half = std::abs(d.ratio - d.zeta2_half) / d.zeta2_half;
    d.rel_diff_zeta2_k1_half = std::abs(d.ratio - d.zeta2_k1_half) / d.zeta2_k1_half;
    const bool first = d.rel_diff_zeta2_half < tolerance;
    const bool second = d.rel_diff_zeta2_k1_half < tolerance;
    if (first && !second)
        d.winner = "zeta(2)/2";
    else if (second && !first)
        d.winner = "zeta(2)*K1/2";
    else
        d.winner = "none";
    return d;
}

OmegaDiagnostic omega_diagnostic(const SieveTable& t, std::uint64_t x)
{
    if (x < 2)
        throw InvalidArgument("omega diagnostic needs x >= 2");
    const DensityTargets& tg = density_targets();
    OmegaDiagnostic d;
    d.x = x;
    d.sums = omega_power_sums(t, x);
    const double xd = static_cast<double>(x);
    const double l = std::log(xd);
    d.three_pow_ratio = static_cast<double>(d.sums.three_pow_omega) / (xd * l * l);
    d.two_pow_ratio = static_cast<double>(d.sums.squarefree_two_pow_omega) / (xd * l);
    d.k2 = tg.k2.to_double();
    d.k2_half = d.k2 / 2;
    return d;
}

} // namespace carefree
