#pragma once

#include "carefree/counting.hpp"
#include "carefree/sieve.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace carefree {

// One (x, count, density, target, errors) record of a scan or a Monte Carlo run.
struct DensityReportRow {
    std::string kind;
    std::uint64_t x = 0;
    std::int64_t count = 0;
    double density = 0;  // count / x^arity (successes / samples for Monte Carlo)
    double target = 0;
    double abs_error = 0; // |density - target|
    double scaled_error = 0;
    std::string method;
    bool failed = false;
    std::string failure; // not serialized

    friend bool operator==(const DensityReportRow&, const DensityReportRow&) = default;
};

// 2 for pair kinds, 3 for triple kinds. Throws InvalidArgument for other kinds.
int arity(CountKind kind);

// Density the count converges to: K1, K2, K3, 1/zeta(2), K2 (for I3) or F3.
double density_target(CountKind kind);

// Multiplier turning |density - target| into |count - target x^a| / E(x), where E is
// the error term: x log x for C1 and I2, x log^3 x for C2 and C3, x^2 log^2 x
// for I3 and NC3. Natural log; x = 1 uses 1.
double error_scale(CountKind kind, std::uint64_t x);

DensityReportRow make_density_row(CountKind kind, std::uint64_t x, std::int64_t count, CountMethod method);

// One row per x (strictly increasing). A row whose count hits a cap or the sieve
// limit is returned with failed = true instead of aborting the scan.
std::vector<DensityReportRow> density_scan(const SieveTable& t, CountKind kind,
                                           const std::vector<std::uint64_t>& x_values,
                                           CountMethod method = CountMethod::Formula);

// `points` integers spread geometrically over [from, to], deduplicated.
std::vector<std::uint64_t> geometric_points(std::uint64_t from, std::uint64_t to, int points);

struct FitResult {
    double slope = 0;
    double intercept = 0;
    double residual = 0; // root mean square of the fit residuals
    int points_used = 0;
};

// Unweighted least squares of log|count - target x^a| against log x. Rows with
// zero error or failed rows are skipped; fewer than 3 usable rows throws InvalidArgument.
FitResult error_exponent_fit(const std::vector<DensityReportRow>& rows);

// Sum of squarefree kernels against the two candidate constants zeta(2)/2 and zeta(2) K1 / 2.
struct KernelDiagnostic {
    std::uint64_t x = 0;
    std::int64_t sum = 0;
    double ratio = 0; // sum / x^2
    double zeta2_half = 0;
    double zeta2_k1_half = 0;
    double rel_diff_zeta2_half = 0;
    double rel_diff_zeta2_k1_half = 0;
    std::string winner; // "zeta(2)/2", "zeta(2)*K1/2", or "none" unless exactly one is within tolerance
};
KernelDiagnostic kernel_sum_diagnostic(const SieveTable& t, std::uint64_t x, double tolerance = 0.05);

// Report-only: sum 3^omega(n) / (x log^2 x) against K2/2 and sum mu^2 2^omega / (x log x) against K2.
struct OmegaDiagnostic {
    std::uint64_t x = 0;
    OmegaPowerSums sums;
    double three_pow_ratio = 0;
    double two_pow_ratio = 0;
    double k2_half = 0;
    double k2 = 0;
};
OmegaDiagnostic omega_diagnostic(const SieveTable& t, std::uint64_t x);

} // namespace carefree
