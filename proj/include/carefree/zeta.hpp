#pragma once

#include "carefree/precision_real.hpp"

namespace carefree {

// zeta(s) - 1 for integer s >= 2 with relative error below
// 10^-(kMaxPrecision + kGuardDigits). Direct summation plus an Euler-Maclaurin
// tail; the remainder bound is twice the first omitted correction term, which
// is valid because every derivative of t^-s has constant sign on t > 0.
// Results are memoized; calls are thread-safe.
PrecisionReal zeta_minus_one(unsigned s);

// zeta(k) certified to `precision` significant digits. k <= 1 throws InvalidArgument.
PrecisionReal zeta_value(int k, int precision);

// log zeta(s), computed as log1p(zeta(s) - 1) so it keeps full relative accuracy for large s.
PrecisionReal log_zeta(unsigned s);

// Prime zeta P(s) = sum over primes p^-s = sum_m mu(m)/m * log zeta(m s), s >= 2.
PrecisionReal prime_zeta(unsigned s);

// B_n as an exact rational, n <= 400.
const PrecisionReal::Rational& bernoulli_number(unsigned n);

} // namespace carefree
