#pragma once

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace carefree {

// A radix-10 floating value together with a bound on its absolute error.
//
// Every arithmetic operation adds the propagated input errors (first-order
// terms plus their products) and one rounding unit of the working format, so
// error_bound() stays an upper bound on |value() - true value| as long as the
// inputs' bounds were.
class PrecisionReal {
public:
    using Float = boost::multiprecision::number<boost::multiprecision::cpp_dec_float<80>,
                                                boost::multiprecision::et_off>;
    using Integer = boost::multiprecision::cpp_int;
    using Rational = boost::multiprecision::cpp_rational;

    static constexpr int kWorkingDigits = 80;
    static constexpr int kGuardDigits = 10;
    static constexpr int kMinPrecision = 5;
    static constexpr int kMaxPrecision = 50;

    PrecisionReal() = default;
    PrecisionReal(std::int64_t v) : value_(v) {} // NOLINT: exact
    PrecisionReal(Float value, Float error) : value_(std::move(value)), error_(abs(error)) {}

    static PrecisionReal exact(const Integer& v) { return PrecisionReal(Float(v), Float(0)); }
    static PrecisionReal from_rational(const Rational& q);

    const Float& value() const { return value_; }
    const Float& error_bound() const { return error_; }
    double to_double() const { return value_.convert_to<double>(); }

    // error_bound <= 10^-digits * |value|
    bool meets(int digits) const;
    // Throws PrecisionError unless meets(digits).
    const PrecisionReal& require(int digits) const;

    // Rounded to `digits` significant decimal digits, positional notation,
    // '.' decimal point independent of locale.
    std::string to_string(int digits) const;
    // Compact scientific rendering of the error bound.
    std::string error_string() const;

    PrecisionReal operator-() const { return {-value_, error_}; }
    PrecisionReal& operator+=(const PrecisionReal& o);
    PrecisionReal& operator-=(const PrecisionReal& o);
    PrecisionReal& operator*=(const PrecisionReal& o);
    PrecisionReal& operator/=(const PrecisionReal& o);

    // Exact small-integer scaling; one rounding unit each.
    PrecisionReal& mul_u64(std::uint64_t m);
    PrecisionReal& div_u64(std::uint64_t m);

    friend PrecisionReal operator+(PrecisionReal a, const PrecisionReal& b) { return a += b; }
    friend PrecisionReal operator-(PrecisionReal a, const PrecisionReal& b) { return a -= b; }
    friend PrecisionReal operator*(PrecisionReal a, const PrecisionReal& b) { return a *= b; }
    friend PrecisionReal operator/(PrecisionReal a, const PrecisionReal& b) { return a /= b; }

    // Widens the error bound by `extra` (e.g. a truncation remainder).
    PrecisionReal& add_error(const Float& extra);

    static Float unit_roundoff(const Float& magnitude);

private:
    Float value_ = 0;
    Float error_ = 0;
};

PrecisionReal log(const PrecisionReal& x);
PrecisionReal log1p(const PrecisionReal& x);
PrecisionReal exp(const PrecisionReal& x);
PrecisionReal sqrt(const PrecisionReal& x);
PrecisionReal pow(const PrecisionReal& x, unsigned n);

PrecisionReal::Float pi_value();

} // namespace carefree
