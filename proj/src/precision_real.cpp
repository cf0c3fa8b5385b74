#include "carefree/precision_real.hpp"

#include "carefree/errors.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/log1p.hpp>

#include <cstdlib>

namespace carefree {

using Float = PrecisionReal::Float;

namespace {

const Float& roundoff_scale()
{
    static const Float scale = boost::multiprecision::pow(Float(10), -(PrecisionReal::kWorkingDigits - 2));
    return scale;
}

} // namespace

Float PrecisionReal::unit_roundoff(const Float& magnitude)
{
    return abs(magnitude) * roundoff_scale();
}

PrecisionReal PrecisionReal::from_rational(const Rational& q)
{
    Float v = Float(numerator(q)) / Float(denominator(q));
    return {v, unit_roundoff(v)};
}

bool PrecisionReal::meets(int digits) const
{
    return error_ <= boost::multiprecision::pow(Float(10), -digits) * abs(value_);
}

const PrecisionReal& PrecisionReal::require(int digits) const
{
    if (!meets(digits))
        throw PrecisionError("error bound " + error_string() + " does not certify " + std::to_string(digits) +
                             " digits");
    return *this;
}

std::string PrecisionReal::to_string(int digits) const
{
    if (digits < 1)
        throw InvalidArgument("digit count must be positive");
    if (value_ == 0)
        return "0";

    // Decimal exponent of the leading digit, then the mantissa rounded half away
    // from zero to `digits` digits. Scaling by powers of ten is exact in this backend.
    const Float mag = abs(value_);
    const std::string probe = mag.str(20, std::ios_base::scientific);
    long exponent = std::strtol(probe.c_str() + probe.find('e') + 1, nullptr, 10);
    const Float lower = boost::multiprecision::pow(Float(10), digits - 1);
    Float m = round(mag * boost::multiprecision::pow(Float(10), digits - 1 - exponent));
    if (m < lower) {
        --exponent;
        m = round(mag * boost::multiprecision::pow(Float(10), digits - 1 - exponent));
    }
    if (m >= lower * 10) {
        ++exponent;
        m = round(mag * boost::multiprecision::pow(Float(10), digits - 1 - exponent));
    }
    const std::string sign = value_ < 0 ? "-" : "";
    const std::string raw = m.convert_to<Integer>().str();

    std::string out;
    if (exponent < 0) {
        out = "0." + std::string(static_cast<std::size_t>(-exponent - 1), '0') + raw;
    } else if (static_cast<std::size_t>(exponent) + 1 >= raw.size()) {
        out = raw + std::string(static_cast<std::size_t>(exponent) + 1 - raw.size(), '0');
    } else {
        out = raw.substr(0, static_cast<std::size_t>(exponent) + 1) + "." +
              raw.substr(static_cast<std::size_t>(exponent) + 1);
    }
    return sign + out;
}

std::string PrecisionReal::error_string() const
{
    if (error_ == 0)
        return "0";
    return error_.str(3, std::ios_base::scientific);
}

PrecisionReal& PrecisionReal::add_error(const Float& extra)
{
    error_ += abs(extra);
    return *this;
}

PrecisionReal& PrecisionReal::operator+=(const PrecisionReal& o)
{
    value_ += o.value_;
    error_ += o.error_ + unit_roundoff(value_);
    return *this;
}

PrecisionReal& PrecisionReal::operator-=(const PrecisionReal& o)
{
    value_ -= o.value_;
    error_ += o.error_ + unit_roundoff(value_);
    return *this;
}

PrecisionReal& PrecisionReal::operator*=(const PrecisionReal& o)
{
    const Float e = abs(value_) * o.error_ + abs(o.value_) * error_ + error_ * o.error_;
    value_ *= o.value_;
    error_ = e + unit_roundoff(value_);
    return *this;
}

PrecisionReal& PrecisionReal::operator/=(const PrecisionReal& o)
{
    const Float denom_low = abs(o.value_) - o.error_;
    if (denom_low <= 0)
        throw PrecisionError("division by a value whose error interval contains zero");
    value_ /= o.value_;
    // |a/b - A/B| <= (|a - A| + |a/b| |b - B|) / |B|
    error_ = (error_ + abs(value_) * o.error_) / denom_low + unit_roundoff(value_);
    return *this;
}

PrecisionReal& PrecisionReal::mul_u64(std::uint64_t m)
{
    value_ *= m;
    error_ = error_ * m + unit_roundoff(value_);
    return *this;
}

PrecisionReal& PrecisionReal::div_u64(std::uint64_t m)
{
    if (m == 0)
        throw InvalidArgument("division by zero");
    value_ /= m;
    error_ = error_ / m + unit_roundoff(value_);
    return *this;
}

PrecisionReal log(const PrecisionReal& x)
{
    const Float low = x.value() - x.error_bound();
    if (low <= 0)
        throw PrecisionError("log of a value whose error interval reaches zero");
    Float v = log(x.value());
    return {v, x.error_bound() / low + PrecisionReal::unit_roundoff(v) + PrecisionReal::unit_roundoff(1)};
}

PrecisionReal log1p(const PrecisionReal& x)
{
    const Float low = 1 + x.value() - x.error_bound();
    if (low <= 0)
        throw PrecisionError("log1p argument interval reaches -1");
    Float v = boost::math::log1p(x.value());
    return {v, x.error_bound() / low + PrecisionReal::unit_roundoff(v)};
}

PrecisionReal exp(const PrecisionReal& x)
{
    Float v = exp(x.value());
    // |e^(a+d) - e^a| <= e^a (e^|d| - 1)
    Float e = v * boost::multiprecision::expm1(x.error_bound());
    return {v, e + PrecisionReal::unit_roundoff(v)};
}

PrecisionReal sqrt(const PrecisionReal& x)
{
    const Float low = x.value() - x.error_bound();
    if (low < 0)
        throw PrecisionError("sqrt of a value whose error interval is negative");
    Float v = sqrt(x.value());
    Float e = x.error_bound() / (v + sqrt(low));
    return {v, e + PrecisionReal::unit_roundoff(v)};
}

PrecisionReal pow(const PrecisionReal& x, unsigned n)
{
    if (n == 0)
        return PrecisionReal(1);
    const Float a = abs(x.value());
    Float v = boost::multiprecision::pow(x.value(), n);
    // |(a+d)^n - a^n| <= (a+|d|)^n - a^n
    Float e = boost::multiprecision::pow(a + x.error_bound(), n) - abs(v);
    return {v, e + PrecisionReal::unit_roundoff(v) * n};
}

Float pi_value()
{
    return boost::math::constants::pi<Float>();
}

} // namespace carefree
