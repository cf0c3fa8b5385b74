#pragma once

#include "carefree/sieve.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace carefree {

// Full runs every acceptance criterion at its stated size. Quick runs a subset
// at smaller sizes with unchanged tolerances.
enum class Scale { Full, Quick };

struct CheckOutcome {
    int criterion = 0;
    std::string name;
    bool passed = false;
    bool skipped = false; // not part of this scale
    std::string detail;
};

// Sieve limit the checks of a scale need.
std::uint64_t required_sieve_limit(Scale scale);

// Runs criteria 1..10 in order. Exceptions inside a check turn into a failed
// outcome carrying the message. Output is deterministic: no timings are printed.
std::vector<CheckOutcome> run_acceptance(Scale scale, const SieveTable& sieve);

// "PASS  3  cross-method agreement: ..." style lines.
std::string format_outcome(const CheckOutcome& c);

// Rounds a plain decimal string (digits and at most one point, no sign) to
// `digits` significant digits, half away from zero.
std::string round_decimal_string(const std::string& value, int digits);

} // namespace carefree
