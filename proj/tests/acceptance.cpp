// Runs acceptance criteria 1-10 at full size and prints one PASS/FAIL line each.
// Exit status is nonzero if any criterion fails.

#include "carefree/sieve.hpp"
#include "carefree/verification.hpp"

#include <exception>
#include <iostream>

int main()
{
    using namespace carefree;
    try {
        const SieveTable sieve(required_sieve_limit(Scale::Full));
        const auto outcomes = run_acceptance(Scale::Full, sieve);
        int passed = 0, failed = 0;
        for (const auto& c : outcomes) {
            std::cout << format_outcome(c) << '\n';
            if (c.skipped)
                continue;
            c.passed ? ++passed : ++failed;
        }
        std::cout << passed << " passed, " << failed << " failed\n";
        return failed == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cout << "FAIL  acceptance run aborted: " << e.what() << '\n';
        return 1;
    }
}
