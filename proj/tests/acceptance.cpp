// Acceptance gate: every criterion as a named suite, one pass/fail line per
// criterion, nonzero exit on any failure.

#include <cstdlib>
#include <iostream>

#include "g2p/selftest.hpp"

int main() {
    const char* env = std::getenv("G2PACKETS_FIXTURES");
    std::string fixtures = env ? env : "fixtures";
    auto results = g2p::selftest::run_all(fixtures);
    bool all = true;
    int i = 0;
    for (const auto& r : results) {
        ++i;
        all = all && r.pass;
        std::cout << "criterion " << i << " [" << r.name << "]: "
                  << (r.pass ? "PASS" : "FAIL") << " (" << r.checks
                  << " checks) " << r.detail << "\n";
    }
    std::cout << (all ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL") << "\n";
    return all ? 0 : 1;
}
