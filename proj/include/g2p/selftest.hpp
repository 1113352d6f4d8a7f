#ifndef G2P_SELFTEST_HPP
#define G2P_SELFTEST_HPP

#include <string>
#include <vector>

namespace g2p::selftest {

struct SuiteResult {
    std::string name;
    bool pass;
    long checks;
    std::string detail;  // first failure, or a one-line summary
};

// every acceptance suite, in criterion order; fixtures_dir supplies the
// scenario grid for the packet truth table and the determinism check
std::vector<SuiteResult> run_all(const std::string& fixtures_dir);

} // namespace g2p::selftest

#endif
