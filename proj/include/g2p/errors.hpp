#ifndef G2P_ERRORS_HPP
#define G2P_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace g2p {

// Precondition violations: bad input, out-of-range conductor, zero where a
// unit is required, precision exhaustion.  CLI maps these to exit code 1.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Broken internal invariants: sign snapping failures, inconsistent tables.
// CLI maps these to exit code 2.  Never caught and rounded away.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace g2p

#endif
