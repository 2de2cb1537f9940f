#ifndef CRITDISC_ERRORS_HPP
#define CRITDISC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace critdisc {

// Thrown when an exact identity that must hold by construction fails.
// Any occurrence is a defect in this library, not in the caller's input.
struct internal_consistency_error : std::logic_error {
    explicit internal_consistency_error(const std::string& msg)
        : std::logic_error(msg) {}
};

// Thrown by reduce_mod_p and friends when a coefficient has the prime in
// its denominator. The message names the offending coefficient.
struct integrality_error : std::domain_error {
    explicit integrality_error(const std::string& msg)
        : std::domain_error(msg) {}
};

// Thrown when an operation is asked about a case it deliberately does not
// cover (for example reduction-type questions outside the semistable cases).
struct unsupported_case_error : std::domain_error {
    explicit unsupported_case_error(const std::string& msg)
        : std::domain_error(msg) {}
};

}  // namespace critdisc

#endif
