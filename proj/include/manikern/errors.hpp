#ifndef MANIKERN_ERRORS_HPP
#define MANIKERN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace manikern {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& msg) : std::domain_error(msg) {}
};

/// A series that provably diverges at the requested evaluation point.
class divergence_error : public std::runtime_error {
public:
    explicit divergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// The level cap is too small to certify the requested tail bound.
class truncation_error : public std::runtime_error {
public:
    explicit truncation_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Extrapolation failed to settle within the requested tolerance.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Linear solve failed; carries a condition estimate in the message.
class singular_error : public std::runtime_error {
public:
    explicit singular_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace manikern

#endif
