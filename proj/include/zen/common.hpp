#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace zen {

using Cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

/// Input fails a structural precondition (malformed coefficients, t <= 0,
/// point outside the open right half-plane, ...).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Input parses but is rejected by a mathematical admissibility check
/// (doubling condition fails, symbol is not a half-plane self-map, ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A numerical routine exhausted its budget without meeting its tolerance,
/// or detected a genuinely divergent integral.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

inline bool in_open_half_plane(Cplx z) { return z.real() > 0.0; }

inline void require_half_plane(Cplx z, const char* who) {
    if (!(z.real() > 0.0))
        throw DomainError(std::string(who) + ": point (" + std::to_string(z.real()) + ", " +
                          std::to_string(z.imag()) + "i) is not in the open right half-plane");
}

} // namespace zen
