#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dnls {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};

// Bad input or a call outside an operation's domain. CLI exit code 1.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computation that could not reach its tolerance. CLI exit code 2.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void check_eps(int eps)
{
    if (eps != 1 && eps != -1)
        throw ValidationError("eps must be +1 or -1, got " + std::to_string(eps));
}

inline double sgn(double v) { return v < 0 ? -1.0 : 1.0; }

} // namespace dnls
