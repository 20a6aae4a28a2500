#pragma once

#include <stdexcept>
#include <string>

namespace skewlab {

// Base type for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A decimal or config value could not be parsed.
struct ParseError : Error {
    using Error::Error;
};

// Continued-fraction expansion terminated early while the caller demanded an
// irrational rotation number.
struct RationalInput : Error {
    using Error::Error;
};

// No integer n <= n_max landed in the admissible band for index r.
struct BandUnreachable : Error {
    long long r;
    BandUnreachable(long long r_, const std::string& msg) : Error(msg), r(r_) {}
};

// |e(n alpha) - 1| fell below the precision floor; the fixed-point seed of
// alpha cannot resolve this divisor.
struct DivisorUnderflow : Error {
    using Error::Error;
};

// A coordinate index is outside the range a constructor admits.
struct BadIndex : Error {
    using Error::Error;
};

// build_shift_family needs a base system with a series coordinate.
struct NoSeriesCoordinate : Error {
    using Error::Error;
};

// The system is not an interleaved product of two factors.
struct NotAProduct : Error {
    using Error::Error;
};

// A brute-force search request exceeds the hard size limits.
struct ComplexityGuard : Error {
    using Error::Error;
};

// Invalid or incomplete experiment configuration.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace skewlab
