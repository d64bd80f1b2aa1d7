#pragma once

#include <stdexcept>

namespace dissipchain {

// Base class for every error the library throws on contract violations.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// linear algebra kernel
struct NotHermitian : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };

// chain and operator construction
struct SiteOutOfRange : Error { using Error::Error; };
struct LinkOutOfRange : Error { using Error::Error; };

// states, labels, parameters
struct InvalidState : Error { using Error::Error; };
struct UnknownLabel : Error { using Error::Error; };
struct UnknownPair : Error { using Error::Error; };
struct FOutOfRange : Error { using Error::Error; };

// series analysis
struct GridTooCoarse : Error { using Error::Error; };

// command line
struct UsageError : Error { using Error::Error; };

}  // namespace dissipchain
