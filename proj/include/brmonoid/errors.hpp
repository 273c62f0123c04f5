#pragma once

#include <stdexcept>
#include <string>

namespace brm {

// Base for all contract violations raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- group / modification construction ----
struct NotAssociative : Error {
    int x = -1, y = -1, z = -1;  // witness triple (element indices, -1 = unset)
    explicit NotAssociative(const std::string& msg) : Error(msg) {}
    NotAssociative(const std::string& msg, int x_, int y_, int z_)
        : Error(msg), x(x_), y(y_), z(z_) {}
};
struct NoIdentity : Error { using Error::Error; };
struct NoInverse : Error { using Error::Error; };
struct NotLatin : Error { using Error::Error; };
struct IdentityPairErased : Error { using Error::Error; };
struct GroupTooLarge : Error { using Error::Error; };
struct GroupMismatch : Error { using Error::Error; };
struct NotNormal : Error { using Error::Error; };
struct NotCongruence : Error { using Error::Error; };

// ---- linear algebra ----
struct DimensionMismatch : Error { using Error::Error; };
struct IllDefined : Error { using Error::Error; };

// ---- 0-modules and cohomology ----
struct NotAutomorphism : Error { using Error::Error; };
struct ActionIncompatible : Error { using Error::Error; };
struct DimensionUnsupported : Error { using Error::Error; };
struct NotACocycle : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct NotComparable : Error { using Error::Error; };

// ---- finite fields ----
struct NotPrime : Error { using Error::Error; };
struct NotDivisible : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct FixedPointMismatch : Error { using Error::Error; };

// ---- monoid ----
struct ForeignElement : Error { using Error::Error; };

// ---- exact-sequence verifier ----
struct NotInKernelOfPhi : Error { using Error::Error; };
struct HypothesisFailed : Error { using Error::Error; };
struct DescentAssertionFailed : Error { using Error::Error; };
struct LiftNotCocycle : Error { using Error::Error; };

// ---- CLI ----
struct ParseError : Error { using Error::Error; };

// Internal invariant that should be unreachable; distinct from contract errors
// so callers can tell a bug from bad input.
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

inline void internal_check(bool ok, const std::string& what) {
    if (!ok) throw InvariantViolation("internal invariant violated: " + what);
}

}  // namespace brm
