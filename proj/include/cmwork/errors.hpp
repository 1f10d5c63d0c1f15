#pragma once

#include <stdexcept>
#include <string>

namespace cmwork {

// Base class for all failures raised by the library.  Two broad families:
// ConfigError means the caller asked for something malformed (bad group
// label, mismatched variable sets, missing seed); MathError means a
// mathematical contract was violated at runtime (a division that had to be
// exact was not, an enumeration cap was hit, an integrator gave up).  The
// CLI maps ConfigError to exit code 2 and MathError to exit code 1.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : Error {
  using Error::Error;
};

struct MathError : Error {
  using Error::Error;
};

// exact-core
struct VariableSetMismatch : ConfigError { using ConfigError::ConfigError; };
struct FieldMismatch : ConfigError { using ConfigError::ConfigError; };
struct NotDivisible : MathError { using MathError::MathError; };
struct PoleAtPoint : MathError { using MathError::MathError; };

// reflection-groups
struct UnsupportedType : ConfigError { using ConfigError::ConfigError; };
struct OrderCapExceeded : MathError { using MathError::MathError; };
struct FactorizationFailed : MathError { using MathError::MathError; };

// dunkl-operators / verma-modules
struct NotInvariant : ConfigError { using ConfigError::ConfigError; };
struct RDivisibleByN : ConfigError { using ConfigError::ConfigError; };
struct NonTerminating : MathError { using MathError::MathError; };

// support-criteria
struct MissingParabolicTable : ConfigError { using ConfigError::ConfigError; };

// calogero-moser
struct SeparationTooSmall : MathError { using MathError::MathError; };
struct StepFailure : MathError { using MathError::MathError; };

// hecke-kz
struct MoveCapExceeded : MathError { using MathError::MathError; };
struct HyperplaneTooClose : MathError { using MathError::MathError; };
struct ToleranceNotMet : MathError { using MathError::MathError; };

}  // namespace cmwork
