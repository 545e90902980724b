#pragma once

#include <stdexcept>
#include <string>

namespace ekpoly {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define EKPOLY_ERROR(name)                      \
    struct name : Error {                       \
        using Error::Error;                     \
    }

EKPOLY_ERROR(FieldError);
EKPOLY_ERROR(NoRootError);
EKPOLY_ERROR(PrecisionError);
EKPOLY_ERROR(PrecisionExhausted);
EKPOLY_ERROR(DomainError);
EKPOLY_ERROR(CompositionError);
EKPOLY_ERROR(ResidueError);
EKPOLY_ERROR(UnknownCoefficient);
EKPOLY_ERROR(TowerTooDeep);
EKPOLY_ERROR(NotElliptic);
EKPOLY_ERROR(CrossCheckError);
EKPOLY_ERROR(ValidationError);
EKPOLY_ERROR(OrbitError);
EKPOLY_ERROR(NotIntegral);
EKPOLY_ERROR(CongruenceError);
EKPOLY_ERROR(AuditError);
EKPOLY_ERROR(OracleMismatch);
EKPOLY_ERROR(PoleError);
EKPOLY_ERROR(ConvergenceBudget);
EKPOLY_ERROR(PathThroughLattice);
EKPOLY_ERROR(UnknownIdentity);
EKPOLY_ERROR(ConfigError);

#undef EKPOLY_ERROR

}  // namespace ekpoly
