#pragma once

#include <stdexcept>
#include <string>

namespace pillowfloer {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define PILLOWFLOER_ERROR_TYPE(Name)                              \
  struct Name : Error {                                           \
    explicit Name(const std::string& what = #Name) : Error(what) {} \
  }

PILLOWFLOER_ERROR_TYPE(NonTransverseCrossing);
PILLOWFLOER_ERROR_TYPE(NonClosedLoop);
PILLOWFLOER_ERROR_TYPE(NonCoprime);
PILLOWFLOER_ERROR_TYPE(BadEpsilon);
PILLOWFLOER_ERROR_TYPE(NonTransverse);
PILLOWFLOER_ERROR_TYPE(WindowTooSmall);
PILLOWFLOER_ERROR_TYPE(NonGenericVertex);
PILLOWFLOER_ERROR_TYPE(EqualLines);
PILLOWFLOER_ERROR_TYPE(ChainMismatch);
PILLOWFLOER_ERROR_TYPE(DifferentComponents);
PILLOWFLOER_ERROR_TYPE(UnknownGenerator);
PILLOWFLOER_ERROR_TYPE(NonIntegralDegree);
PILLOWFLOER_ERROR_TYPE(NotMonotonic);
PILLOWFLOER_ERROR_TYPE(WindowExhausted);
PILLOWFLOER_ERROR_TYPE(DifferentialNotSquareZero);
PILLOWFLOER_ERROR_TYPE(InvalidSpec);
PILLOWFLOER_ERROR_TYPE(SingularPoint);
PILLOWFLOER_ERROR_TYPE(AmbiguousConjugation);
PILLOWFLOER_ERROR_TYPE(UnfoldJump);
PILLOWFLOER_ERROR_TYPE(NotAdmissible);
PILLOWFLOER_ERROR_TYPE(SeedMiss);

#undef PILLOWFLOER_ERROR_TYPE

}  // namespace pillowfloer
