#pragma once

#include <stdexcept>
#include <string>

namespace miquel {

// Base class for every domain error thrown by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define MIQUEL_ERROR_TYPE(Name)                                    \
  struct Name : Error {                                            \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

MIQUEL_ERROR_TYPE(DegenerateGeometry);
MIQUEL_ERROR_TYPE(NotOnCircle);
MIQUEL_ERROR_TYPE(InvalidPattern);
MIQUEL_ERROR_TYPE(InvalidParameters);
MIQUEL_ERROR_TYPE(ForgeFailed);
MIQUEL_ERROR_TYPE(ForgeDegenerate);
MIQUEL_ERROR_TYPE(DegenerateMutation);
MIQUEL_ERROR_TYPE(ConditionViolation);
MIQUEL_ERROR_TYPE(SingularConfiguration);
MIQUEL_ERROR_TYPE(InvalidLoop);
MIQUEL_ERROR_TYPE(NonGeneric);
MIQUEL_ERROR_TYPE(NotOnHyperbola);
MIQUEL_ERROR_TYPE(DegenerateConfiguration);
MIQUEL_ERROR_TYPE(WrongRegime);
MIQUEL_ERROR_TYPE(InconsistentPattern);

#undef MIQUEL_ERROR_TYPE

}  // namespace miquel
