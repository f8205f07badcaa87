#pragma once

#include <stdexcept>
#include <string>

namespace torushh {

// Base for every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define TORUSHH_ERROR(Name)                                             \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(#Name, what) {}     \
  };

TORUSHH_ERROR(CurvedComplex)
TORUSHH_ERROR(NotChainMap)
TORUSHH_ERROR(WindowRequired)
TORUSHH_ERROR(OutOfWindow)
TORUSHH_ERROR(CurvatureMismatch)
TORUSHH_ERROR(EmptyChart)
TORUSHH_ERROR(RewritingNotConfluent)
TORUSHH_ERROR(SymmetryFailure)
TORUSHH_ERROR(ExactnessFailure)
TORUSHH_ERROR(NotClosed)
TORUSHH_ERROR(CocycleFailure)
TORUSHH_ERROR(NotAssociative)
TORUSHH_ERROR(NotAutomorphism)
TORUSHH_ERROR(BoundExhausted)
TORUSHH_ERROR(NotFreeWitness)
TORUSHH_ERROR(NotInvariant)
TORUSHH_ERROR(ConfigError)

#undef TORUSHH_ERROR

}  // namespace torushh
