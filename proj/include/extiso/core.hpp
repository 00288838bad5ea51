#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace extiso {

using Elem = std::uint32_t;
using Cell = std::uint16_t;  // table storage; orders up to 65535

constexpr std::size_t kMaxOrder = 65535;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotAGroup : public Error {
 public:
  explicit NotAGroup(std::string reason)
      : Error("NotAGroup(" + reason + ")"), reason_(std::move(reason)) {}
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class StrategyInapplicable : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

#define EXTISO_ERROR(Name)            \
  class Name : public Error {         \
   public:                            \
    using Error::Error;               \
  }

EXTISO_ERROR(NotNormal);
EXTISO_ERROR(NotAbelian);
EXTISO_ERROR(NotSemisimpleProduct);
EXTISO_ERROR(ActionMismatch);
EXTISO_ERROR(NotProductRespecting);
EXTISO_ERROR(InvalidExtensionData);
EXTISO_ERROR(EvenPrime);
EXTISO_ERROR(NotCentral);
EXTISO_ERROR(OuterActionNontrivial);
EXTISO_ERROR(RankDeficient);

#undef EXTISO_ERROR

// Caps read EXTISO_CAP when set; `fallback` otherwise.
std::size_t cap_from_env(std::size_t fallback);

}  // namespace extiso
