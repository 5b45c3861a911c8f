#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace transport {

// Two error families, matching the CLI exit-code contract:
// ValidationError = bad input or configuration (exit 2),
// NumericError    = a fit or sampling procedure broke down (exit 3).
// name() is the stable machine-readable identifier used in error JSON.
class Error : public std::runtime_error {
public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

private:
  std::string name_;
};

class ValidationError : public Error {
public:
  using Error::Error;
};

class NumericError : public Error {
public:
  using Error::Error;
};

#define TRANSPORT_DEFINE_ERROR(Name, Base)                    \
  class Name : public Base {                                  \
  public:                                                     \
    explicit Name(const std::string& what) : Base(#Name, what) {} \
  }

TRANSPORT_DEFINE_ERROR(EmptyDataset, ValidationError);
TRANSPORT_DEFINE_ERROR(MissingArmData, ValidationError);
TRANSPORT_DEFINE_ERROR(TargetWithOutcome, ValidationError);
TRANSPORT_DEFINE_ERROR(NonFiniteValue, ValidationError);
TRANSPORT_DEFINE_ERROR(DegenerateTrial, ValidationError);
TRANSPORT_DEFINE_ERROR(MissingTarget, ValidationError);
TRANSPORT_DEFINE_ERROR(MalformedRow, ValidationError);
TRANSPORT_DEFINE_ERROR(InvalidParameter, ValidationError);
TRANSPORT_DEFINE_ERROR(DimensionMismatch, ValidationError);
TRANSPORT_DEFINE_ERROR(DegenerateLabels, ValidationError);
TRANSPORT_DEFINE_ERROR(ZeroVariance, ValidationError);
TRANSPORT_DEFINE_ERROR(InsufficientReplications, ValidationError);
TRANSPORT_DEFINE_ERROR(ConfigError, ValidationError);
TRANSPORT_DEFINE_ERROR(FileError, ValidationError);

TRANSPORT_DEFINE_ERROR(RankDeficient, NumericError);
TRANSPORT_DEFINE_ERROR(Separation, NumericError);
TRANSPORT_DEFINE_ERROR(NonConvergentTail, NumericError);
TRANSPORT_DEFINE_ERROR(ReplicationFailed, NumericError);

#undef TRANSPORT_DEFINE_ERROR

}  // namespace transport
