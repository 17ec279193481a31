#ifndef FAIRMAB_ERRORS_HPP
#define FAIRMAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fairmab {

// Base of every error the library raises on bad input or an unsolvable
// request. Logic errors inside the library use std::logic_error instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class InvalidDistribution : public InvalidConfig {
 public:
  using InvalidConfig::InvalidConfig;
};

// An exhaustive enumeration (power set, LP variables) would exceed its cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class UnknownAvailabilitySet : public Error {
 public:
  using Error::Error;
};

class MismatchedTraces : public Error {
 public:
  using Error::Error;
};

class UnknownPreset : public Error {
 public:
  using Error::Error;
};

class OracleInfeasible : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace fairmab

#endif  // FAIRMAB_ERRORS_HPP
