// Exception hierarchy shared by all smisim modules.
#pragma once

#include <stdexcept>
#include <string>

namespace smisim {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Bad argument values, violated preconditions, malformed inputs.
class InvalidInputError : public Error {
public:
  using Error::Error;
};

// Noise floor power is zero; normalization is undefined.
class DegenerateNoiseFloorError : public InvalidInputError {
public:
  using InvalidInputError::InvalidInputError;
};

// The excess-phase solver failed to converge. Carries the operating
// point so a failing sample can be reproduced in isolation.
class SolverError : public Error {
public:
  SolverError(const std::string& msg, double phi0, double feedback_c,
              long sample_index = -1)
      : Error(msg), phi0(phi0), feedback_c(feedback_c),
        sample_index(sample_index) {}

  double phi0;
  double feedback_c;
  long sample_index;  // -1 when not tied to a trace position
};

// Invalid or inconsistent configuration (files, parameter trees, CLI).
class ConfigError : public Error {
public:
  using Error::Error;
};

// Filesystem / serialization failure.
class IoError : public Error {
public:
  using Error::Error;
};

// A command needs an artifact (dataset, model) that does not exist.
class MissingArtifactError : public Error {
public:
  using Error::Error;
};

// Classifier training cannot proceed (e.g. all features degenerate).
class TrainingError : public Error {
public:
  using Error::Error;
};

}  // namespace smisim
