#pragma once

#include <stdexcept>
#include <string>

namespace sevote {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user-supplied configuration (grid files, experiment configs,
/// classifier specs, CLI arguments).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Training data cannot support the requested model (e.g. a single class
/// for softmax regression).
class DegenerateTrainingError : public Error {
 public:
  using Error::Error;
};

}  // namespace sevote
