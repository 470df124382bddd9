#pragma once

#include <stdexcept>
#include <string>

namespace mfs {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Mismatched vector/point dimensions between arguments.
class DimensionError : public Error {
public:
  explicit DimensionError(const std::string& msg) : Error(msg) {}
};

// Invalid configuration (bad bounds, population < 4, unknown config keys, ...).
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Malformed input data (CSV parse failures, non-finite values, ...).
class DataError : public Error {
public:
  explicit DataError(const std::string& msg) : Error(msg) {}
};

// Value outside its admissible range (e.g. a unit-cube point outside [0,1]).
class RangeError : public Error {
public:
  explicit RangeError(const std::string& msg) : Error(msg) {}
};

// Training system too ill-conditioned to solve reliably.
class IllConditionedError : public Error {
public:
  IllConditionedError(const std::string& msg, double condition_estimate)
      : Error(msg), condition_estimate(condition_estimate) {}
  double condition_estimate;
};

// Benchmark function evaluated at a singular point of its domain.
class DomainEvalError : public Error {
public:
  explicit DomainEvalError(const std::string& msg) : Error(msg) {}
};

// Metric undefined for the given inputs (constant truth vector, zero variance).
class DegenerateMetricError : public Error {
public:
  explicit DegenerateMetricError(const std::string& msg) : Error(msg) {}
};

}  // namespace mfs
