#pragma once

#include <stdexcept>
#include <string>

namespace surfcalc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DegenerateChartError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double best_u, double best_v, double best_residual)
      : Error(what), best_u(best_u), best_v(best_v), best_residual(best_residual) {}
  double best_u, best_v, best_residual;
};

class AmbiguityError : public Error {
 public:
  using Error::Error;
};

class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class RepresentationError : public Error {
 public:
  using Error::Error;
};

class TubularBoundError : public Error {
 public:
  using Error::Error;
};

class FoldOverError : public Error {
 public:
  using Error::Error;
};

class IncompleteStateError : public Error {
 public:
  using Error::Error;
};

class IntegrationError : public Error {
 public:
  using Error::Error;
};

class ResolutionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace surfcalc
