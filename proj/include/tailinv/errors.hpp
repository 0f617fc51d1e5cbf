#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tailinv {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutOfDomain : public Error {
 public:
  OutOfDomain(double where, double lo, double hi);
  double where() const { return where_; }

 private:
  double where_;
};

class EmptyDomain : public Error {
 public:
  using Error::Error;
};

// The supremum of lambda*x - f(lambda) is +inf; witness holds lambdas along
// which the objective keeps growing.
class UnboundedObjective : public Error {
 public:
  UnboundedObjective(double x, std::vector<double> witness);
  double x() const { return x_; }
  const std::vector<double>& witness() const { return witness_; }

 private:
  double x_;
  std::vector<double> witness_;
};

class NonUniqueArgmax : public Error {
 public:
  NonUniqueArgmax(double lambda, double width);
  double width() const { return width_; }

 private:
  double width_;
};

class Divergent : public Error {
 public:
  Divergent(double cap, double log_integrand_at_cap, const std::string& what);
  double cap() const { return cap_; }
  double log_integrand_at_cap() const { return log_integrand_; }

 private:
  double cap_;
  double log_integrand_;
};

class NegativeInput : public Error {
 public:
  using Error::Error;
};

class GeometryInvalid : public Error {
 public:
  using Error::Error;
};

class AbsorptionFailed : public Error {
 public:
  using Error::Error;
};

class NotConverged : public Error {
 public:
  using Error::Error;
};

class NonPositiveEnvelope : public Error {
 public:
  using Error::Error;
};

class NonInvertible : public Error {
 public:
  using Error::Error;
};

// Malformed user input (CSV files, grid strings). Carries a 1-based line number
// when the input is a file, 0 otherwise.
class InputError : public Error {
 public:
  InputError(const std::string& source, std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace tailinv
