#include "tailinv/errors.hpp"

#include <sstream>

namespace tailinv {

namespace {

std::string describe_domain(double where, double lo, double hi) {
  std::ostringstream os;
  os << "argument " << where << " outside domain [" << lo << ", " << hi << ")";
  return os.str();
}

}  // namespace

OutOfDomain::OutOfDomain(double where, double lo, double hi)
    : Error(describe_domain(where, lo, hi)), where_(where) {}

UnboundedObjective::UnboundedObjective(double x, std::vector<double> witness)
    : Error("conjugate objective unbounded at x = " + std::to_string(x)), x_(x), witness_(std::move(witness)) {}

NonUniqueArgmax::NonUniqueArgmax(double lambda, double width)
    : Error("maximizing set at lambda = " + std::to_string(lambda) + " has width " + std::to_string(width)),
      width_(width) {}

Divergent::Divergent(double cap, double log_integrand_at_cap, const std::string& what)
    : Error(what), cap_(cap), log_integrand_(log_integrand_at_cap) {}

InputError::InputError(const std::string& source, std::size_t line, const std::string& message)
    : Error(line > 0 ? source + ":" + std::to_string(line) + ": " + message : source + ": " + message), line_(line) {}

}  // namespace tailinv
