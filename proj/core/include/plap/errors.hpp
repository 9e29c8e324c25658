#pragma once

#include <stdexcept>
#include <string>

namespace plap {

/// Thrown when an iteration fails to converge, an iterate leaves the
/// representable range, or an inner solve breaks down.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace plap
