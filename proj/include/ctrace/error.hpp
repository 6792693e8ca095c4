#pragma once

#include <stdexcept>
#include <string>

namespace ctrace {

/// Base of every error thrown by the library. The CLI maps these to exit 1.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class invalid_argument : public error {
 public:
  using error::error;
};

/// Symbolic-in-alpha and numeric scalars met in one expression.
class scaling_mismatch : public error {
 public:
  using error::error;
};

class composition_mismatch : public error {
 public:
  using error::error;
};

/// A polynomial was required to be homogeneous but is not; carries two
/// monomials of different degree.
class inhomogeneous_error : public error {
 public:
  inhomogeneous_error(std::string first, std::string second)
      : error("polynomial is not homogeneous: witnesses " + first + " and " + second),
        first_(std::move(first)),
        second_(std::move(second)) {}

  const std::string& first_witness() const { return first_; }
  const std::string& second_witness() const { return second_; }

 private:
  std::string first_;
  std::string second_;
};

}  // namespace ctrace
