#ifndef JACOBIKIT_ERRORS_HPP
#define JACOBIKIT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jacobikit {

// Base class for every error the library raises on bad input or
// violated preconditions. Verification *failures* are not errors;
// they are reported through VerificationReport.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

// Evaluation hit a singular input (division by zero, log of a
// non-positive value). Carries the offending subexpression.
class DomainError : public Error {
public:
  DomainError(const std::string& what, std::string subexpr)
      : Error(what + " in subexpression `" + subexpr + "`"),
        subexpr_(std::move(subexpr)) {}
  const std::string& subexpr() const noexcept { return subexpr_; }

private:
  std::string subexpr_;
};

class ChartMismatchError : public Error {
public:
  using Error::Error;
};

// Requested the exact backend on an expression outside the
// polynomial fragment.
class NotPolynomialError : public Error {
public:
  using Error::Error;
};

// A function failed the flat-subbundle membership test.
class MembershipError : public Error {
public:
  MembershipError(const std::string& what, int coordinate)
      : Error(what), coordinate_(coordinate) {}
  int coordinate() const noexcept { return coordinate_; }

private:
  int coordinate_ = -1;
};

// Structure document violated the schema or a structure invariant.
class StructureError : public Error {
public:
  using Error::Error;
};

}  // namespace jacobikit

#endif
