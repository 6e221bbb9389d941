#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace selfdist {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
  ParseError(const std::string &what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

class AddressOutOfSkeleton : public Error {
public:
  using Error::Error;
};

class NotALeaf : public Error {
public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// An LD operator was applied at an address where its pattern does not match.
class NotApplicable : public Error {
public:
  NotApplicable(const std::string &what, std::size_t step)
      : Error(what), step_(step) {}

  /// Zero-based index of the failing step inside a sequence (0 for single
  /// applications).
  std::size_t step() const { return step_; }

private:
  std::size_t step_;
};

/// A bounded search ran out of its budget without reaching a verdict.
class BudgetExceeded : public Error {
public:
  using Error::Error;
};

/// A cooperative cancellation request was observed.
class Cancelled : public Error {
public:
  Cancelled() : Error("search cancelled") {}
};

/// The operation is only defined for one-variable terms.
class MultiVariable : public Error {
public:
  using Error::Error;
};

/// The operation is only defined for terms without the backward operation.
class BwdNotSupported : public Error {
public:
  using Error::Error;
};

class UnboundVariable : public Error {
public:
  using Error::Error;
};

class NotMonogenerated : public Error {
public:
  using Error::Error;
};

class InvalidParams : public InvalidArgument {
public:
  using InvalidArgument::InvalidArgument;
};

/// A size parameter is above its configured cap.
class CapExceeded : public Error {
public:
  using Error::Error;
};

/// SOL is only defined on addresses containing the factor 10.
class NoFactor10 : public InvalidArgument {
public:
  using InvalidArgument::InvalidArgument;
};

/// An internal expectation of an algorithm was violated.
class InternalError : public Error {
public:
  using Error::Error;
};

} // namespace selfdist
