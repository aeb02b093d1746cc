#pragma once

#include <stdexcept>
#include <string>

namespace slg {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematically invalid request (inverting zero, a singular matrix, a
/// parameter outside the domain of a formula).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The caller broke a precondition (mixed fields, reducible module passed to
/// a quasi-primitivity test, malformed input files).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A configured size cap was exceeded.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& what, std::size_t partial)
      : Error(what), partial_(partial) {}
  std::size_t partial() const noexcept { return partial_; }

 private:
  std::size_t partial_;
};

/// A structural assertion about a decomposition failed.  `clause` names the
/// failing check.
class StructuralError : public Error {
 public:
  StructuralError(std::string clause, const std::string& what)
      : Error(clause + ": " + what), clause_(std::move(clause)) {}
  const std::string& clause() const noexcept { return clause_; }

 private:
  std::string clause_;
};

/// Internal consistency failure; always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

/// A verifier could not confirm a theorem-level statement on an instance.
class Alarm : public Error {
 public:
  using Error::Error;
};

}  // namespace slg
