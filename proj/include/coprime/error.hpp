#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coprime {

/// Base of every library error. Callers that only care about "something went
/// wrong numerically" catch this; the CLI maps it to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

/// A table or cutoff would exceed the configured memory cap.
class ResourceLimit : public Error {
 public:
  ResourceLimit(const std::string& what, std::size_t requested)
      : Error(what + " (requested limit " + std::to_string(requested) + ")"),
        requested_(requested) {}

  std::size_t requested() const noexcept { return requested_; }

 private:
  std::size_t requested_;
};

/// Evaluation at a pole. Carries the residue when it is known in closed form.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, double residue)
      : Error(what), residue_(residue) {}

  double residue() const noexcept { return residue_; }

 private:
  double residue_;
};

class UnsupportedDomain : public Error {
 public:
  using Error::Error;
};

class UnsupportedModel : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// log|y| regression refused because y changes sign inside the window.
class OscillationDetected : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace coprime
