#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tslab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid argument combination (size mismatch, out-of-range parameter).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A named numerical guard refused to proceed (boundary mass, Nyquist,
/// caustic, focal time, coverage, ...).
class GuardError : public Error {
 public:
  GuardError(std::string guard, const std::string& what)
      : Error(guard + ": " + what), guard_(std::move(guard)), reason_(what) {}
  const std::string& guard() const noexcept { return guard_; }
  /// Message without the guard prefix (and without derived-class suffixes).
  const std::string& reason() const noexcept { return reason_; }

 protected:
  GuardError(std::string guard, const std::string& what, std::string reason)
      : Error(guard + ": " + what), guard_(std::move(guard)), reason_(std::move(reason)) {}

 private:
  std::string guard_;
  std::string reason_;
};

/// The grid cannot resolve the requested oscillation; `required_n` is the
/// smallest power-of-two point count (same box) that would.
class ResolutionError : public GuardError {
 public:
  ResolutionError(const std::string& what, std::size_t required_n)
      : GuardError("nyquist", what + " (required n >= " + std::to_string(required_n) + ")", what),
        required_n_(required_n) {}
  std::size_t required_n() const noexcept { return required_n_; }

 private:
  std::size_t required_n_;
};

/// Classical boundary-value problem failed: Newton did not converge or
/// dx/deta became singular. Callers treat this as the short-time threshold
/// being exceeded.
class CausticError : public GuardError {
 public:
  explicit CausticError(const std::string& what)
      : GuardError("caustic", "short-time threshold exceeded: " + what, what) {}
};

/// Hamiltonian integration produced a non-finite state.
class FlowError : public Error {
 public:
  FlowError(const std::string& what, double tau) : Error(what), tau_(tau) {}
  double tau() const noexcept { return tau_; }

 private:
  double tau_;
};

/// A least-squares fit was refused (too few valid points).
class FitError : public Error {
 public:
  using Error::Error;
};

}  // namespace tslab
