#pragma once

#include <stdexcept>
#include <string>

namespace ripplet {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter lies outside its admissible domain (n < 2, mu <= 1, ...).
class domain_error : public error {
 public:
  using error::error;
};

/// Matrix or index-range sizes do not fit together.
class dimension_error : public error {
 public:
  using error::error;
};

/// The sampling grid is too coarse for the requested cascade.
class resolution_error : public error {
 public:
  using error::error;
};

/// A collocation or normal system is numerically singular.
class stability_error : public error {
 public:
  using error::error;
};

/// A file could not be read or parsed.
class io_error : public error {
 public:
  using error::error;
};

/// The Bezout system has no (unique) solution for the requested support.
class no_solution_error : public error {
 public:
  no_solution_error(const std::string& what, double residual)
      : error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// An iteration hit its depth limit before reaching the tolerance.
class iteration_limit_error : public error {
 public:
  iteration_limit_error(const std::string& what, double last_residual)
      : error(what), last_residual_(last_residual) {}
  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

}  // namespace ripplet
