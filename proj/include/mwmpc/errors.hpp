#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mwmpc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A vector had the wrong length. `index` names the offending element of a
/// sequence (e.g. the control step), or is npos when the whole argument is wrong.
class DimensionError : public Error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  DimensionError(std::string what, std::size_t index, std::size_t expected, std::size_t actual);

  std::size_t index() const { return index_; }
  std::size_t expected() const { return expected_; }
  std::size_t actual() const { return actual_; }

 private:
  std::size_t index_;
  std::size_t expected_;
  std::size_t actual_;
};

class UnsupportedOperation : public Error {
 public:
  using Error::Error;
};

class SolverFailure : public Error {
 public:
  using Error::Error;
};

/// A cost evaluation returned NaN or infinity. `component` is the perturbed
/// coordinate for gradient evaluations, npos otherwise.
class NonFiniteCost : public SolverFailure {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  NonFiniteCost(const std::string& what, std::size_t component)
      : SolverFailure(what), component_(component) {}

  std::size_t component() const { return component_; }

 private:
  std::size_t component_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mwmpc
