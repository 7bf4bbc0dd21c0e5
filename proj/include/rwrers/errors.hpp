#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rwrers {

enum class ErrorKind {
  InvalidVertex,
  Domain,
  Config,
  Input,
  Convergence,
  Resource,
  DegenerateWeights,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidVertexError : public Error {
 public:
  explicit InvalidVertexError(const std::string& what) : Error(ErrorKind::InvalidVertex, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::Input, what) {}
};

// Series truncation did not reach the requested tolerance. Carries the
// partial sums accumulated before giving up.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> partial_sums)
      : Error(ErrorKind::Convergence, what), partial_sums_(std::move(partial_sums)) {}
  const std::vector<double>& partial_sums() const noexcept { return partial_sums_; }

 private:
  std::vector<double> partial_sums_;
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error(ErrorKind::Resource, what) {}
};

class DegenerateWeightsError : public Error {
 public:
  explicit DegenerateWeightsError(const std::string& what)
      : Error(ErrorKind::DegenerateWeights, what) {}
};

}  // namespace rwrers
