#pragma once

#include <stdexcept>
#include <string>

namespace gcife {

enum class ErrorKind {
  InvalidArgument,
  DegenerateParametrization,
  SingularMap,
  NoConvergence,
  Divergence,
  Topology,
  NegativeJacobian,
  SingularSystem,
  RankDeficient,
  NotInterfaceElement,
};

const char* to_string(ErrorKind kind);

/// Exception carrying a machine-checkable failure category and, when the
/// failure happened inside a per-element loop, the element index.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, int element = -1)
      : std::runtime_error(what), kind_(kind), element_(element) {}

  ErrorKind kind() const noexcept { return kind_; }
  int element() const noexcept { return element_; }

 private:
  ErrorKind kind_;
  int element_;
};

}  // namespace gcife
