#include "gcife/errors.hpp"

namespace gcife {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::DegenerateParametrization: return "degenerate-parametrization";
    case ErrorKind::SingularMap: return "singular-map";
    case ErrorKind::NoConvergence: return "no-convergence";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::Topology: return "topology";
    case ErrorKind::NegativeJacobian: return "negative-jacobian";
    case ErrorKind::SingularSystem: return "singular-system";
    case ErrorKind::RankDeficient: return "rank-deficient";
    case ErrorKind::NotInterfaceElement: return "not-an-interface-element";
  }
  return "unknown";
}

}  // namespace gcife
