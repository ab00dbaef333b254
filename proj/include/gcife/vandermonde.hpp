#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gcife/cutquad.hpp"
#include "gcife/mesh.hpp"

namespace gcife {

/// Entry (k, i) is d_eta-th eta and d_xi-th xi partial of R_i at point k,
/// where R_{(m+1)t+s} = q_t(eta / eta_h) p_s((xi - xi_mid) / xi_h).
Eigen::MatrixXd vandermonde(const std::vector<FrenetPoint>& points, int m, const FrenetElementInfo& info,
                            int d_eta = 0, int d_xi = 0);

/// Generalized Vandermonde matrices on both sub-elements, with first
/// derivative companions for gradient evaluation.
struct VandermondeSet {
  Eigen::MatrixXd minus;
  Eigen::MatrixXd plus;
  Eigen::MatrixXd minus_eta, minus_xi;
  Eigen::MatrixXd plus_eta, plus_xi;

  bool has_derivatives() const { return minus_eta.size() > 0 || plus_eta.size() > 0; }
};

VandermondeSet vandermonde_set(const CutQuadrature& quad, int m, const FrenetElementInfo& info,
                               bool with_derivatives = false);

}  // namespace gcife
