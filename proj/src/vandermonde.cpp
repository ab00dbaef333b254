#include "gcife/vandermonde.hpp"

#include <cmath>

#include "gcife/errors.hpp"
#include "gcife/polyquad.hpp"

namespace gcife {

Eigen::MatrixXd vandermonde(const std::vector<FrenetPoint>& points, int m, const FrenetElementInfo& info, int d_eta,
                            int d_xi) {
  if (m < 0 || d_eta < 0 || d_xi < 0) throw Error(ErrorKind::InvalidArgument, "vandermonde: negative order");
  const int n = m + 1;
  const double se = std::pow(info.eta_h, -d_eta);
  const double sx = std::pow(info.xi_h, -d_xi);
  Eigen::MatrixXd v(points.size(), n * n);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const Eigen::MatrixXd q = q_table<double>(m, d_eta, points[k].eta / info.eta_h);
    const Eigen::MatrixXd p = legendre_table<double>(m, d_xi, (points[k].xi - info.xi_mid) / info.xi_h);
    for (int t = 0; t < n; ++t)
      for (int s = 0; s < n; ++s) v(k, n * t + s) = se * q(t, d_eta) * sx * p(s, d_xi);
  }
  return v;
}

VandermondeSet vandermonde_set(const CutQuadrature& quad, int m, const FrenetElementInfo& info,
                               bool with_derivatives) {
  VandermondeSet set;
  set.minus = vandermonde(quad.minus.frenet, m, info);
  set.plus = vandermonde(quad.plus.frenet, m, info);
  if (with_derivatives) {
    set.minus_eta = vandermonde(quad.minus.frenet, m, info, 1, 0);
    set.minus_xi = vandermonde(quad.minus.frenet, m, info, 0, 1);
    set.plus_eta = vandermonde(quad.plus.frenet, m, info, 1, 0);
    set.plus_xi = vandermonde(quad.plus.frenet, m, info, 0, 1);
  }
  return set;
}

}  // namespace gcife
