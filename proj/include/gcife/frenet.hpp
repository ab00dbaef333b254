#pragma once

#include "gcife/curve.hpp"

namespace gcife {

/// Tube coordinates: signed distance eta to the curve and curve parameter xi.
struct FrenetPoint {
  double eta = 0.0;
  double xi = 0.0;
};

struct InverseMapReport {
  FrenetPoint point;
  int iterations = 0;
  double residual = 0.0;
};

struct NewtonOptions {
  int max_iter = 25;
  /// Residual tolerance in physical units; a negative value selects 1e-13 (1 + |x|).
  double tol = -1.0;
};

/// P(eta, xi) = g(xi) + eta n(xi).
Vec2 forward_map(const Curve& curve, const FrenetPoint& p);

/// Columns [n(xi), |g'(xi)| (1 + eta kappa) tau(xi)].
Mat2 jacobian_forward(const Curve& curve, const FrenetPoint& p);

/// Rows [n^T; rho tau^T], the inverse of jacobian_forward.
Mat2 jacobian_inverse(const Curve& curve, const FrenetPoint& p);

struct PsiRho {
  double psi;
  double rho;
};

/// psi = 1/(1 + eta kappa), rho = psi / |g'|.
PsiRho psi_rho(const Curve& curve, const FrenetPoint& p);

/// Newton iteration for R(x) started from (0, xi_guess). The inverse Jacobian
/// is explicit, so each step is a 2x2 matrix-vector product. On periodic
/// curves the returned xi is the branch nearest to xi_guess.
InverseMapReport inverse_map(const Curve& curve, const Vec2& x, double xi_guess, const NewtonOptions& opts = {});

/// grad u = u_eta n + u_xi rho tau.
Vec2 physical_gradient(const Curve& curve, const FrenetPoint& p, double u_eta, double u_xi);

}  // namespace gcife
