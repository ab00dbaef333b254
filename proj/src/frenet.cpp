#include "gcife/frenet.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "gcife/errors.hpp"

namespace gcife {

namespace {

double stretch(const FrenetApparatus& f, double eta) {
  const double s = 1.0 + eta * f.kappa;
  if (std::abs(s) < 1e-13) {
    throw Error(ErrorKind::SingularMap, "Frenet map is singular: 1 + eta*kappa = 0");
  }
  return s;
}

}  // namespace

Vec2 forward_map(const Curve& curve, const FrenetPoint& p) {
  const FrenetApparatus f = frenet_apparatus(curve, p.xi);
  return curve.point(p.xi) + p.eta * f.normal;
}

Mat2 jacobian_forward(const Curve& curve, const FrenetPoint& p) {
  const FrenetApparatus f = frenet_apparatus(curve, p.xi);
  Mat2 jac;
  jac.col(0) = f.normal;
  jac.col(1) = f.speed * stretch(f, p.eta) * f.tau;
  return jac;
}

Mat2 jacobian_inverse(const Curve& curve, const FrenetPoint& p) {
  const FrenetApparatus f = frenet_apparatus(curve, p.xi);
  const double rho = 1.0 / (stretch(f, p.eta) * f.speed);
  Mat2 jac;
  jac.row(0) = f.normal.transpose();
  jac.row(1) = rho * f.tau.transpose();
  return jac;
}

PsiRho psi_rho(const Curve& curve, const FrenetPoint& p) {
  const FrenetApparatus f = frenet_apparatus(curve, p.xi);
  const double psi = 1.0 / stretch(f, p.eta);
  return {psi, psi / f.speed};
}

InverseMapReport inverse_map(const Curve& curve, const Vec2& x, double xi_guess, const NewtonOptions& opts) {
  if (!std::isfinite(xi_guess)) throw Error(ErrorKind::InvalidArgument, "inverse_map: non-finite guess");
  const double tol = opts.tol > 0.0 ? opts.tol : 1e-13 * (1.0 + x.norm());

  double eta = 0.0;
  double xi = xi_guess;
  double previous = std::numeric_limits<double>::infinity();
  int growth = 0;

  for (int it = 0; it <= opts.max_iter; ++it) {
    const FrenetApparatus f = frenet_apparatus(curve, xi);
    const Vec2 r = curve.point(xi) + eta * f.normal - x;
    const double res = r.norm();
    if (res <= tol) {
      return {{eta, curve.unwrap_near(xi, xi_guess)}, it, res};
    }
    growth = res > previous ? growth + 1 : 0;
    if (growth >= 3) {
      std::ostringstream os;
      os << "inverse_map diverges for x = (" << x.x() << ", " << x.y() << "), residual " << res;
      throw Error(ErrorKind::Divergence, os.str());
    }
    previous = res;
    if (it == opts.max_iter) break;

    const double s = 1.0 + eta * f.kappa;
    if (!(std::abs(s) > 1e-13)) {
      throw Error(ErrorKind::SingularMap, "inverse_map left the tubular neighborhood (1 + eta*kappa ~ 0)");
    }
    const double rho = 1.0 / (s * f.speed);
    eta -= f.normal.dot(r);
    xi -= rho * f.tau.dot(r);
    xi = curve.unwrap_near(xi, xi_guess);
    if (!std::isfinite(eta) || !std::isfinite(xi)) {
      throw Error(ErrorKind::SingularMap, "inverse_map produced a non-finite iterate");
    }
  }
  std::ostringstream os;
  os << "inverse_map did not converge in " << opts.max_iter << " iterations for x = (" << x.x() << ", " << x.y()
     << "), residual " << previous;
  throw Error(ErrorKind::NoConvergence, os.str());
}

Vec2 physical_gradient(const Curve& curve, const FrenetPoint& p, double u_eta, double u_xi) {
  const FrenetApparatus f = frenet_apparatus(curve, p.xi);
  const double rho = 1.0 / (stretch(f, p.eta) * f.speed);
  return u_eta * f.normal + u_xi * rho * f.tau;
}

}  // namespace gcife
