#include "gcife/polyquad.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "gcife/errors.hpp"

namespace gcife {

QuadratureRule1D gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "gauss_legendre needs n >= 1");
  QuadratureRule1D rule;
  if (n == 1) {
    rule.nodes = Eigen::VectorXd::Zero(1);
    rule.weights = Eigen::VectorXd::Constant(1, 2.0);
    return rule;
  }
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Final derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes(i) = -x;
    rule.nodes(n - 1 - i) = x;
    rule.weights(i) = w;
    rule.weights(n - 1 - i) = w;
  }
  if (n % 2 == 1) rule.nodes(n / 2) = 0.0;
  return rule;
}

QuadratureRule1D gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "gauss_jacobi needs n >= 1");
  if (!(alpha > -1.0 && beta > -1.0)) throw Error(ErrorKind::InvalidArgument, "gauss_jacobi needs alpha, beta > -1");
  const double ab = alpha + beta;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + ab;
    diag(k) = k == 0 ? (beta - alpha) / (ab + 2.0) : (beta * beta - alpha * alpha) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    sub(k - 1) = std::sqrt(4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0)));
  }
  const double mu0 = std::pow(2.0, ab + 1.0) * std::tgamma(alpha + 1.0) * std::tgamma(beta + 1.0) /
                     std::tgamma(ab + 2.0);

  QuadratureRule1D rule;
  if (n == 1) {
    rule.nodes = diag;
    rule.weights = Eigen::VectorXd::Constant(1, mu0);
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  eig.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  rule.nodes = eig.eigenvalues();
  rule.weights = mu0 * eig.eigenvectors().row(0).transpose().array().square();
  return rule;
}

TriangleRule stroud_triangle(int n) {
  const QuadratureRule1D radial = gauss_jacobi(n, 1.0, 0.0);
  const QuadratureRule1D edge = gauss_legendre(n);
  TriangleRule rule;
  rule.nodes.resize(2, n * n);
  rule.weights.resize(n * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    const double s = 0.5 * (1.0 - radial.nodes(i));
    for (int j = 0; j < n; ++j) {
      const double t = 0.5 * (1.0 + edge.nodes(j));
      rule.nodes(0, k) = s * (1.0 - t);
      rule.nodes(1, k) = s * t;
      rule.weights(k) = radial.weights(i) * edge.weights(j) / 8.0;
      ++k;
    }
  }
  return rule;
}

PipkTable::PipkTable(int m, const QuadratureRule1D& rule) : m_(m), nq_(rule.size()) {
  data_.assign(static_cast<std::size_t>(3) * (m + 1) * (m + 1) * nq_, 0.0);
  for (int r = 0; r < nq_; ++r) {
    const Eigen::MatrixXd p = legendre_table<double>(m, 2, rule.nodes(r));
    for (int d = 0; d <= 2; ++d)
      for (int i = 0; i <= m; ++i)
        for (int k = 0; k <= m; ++k)
          data_[((static_cast<std::size_t>(d) * (m + 1) + i) * (m + 1) + k) * nq_ + r] = p(i, d) * p(k, 0);
  }
}

PipkTable pipk_values(int m, const QuadratureRule1D& rule) {
  if (rule.size() < m + 1) {
    throw Error(ErrorKind::InvalidArgument, "pipk_values needs a rule with at least m + 1 nodes");
  }
  return PipkTable(m, rule);
}

QZeroTable qi_values(int m) { return QZeroTable(m); }

}  // namespace gcife
