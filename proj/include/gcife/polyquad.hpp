#pragma once

#include <Eigen/Dense>
#include <vector>

namespace gcife {

// ---------------------------------------------------------------------------
// Univariate polynomial families
// ---------------------------------------------------------------------------

/// Table T(i, d) = p_i^{(d)}(x) of Legendre polynomials, 0 <= i <= m,
/// 0 <= d <= dmax, from the three-term recurrence differentiated d times.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> legendre_table(int m, int dmax, Scalar x) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> t =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(m + 1, dmax + 1);
  t(0, 0) = Scalar(1);
  if (m >= 1) {
    t(1, 0) = x;
    if (dmax >= 1) t(1, 1) = Scalar(1);
  }
  for (int n = 2; n <= m; ++n) {
    for (int d = 0; d <= dmax; ++d) {
      Scalar v = Scalar(2 * n - 1) * x * t(n - 1, d) - Scalar(n - 1) * t(n - 2, d);
      if (d > 0) v += Scalar(2 * n - 1) * Scalar(d) * t(n - 1, d - 1);
      t(n, d) = v / Scalar(n);
    }
  }
  return t;
}

template <typename Scalar>
Scalar legendre(int i, int d, Scalar x) {
  if (i < 0 || d < 0) return Scalar(0);
  return legendre_table<Scalar>(i, d, x)(i, d);
}

/// q-polynomials: q_0 = 1, q_1 = x and
/// q_i(x) = (2i-1) x p_{i-1}(x) - (2i-1) p_{i-1}(0) x for i >= 2,
/// so that q_i(0) = 0 (i >= 1) and q_i'(0) = 0 (i >= 2).
/// Returns T(i, d) = q_i^{(d)}(x).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> q_table(int m, int dmax, Scalar x) {
  using Table = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Table q = Table::Zero(m + 1, dmax + 1);
  const Table p = legendre_table<Scalar>(std::max(m - 1, 0), dmax, x);
  const Table p0 = legendre_table<Scalar>(std::max(m - 1, 0), 0, Scalar(0));
  q(0, 0) = Scalar(1);
  if (m >= 1) {
    q(1, 0) = x;
    if (dmax >= 1) q(1, 1) = Scalar(1);
  }
  for (int i = 2; i <= m; ++i) {
    const Scalar c = Scalar(2 * i - 1);
    for (int d = 0; d <= dmax; ++d) {
      Scalar v = x * p(i - 1, d);
      if (d > 0) v += Scalar(d) * p(i - 1, d - 1);
      v *= c;
      if (d == 0) v -= c * p0(i - 1, 0) * x;
      if (d == 1) v -= c * p0(i - 1, 0);
      q(i, d) = v;
    }
  }
  return q;
}

template <typename Scalar>
Scalar q_eval(int i, int d, Scalar x) {
  if (i < 0 || d < 0) return Scalar(0);
  return q_table<Scalar>(i, d, x)(i, d);
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadratureRule1D {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// n-point Gauss-Legendre rule on [-1, 1], nodes ascending. Newton iteration
/// on p_n from Chebyshev-like initial guesses.
QuadratureRule1D gauss_legendre(int n);

/// n-point Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^alpha (1+x)^beta,
/// computed by Golub-Welsch on the symmetric Jacobi matrix.
QuadratureRule1D gauss_jacobi(int n, double alpha, double beta);

/// Rule on the reference triangle {u, v >= 0, u + v <= 1}.
struct TriangleRule {
  Eigen::Matrix2Xd nodes;
  Eigen::VectorXd weights;

  int size() const { return static_cast<int>(weights.size()); }
};

/// Stroud conical product rule: n-point Gauss-Jacobi(1, 0) in the collapsed
/// radial direction times n-point Gauss-Legendre along the edge. Exact for
/// total degree <= 2n - 2.
TriangleRule stroud_triangle(int n);

// ---------------------------------------------------------------------------
// Element-independent tables reused by every interface element
// ---------------------------------------------------------------------------

/// Entries p_i^{(d)}(z_r) p_k(z_r) at the nodes z_r of a reference rule,
/// 0 <= i, k <= m, 0 <= d <= 2.
class PipkTable {
 public:
  PipkTable() = default;
  PipkTable(int m, const QuadratureRule1D& rule);

  double operator()(int i, int k, int d, int r) const {
    return data_[((static_cast<std::size_t>(d) * (m_ + 1) + i) * (m_ + 1) + k) * nq_ + r];
  }
  int degree() const { return m_; }
  int nodes() const { return nq_; }

 private:
  int m_ = 0;
  int nq_ = 0;
  std::vector<double> data_;
};

PipkTable pipk_values(int m, const QuadratureRule1D& rule);

/// Entries q_t^{(d)}(0), 0 <= t <= m, 0 <= d <= m + 2.
class QZeroTable {
 public:
  QZeroTable() = default;
  explicit QZeroTable(int m) : m_(m), values_(q_table<double>(m, m + 2, 0.0)) {}

  double operator()(int t, int d) const { return d < values_.cols() && d >= 0 ? values_(t, d) : 0.0; }
  int degree() const { return m_; }
  const Eigen::MatrixXd& values() const { return values_; }

 private:
  int m_ = 0;
  Eigen::MatrixXd values_;
};

QZeroTable qi_values(int m);

}  // namespace gcife
