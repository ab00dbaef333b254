#include "gcife/ifebasis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gcife/errors.hpp"

namespace gcife {

namespace {

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

// Truncated power series in eta.
class Series {
 public:
  explicit Series(int len, double c0 = 0.0) : c_(Eigen::VectorXd::Zero(len)) {
    if (len > 0) c_(0) = c0;
  }

  static Series eta(int len) {
    Series s(len);
    if (len > 1) s.c_(1) = 1.0;
    return s;
  }

  int size() const { return static_cast<int>(c_.size()); }
  double operator[](int i) const { return c_(i); }
  double& operator[](int i) { return c_(i); }

  Series operator+(const Series& o) const {
    Series r(size());
    r.c_ = c_ + o.c_;
    return r;
  }
  Series operator*(double a) const {
    Series r(size());
    r.c_ = a * c_;
    return r;
  }
  Series operator*(const Series& o) const {
    Series r(size());
    for (int i = 0; i < size(); ++i)
      for (int j = 0; i + j < size(); ++j) r.c_(i + j) += c_(i) * o.c_(j);
    return r;
  }
  Series reciprocal() const {
    Series r(size());
    r.c_(0) = 1.0 / c_(0);
    for (int n = 1; n < size(); ++n) {
      double acc = 0.0;
      for (int i = 1; i <= n; ++i) acc += c_(i) * r.c_(n - i);
      r.c_(n) = -acc / c_(0);
    }
    return r;
  }
  Series derivative() const {
    Series r(size());
    for (int i = 0; i + 1 < size(); ++i) r.c_(i) = (i + 1) * c_(i + 1);
    return r;
  }

 private:
  Eigen::VectorXd c_;
};

Eigen::VectorXd scaled_diagonal(const Eigen::MatrixXd& A, Preconditioner kind) {
  Eigen::VectorXd d = preconditioner_diagonal(A, kind);
  for (int i = 0; i < d.size(); ++i) {
    if (d(i) == 0.0 || !std::isfinite(d(i))) {
      throw Error(ErrorKind::SingularSystem, "preconditioner has a zero diagonal entry");
    }
  }
  return d;
}

Eigen::MatrixXd checked_solve(const Eigen::MatrixXd& A, const Eigen::MatrixXd& rhs, const char* what) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
  const auto& R = qr.matrixR();
  const int n = static_cast<int>(A.cols());
  if (n > 0) {
    const double big = std::abs(R(0, 0));
    const double small = std::abs(R(n - 1, n - 1));
    if (!(big > 0.0) || small < 1e-14 * big) throw Error(ErrorKind::SingularSystem, what);
  }
  return qr.solve(rhs);
}

void fix_signs(Eigen::MatrixXd& V) {
  for (int j = 0; j < V.cols(); ++j) {
    Eigen::Index r = 0;
    V.col(j).cwiseAbs().maxCoeff(&r);
    if (V(r, j) < 0.0) V.col(j) *= -1.0;
  }
}

}  // namespace

BasisTables make_basis_tables(int m, int line_nodes) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "degree must be at least 1");
  if (line_nodes <= 0) line_nodes = m + 1;
  if (line_nodes < m + 1) throw Error(ErrorKind::InvalidArgument, "the interface rule needs at least m + 1 nodes");
  BasisTables t;
  t.degree = m;
  t.line = gauss_legendre(line_nodes);
  t.pipk = pipk_values(m, t.line);
  t.q0 = qi_values(m);
  return t;
}

JDerivTable j_deriv_table(const Curve& curve, int m, const Eigen::VectorXd& zetas) {
  const int nq = static_cast<int>(zetas.size());
  JDerivTable table(m, nq);
  for (int r = 0; r < nq; ++r) {
    const FrenetApparatus f = frenet_apparatus(curve, zetas(r));
    const Vec2 g1 = curve.d1(zetas(r));
    const Vec2 g2 = curve.d2(zetas(r));
    const double s2 = f.speed * f.speed;
    const double gg = g1.dot(g2);
    const double k = f.kappa;
    for (int l = 0; l < table.levels(); ++l) {
      const double sgn = (l % 2 == 0) ? 1.0 : -1.0;
      table(l, 0, r) = sgn * factorial(l + 1) * ipow(k, l) / s2;
      table(l, 1, r) = k * sgn * factorial(l) * ipow(k, l);
      const double first = l == 0 ? 0.0 : l * (-sgn) * factorial(l + 1) / 2.0 * ipow(k, l - 1);
      table(l, 2, r) = -f.kappa_prime / s2 * first - gg / (s2 * s2) * sgn * factorial(l + 1) * ipow(k, l);
    }
  }
  return table;
}

LineSystem line_system(const Curve& curve, const FrenetElementInfo& info, const BasisTables& tables) {
  LineSystem ls;
  ls.degree = tables.degree;
  ls.eta_h = info.eta_h;
  ls.xi_h = info.xi_h;
  ls.zetas = info.xi_mid + info.xi_h * tables.line.nodes.array();
  ls.J = j_deriv_table(curve, tables.degree, ls.zetas);
  return ls;
}

Eigen::VectorXd b_vector(int i, int j, int m, const JDerivTable& table, const PipkTable& pipk, double xi_h,
                         const Eigen::VectorXd& weights) {
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m + 1);
  for (int k = 0; k <= m; ++k) {
    double acc = 0.0;
    for (int r = 0; r < weights.size(); ++r) {
      acc += table(j, 0, r) * weights(r) * pipk(i, k, 2, r) / xi_h + table(j, 2, r) * weights(r) * pipk(i, k, 1, r);
    }
    b(k) = acc;
  }
  return b;
}

Eigen::MatrixXd atilde_block(int n, int m, const JDerivTable& table, const PipkTable& pipk, const QZeroTable& q0,
                             double eta_h, double xi_h, const Eigen::VectorXd& weights) {
  const int np = m + 1;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(np, np * np);
  const int nq = static_cast<int>(weights.size());
  for (int t = 0; t <= m; ++t) {
    for (int s = 0; s <= m; ++s) {
      const int col = np * t + s;
      for (int k = 0; k <= m; ++k) {
        double acc = 0.0;
        for (int r = 0; r < nq; ++r) {
          const double w = weights(r);
          double v = xi_h / ipow(eta_h, n + 2) * w * q0(t, n + 2) * pipk(s, k, 0, r);
          for (int i = 0; i <= n; ++i) {
            const double c = binomial(n, i);
            v += c * (table(i, 0, r) * w * q0(t, n - i) * pipk(s, k, 2, r) / (ipow(eta_h, n - i) * xi_h) +
                      xi_h / ipow(eta_h, n - i + 1) * table(i, 1, r) * w * q0(t, n - i + 1) * pipk(s, k, 0, r) +
                      table(i, 2, r) * w * q0(t, n - i) * pipk(s, k, 1, r) / ipow(eta_h, n - i));
          }
          acc += v;
        }
        A(k, col) = acc;
      }
    }
  }
  return A;
}

Eigen::MatrixXd a_matrix(int j, int m, const JDerivTable& table, const PipkTable& pipk, const QZeroTable& q0,
                         double eta_h, double xi_h, const Eigen::VectorXd& weights) {
  if (m < 2) return Eigen::MatrixXd(m + 1, 0);
  return atilde_block(j, m, table, pipk, q0, eta_h, xi_h, weights).rightCols(m * m - 1);
}

SpecialSystem special_system(const LineSystem& line, const BasisTables& tables) {
  const int m = tables.degree;
  const int size = m * m - 1;
  SpecialSystem sys;
  sys.A = Eigen::MatrixXd::Zero(size, size);
  sys.b = Eigen::MatrixXd::Zero(size, m + 1);
  const Eigen::VectorXd& w = tables.line.weights;
  for (int j = 0; j + 2 <= m; ++j) {
    sys.A.middleRows(j * (m + 1), m + 1) =
        a_matrix(j, m, line.J, tables.pipk, tables.q0, line.eta_h, line.xi_h, w);
    for (int i = 0; i <= m; ++i)
      sys.b.block(j * (m + 1), i, m + 1, 1) = b_vector(i, j, m, line.J, tables.pipk, line.xi_h, w);
  }
  return sys;
}

Eigen::VectorXd preconditioner_diagonal(const Eigen::MatrixXd& A, Preconditioner kind) {
  switch (kind) {
    case Preconditioner::None:
      return Eigen::VectorXd::Ones(A.rows());
    case Preconditioner::Jacobi:
      return A.diagonal();
    case Preconditioner::RowNorm:
      return A.rowwise().norm();
  }
  return Eigen::VectorXd::Ones(A.rows());
}

Eigen::MatrixXd precondition(const Eigen::MatrixXd& A, Preconditioner kind) {
  if (kind == Preconditioner::None) return A;
  return scaled_diagonal(A, kind).cwiseInverse().asDiagonal() * A;
}

double condition_number(const Eigen::MatrixXd& M) {
  if (M.size() == 0) return 1.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

Eigen::MatrixXd solve_special_coeffs(int m, const SpecialSystem& system, const Betas& betas, Preconditioner kind) {
  const int size = m * m - 1;
  if (size == 0) return Eigen::MatrixXd(0, m + 1);
  const Eigen::MatrixXd rhs = ((betas.minus - betas.plus) / betas.plus) * system.b;
  if (kind == Preconditioner::None) return checked_solve(system.A, rhs, "special-coefficient system is singular");
  const Eigen::VectorXd dinv = scaled_diagonal(system.A, kind).cwiseInverse();
  return checked_solve(dinv.asDiagonal() * system.A, dinv.asDiagonal() * rhs,
                       "special-coefficient system is singular");
}

BasisCoefficients special_initial_basis(int m, const Eigen::MatrixXd& c, const Betas& betas) {
  const int np = m + 1;
  const int dim = np * np;
  BasisCoefficients bc;
  bc.degree = m;
  bc.minus = Eigen::MatrixXd::Zero(dim, dim);
  bc.plus = Eigen::MatrixXd::Zero(dim, dim);
  bc.minus.topLeftCorner(np, np).setIdentity();
  bc.minus.bottomRightCorner(dim - np, dim - np) = Eigen::MatrixXd::Identity(dim - np, dim - np) / betas.minus;
  bc.plus.topLeftCorner(np, np).setIdentity();
  bc.plus.block(np, np, np, np) = Eigen::MatrixXd::Identity(np, np) / betas.plus;
  const int rest = m * m - 1;
  if (rest > 0) {
    bc.plus.block(2 * np, 0, rest, np) = c;
    bc.plus.bottomRightCorner(rest, rest) = Eigen::MatrixXd::Identity(rest, rest) / betas.plus;
  }
  return bc;
}

Eigen::MatrixXd assemble_atilde(int m, const JDerivTable& table, const PipkTable& pipk, const QZeroTable& q0,
                                double eta_h, double xi_h, const Eigen::VectorXd& weights) {
  const int np = m + 1;
  const int dim = np * np;
  Eigen::MatrixXd At = Eigen::MatrixXd::Zero(dim, dim);
  for (int t = 0; t <= m; ++t) {
    for (int s = 0; s <= m; ++s) {
      const int col = np * t + s;
      for (int k = 0; k <= m; ++k) {
        double mass = 0.0;
        for (int r = 0; r < weights.size(); ++r) mass += xi_h * weights(r) * pipk(s, k, 0, r);
        At(k, col) = q0(t, 0) * mass;
        At(np + k, col) = q0(t, 1) / eta_h * mass;
      }
    }
  }
  for (int n = 0; n + 2 <= m; ++n)
    At.middleRows(2 * np + n * np, np) = atilde_block(n, m, table, pipk, q0, eta_h, xi_h, weights);
  return At;
}

Eigen::MatrixXd assemble_atilde(const LineSystem& line, const BasisTables& tables) {
  return assemble_atilde(tables.degree, line.J, tables.pipk, tables.q0, line.eta_h, line.xi_h,
                         tables.line.weights);
}

Eigen::VectorXd jump_scaling(int m, const Betas& betas) {
  const int np = m + 1;
  Eigen::VectorXd d = Eigen::VectorXd::Constant(np * np, betas.minus / betas.plus);
  d.head(np).setOnes();
  return d;
}

BasisCoefficients extend_basis(const Eigen::MatrixXd& atilde, const Eigen::VectorXd& jdiag,
                               const Eigen::MatrixXd& known, KnownSide side) {
  BasisCoefficients bc;
  const int dim = static_cast<int>(atilde.rows());
  bc.degree = static_cast<int>(std::lround(std::sqrt(static_cast<double>(dim)))) - 1;
  if (side == KnownSide::Minus) {
    const Eigen::VectorXd dinv = scaled_diagonal(atilde, Preconditioner::RowNorm).cwiseInverse();
    bc.minus = known;
    bc.plus = checked_solve(dinv.asDiagonal() * atilde, dinv.asDiagonal() * (jdiag.asDiagonal() * (atilde * known)),
                            "extension matrix is singular");
  } else {
    const Eigen::MatrixXd JA = jdiag.asDiagonal() * atilde;
    const Eigen::VectorXd dinv = scaled_diagonal(JA, Preconditioner::RowNorm).cwiseInverse();
    bc.plus = known;
    bc.minus = checked_solve(dinv.asDiagonal() * JA, dinv.asDiagonal() * (atilde * known),
                             "extension matrix is singular");
  }
  return bc;
}

KnownSide identity_side(const CutQuadrature& quad) {
  return quad.plus.mass() >= quad.minus.mass() ? KnownSide::Plus : KnownSide::Minus;
}

Eigen::MatrixXd jump_functionals(const Curve& curve, const FrenetElementInfo& info, const BasisTables& tables) {
  const int m = tables.degree;
  const int np = m + 1;
  const int dim = np * np;
  const int len = m + 1;
  const QuadratureRule1D& rule = tables.line;
  const Eigen::MatrixXd q = q_table<double>(m, m, 0.0);

  Eigen::MatrixXd F = Eigen::MatrixXd::Zero(dim, dim);
  for (int r = 0; r < rule.size(); ++r) {
    const double z = rule.nodes(r);
    const double xi = info.xi_mid + info.xi_h * z;
    const double w = info.xi_h * rule.weights(r);
    const FrenetApparatus f = frenet_apparatus(curve, xi);
    const Vec2 g1 = curve.d1(xi);
    const Vec2 g2 = curve.d2(xi);

    const Series eta = Series::eta(len);
    const Series psi = (Series(len, 1.0) + eta * f.kappa).reciprocal();
    const Series rho = psi * (1.0 / f.speed);
    const Series J0 = rho * rho;
    const Series J1 = psi * f.kappa;
    const Series J2 = J0 * (eta * psi * f.kappa_prime + Series(len, g1.dot(g2) / (f.speed * f.speed))) * -1.0;

    const Eigen::MatrixXd p = legendre_table<double>(m, 2, z);
    for (int t = 0; t <= m; ++t) {
      Series qt(len);
      for (int d = 0; d <= m; ++d) qt[d] = q(t, d) / (factorial(d) * ipow(info.eta_h, d));
      const Series dq = qt.derivative();
      const Series L0 = dq.derivative() + J1 * dq;
      for (int s = 0; s <= m; ++s) {
        const int col = np * t + s;
        const Series Lu = L0 * p(s, 0) + J0 * qt * (p(s, 2) / (info.xi_h * info.xi_h)) +
                          J2 * qt * (p(s, 1) / info.xi_h);
        for (int k = 0; k <= m; ++k) {
          const double wk = w * p(k, 0);
          F(k, col) += wk * qt[0] * p(s, 0);
          F(np + k, col) += wk * dq[0] * p(s, 0);
          for (int n = 0; n + 2 <= m; ++n) F(2 * np + n * np + k, col) += wk * factorial(n) * Lu[n];
        }
      }
    }
  }
  return F;
}

double JumpResidual::max() const {
  double v = 0.0;
  if (continuity.size()) v = std::max(v, continuity.maxCoeff());
  if (flux.size()) v = std::max(v, flux.maxCoeff());
  if (extended.size()) v = std::max(v, extended.maxCoeff());
  return v;
}

JumpResidual jump_residual(const BasisCoefficients& coeffs, const Eigen::MatrixXd& functionals, const Betas& betas) {
  const int dim = static_cast<int>(coeffs.minus.cols());
  const int np = static_cast<int>(std::lround(std::sqrt(static_cast<double>(functionals.rows()))));
  JumpResidual res;
  res.continuity = Eigen::VectorXd::Zero(dim);
  res.flux = Eigen::VectorXd::Zero(dim);
  res.extended = Eigen::VectorXd::Zero(dim);
  const Eigen::VectorXd row_norms = functionals.rowwise().norm();
  for (int j = 0; j < dim; ++j) {
    for (int row = 0; row < functionals.rows(); ++row) {
      const double wm = row < np ? 1.0 : betas.minus;
      const double wp = row < np ? 1.0 : betas.plus;
      const double scale = row_norms(row) * (wp * coeffs.plus.col(j).norm() + wm * coeffs.minus.col(j).norm());
      const double jump = functionals.row(row).dot(wp * coeffs.plus.col(j) - wm * coeffs.minus.col(j));
      const double r = scale > 0.0 ? std::abs(jump) / scale : std::abs(jump);
      double& slot = row < np ? res.continuity(j) : (row < 2 * np ? res.flux(j) : res.extended(j));
      slot = std::max(slot, r);
    }
  }
  return res;
}

JumpResidual jump_residual(const BasisCoefficients& coeffs, const FrenetElementInfo& info, const Curve& curve,
                           const Betas& betas, const BasisTables& tables) {
  return jump_residual(coeffs, jump_functionals(curve, info, tables), betas);
}

Eigen::MatrixXd weighted_vandermonde(const BasisCoefficients& coeffs, const CutQuadrature& quad,
                                     const VandermondeSet& vm) {
  const int nm = quad.minus.size();
  const int np = quad.plus.size();
  Eigen::MatrixXd V(nm + np, coeffs.minus.cols());
  V.topRows(nm) = quad.minus.weights.cwiseSqrt().asDiagonal() * (vm.minus * coeffs.minus);
  V.bottomRows(np) = quad.plus.weights.cwiseSqrt().asDiagonal() * (vm.plus * coeffs.plus);
  return V;
}

ReconstructionReport reconstruct_report(const BasisCoefficients& coeffs, const CutQuadrature& quad,
                                        const VandermondeSet& vm, Reconstruction approach) {
  ReconstructionReport rep;
  const int dim = static_cast<int>(coeffs.minus.cols());
  if (approach == Reconstruction::None) {
    rep.coeffs = coeffs;
    rep.Q = Eigen::MatrixXd::Identity(dim, dim);
    return rep;
  }
  if (quad.total_size() < dim) {
    throw Error(ErrorKind::RankDeficient, "fewer quadrature nodes than basis functions", coeffs.element);
  }
  if (approach == Reconstruction::MassSVD) {
    const Eigen::MatrixXd LCm = vm.minus * coeffs.minus;
    const Eigen::MatrixXd LCp = vm.plus * coeffs.plus;
    const Eigen::MatrixXd M =
        LCm.transpose() * quad.minus.weights.asDiagonal() * LCm + LCp.transpose() * quad.plus.weights.asDiagonal() * LCp;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullV);
    Eigen::MatrixXd V = svd.matrixV();
    fix_signs(V);
    const Eigen::VectorXd lam = svd.singularValues();
    if (!(lam(dim - 1) > 0.0) || std::sqrt(lam(dim - 1) / lam(0)) < 1e-14) {
      throw Error(ErrorKind::RankDeficient, "mass matrix is numerically singular", coeffs.element);
    }
    rep.Q = V * lam.cwiseSqrt().cwiseInverse().asDiagonal();
    rep.singular_values = lam;
  } else {
    const Eigen::MatrixXd Vw = weighted_vandermonde(coeffs, quad, vm);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Vw, Eigen::ComputeThinV);
    Eigen::MatrixXd V = svd.matrixV();
    fix_signs(V);
    const Eigen::VectorXd sig = svd.singularValues();
    if (!(sig(dim - 1) > 0.0) || sig(dim - 1) < 1e-14 * sig(0)) {
      throw Error(ErrorKind::RankDeficient, "weighted Vandermonde matrix is numerically rank deficient",
                  coeffs.element);
    }
    rep.Q = V * sig.cwiseInverse().asDiagonal();
    rep.singular_values = sig;
  }
  rep.coeffs.degree = coeffs.degree;
  rep.coeffs.element = coeffs.element;
  rep.coeffs.minus = coeffs.minus * rep.Q;
  rep.coeffs.plus = coeffs.plus * rep.Q;
  return rep;
}

BasisCoefficients reconstruct(const BasisCoefficients& coeffs, const CutQuadrature& quad, const VandermondeSet& vm,
                              Reconstruction approach) {
  return reconstruct_report(coeffs, quad, vm, approach).coeffs;
}

}  // namespace gcife
