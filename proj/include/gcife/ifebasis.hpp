#pragma once

#include <Eigen/Dense>
#include <vector>

#include "gcife/curve.hpp"
#include "gcife/cutquad.hpp"
#include "gcife/mesh.hpp"
#include "gcife/polyquad.hpp"
#include "gcife/vandermonde.hpp"

namespace gcife {

/// Element-independent data shared by every interface element of degree m:
/// the Gauss-Legendre rule on [-1, 1] used along the straightened interface,
/// Legendre products at its nodes and the q-polynomial derivatives at 0.
struct BasisTables {
  int degree = 0;
  QuadratureRule1D line;
  PipkTable pipk;
  QZeroTable q0;
};

/// line_nodes <= 0 selects m + 1 nodes.
BasisTables make_basis_tables(int m, int line_nodes = 0);

/// (l, k, r) -> d^l J_k / d eta^l at (0, zeta_r), 0 <= l <= m - 2, k = 0, 1, 2.
class JDerivTable {
 public:
  JDerivTable() = default;
  JDerivTable(int m, int nodes) : m_(m), nq_(nodes), data_(static_cast<std::size_t>(levels()) * 3 * nodes, 0.0) {}

  double& operator()(int l, int k, int r) { return data_[(static_cast<std::size_t>(l) * 3 + k) * nq_ + r]; }
  double operator()(int l, int k, int r) const { return data_[(static_cast<std::size_t>(l) * 3 + k) * nq_ + r]; }

  int degree() const { return m_; }
  int levels() const { return m_ >= 2 ? m_ - 1 : 0; }
  int nodes() const { return nq_; }

 private:
  int m_ = 0;
  int nq_ = 0;
  std::vector<double> data_;
};

JDerivTable j_deriv_table(const Curve& curve, int m, const Eigen::VectorXd& zetas);

/// Interface-line data of one element: J-derivatives at the physical nodes
/// zeta_r = xi_mid + xi_h z_r and the scalings eta_h, xi_h.
struct LineSystem {
  int degree = 0;
  JDerivTable J;
  Eigen::VectorXd zetas;
  double eta_h = 0.0;
  double xi_h = 0.0;
};

LineSystem line_system(const Curve& curve, const FrenetElementInfo& info, const BasisTables& tables);

/// (m+1)-vector b^(j)(i), tested against p_{k-1}, k = 1..m+1.
Eigen::VectorXd b_vector(int i, int j, int m, const JDerivTable& table, const PipkTable& pipk, double xi_h,
                         const Eigen::VectorXd& weights);

/// (m+1) x (m^2-1) block A^(j); column l = (t-2)(m+1) + s for 2 <= t <= m.
Eigen::MatrixXd a_matrix(int j, int m, const JDerivTable& table, const PipkTable& pipk, const QZeroTable& q0,
                         double eta_h, double xi_h, const Eigen::VectorXd& weights);

/// (m+1) x (m+1)^2 block of the n-th extended condition applied to every R_i.
Eigen::MatrixXd atilde_block(int n, int m, const JDerivTable& table, const PipkTable& pipk, const QZeroTable& q0,
                             double eta_h, double xi_h, const Eigen::VectorXd& weights);

/// Stacked system A c^(i) = rhs_i: A is (m^2-1) square, column i of b holds b(i).
struct SpecialSystem {
  Eigen::MatrixXd A;
  Eigen::MatrixXd b;
};

SpecialSystem special_system(const LineSystem& line, const BasisTables& tables);

enum class Preconditioner { None, Jacobi, RowNorm };

/// Diagonal d of P = diag(d): diag(A) for Jacobi, row 2-norms for RowNorm.
Eigen::VectorXd preconditioner_diagonal(const Eigen::MatrixXd& A, Preconditioner kind);

/// P^{-1} A.
Eigen::MatrixXd precondition(const Eigen::MatrixXd& A, Preconditioner kind);

/// sigma_max / sigma_min from a dense SVD; +inf for a singular matrix.
double condition_number(const Eigen::MatrixXd& M);

/// Columns are c^(0) .. c^(m). Zero rows when m = 1.
Eigen::MatrixXd solve_special_coeffs(int m, const SpecialSystem& system, const Betas& betas,
                                     Preconditioner kind = Preconditioner::RowNorm);

struct BasisCoefficients {
  Eigen::MatrixXd minus;
  Eigen::MatrixXd plus;
  int degree = 0;
  int element = -1;
};

BasisCoefficients special_initial_basis(int m, const Eigen::MatrixXd& c, const Betas& betas);

/// Rows: m+1 continuity, m+1 flux, then (m-1)(m+1) extended conditions.
Eigen::MatrixXd assemble_atilde(int m, const JDerivTable& table, const PipkTable& pipk, const QZeroTable& q0,
                                double eta_h, double xi_h, const Eigen::VectorXd& weights);

Eigen::MatrixXd assemble_atilde(const LineSystem& line, const BasisTables& tables);

/// Diagonal of J: m+1 ones followed by beta^- / beta^+.
Eigen::VectorXd jump_scaling(int m, const Betas& betas);

enum class KnownSide { Minus, Plus };

/// Solves Atilde C^+ = J Atilde C^- for the unknown side with row-norm
/// scaling applied to the matrix being inverted.
BasisCoefficients extend_basis(const Eigen::MatrixXd& atilde, const Eigen::VectorXd& jdiag,
                               const Eigen::MatrixXd& known, KnownSide side);

/// Plus when the plus sub-element carries at least as much quadrature mass.
KnownSide identity_side(const CutQuadrature& quad);

/// Weak jump functionals evaluated independently of the assembled blocks:
/// the eta-expansions of J_0, J_1, J_2 are obtained by truncated power-series
/// arithmetic on psi = 1/(1 + eta kappa). Rows as in assemble_atilde.
Eigen::MatrixXd jump_functionals(const Curve& curve, const FrenetElementInfo& info, const BasisTables& tables);

/// Per basis function: maximum normalized residual among the continuity,
/// flux and extended test functionals. A functional row F and coefficient
/// columns c^-, c^+ give
///   |F (w^+ c^+) - F (w^- c^-)| / (|F| (|w^+ c^+| + |w^- c^-|)),
/// with w = 1 for continuity and w = beta otherwise.
struct JumpResidual {
  Eigen::VectorXd continuity;
  Eigen::VectorXd flux;
  Eigen::VectorXd extended;

  double max() const;
};

JumpResidual jump_residual(const BasisCoefficients& coeffs, const Eigen::MatrixXd& functionals, const Betas& betas);

JumpResidual jump_residual(const BasisCoefficients& coeffs, const FrenetElementInfo& info, const Curve& curve,
                           const Betas& betas, const BasisTables& tables);

enum class Reconstruction { None, MassSVD, VandermondeSVD };

struct ReconstructionReport {
  BasisCoefficients coeffs;
  Eigen::MatrixXd Q;
  Eigen::VectorXd singular_values;  // of M_q (mass) or of sqrt(W) V (Vandermonde), descending
};

/// Right-multiplies both coefficient matrices by Q_1 = V_1 Lambda^{-1/2}
/// (mass SVD) or Q_2 = V_2 Sigma^{-1} (economy SVD of the weighted
/// Vandermonde matrix). The largest-magnitude entry of every right singular
/// vector is made positive.
ReconstructionReport reconstruct_report(const BasisCoefficients& coeffs, const CutQuadrature& quad,
                                        const VandermondeSet& vm, Reconstruction approach);

BasisCoefficients reconstruct(const BasisCoefficients& coeffs, const CutQuadrature& quad, const VandermondeSet& vm,
                              Reconstruction approach);

/// sqrt(W) [L^- C^-; L^+ C^+].
Eigen::MatrixXd weighted_vandermonde(const BasisCoefficients& coeffs, const CutQuadrature& quad,
                                     const VandermondeSet& vm);

}  // namespace gcife
