#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "gcife/local_space.hpp"
#include "gcife/mesh.hpp"

namespace gcife {

/// Scalar field that may differ on the two sides; side is -1 or +1.
using SideField = std::function<double(const Vec2& x, int side)>;

/// Piecewise cos(2 pi r^2) field with the additive constant that makes it
/// continuous across r = r0; beta times its normal derivative is continuous
/// as well.
struct RadialTestField {
  Vec2 center = Vec2::Zero();
  double r0 = 0.0;
  Betas betas;

  double operator()(const Vec2& x, int side) const;
  SideField as_field() const;
};

/// M_q = (L^- C^-)^T W^- (L^- C^-) + (L^+ C^+)^T W^+ (L^+ C^+).
Eigen::MatrixXd mass_matrix(const BasisCoefficients& coeffs, const VandermondeSet& vm, const CutQuadrature& quad);

/// f = (L^- C^-)^T W^- r^- + (L^+ C^+)^T W^+ r^+ with r the field values at the nodes.
Eigen::VectorXd load_vector(const SideField& f, const BasisCoefficients& coeffs, const VandermondeSet& vm,
                            const CutQuadrature& quad);

struct BasisValue {
  double value = 0.0;
  Vec2 gradient = Vec2::Zero();
};

/// lambda_l(x) and its physical gradient; the side test picks C^- or C^+.
BasisValue basis_eval(const BasisCoefficients& coeffs, int column, const Vec2& x, const Curve& curve,
                      const FrenetElementInfo& info, const NewtonOptions& opts = {});

struct ElementProjection {
  Eigen::VectorXd coeffs;
  double error = 0.0;
};

ElementProjection project_interface_element(const SideField& u, const LocalSpace& space);

/// Scaled tensor Legendre basis on the rectangle with an n_qp x n_qp Gauss
/// rule; the mass matrix is diagonal with entries area / ((2a+1)(2b+1)).
ElementProjection project_regular_element(const SideField& u, int side, const Quad& corners, int m, int n_qp);

struct ProjectionEntry {
  int degree = 0;
  int n = 0;
  double error = 0.0;
  double rate = 0.0;  // NaN for the coarsest mesh
  int interface_elements = 0;
  std::vector<double> element_errors;
};

struct ProjectionResult {
  std::vector<ProjectionEntry> entries;

  const ProjectionEntry* find(int degree, int n) const;
};

struct StudyOptions {
  Interval x{-1.0, 1.0};
  Interval y{-1.0, 1.0};
  int n_qp = 0;          // interface cut rule; <= 0 selects m + 1
  int regular_n_qp = 0;  // regular elements; <= 0 selects the default below
  Preconditioner preconditioner = Preconditioner::RowNorm;
  Reconstruction reconstruction = Reconstruction::VandermondeSVD;
  InitialBasis initial = InitialBasis::Extension;
  int jobs = 1;
};

/// Gauss points per direction on regular elements when not overridden.
int default_regular_nqp(int m);

/// L2 projection onto the broken space on N x N meshes; rates are
/// log2(e_N / e_2N) between consecutive entries of the N list. Construction
/// failures are collected and rethrown as one error listing the elements.
ProjectionResult global_projection_study(const Curve& curve, const SideField& u, const Betas& betas,
                                         const std::vector<int>& degrees, const std::vector<int>& sizes,
                                         const StudyOptions& opts = {});

}  // namespace gcife
