#pragma once

#include "gcife/cutquad.hpp"
#include "gcife/ifebasis.hpp"
#include "gcife/mesh.hpp"
#include "gcife/vandermonde.hpp"

namespace gcife {

/// Extension: identity on the side with the larger quadrature mass, the
/// other side from the collective jump relation. Special: the explicit
/// block construction driven by the extended-condition system.
enum class InitialBasis { Extension, Special };

struct LocalSpaceOptions {
  int degree = 1;
  Betas betas;
  int n_qp = 0;  // cut-cell rule size per direction; <= 0 selects degree + 1
  Preconditioner preconditioner = Preconditioner::RowNorm;
  Reconstruction reconstruction = Reconstruction::VandermondeSVD;
  InitialBasis initial = InitialBasis::Extension;
  bool with_derivatives = false;
  NewtonOptions newton;
};

/// Everything built for one interface element.
struct LocalSpace {
  int element = -1;
  Quad corners{};
  FrenetElementInfo info;
  CutTopology topology;
  CutQuadrature quadrature;
  VandermondeSet vandermonde;
  LineSystem line;
  Eigen::MatrixXd atilde;
  BasisCoefficients initial;
  BasisCoefficients coeffs;  // after reconstruction
};

LocalSpace build_local_space(const Quad& corners, const Curve& curve, double xi_guess, int element,
                             const BasisTables& tables, const LocalSpaceOptions& opts);

}  // namespace gcife
