#pragma once

#include <vector>

#include "gcife/curve.hpp"
#include "gcife/frenet.hpp"

namespace gcife {

/// Type I: the curve crosses two adjacent edges. Type II: two opposite edges.
enum class CutKind { TypeI, TypeII };

struct EdgeCrossing {
  int edge = -1;        // edge k joins corner k and corner k+1
  double lambda = 0.0;  // position along the edge in [0, 1]
  Vec2 point = Vec2::Zero();
  double xi = 0.0;
};

/// One side of a cut element: the straight boundary chain runs from the
/// crossing at xi_start through the element corners to the crossing at
/// xi_end; the curve arc closes it.
struct SubRegion {
  int side = -1;
  std::vector<int> corners;
  std::vector<Vec2> polygon;
  double xi_start = 0.0;
  double xi_end = 0.0;
};

struct CutTopology {
  CutKind kind = CutKind::TypeI;
  std::array<EdgeCrossing, 2> crossings{};
  SubRegion minus;
  SubRegion plus;
};

/// Locates the two edge crossings of a single-arc interface element. Each
/// crossing is bracketed by sampling, bisected on the side indicator and then
/// polished by Newton on the curve parameter so that g(xi) lies on the edge.
/// xi values are taken on the branch nearest xi_guess.
CutTopology find_edge_intersections(const Quad& corners, const Curve& curve, double xi_guess, int edge_samples = 8);

struct SideQuadrature {
  Eigen::Matrix2Xd nodes;
  Eigen::VectorXd weights;
  std::vector<FrenetPoint> frenet;

  int size() const { return static_cast<int>(weights.size()); }
  double mass() const { return weights.sum(); }
};

struct CutQuadrature {
  SideQuadrature minus;
  SideQuadrature plus;

  int total_size() const { return minus.size() + plus.size(); }
};

/// Quadrature on K^- and K^+. Type I regions are fanned from the centroid of
/// their straight polygon (one curved triangle per region, Stroud rule with
/// n_qp points per direction); Type II regions use a transfinite map of the
/// unit square with an n_qp x n_qp Gauss-Legendre grid. Frenet images of the
/// nodes are computed with inverse_map from xi_guess.
CutQuadrature cut_quadrature(const Quad& corners, const Curve& curve, const CutTopology& topo, int n_qp,
                             double xi_guess, const NewtonOptions& opts = {});

}  // namespace gcife
