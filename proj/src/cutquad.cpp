#include "gcife/cutquad.hpp"

#include <cmath>
#include <string>

#include "gcife/errors.hpp"
#include "gcife/polyquad.hpp"

namespace gcife {

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

EdgeCrossing locate_crossing(const Vec2& a, const Vec2& b, double lo, double hi, int edge, const Curve& curve,
                             double xi_guess) {
  const int side_lo = curve.side(a + lo * (b - a));
  while (hi - lo > 1e-15) {
    const double mid = 0.5 * (lo + hi);
    if (curve.side(a + mid * (b - a)) == side_lo)
      lo = mid;
    else
      hi = mid;
  }
  const double lambda0 = 0.5 * (lo + hi);
  const Vec2 seed = a + lambda0 * (b - a);

  EdgeCrossing c;
  c.edge = edge;
  c.lambda = lambda0;
  c.point = seed;
  c.xi = inverse_map(curve, seed, xi_guess).point.xi;

  // Polish: Newton on nu . (g(xi) - a) = 0 with nu normal to the edge line.
  const Vec2 dir = (b - a).normalized();
  const Vec2 nu(-dir.y(), dir.x());
  double xi = c.xi;
  for (int it = 0; it < 8; ++it) {
    const double f = nu.dot(curve.point(xi) - a);
    const double df = nu.dot(curve.d1(xi));
    if (std::abs(df) < 1e-14) break;
    const double step = f / df;
    xi -= step;
    if (std::abs(step) < 1e-16 * (1.0 + std::abs(xi))) break;
  }
  const Vec2 g = curve.point(xi);
  const double lambda = (g - a).dot(b - a) / (b - a).squaredNorm();
  if (std::abs(lambda - lambda0) < 1e-6 && lambda >= 0.0 && lambda <= 1.0) {
    c.xi = curve.unwrap_near(xi, xi_guess);
    c.lambda = lambda;
    c.point = a + lambda * (b - a);
  }
  return c;
}

SubRegion make_region(const Quad& corners, const Curve& curve, const EdgeCrossing& from, const EdgeCrossing& to) {
  SubRegion r;
  r.xi_start = from.xi;
  r.xi_end = to.xi;
  r.polygon.push_back(from.point);
  for (int k = from.edge + 1;; ++k) {
    const int v = k % 4;
    r.corners.push_back(v);
    r.polygon.push_back(corners[v]);
    if (v == to.edge) break;
  }
  r.polygon.push_back(to.point);
  r.side = curve.side(corners[r.corners.front()]);
  for (int v : r.corners) {
    if (curve.side(corners[v]) != r.side) {
      throw Error(ErrorKind::Topology, "corner signs along a boundary chain are inconsistent");
    }
  }
  return r;
}

Vec2 polygon_centroid(const std::vector<Vec2>& poly) {
  double area = 0.0;
  Vec2 c = Vec2::Zero();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    const double w = cross2(p, q);
    area += w;
    c += w * (p + q);
  }
  if (std::abs(area) < 1e-300) {
    Vec2 mean = Vec2::Zero();
    for (const Vec2& p : poly) mean += p;
    return mean / static_cast<double>(n);
  }
  return c / (3.0 * area);
}

struct NodeSink {
  std::vector<Vec2> nodes;
  std::vector<double> weights;

  void add(const Vec2& x, double w) {
    nodes.push_back(x);
    weights.push_back(w);
  }
};

void check_orientation(double det, int& sign) {
  const int s = det > 0.0 ? 1 : (det < 0.0 ? -1 : 0);
  if (s == 0 || (sign != 0 && s != sign)) {
    throw Error(ErrorKind::NegativeJacobian, "cut-cell map folds (Jacobian changes sign)");
  }
  sign = s;
}

void straight_triangle(const Vec2& a, const Vec2& b, const Vec2& c, const TriangleRule& rule, double min_det,
                       NodeSink& sink) {
  const double det = cross2(b - a, c - a);
  if (std::abs(det) <= min_det) return;
  for (int q = 0; q < rule.size(); ++q) {
    const double u = rule.nodes(0, q), v = rule.nodes(1, q);
    sink.add(a + u * (b - a) + v * (c - a), rule.weights(q) * std::abs(det));
  }
}

// Triangle with apex `anchor` and curved edge g(xi), xi in [xi_a, xi_b].
// Collapsed coordinates s = u + v, t = v / s give F = anchor + s (G(t) - anchor),
// whose Jacobian with respect to (u, v) is det[G(t) - anchor, G'(t)].
void curved_triangle(const Vec2& anchor, const Curve& curve, double xi_a, double xi_b, const TriangleRule& rule,
                     NodeSink& sink) {
  int sign = 0;
  const double span = xi_b - xi_a;
  for (int q = 0; q < rule.size(); ++q) {
    const double u = rule.nodes(0, q), v = rule.nodes(1, q);
    const double s = u + v;
    const double t = v / s;
    const double xi = xi_a + t * span;
    const Vec2 g = curve.point(xi);
    const Vec2 dg = span * curve.d1(xi);
    const double det = cross2(g - anchor, dg);
    check_orientation(det, sign);
    sink.add(anchor + s * (g - anchor), rule.weights(q) * std::abs(det));
  }
}

// Curved quadrilateral: sigma = 0 on the arc, sigma = 1 on the far edge.
void curved_quad(const SubRegion& r, const Curve& curve, const QuadratureRule1D& gl, NodeSink& sink) {
  const Vec2& va = r.polygon[1];  // next to the crossing at xi_start
  const Vec2& vb = r.polygon[2];  // next to the crossing at xi_end
  const double span = r.xi_end - r.xi_start;
  int sign = 0;
  for (int i = 0; i < gl.size(); ++i) {
    const double sigma = 0.5 * (1.0 + gl.nodes(i));
    for (int j = 0; j < gl.size(); ++j) {
      const double t = 0.5 * (1.0 + gl.nodes(j));
      const double xi = r.xi_start + t * span;
      const Vec2 g = curve.point(xi);
      const Vec2 dg = span * curve.d1(xi);
      const Vec2 far = (1.0 - t) * va + t * vb;
      const Vec2 d_sigma = far - g;
      const Vec2 d_t = (1.0 - sigma) * dg + sigma * (vb - va);
      const double det = cross2(d_sigma, d_t);
      check_orientation(det, sign);
      sink.add((1.0 - sigma) * g + sigma * far, 0.25 * gl.weights(i) * gl.weights(j) * std::abs(det));
    }
  }
}

SideQuadrature finish_side(const NodeSink& sink, const Curve& curve, int expected_side, double xi_guess,
                           const NewtonOptions& opts) {
  SideQuadrature q;
  const int n = static_cast<int>(sink.nodes.size());
  q.nodes.resize(2, n);
  q.weights.resize(n);
  q.frenet.resize(n);
  for (int k = 0; k < n; ++k) {
    q.nodes.col(k) = sink.nodes[k];
    q.weights(k) = sink.weights[k];
    if (curve.side(sink.nodes[k]) != expected_side) {
      throw Error(ErrorKind::Topology, "cut quadrature node lies on the wrong side of the interface");
    }
    q.frenet[k] = inverse_map(curve, sink.nodes[k], xi_guess, opts).point;
  }
  return q;
}

}  // namespace

CutTopology find_edge_intersections(const Quad& corners, const Curve& curve, double xi_guess, int edge_samples) {
  std::vector<EdgeCrossing> found;
  for (int k = 0; k < 4; ++k) {
    const Vec2& a = corners[k];
    const Vec2& b = corners[(k + 1) % 4];
    int changes = 0;
    double prev_lambda = 0.0;
    int prev_side = curve.side(a);
    for (int s = 1; s <= edge_samples + 1; ++s) {
      const double lambda = static_cast<double>(s) / (edge_samples + 1);
      const int side = curve.side(a + lambda * (b - a));
      if (side != prev_side) {
        ++changes;
        if (changes > 1) {
          throw Error(ErrorKind::Topology, "edge " + std::to_string(k) + " is crossed more than once");
        }
        found.push_back(locate_crossing(a, b, prev_lambda, lambda, k, curve, xi_guess));
      }
      prev_side = side;
      prev_lambda = lambda;
    }
  }
  if (found.empty()) throw Error(ErrorKind::Topology, "no interface crossing found on the element boundary");
  if (found.size() != 2) {
    throw Error(ErrorKind::Topology,
                "element is cut " + std::to_string(found.size()) + " times; only single-arc cuts are supported");
  }

  CutTopology topo;
  topo.crossings = {found[0], found[1]};
  topo.kind = (found[1].edge - found[0].edge) == 2 ? CutKind::TypeII : CutKind::TypeI;
  if (std::abs(found[0].xi - found[1].xi) < 1e-15) {
    throw Error(ErrorKind::Topology, "interface crossings coincide");
  }
  SubRegion first = make_region(corners, curve, found[0], found[1]);
  SubRegion second = make_region(corners, curve, found[1], found[0]);
  if (first.side == second.side) throw Error(ErrorKind::Topology, "both sub-regions lie on the same side");
  if (first.side < 0) {
    topo.minus = std::move(first);
    topo.plus = std::move(second);
  } else {
    topo.minus = std::move(second);
    topo.plus = std::move(first);
  }
  return topo;
}

CutQuadrature cut_quadrature(const Quad& corners, const Curve& curve, const CutTopology& topo, int n_qp,
                             double xi_guess, const NewtonOptions& opts) {
  if (n_qp < 1) throw Error(ErrorKind::InvalidArgument, "cut_quadrature needs n_qp >= 1");
  const double diam = (corners[2] - corners[0]).norm();
  const double min_det = 1e-14 * diam * diam;

  auto build = [&](const SubRegion& r) {
    NodeSink sink;
    if (topo.kind == CutKind::TypeII) {
      curved_quad(r, curve, gauss_legendre(n_qp), sink);
    } else {
      const TriangleRule tri = stroud_triangle(n_qp);
      const Vec2 anchor = polygon_centroid(r.polygon);
      for (std::size_t i = 0; i + 1 < r.polygon.size(); ++i)
        straight_triangle(anchor, r.polygon[i], r.polygon[i + 1], tri, min_det, sink);
      curved_triangle(anchor, curve, r.xi_end, r.xi_start, tri, sink);
    }
    return finish_side(sink, curve, r.side, xi_guess, opts);
  };

  CutQuadrature q;
  q.minus = build(topo.minus);
  q.plus = build(topo.plus);
  return q;
}

}  // namespace gcife
