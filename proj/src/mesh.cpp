#include "gcife/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gcife/errors.hpp"

namespace gcife {

CartesianMesh::CartesianMesh(Interval x, Interval y, int nx, int ny) : x_(x), y_(y), nx_(nx), ny_(ny) {
  if (nx < 1 || ny < 1) throw Error(ErrorKind::InvalidArgument, "mesh needs at least one element per direction");
  if (!(x.hi > x.lo) || !(y.hi > y.lo)) throw Error(ErrorKind::InvalidArgument, "degenerate mesh interval");
}

CartesianMesh build_mesh(Interval x, Interval y, int nx, int ny) { return CartesianMesh(x, y, nx, ny); }

Vec2 CartesianMesh::vertex(int v) const {
  const int i = v % (nx_ + 1);
  const int j = v / (nx_ + 1);
  // Last row/column pinned to the interval end to avoid drift.
  const double px = i == nx_ ? x_.hi : x_.lo + i * dx();
  const double py = j == ny_ ? y_.hi : y_.lo + j * dy();
  return {px, py};
}

std::array<int, 4> CartesianMesh::element_vertices(int e) const {
  const int i = e % nx_;
  const int j = e / nx_;
  const int v0 = i + (nx_ + 1) * j;
  return {v0, v0 + 1, v0 + nx_ + 2, v0 + nx_ + 1};
}

Quad CartesianMesh::element_corners(int e) const {
  const auto v = element_vertices(e);
  return {vertex(v[0]), vertex(v[1]), vertex(v[2]), vertex(v[3])};
}

Vec2 CartesianMesh::element_center(int e) const {
  const Quad c = element_corners(e);
  return 0.5 * (c[0] + c[2]);
}

std::vector<int> ElementClassification::interface_elements() const {
  std::vector<int> out;
  for (std::size_t e = 0; e < labels.size(); ++e)
    if (labels[e] == ElementLabel::Interface) out.push_back(static_cast<int>(e));
  return out;
}

int ElementClassification::count(ElementLabel label) const {
  return static_cast<int>(std::count(labels.begin(), labels.end(), label));
}

ElementLabel classify_cell(const Quad& corners, const Curve& curve, int edge_samples) {
  bool has_minus = false;
  bool has_plus = false;
  auto visit = [&](const Vec2& p) { (curve.side(p) > 0 ? has_plus : has_minus) = true; };
  for (int k = 0; k < 4; ++k) {
    const Vec2& a = corners[k];
    const Vec2& b = corners[(k + 1) % 4];
    visit(a);
    for (int s = 1; s <= edge_samples; ++s) visit(a + (b - a) * (static_cast<double>(s) / (edge_samples + 1)));
  }
  if (has_minus && has_plus) return ElementLabel::Interface;
  return has_plus ? ElementLabel::Plus : ElementLabel::Minus;
}

ElementClassification classify_elements(const CartesianMesh& mesh, const Curve& curve, int edge_samples) {
  ElementClassification out;
  out.labels.resize(mesh.element_count());
  for (int e = 0; e < mesh.element_count(); ++e) out.labels[e] = classify_cell(mesh.element_corners(e), curve, edge_samples);
  return out;
}

int default_guess_samples(double h) { return std::max(64, static_cast<int>(std::ceil(4.0 / h))); }

double nearest_sample(const std::vector<CurveSample>& samples, const Vec2& x) {
  double best = std::numeric_limits<double>::infinity();
  double xi = samples.front().xi;
  for (const CurveSample& s : samples) {
    const double d = (s.point - x).squaredNorm();
    if (d < best) {
      best = d;
      xi = s.xi;
    }
  }
  return xi;
}

std::vector<double> xi_init_guess(const CartesianMesh& mesh, std::span<const int> elements, const Curve& curve,
                                  int samples) {
  const std::vector<CurveSample> pts = sample_curve(curve, samples);
  std::vector<double> out;
  out.reserve(elements.size());
  for (int e : elements) out.push_back(nearest_sample(pts, mesh.element_center(e)));
  return out;
}

FrenetElementInfo interface_elem_info(const Quad& corners, const Curve& curve, double xi_guess, int element,
                                      const NewtonOptions& opts) {
  FrenetElementInfo info;
  info.element = element;
  info.xi_guess = xi_guess;
  double eta_h = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int k = 0; k < 4; ++k) {
    InverseMapReport rep;
    try {
      rep = inverse_map(curve, corners[k], xi_guess, opts);
    } catch (const Error& err) {
      throw Error(err.kind(), "element " + std::to_string(element) + ": " + err.what(), element);
    }
    info.vertices[k] = rep.point;
    eta_h = std::max(eta_h, std::abs(rep.point.eta));
    lo = std::min(lo, rep.point.xi);
    hi = std::max(hi, rep.point.xi);
  }
  info.eta_h = eta_h;
  info.xi0 = lo;
  info.xi1 = hi;
  info.xi_mid = 0.5 * (hi + lo);
  info.xi_h = 0.5 * (hi - lo);
  if (!(info.xi_h > 0.0) || !(info.eta_h > 0.0)) {
    throw Error(ErrorKind::Topology, "element " + std::to_string(element) + " has a degenerate Frenet box", element);
  }
  return info;
}

FrenetElementInfo interface_elem_info(const CartesianMesh& mesh, int element, const Curve& curve, double xi_guess,
                                      const NewtonOptions& opts) {
  return interface_elem_info(mesh.element_corners(element), curve, xi_guess, element, opts);
}

}  // namespace gcife
