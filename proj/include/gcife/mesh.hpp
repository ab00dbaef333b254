#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "gcife/curve.hpp"
#include "gcife/frenet.hpp"

namespace gcife {

/// Uniform nx-by-ny mesh of congruent axis-aligned rectangles. Element
/// e = i + nx * j covers column i and row j; vertex v = i + (nx + 1) * j.
class CartesianMesh {
 public:
  CartesianMesh(Interval x, Interval y, int nx, int ny);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int element_count() const { return nx_ * ny_; }
  int vertex_count() const { return (nx_ + 1) * (ny_ + 1); }
  const Interval& x_range() const { return x_; }
  const Interval& y_range() const { return y_; }

  double dx() const { return x_.length() / nx_; }
  double dy() const { return y_.length() / ny_; }
  double diameter() const { return std::hypot(dx(), dy()); }
  double element_area() const { return dx() * dy(); }

  Vec2 vertex(int v) const;
  /// Counterclockwise vertex indices starting at the lower-left corner.
  std::array<int, 4> element_vertices(int e) const;
  Quad element_corners(int e) const;
  Vec2 element_center(int e) const;

 private:
  Interval x_;
  Interval y_;
  int nx_;
  int ny_;
};

CartesianMesh build_mesh(Interval x, Interval y, int nx, int ny);

enum class ElementLabel : std::uint8_t { Minus = 0, Plus = 1, Interface = 2 };

struct ElementClassification {
  std::vector<ElementLabel> labels;

  std::vector<int> interface_elements() const;
  int count(ElementLabel label) const;
};

/// Labels one element: Interface when the side indicator changes sign among
/// the corners or among `edge_samples` interior points of any edge.
ElementLabel classify_cell(const Quad& corners, const Curve& curve, int edge_samples = 8);

ElementClassification classify_elements(const CartesianMesh& mesh, const Curve& curve, int edge_samples = 8);

/// max(64, ceil(4 / h)).
int default_guess_samples(double h);

/// For each listed element, the sampled parameter whose curve point is
/// nearest to the element center (smallest sample index on ties).
std::vector<double> xi_init_guess(const CartesianMesh& mesh, std::span<const int> elements, const Curve& curve,
                                  int samples);

/// Nearest-sample search for a single point.
double nearest_sample(const std::vector<CurveSample>& samples, const Vec2& x);

/// Frenet images of the four corners of an interface element and the
/// aggregates eta_h, xi_{0,K}, xi_{1,K}, xi_mid and xi_h derived from them.
struct FrenetElementInfo {
  int element = -1;
  std::array<FrenetPoint, 4> vertices{};
  double eta_h = 0.0;
  double xi0 = 0.0;
  double xi1 = 0.0;
  double xi_mid = 0.0;
  double xi_h = 0.0;
  double xi_guess = 0.0;
};

FrenetElementInfo interface_elem_info(const Quad& corners, const Curve& curve, double xi_guess, int element = -1,
                                      const NewtonOptions& opts = {});

FrenetElementInfo interface_elem_info(const CartesianMesh& mesh, int element, const Curve& curve, double xi_guess,
                                      const NewtonOptions& opts = {});

}  // namespace gcife
