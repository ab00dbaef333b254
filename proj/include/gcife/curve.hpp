#pragma once

#include <functional>
#include <vector>

#include "gcife/types.hpp"

namespace gcife {

/// Parametric interface curve g : [xi_s, xi_e] -> R^2 together with a level
/// set whose sign separates Omega^- (negative) from Omega^+ (positive).
///
/// The parametrization must be oriented so that n = Q tau points from
/// Omega^- into Omega^+. All evaluators receive parameters already reduced
/// into the domain when the curve is periodic.
class Curve {
 public:
  using PointMap = std::function<Vec2(double)>;
  using ScalarMap = std::function<double(double)>;
  using LevelSet = std::function<double(const Vec2&)>;

  struct Evaluators {
    PointMap g;
    PointMap g1;
    PointMap g2;
    ScalarMap kappa_prime;  // optional; finite-differenced when empty
    LevelSet level;
  };

  Curve(Evaluators ev, Interval domain, bool periodic);

  Vec2 point(double xi) const { return ev_.g(reduce(xi)); }
  Vec2 d1(double xi) const { return ev_.g1(reduce(xi)); }
  Vec2 d2(double xi) const { return ev_.g2(reduce(xi)); }

  /// kappa'(xi); central differences of the curvature formula when no
  /// analytic evaluator was supplied.
  double kappa_prime(double xi) const;
  bool has_analytic_kappa_prime() const { return static_cast<bool>(ev_.kappa_prime); }

  double level(const Vec2& x) const { return ev_.level(x); }

  /// -1 in Omega^-, +1 in Omega^+. Points with |level| below 1e-13 count as minus.
  int side(const Vec2& x) const { return level(x) > kOnCurveTolerance ? 1 : -1; }

  const Interval& domain() const { return domain_; }
  bool periodic() const { return periodic_; }
  double period() const { return domain_.length(); }

  /// Maps xi into [xi_s, xi_e) for periodic curves; identity otherwise.
  double reduce(double xi) const;
  /// Representative of xi (mod period) closest to ref; identity when not periodic.
  double unwrap_near(double xi, double ref) const;

  static constexpr double kOnCurveTolerance = 1e-13;

 private:
  Evaluators ev_;
  Interval domain_;
  bool periodic_;
};

enum class Orientation { CounterClockwise, Clockwise };

/// Circle with analytic derivatives and kappa' = 0. Counterclockwise puts
/// Omega^- inside; clockwise puts Omega^+ inside.
Curve circle(const Vec2& center, double radius, Orientation orientation = Orientation::CounterClockwise);

/// Axis-aligned ellipse (a cos xi, b sin xi) + center, Omega^- inside.
Curve ellipse(const Vec2& center, double a, double b);

struct FrenetApparatus {
  Vec2 tau;
  Vec2 normal;
  double kappa = 0.0;
  double kappa_prime = 0.0;
  double speed = 0.0;
};

/// Counterclockwise-by-a-quarter rotation used for the normal, n = Q tau.
inline Vec2 rotate_q(const Vec2& v) { return {v.y(), -v.x()}; }

/// kappa = |g'|^-3 det[g', g''].
double curvature(const Curve& curve, double xi);

FrenetApparatus frenet_apparatus(const Curve& curve, double xi);

struct CurveSample {
  double xi;
  Vec2 point;
};

/// Uniformly spaced samples over the domain; the right endpoint is omitted
/// for periodic curves.
std::vector<CurveSample> sample_curve(const Curve& curve, int count);

}  // namespace gcife
