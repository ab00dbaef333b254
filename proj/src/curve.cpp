#include "gcife/curve.hpp"

#include <cmath>
#include <numbers>

#include "gcife/errors.hpp"

namespace gcife {

Curve::Curve(Evaluators ev, Interval domain, bool periodic)
    : ev_(std::move(ev)), domain_(domain), periodic_(periodic) {
  if (!ev_.g || !ev_.g1 || !ev_.g2 || !ev_.level) {
    throw Error(ErrorKind::InvalidArgument, "curve requires g, g', g'' and a level set");
  }
  if (!(domain_.hi > domain_.lo)) {
    throw Error(ErrorKind::InvalidArgument, "curve parameter domain is empty");
  }
}

double Curve::reduce(double xi) const {
  if (!periodic_) return xi;
  const double p = period();
  double r = std::fmod(xi - domain_.lo, p);
  if (r < 0.0) r += p;
  if (r >= p) r -= p;
  return domain_.lo + r;
}

double Curve::unwrap_near(double xi, double ref) const {
  if (!periodic_) return xi;
  const double p = period();
  return ref + std::remainder(xi - ref, p);
}

double curvature(const Curve& curve, double xi) {
  const Vec2 d1 = curve.d1(xi);
  const Vec2 d2 = curve.d2(xi);
  const double speed = d1.norm();
  if (speed < 1e-13) {
    throw Error(ErrorKind::DegenerateParametrization, "|g'(xi)| vanishes at xi = " + std::to_string(xi));
  }
  return (d1.x() * d2.y() - d1.y() * d2.x()) / (speed * speed * speed);
}

double Curve::kappa_prime(double xi) const {
  if (ev_.kappa_prime) return ev_.kappa_prime(reduce(xi));
  const double h = std::max(1e-6, 1e-6 * std::abs(xi));
  return (curvature(*this, xi + h) - curvature(*this, xi - h)) / (2.0 * h);
}

FrenetApparatus frenet_apparatus(const Curve& curve, double xi) {
  const Vec2 d1 = curve.d1(xi);
  const Vec2 d2 = curve.d2(xi);
  FrenetApparatus f;
  f.speed = d1.norm();
  if (f.speed < 1e-13) {
    throw Error(ErrorKind::DegenerateParametrization, "|g'(xi)| vanishes at xi = " + std::to_string(xi));
  }
  f.tau = d1 / f.speed;
  f.normal = rotate_q(f.tau);
  f.kappa = (d1.x() * d2.y() - d1.y() * d2.x()) / (f.speed * f.speed * f.speed);
  f.kappa_prime = curve.kappa_prime(xi);
  return f;
}

std::vector<CurveSample> sample_curve(const Curve& curve, int count) {
  if (count < 2) throw Error(ErrorKind::InvalidArgument, "sample_curve needs at least two samples");
  const Interval& dom = curve.domain();
  const int intervals = curve.periodic() ? count : count - 1;
  const double step = dom.length() / intervals;
  std::vector<CurveSample> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double xi = (i == count - 1 && !curve.periodic()) ? dom.hi : dom.lo + i * step;
    out.push_back({xi, curve.point(xi)});
  }
  return out;
}

Curve circle(const Vec2& center, double radius, Orientation orientation) {
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "circle radius must be positive");
  const double s = orientation == Orientation::CounterClockwise ? 1.0 : -1.0;
  Curve::Evaluators ev;
  ev.g = [=](double t) { return Vec2(center.x() + radius * std::cos(t), center.y() + s * radius * std::sin(t)); };
  ev.g1 = [=](double t) { return Vec2(-radius * std::sin(t), s * radius * std::cos(t)); };
  ev.g2 = [=](double t) { return Vec2(-radius * std::cos(t), -s * radius * std::sin(t)); };
  ev.kappa_prime = [](double) { return 0.0; };
  ev.level = [=](const Vec2& x) { return s * ((x - center).squaredNorm() - radius * radius); };
  return Curve(std::move(ev), {0.0, 2.0 * std::numbers::pi}, true);
}

Curve ellipse(const Vec2& center, double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw Error(ErrorKind::InvalidArgument, "ellipse semi-axes must be positive");
  Curve::Evaluators ev;
  ev.g = [=](double t) { return Vec2(center.x() + a * std::cos(t), center.y() + b * std::sin(t)); };
  ev.g1 = [=](double t) { return Vec2(-a * std::sin(t), b * std::cos(t)); };
  ev.g2 = [=](double t) { return Vec2(-a * std::cos(t), -b * std::sin(t)); };
  // kappa = ab D^{-3/2}, D = a^2 sin^2 + b^2 cos^2
  ev.kappa_prime = [=](double t) {
    const double sn = std::sin(t), cs = std::cos(t);
    const double d = a * a * sn * sn + b * b * cs * cs;
    const double dd = 2.0 * (a * a - b * b) * sn * cs;
    return -1.5 * a * b * std::pow(d, -2.5) * dd;
  };
  ev.level = [=](const Vec2& x) {
    const Vec2 r = x - center;
    return (r.x() / a) * (r.x() / a) + (r.y() / b) * (r.y() / b) - 1.0;
  };
  return Curve(std::move(ev), {0.0, 2.0 * std::numbers::pi}, true);
}

}  // namespace gcife
