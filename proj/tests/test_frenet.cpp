#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gcife/errors.hpp"
#include "gcife/frenet.hpp"

using namespace gcife;

TEST_CASE("forward map of the circle is polar") {
  const Curve c = circle(Vec2(0.1, 0.2), 0.5);
  const Vec2 x = forward_map(c, {0.1, 0.8});
  CHECK((x - (Vec2(0.1, 0.2) + 0.6 * Vec2(std::cos(0.8), std::sin(0.8)))).norm() < 1e-15);
}

TEST_CASE("jacobians are inverse and match finite differences") {
  const Curve c = ellipse(Vec2::Zero(), 1.0, 0.6);
  const FrenetPoint p{0.05, 1.1};
  const Mat2 J = jacobian_forward(c, p);
  const Mat2 Ji = jacobian_inverse(c, p);
  CHECK((J * Ji - Mat2::Identity()).norm() < 1e-13);
  const double h = 1e-6;
  const Vec2 de = (forward_map(c, {p.eta + h, p.xi}) - forward_map(c, {p.eta - h, p.xi})) / (2 * h);
  const Vec2 dx = (forward_map(c, {p.eta, p.xi + h}) - forward_map(c, {p.eta, p.xi - h})) / (2 * h);
  CHECK((J.col(0) - de).norm() < 1e-8);
  CHECK((J.col(1) - dx).norm() < 1e-8);
}

TEST_CASE("psi and rho") {
  const Curve c = circle(Vec2::Zero(), 2.0);
  const PsiRho pr = psi_rho(c, {0.5, 0.3});
  CHECK(pr.psi == doctest::Approx(1.0 / 1.25));
  CHECK(pr.rho == doctest::Approx(0.4));
}

TEST_CASE("inverse map round trip and branch selection") {
  const Curve c = circle(Vec2::Zero(), 1.0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> eta(-0.2, 0.2), xi(0.0, 2 * std::numbers::pi);
  for (int k = 0; k < 200; ++k) {
    const FrenetPoint p{eta(rng), xi(rng)};
    const Vec2 x = forward_map(c, p);
    const InverseMapReport r = inverse_map(c, x, p.xi + 0.05);
    CHECK(std::abs(r.point.eta - p.eta) < 1e-12);
    CHECK(std::abs(r.point.xi - p.xi) < 1e-12);
    CHECK(r.iterations <= 10);
  }
  // guess across the seam: the returned xi is the representative near the guess
  const Vec2 x = forward_map(c, {0.0, 0.02});
  const InverseMapReport r = inverse_map(c, x, 2 * std::numbers::pi - 0.01);
  CHECK(r.point.xi == doctest::Approx(2 * std::numbers::pi + 0.02));
}

TEST_CASE("physical gradient of the signed distance") {
  const Curve c = circle(Vec2::Zero(), 1.0);
  const FrenetPoint p{0.1, 0.4};
  // u = eta gives grad r = n; u = xi gives e_theta / r
  CHECK((physical_gradient(c, p, 1.0, 0.0) - Vec2(std::cos(0.4), std::sin(0.4))).norm() < 1e-15);
  CHECK((physical_gradient(c, p, 0.0, 1.0) - Vec2(-std::sin(0.4), std::cos(0.4)) / 1.1).norm() < 1e-14);
}

TEST_CASE("failure modes") {
  const Curve c = circle(Vec2::Zero(), 1.0);
  try {
    (void)jacobian_inverse(c, {-1.0, 0.0});
    FAIL("expected SingularMap");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularMap);
  }
  NewtonOptions tight;
  tight.max_iter = 1;
  try {
    (void)inverse_map(c, Vec2(0.3, 1.2), 0.0, tight);
    FAIL("expected a Newton failure");
  } catch (const Error& e) {
    CHECK((e.kind() == ErrorKind::NoConvergence || e.kind() == ErrorKind::Divergence ||
           e.kind() == ErrorKind::SingularMap));
  }
  CHECK_THROWS_AS(inverse_map(c, Vec2(0.5, 0.5), std::nan("")), Error);
}

TEST_CASE("hand-evaluated unit circle values") {
  const Curve c = circle(Vec2::Zero(), 1.0);
  CHECK((forward_map(c, {0.2, 0.0}) - Vec2(1.2, 0.0)).norm() < 1e-15);
  CHECK((forward_map(c, {-0.2, std::numbers::pi / 2}) - Vec2(0.0, 0.8)).norm() < 1e-15);
  CHECK((forward_map(c, {0.0, 0.9}) - c.point(0.9)).norm() == 0.0);
  CHECK((jacobian_forward(c, {0.0, 0.0}) - Mat2::Identity()).norm() < 1e-15);
  CHECK(std::abs(jacobian_forward(c, {0.0, 2.0}).determinant()) == doctest::Approx(1.0));
  CHECK(std::abs(jacobian_forward(c, {-1.0 + 1e-9, 2.0}).determinant()) < 1e-8);
  CHECK(psi_rho(c, {0.0, 1.0}).psi == 1.0);
  CHECK(psi_rho(c, {0.25, 1.0}).psi == doctest::Approx(0.8));
  CHECK(psi_rho(c, {0.0, 1.0}).rho == doctest::Approx(1.0));

  const InverseMapReport a = inverse_map(c, Vec2(1.2, 0.0), 0.0);
  CHECK(a.point.eta == doctest::Approx(0.2));
  CHECK(std::abs(a.point.xi) < 1e-14);
  const InverseMapReport b = inverse_map(c, 0.8 * Vec2(std::cos(1.0), std::sin(1.0)), 1.1);
  CHECK(std::abs(b.point.eta + 0.2) < 1e-12);
  CHECK(std::abs(b.point.xi - 1.0) < 1e-12);

  const FrenetPoint on{0.0, 0.6};
  CHECK((physical_gradient(c, on, 0.0, 1.0) - frenet_apparatus(c, 0.6).tau).norm() < 1e-15);
  CHECK(physical_gradient(c, on, 0.0, 0.0).norm() == 0.0);
}

TEST_CASE("ellipse jacobian determinant on the curve is the speed") {
  const Curve c = ellipse(Vec2(0.1, -0.3), 1.0, 0.6);
  for (double t : {0.2, 1.7, 3.3}) CHECK(std::abs(jacobian_forward(c, {0.0, t}).determinant()) ==
                                         doctest::Approx(c.d1(t).norm()));
}
