#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gcife/polyquad.hpp"

using namespace gcife;

namespace {

// Legendre by the explicit sum (1/2^n) sum_k C(n,k)^2 (x-1)^(n-k) (x+1)^k
double legendre_explicit(int n, double x) {
  double s = 0.0, binom = 1.0;
  for (int k = 0; k <= n; ++k) {
    s += binom * binom * std::pow(x - 1, n - k) * std::pow(x + 1, k);
    binom = binom * (n - k) / (k + 1);
  }
  return s / std::pow(2.0, n);
}

}  // namespace

TEST_CASE("Legendre values and derivatives") {
  for (int n = 0; n <= 9; ++n)
    for (double x : {-0.9, -0.3, 0.0, 0.45, 1.0}) {
      CHECK(legendre(n, 0, x) == doctest::Approx(legendre_explicit(n, x)).epsilon(1e-13));
      const double h = 1e-5;
      const double fd = (legendre_explicit(n, x + h) - legendre_explicit(n, x - h)) / (2 * h);
      CHECK(legendre(n, 1, x) == doctest::Approx(fd).epsilon(1e-7).scale(1.0));
      const double fd2 = (legendre(n, 1, x + h) - legendre(n, 1, x - h)) / (2 * h);
      CHECK(legendre(n, 2, x) == doctest::Approx(fd2).epsilon(1e-6).scale(1.0));
    }
  CHECK(legendre(3, 4, 0.2) == 0.0);
}

TEST_CASE("q polynomials vanish to the right order at zero") {
  const Eigen::MatrixXd q0 = q_table<double>(8, 2, 0.0);
  CHECK(q0(0, 0) == 1.0);
  CHECK(q0(1, 1) == 1.0);
  for (int i = 1; i <= 8; ++i) CHECK(q0(i, 0) == 0.0);
  for (int i = 2; i <= 8; ++i) CHECK(std::abs(q0(i, 1)) < 1e-15);
  // q_2 = 3 x^2, q_3 = (5/2)(3 x^3 ... ) direct from the definition
  for (double x : {-0.7, 0.2, 0.9}) {
    CHECK(q_eval(2, 0, x) == doctest::Approx(3 * x * x));
    CHECK(q_eval(3, 0, x) == doctest::Approx(5 * x * legendre_explicit(2, x) - 5 * legendre_explicit(2, 0.0) * x));
  }
  const QZeroTable z(5);
  CHECK(z(2, 2) == doctest::Approx(6.0));
  CHECK(z(3, 99) == 0.0);
}

TEST_CASE("Gauss-Legendre exactness") {
  for (int n = 1; n <= 12; ++n) {
    const QuadratureRule1D r = gauss_legendre(n);
    REQUIRE(r.size() == n);
    for (int d = 0; d <= 2 * n - 1; ++d) {
      const double exact = d % 2 ? 0.0 : 2.0 / (d + 1);
      CHECK(r.weights.dot(r.nodes.array().pow(d).matrix()) == doctest::Approx(exact).scale(1.0).epsilon(1e-13));
    }
    for (int i = 1; i < n; ++i) CHECK(r.nodes(i) > r.nodes(i - 1));
  }
}

TEST_CASE("Gauss-Jacobi(1,0) exactness") {
  for (int n = 1; n <= 8; ++n) {
    const QuadratureRule1D r = gauss_jacobi(n, 1.0, 0.0);
    for (int d = 0; d <= 2 * n - 1; ++d) {
      // int_{-1}^{1} (1-x) x^d dx
      const double even = d % 2 ? 0.0 : 2.0 / (d + 1);
      const double odd = (d + 1) % 2 ? 0.0 : 2.0 / (d + 2);
      CHECK(r.weights.dot(r.nodes.array().pow(d).matrix()) == doctest::Approx(even - odd).scale(1.0).epsilon(1e-13));
    }
  }
}

TEST_CASE("Stroud triangle exactness") {
  for (int n = 1; n <= 7; ++n) {
    const TriangleRule t = stroud_triangle(n);
    for (int a = 0; a <= 2 * n - 2; ++a)
      for (int b = 0; a + b <= 2 * n - 2; ++b) {
        // int u^a v^b over the unit triangle = a! b! / (a + b + 2)!
        const double exact = std::tgamma(a + 1) * std::tgamma(b + 1) / std::tgamma(a + b + 3);
        double s = 0.0;
        for (int k = 0; k < t.size(); ++k) s += t.weights(k) * std::pow(t.nodes(0, k), a) * std::pow(t.nodes(1, k), b);
        CHECK(s == doctest::Approx(exact).epsilon(1e-12));
      }
  }
}

TEST_CASE("pipk table layout") {
  const QuadratureRule1D r = gauss_legendre(4);
  const PipkTable t = pipk_values(3, r);
  for (int d = 0; d <= 2; ++d)
    for (int i = 0; i <= 3; ++i)
      for (int k = 0; k <= 3; ++k)
        for (int q = 0; q < 4; ++q)
          CHECK(t(i, k, d, q) == doctest::Approx(legendre(i, d, r.nodes(q)) * legendre(k, 0, r.nodes(q))));
  // orthogonality through the table
  for (int i = 0; i <= 3; ++i)
    for (int k = 0; k <= 3; ++k) {
      double s = 0.0;
      for (int q = 0; q < 4; ++q) s += r.weights(q) * t(i, k, 0, q);
      CHECK(s == doctest::Approx(i == k ? 2.0 / (2 * i + 1) : 0.0).scale(1.0));
    }
}

TEST_CASE("hand-evaluated polynomial and rule values") {
  for (int i = 0; i <= 6; ++i) CHECK(legendre(i, 0, 1.0) == doctest::Approx(1.0));
  CHECK(legendre(0, 0, 0.37) == 1.0);
  CHECK(legendre(2, 0, 0.5) == doctest::Approx(-0.125));
  CHECK(q_eval(2, 0, 1.0) == doctest::Approx(3.0));
  CHECK(q_eval(1, 0, 0.3) == doctest::Approx(0.3));
  for (double x : {-0.4, 0.8}) CHECK(q_eval(3, 0, x) == doctest::Approx(7.5 * x * x * x));
  CHECK(q_eval(3, 1, 0.0) == 0.0);

  const QuadratureRule1D g1 = gauss_legendre(1);
  CHECK(g1.nodes(0) == doctest::Approx(0.0).scale(1.0));
  CHECK(g1.weights(0) == doctest::Approx(2.0));
  const QuadratureRule1D g2 = gauss_legendre(2);
  CHECK(g2.nodes(1) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(g2.weights(0) == doctest::Approx(1.0));
  const QuadratureRule1D g5 = gauss_legendre(5);
  CHECK(std::abs(g5.weights.dot(g5.nodes.array().pow(8).matrix()) - 2.0 / 9.0) < 1e-14);

  for (int n = 1; n <= 6; ++n) CHECK(std::abs(stroud_triangle(n).weights.sum() - 0.5) < 1e-13);
  const TriangleRule t2 = stroud_triangle(2);
  CHECK(std::abs(t2.weights.dot(t2.nodes.row(0).transpose()) - 1.0 / 6.0) < 1e-14);
  const TriangleRule t3 = stroud_triangle(3);
  double uv = 0.0;
  for (int k = 0; k < t3.size(); ++k) uv += t3.weights(k) * std::pow(t3.nodes(0, k) * t3.nodes(1, k), 2);
  CHECK(std::abs(uv - 1.0 / 180.0) < 1e-13);

  const PipkTable pk = pipk_values(2, gauss_legendre(3));
  for (int r = 0; r < 3; ++r) CHECK(pk(0, 0, 0, r) == 1.0);
  const QZeroTable z = qi_values(3);
  CHECK(z(1, 1) == 1.0);
  CHECK_THROWS(gauss_legendre(0));
  CHECK_THROWS(gauss_jacobi(3, -1.0, 0.0));
  CHECK_THROWS(pipk_values(4, gauss_legendre(3)));
}
