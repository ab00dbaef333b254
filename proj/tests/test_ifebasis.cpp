#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gcife/errors.hpp"
#include "gcife/assembly.hpp"
#include "gcife/ifebasis.hpp"
#include "gcife/local_space.hpp"
#include "jet_oracle.hpp"

using namespace gcife;

namespace {

Quad box(double x0, double y0, double x1, double y1) { return {Vec2(x0, y0), Vec2(x1, y0), Vec2(x1, y1), Vec2(x0, y1)}; }

struct Fixture {
  Curve curve;
  Quad corners;
  double guess;
};

Fixture circle_case() { return {circle(Vec2::Zero(), 1.0 / std::sqrt(3.0)), box(0.375, 0.375, 0.5, 0.5), 0.78}; }
Fixture ellipse_case() { return {ellipse(Vec2::Zero(), 1.0, 0.6), box(0.5, 0.375, 0.75, 0.625), 0.9}; }

LocalSpace space(const Fixture& f, int m, Betas b, InitialBasis init = InitialBasis::Extension,
                 Reconstruction rec = Reconstruction::None) {
  LocalSpaceOptions o;
  o.degree = m;
  o.betas = b;
  o.initial = init;
  o.reconstruction = rec;
  return build_local_space(f.corners, f.curve, f.guess, 7, make_basis_tables(m), o);
}

}  // namespace

TEST_CASE("J derivative table against Taylor jets") {
  for (const Fixture& f : {circle_case(), ellipse_case()}) {
    const int m = 6;
    Eigen::VectorXd z(3);
    z << 0.4, 0.8, 1.3;
    const JDerivTable t = j_deriv_table(f.curve, m, z);
    REQUIRE(t.levels() == m - 1);
    for (int r = 0; r < 3; ++r) {
      const oracle::JSeries J = oracle::j_series(f.curve, z(r));
      for (int l = 0; l < t.levels(); ++l) {
        CHECK(t(l, 0, r) == doctest::Approx(J.J0.derivative(l)).epsilon(1e-12));
        CHECK(t(l, 1, r) == doctest::Approx(J.J1.derivative(l)).epsilon(1e-12));
        CHECK(t(l, 2, r) == doctest::Approx(J.J2.derivative(l)).epsilon(1e-12).scale(1e-12));
      }
    }
  }
}

TEST_CASE("unit circle J values") {
  const Curve c = circle(Vec2::Zero(), 1.0);
  Eigen::VectorXd z(1);
  z << 0.3;
  const JDerivTable t = j_deriv_table(c, 4, z);
  CHECK(t(0, 0, 0) == doctest::Approx(1.0));
  CHECK(t(1, 0, 0) == doctest::Approx(-2.0));
  CHECK(t(2, 0, 0) == doctest::Approx(6.0));
  CHECK(t(0, 1, 0) == doctest::Approx(1.0));
  CHECK(t(1, 1, 0) == doctest::Approx(-1.0));
  for (int l = 0; l < 3; ++l) CHECK(std::abs(t(l, 2, 0)) < 1e-15);
  CHECK(JDerivTable(1, 3).levels() == 0);
}

TEST_CASE("assembled jump matrix matches the jet oracle") {
  for (const Fixture& f : {circle_case(), ellipse_case()})
    for (int m = 1; m <= 5; ++m) {
      const BasisTables tab = make_basis_tables(m);
      const FrenetElementInfo info = interface_elem_info(f.corners, f.curve, f.guess);
      const LineSystem line = line_system(f.curve, info, tab);
      const Eigen::MatrixXd At = assemble_atilde(line, tab);
      const Eigen::MatrixXd O = oracle::functionals(f.curve, info, m, m + 1);
      CHECK(oracle::mismatch(At, O, 1e-11) <= 1.0);
      CHECK(oracle::mismatch(jump_functionals(f.curve, info, tab), O, 1e-11) <= 1.0);

      const SpecialSystem sys = special_system(line, tab);
      const int np = m + 1;
      for (int j = 0; j + 2 <= m; ++j) {
        const Eigen::MatrixXd Oj = O.middleRows(2 * np + j * np, np);
        const Eigen::VectorXd sc = oracle::row_scales(Oj);
        CHECK(oracle::mismatch(sys.A.middleRows(j * np, np), Oj.rightCols(m * m - 1), 1e-11, sc) <= 1.0);
        CHECK(oracle::mismatch(sys.b.middleRows(j * np, np), Oj.leftCols(np), 1e-11, sc) <= 1.0);
      }
    }
}

TEST_CASE("special basis satisfies every jump condition") {
  const Betas b{1000.0, 1.0};
  for (int m = 1; m <= 5; ++m) {
    const LocalSpace ls = space(circle_case(), m, b, InitialBasis::Special);
    const BasisTables tab = make_basis_tables(m);
    CHECK(jump_residual(ls.initial, ls.info, circle_case().curve, b, tab).max() < 1e-10);
    const Eigen::VectorXd J = jump_scaling(m, b);
    const Eigen::MatrixXd lhs = ls.atilde * ls.initial.plus;
    const Eigen::MatrixXd rhs = J.asDiagonal() * (ls.atilde * ls.initial.minus);
    CHECK((lhs - rhs).norm() <= 1e-10 * rhs.norm());
  }
}

TEST_CASE("extension is consistent in both directions") {
  const Betas b{3.0, 0.2};
  for (int m = 1; m <= 4; ++m) {
    const LocalSpace ls = space(ellipse_case(), m, b);
    const int dim = (m + 1) * (m + 1);
    const Eigen::VectorXd J = jump_scaling(m, b);
    const BasisCoefficients fwd = extend_basis(ls.atilde, J, Eigen::MatrixXd::Identity(dim, dim), KnownSide::Minus);
    CHECK((fwd.minus - Eigen::MatrixXd::Identity(dim, dim)).norm() == 0.0);
    const BasisCoefficients back = extend_basis(ls.atilde, J, fwd.plus, KnownSide::Plus);
    CHECK((back.minus - Eigen::MatrixXd::Identity(dim, dim)).norm() < 1e-8);
    CHECK(jump_residual(fwd, ls.info, ellipse_case().curve, b, make_basis_tables(m)).max() < 1e-10);
  }
}

TEST_CASE("equal coefficients give a continuous polynomial space") {
  const Betas b{2.0, 2.0};
  for (int m = 1; m <= 4; ++m) {
    const LocalSpace s = space(circle_case(), m, b, InitialBasis::Special);
    CHECK((s.initial.plus - s.initial.minus).norm() < 1e-12);
    const LocalSpace e = space(circle_case(), m, b);
    CHECK((e.initial.plus - e.initial.minus).norm() < 1e-10);
  }
}

TEST_CASE("a corrupted basis is caught by the residual") {
  const Betas b{1000.0, 1.0};
  const LocalSpace ls = space(circle_case(), 3, b, InitialBasis::Special);
  BasisCoefficients bad = ls.initial;
  // push column 0 along the first extended functional, the direction it sees
  const Eigen::MatrixXd F = jump_functionals(circle_case().curve, ls.info, make_basis_tables(3));
  const Eigen::VectorXd dir = F.row(2 * 4).transpose().normalized();
  // amplitude comparable to the beta-weighted scale used by the residual
  const double scale = b.plus * bad.plus.col(0).norm() + b.minus * bad.minus.col(0).norm();
  bad.plus.col(0) += 0.1 * scale / b.plus * dir;
  const JumpResidual r = jump_residual(bad, ls.info, circle_case().curve, b, make_basis_tables(3));
  CHECK(r.extended(0) > 1e-4);
  bad = ls.initial;
  bad.plus(0, 1) += 0.1 * (bad.plus.col(1).norm() + bad.minus.col(1).norm());
  CHECK(jump_residual(bad, ls.info, circle_case().curve, b, make_basis_tables(3)).continuity(1) > 1e-4);
}

TEST_CASE("preconditioners and condition numbers") {
  Eigen::MatrixXd A(2, 2);
  A << 4.0, 1.0, 0.0, 1e-3;
  CHECK(precondition(A, Preconditioner::Jacobi).diagonal().isOnes());
  const Eigen::MatrixXd R = precondition(A, Preconditioner::RowNorm);
  for (int i = 0; i < 2; ++i) CHECK(R.row(i).norm() == doctest::Approx(1.0));
  CHECK((precondition(A, Preconditioner::None) - A).norm() == 0.0);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(2, 2);
  D.diagonal() << 1.0, 1e-3;
  CHECK(condition_number(D) == doctest::Approx(1e3));
  D(1, 1) = 0.0;
  CHECK(std::isinf(condition_number(D)));
  CHECK_THROWS_AS(precondition(D, Preconditioner::Jacobi), Error);
}

TEST_CASE("reconstruction orthonormalizes the basis") {
  const Betas b{1000.0, 1.0};
  for (Reconstruction rec : {Reconstruction::MassSVD, Reconstruction::VandermondeSVD})
    for (int m = 1; m <= 4; ++m) {
      const LocalSpace ls = space(circle_case(), m, b, InitialBasis::Extension, rec);
      const ReconstructionReport rep = reconstruct_report(ls.initial, ls.quadrature, ls.vandermonde, rec);
      const int dim = (m + 1) * (m + 1);
      const double err = (mass_matrix(rep.coeffs, ls.vandermonde, ls.quadrature) -
                          Eigen::MatrixXd::Identity(dim, dim)).norm();
      const double cond0 = condition_number(mass_matrix(ls.initial, ls.vandermonde, ls.quadrature));
      // forming M squares the conditioning that the Vandermonde route avoids
      if (rec == Reconstruction::MassSVD)
        CHECK(err <= 1e-15 * cond0 * dim);
      else
        CHECK(err < 1e-10);
      for (int i = 1; i < rep.singular_values.size(); ++i)
        CHECK(rep.singular_values(i) <= rep.singular_values(i - 1));
      // reconstruction is a right multiplication, so the jump conditions survive
      CHECK(jump_residual(rep.coeffs, ls.info, circle_case().curve, b, make_basis_tables(m)).max() < 1e-10);
    }
}

TEST_CASE("rank-deficient basis is reported") {
  const LocalSpace ls = space(circle_case(), 2, {1.0, 1.0}, InitialBasis::Special);
  BasisCoefficients dup = ls.initial;
  dup.minus.col(1) = dup.minus.col(0);
  dup.plus.col(1) = dup.plus.col(0);
  for (Reconstruction rec : {Reconstruction::MassSVD, Reconstruction::VandermondeSVD}) {
    try {
      (void)reconstruct(dup, ls.quadrature, ls.vandermonde, rec);
      FAIL("expected RankDeficient");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::RankDeficient);
    }
  }
}

TEST_CASE("table construction rejects bad sizes") {
  CHECK_THROWS_AS(make_basis_tables(0), Error);
  CHECK_THROWS_AS(make_basis_tables(3, 2), Error);
  CHECK(make_basis_tables(3).line.size() == 4);
  CHECK(make_basis_tables(3, 9).line.size() == 9);
}

TEST_CASE("b vectors vanish for constant and, on a circle, linear p") {
  const Fixture f = circle_case();
  for (int m = 2; m <= 5; ++m) {
    const BasisTables tab = make_basis_tables(m);
    const LineSystem line = line_system(f.curve, interface_elem_info(f.corners, f.curve, f.guess), tab);
    for (int j = 0; j + 2 <= m; ++j) {
      CHECK(b_vector(0, j, m, line.J, tab.pipk, line.xi_h, tab.line.weights).norm() == 0.0);
      CHECK(b_vector(1, j, m, line.J, tab.pipk, line.xi_h, tab.line.weights).norm() < 1e-12);
    }
  }
}

TEST_CASE("pure eta term of A(0) at m = 2") {
  const Fixture f = circle_case();
  const int m = 2;
  const BasisTables tab = make_basis_tables(m);
  const LineSystem line = line_system(f.curve, interface_elem_info(f.corners, f.curve, f.guess), tab);
  CHECK(tab.q0(2, 2) == doctest::Approx(6.0));
  const Eigen::MatrixXd A = a_matrix(0, m, line.J, tab.pipk, tab.q0, line.eta_h, line.xi_h, tab.line.weights);
  REQUIRE(A.rows() == 3);
  REQUIRE(A.cols() == 3);
  // column (t=2, s=0): q_2 and q_2' vanish at 0, leaving (xi_h / eta_h^2) q_2''(0) <p_0, p_k>
  const double lead = line.xi_h / (line.eta_h * line.eta_h) * 6.0 * 2.0;
  CHECK(A(0, 0) == doctest::Approx(lead).epsilon(1e-13));
  CHECK(std::abs(A(1, 0)) < 1e-13 * lead);
  CHECK(std::abs(A(2, 0)) < 1e-13 * lead);
  const Eigen::MatrixXd A2 =
      a_matrix(0, m, line.J, tab.pipk, tab.q0, 2.0 * line.eta_h, line.xi_h, tab.line.weights);
  CHECK(A2(0, 0) == doctest::Approx(A(0, 0) / 4.0).epsilon(1e-14));
  CHECK(a_matrix(0, 1, line.J, tab.pipk, tab.q0, line.eta_h, line.xi_h, tab.line.weights).cols() == 0);
}

TEST_CASE("degree one has no extended conditions") {
  const Betas b{4.0, 0.5};
  const LocalSpace ls = space(circle_case(), 1, b);
  const Eigen::MatrixXd c = solve_special_coeffs(1, special_system(ls.line, make_basis_tables(1)), b);
  CHECK(c.rows() == 0);
  CHECK(c.cols() == 2);
  const BasisCoefficients bc = special_initial_basis(1, c, b);
  Eigen::VectorXd dm(4), dp(4);
  dm << 1.0, 1.0, 1.0 / b.minus, 1.0 / b.minus;
  dp << 1.0, 1.0, 1.0 / b.plus, 1.0 / b.plus;
  CHECK((bc.minus - Eigen::MatrixXd(dm.asDiagonal())).norm() == 0.0);
  CHECK((bc.plus - Eigen::MatrixXd(dp.asDiagonal())).norm() == 0.0);
  CHECK(ls.atilde.rows() == 4);
}

TEST_CASE("equal coefficients give a zero special correction") {
  const Betas b{1.5, 1.5};
  for (int m = 2; m <= 5; ++m) {
    const LocalSpace ls = space(ellipse_case(), m, b);
    const Eigen::MatrixXd c = solve_special_coeffs(m, special_system(ls.line, make_basis_tables(m)), b);
    CHECK(c.norm() == 0.0);
  }
}

TEST_CASE("continuity and flux blocks follow the q values at zero") {
  for (int m = 1; m <= 5; ++m) {
    const LocalSpace ls = space(ellipse_case(), m, {2.0, 1.0});
    const int np = m + 1;
    for (int t = 0; t <= m; ++t) {
      const Eigen::MatrixXd cols = ls.atilde.middleCols(np * t, np);
      if (t >= 1) CHECK(cols.topRows(np).norm() == 0.0);
      if (t != 1) CHECK(cols.middleRows(np, np).norm() == 0.0);
    }
  }
}

TEST_CASE("jump matrix is nonsingular on every circle element") {
  const Curve c = circle(Vec2::Zero(), 1.0 / std::sqrt(3.0));
  const CartesianMesh mesh = build_mesh({-1, 1}, {-1, 1}, 16, 16);
  const std::vector<int> iface = classify_elements(mesh, c).interface_elements();
  const std::vector<double> g = xi_init_guess(mesh, iface, c, 64);
  for (int m = 1; m <= 6; ++m) {
    const BasisTables tab = make_basis_tables(m);
    for (std::size_t k = 0; k < iface.size(); ++k) {
      const FrenetElementInfo info = interface_elem_info(mesh.element_corners(iface[k]), c, g[k]);
      const Eigen::MatrixXd At = assemble_atilde(line_system(c, info, tab), tab);
      const Eigen::VectorXd s = Eigen::JacobiSVD<Eigen::MatrixXd>(precondition(At, Preconditioner::RowNorm))
                                    .singularValues();
      CHECK(s(s.size() - 1) > 1e-12 * s(0));
    }
  }
}

TEST_CASE("one polynomial on both sides has no jump") {
  const Betas b{1.0, 1.0};
  for (int m = 1; m <= 5; ++m) {
    const LocalSpace ls = space(ellipse_case(), m, b);
    const int dim = (m + 1) * (m + 1);
    BasisCoefficients id;
    id.degree = m;
    id.minus = id.plus = Eigen::MatrixXd::Identity(dim, dim);
    CHECK(jump_residual(id, ls.info, ellipse_case().curve, b, make_basis_tables(m)).max() <= 1e-12);
  }
}

TEST_CASE("adding 1 to one coefficient breaks the jump conditions") {
  const Betas b{1000.0, 1.0};
  for (int m = 1; m <= 4; ++m) {
    const LocalSpace ls = space(circle_case(), m, b);
    BasisCoefficients bad = ls.initial;
    bad.plus(0, 0) += 1.0;
    CHECK(jump_residual(bad, ls.info, circle_case().curve, b, make_basis_tables(m)).max() > 1e-4);
  }
}
