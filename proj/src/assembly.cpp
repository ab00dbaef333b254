#include "gcife/assembly.hpp"

#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "gcife/errors.hpp"
#include "gcife/polyquad.hpp"

namespace gcife {

double RadialTestField::operator()(const Vec2& x, int side) const {
  const double r2 = (x - center).squaredNorm();
  const double c = std::cos(2.0 * std::numbers::pi * r2);
  if (side > 0) return c / betas.plus;
  return c / betas.minus + std::cos(2.0 * std::numbers::pi * r0 * r0) * (1.0 / betas.plus - 1.0 / betas.minus);
}

SideField RadialTestField::as_field() const {
  const RadialTestField copy = *this;
  return [copy](const Vec2& x, int side) { return copy(x, side); };
}

Eigen::MatrixXd mass_matrix(const BasisCoefficients& coeffs, const VandermondeSet& vm, const CutQuadrature& quad) {
  const Eigen::MatrixXd LCm = vm.minus * coeffs.minus;
  const Eigen::MatrixXd LCp = vm.plus * coeffs.plus;
  Eigen::MatrixXd M =
      LCm.transpose() * quad.minus.weights.asDiagonal() * LCm + LCp.transpose() * quad.plus.weights.asDiagonal() * LCp;
  return 0.5 * (M + M.transpose());
}

namespace {

Eigen::VectorXd side_values(const SideField& f, const SideQuadrature& q, int side) {
  Eigen::VectorXd v(q.size());
  for (int k = 0; k < q.size(); ++k) v(k) = f(q.nodes.col(k), side);
  return v;
}

}  // namespace

Eigen::VectorXd load_vector(const SideField& f, const BasisCoefficients& coeffs, const VandermondeSet& vm,
                            const CutQuadrature& quad) {
  const Eigen::VectorXd rm = side_values(f, quad.minus, -1);
  const Eigen::VectorXd rp = side_values(f, quad.plus, 1);
  return (vm.minus * coeffs.minus).transpose() * quad.minus.weights.cwiseProduct(rm) +
         (vm.plus * coeffs.plus).transpose() * quad.plus.weights.cwiseProduct(rp);
}

BasisValue basis_eval(const BasisCoefficients& coeffs, int column, const Vec2& x, const Curve& curve,
                      const FrenetElementInfo& info, const NewtonOptions& opts) {
  const int m = coeffs.degree;
  const FrenetPoint p = inverse_map(curve, x, info.xi_mid, opts).point;
  const std::vector<FrenetPoint> pts{p};
  const Eigen::MatrixXd& C = curve.side(x) > 0 ? coeffs.plus : coeffs.minus;
  BasisValue out;
  out.value = vandermonde(pts, m, info).row(0).dot(C.col(column));
  const double ue = vandermonde(pts, m, info, 1, 0).row(0).dot(C.col(column));
  const double ux = vandermonde(pts, m, info, 0, 1).row(0).dot(C.col(column));
  out.gradient = physical_gradient(curve, p, ue, ux);
  return out;
}

ElementProjection project_interface_element(const SideField& u, const LocalSpace& space) {
  const BasisCoefficients& C = space.coeffs;
  const VandermondeSet& vm = space.vandermonde;
  const CutQuadrature& q = space.quadrature;
  const Eigen::MatrixXd M = mass_matrix(C, vm, q);
  const Eigen::VectorXd f = load_vector(u, C, vm, q);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(M);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
    throw Error(ErrorKind::SingularSystem, "interface mass matrix is not positive definite", space.element);
  }
  ElementProjection out;
  out.coeffs = ldlt.solve(f);
  const Eigen::VectorXd em = vm.minus * (C.minus * out.coeffs) - side_values(u, q.minus, -1);
  const Eigen::VectorXd ep = vm.plus * (C.plus * out.coeffs) - side_values(u, q.plus, 1);
  out.error = std::sqrt(q.minus.weights.dot(em.cwiseAbs2()) + q.plus.weights.dot(ep.cwiseAbs2()));
  return out;
}

ElementProjection project_regular_element(const SideField& u, int side, const Quad& corners, int m, int n_qp) {
  if (n_qp < 1) throw Error(ErrorKind::InvalidArgument, "regular projection needs n_qp >= 1");
  const QuadratureRule1D gl = gauss_legendre(n_qp);
  const Vec2 lo = corners[0];
  const Vec2 hi = corners[2];
  const double hx = hi.x() - lo.x();
  const double hy = hi.y() - lo.y();
  const double area = hx * hy;
  const int np = m + 1;

  std::vector<Eigen::VectorXd> px(n_qp), py(n_qp);
  for (int i = 0; i < n_qp; ++i) {
    px[i] = legendre_table<double>(m, 0, gl.nodes(i)).col(0);
    py[i] = px[i];
  }
  Eigen::MatrixXd values(n_qp, n_qp);
  for (int i = 0; i < n_qp; ++i)
    for (int j = 0; j < n_qp; ++j) {
      const Vec2 x(lo.x() + 0.5 * hx * (1.0 + gl.nodes(i)), lo.y() + 0.5 * hy * (1.0 + gl.nodes(j)));
      values(i, j) = u(x, side);
    }

  ElementProjection out;
  out.coeffs = Eigen::VectorXd::Zero(np * np);
  for (int a = 0; a <= m; ++a)
    for (int b = 0; b <= m; ++b) {
      double acc = 0.0;
      for (int i = 0; i < n_qp; ++i)
        for (int j = 0; j < n_qp; ++j)
          acc += 0.25 * area * gl.weights(i) * gl.weights(j) * values(i, j) * px[i](a) * py[j](b);
      out.coeffs(np * a + b) = acc * (2 * a + 1) * (2 * b + 1) / area;
    }
  double err2 = 0.0;
  for (int i = 0; i < n_qp; ++i)
    for (int j = 0; j < n_qp; ++j) {
      double uh = 0.0;
      for (int a = 0; a <= m; ++a)
        for (int b = 0; b <= m; ++b) uh += out.coeffs(np * a + b) * px[i](a) * py[j](b);
      const double d = uh - values(i, j);
      err2 += 0.25 * area * gl.weights(i) * gl.weights(j) * d * d;
    }
  out.error = std::sqrt(err2);
  return out;
}

const ProjectionEntry* ProjectionResult::find(int degree, int n) const {
  for (const ProjectionEntry& e : entries)
    if (e.degree == degree && e.n == n) return &e;
  return nullptr;
}

int default_regular_nqp(int m) { return m + 3; }

namespace {

template <typename Body>
void parallel_for(int count, int jobs, Body body) {
  jobs = std::max(1, std::min(jobs, count));
  if (jobs == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) body(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace

ProjectionResult global_projection_study(const Curve& curve, const SideField& u, const Betas& betas,
                                         const std::vector<int>& degrees, const std::vector<int>& sizes,
                                         const StudyOptions& opts) {
  if (degrees.empty() || sizes.empty()) throw Error(ErrorKind::InvalidArgument, "empty degree or mesh-size list");
  ProjectionResult result;
  for (int m : degrees) {
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "degree must be at least 1");
    const BasisTables tables = make_basis_tables(m);
    LocalSpaceOptions lopts;
    lopts.degree = m;
    lopts.betas = betas;
    lopts.n_qp = opts.n_qp;
    lopts.preconditioner = opts.preconditioner;
    lopts.reconstruction = opts.reconstruction;
    lopts.initial = opts.initial;
    const int reg_nqp = opts.regular_n_qp > 0 ? opts.regular_n_qp : default_regular_nqp(m);

    int prev = -1;
    for (int n : sizes) {
      if (n < 1) throw Error(ErrorKind::InvalidArgument, "mesh size must be positive");
      const CartesianMesh mesh = build_mesh(opts.x, opts.y, n, n);
      const ElementClassification cls = classify_elements(mesh, curve);
      const std::vector<int> iface = cls.interface_elements();
      const std::vector<double> guesses =
          xi_init_guess(mesh, iface, curve, default_guess_samples(mesh.diameter()));
      std::vector<int> slot(mesh.element_count(), -1);
      for (std::size_t k = 0; k < iface.size(); ++k) slot[iface[k]] = static_cast<int>(k);

      std::vector<double> errors(mesh.element_count(), 0.0);
      std::vector<std::string> failures(mesh.element_count());
      parallel_for(mesh.element_count(), opts.jobs, [&](int e) {
        try {
          const Quad corners = mesh.element_corners(e);
          if (cls.labels[e] == ElementLabel::Interface) {
            const LocalSpace space = build_local_space(corners, curve, guesses[slot[e]], e, tables, lopts);
            errors[e] = project_interface_element(u, space).error;
          } else {
            const int side = cls.labels[e] == ElementLabel::Plus ? 1 : -1;
            errors[e] = project_regular_element(u, side, corners, m, reg_nqp).error;
          }
        } catch (const std::exception& ex) {
          failures[e] = ex.what();
        }
      });

      std::ostringstream msg;
      int failed = 0;
      for (int e = 0; e < mesh.element_count(); ++e) {
        if (!failures[e].empty()) {
          if (failed < 8) msg << "\n  element " << e << ": " << failures[e];
          ++failed;
        }
      }
      if (failed > 0) {
        std::ostringstream head;
        head << failed << " element(s) failed for m=" << m << ", N=" << n << msg.str();
        throw Error(ErrorKind::SingularSystem, head.str());
      }

      ProjectionEntry entry;
      entry.degree = m;
      entry.n = n;
      entry.interface_elements = static_cast<int>(iface.size());
      double sum = 0.0;
      for (double v : errors) sum += v * v;
      entry.error = std::sqrt(sum);
      entry.element_errors = std::move(errors);
      entry.rate = std::numeric_limits<double>::quiet_NaN();
      if (prev >= 0) {
        const ProjectionEntry& p = result.entries[prev];
        entry.rate = std::log(p.error / entry.error) / std::log(static_cast<double>(n) / p.n);
      }
      result.entries.push_back(std::move(entry));
      prev = static_cast<int>(result.entries.size()) - 1;
    }
  }
  return result;
}

}  // namespace gcife
