#include "gcife/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "gcife/errors.hpp"

namespace gcife {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::string join_path(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

double nearest_xi(const Curve& curve, const Quad& corners) {
  const Vec2 c = 0.25 * (corners[0] + corners[1] + corners[2] + corners[3]);
  const double h = (corners[2] - corners[0]).norm();
  return nearest_sample(sample_curve(curve, default_guess_samples(h)), c);
}

}  // namespace

void validate(const ExperimentConfig& config) {
  if (config.degrees.empty()) throw Error(ErrorKind::InvalidArgument, "degree list is empty");
  for (int m : config.degrees)
    if (m < 1) throw Error(ErrorKind::InvalidArgument, "degrees must be at least 1");
  if (config.mesh_sizes.empty()) throw Error(ErrorKind::InvalidArgument, "mesh-size list is empty");
  for (int n : config.mesh_sizes)
    if (!power_of_two(n) || n < 4) throw Error(ErrorKind::InvalidArgument, "mesh sizes must be powers of two >= 4");
  if (config.betas && !(config.betas->minus > 0.0 && config.betas->plus > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "betas must be positive");
  }
  if (config.radius && !(*config.radius > 0.0)) throw Error(ErrorKind::InvalidArgument, "radius must be positive");
  if (!(config.ellipse_a > 0.0 && config.ellipse_b > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "ellipse semi-axes must be positive");
  }
  if (config.n_qp < 0 || config.regular_n_qp < 0) throw Error(ErrorKind::InvalidArgument, "nqp must be positive");
  if (config.jobs < 1) throw Error(ErrorKind::InvalidArgument, "jobs must be at least 1");
}

Curve make_curve(const ExperimentConfig& config, double default_radius) {
  if (config.curve == CurveKind::Ellipse) return ellipse(config.center, config.ellipse_a, config.ellipse_b);
  return circle(config.center, config.radius.value_or(default_radius));
}

std::string CsvReport::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt(row[i]);
    os << '\n';
  }
  return os.str();
}

void CsvReport::write() const {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot open " + path + " for writing");
  out << str();
}

CsvReport run_project(const ExperimentConfig& config) {
  validate(config);
  const double r0 = 1.0 / std::sqrt(3.0);
  const Curve curve = make_curve(config, r0);
  const Betas betas = config.betas.value_or(Betas{1000.0, 1.0});

  SideField field;
  if (config.curve == CurveKind::Circle) {
    field = RadialTestField{config.center, config.radius.value_or(r0), betas}.as_field();
  } else {
    // Continuous but not flux-matched; only the convergence trend is meaningful.
    const Vec2 c = config.center;
    field = [c](const Vec2& x, int) { return std::cos(2.0 * std::numbers::pi * (x - c).squaredNorm()); };
  }

  StudyOptions opts;
  opts.n_qp = config.n_qp;
  opts.regular_n_qp = config.regular_n_qp;
  opts.preconditioner = config.preconditioner;
  opts.reconstruction = config.reconstruction;
  opts.initial = config.initial;
  opts.jobs = config.jobs;
  const ProjectionResult res = global_projection_study(curve, field, betas, config.degrees, config.mesh_sizes, opts);

  CsvReport report;
  report.header = {"m", "N", "error", "rate"};
  report.path = join_path(config.out_dir, "project.csv");
  for (const ProjectionEntry& e : res.entries) report.rows.push_back({double(e.degree), double(e.n), e.error, e.rate});
  return report;
}

std::string project_plot_script(const CsvReport& report) {
  std::ostringstream os;
  const std::string file = std::filesystem::path(report.path).filename().string();
  os << "set datafile separator ','\n"
     << "set logscale xy\n"
     << "set xlabel 'N'\n"
     << "set ylabel 'L2 projection error'\n"
     << "set key left bottom\n"
     << "plot for [m=1:10] '" << file << "' using ($1==m ? $2 : 1/0):3 skip 1 with linespoints title sprintf('m=%d', m)\n";
  return os.str();
}

Quad diagonal_element(const Vec2& center, double radius, double h) {
  const Vec2 mid = center + radius * Vec2(1.0, 1.0) / std::sqrt(2.0);
  const double a = h / (2.0 * std::sqrt(2.0));
  return {mid + Vec2(-a, -a), mid + Vec2(a, -a), mid + Vec2(a, a), mid + Vec2(-a, a)};
}

ConditionRow condition_numbers(const Curve& curve, const Quad& element, int m) {
  const BasisTables tables = make_basis_tables(m);
  const FrenetElementInfo info = interface_elem_info(element, curve, nearest_xi(curve, element));
  const LineSystem line = line_system(curve, info, tables);
  ConditionRow row;
  if (m >= 2) {
    const SpecialSystem sys = special_system(line, tables);
    row.cond_a = condition_number(sys.A);
    row.cond_p1a = condition_number(precondition(sys.A, Preconditioner::Jacobi));
    row.cond_p2a = condition_number(precondition(sys.A, Preconditioner::RowNorm));
  } else {
    row.cond_a = row.cond_p1a = row.cond_p2a = kNaN;
  }
  const Eigen::MatrixXd At = assemble_atilde(line, tables);
  row.cond_at = condition_number(At);
  row.cond_p1at = condition_number(precondition(At, Preconditioner::Jacobi));
  row.cond_p2at = condition_number(precondition(At, Preconditioner::RowNorm));
  return row;
}

CondAReport run_cond_a(const ExperimentConfig& config, int max_degree, int levels) {
  validate(config);
  const Curve curve = make_curve(config, 1.0);
  const double radius = config.radius.value_or(1.0);
  const std::vector<std::string> cols{"cond_A", "cond_P1A", "cond_P2A", "cond_At", "cond_P1At", "cond_P2At"};
  auto pack = [](double key, const ConditionRow& r) {
    return std::vector<double>{key, r.cond_a, r.cond_p1a, r.cond_p2a, r.cond_at, r.cond_p1at, r.cond_p2at};
  };

  CondAReport rep;
  rep.by_degree.header = {"m"};
  rep.by_degree.header.insert(rep.by_degree.header.end(), cols.begin(), cols.end());
  rep.by_degree.path = join_path(config.out_dir, "cond_a_degree.csv");
  const Quad half = diagonal_element(config.center, radius, 0.5);
  for (int m = 1; m <= max_degree; ++m) rep.by_degree.rows.push_back(pack(m, condition_numbers(curve, half, m)));

  rep.by_size.header = {"h"};
  rep.by_size.header.insert(rep.by_size.header.end(), cols.begin(), cols.end());
  rep.by_size.path = join_path(config.out_dir, "cond_a_size.csv");
  for (int l = 1; l <= levels; ++l) {
    const double h = std::ldexp(1.0, -l);
    rep.by_size.rows.push_back(pack(h, condition_numbers(curve, diagonal_element(config.center, radius, h), 4)));
  }
  return rep;
}

CsvReport run_cond_mass(const ExperimentConfig& config, int max_degree) {
  validate(config);
  const Curve curve = make_curve(config, 1.0);
  const double radius = config.radius.value_or(1.0);
  const Betas betas = config.betas.value_or(Betas{1.0, 1000.0});
  const Quad element = diagonal_element(config.center, radius, 0.25);
  const double guess = nearest_xi(curve, element);

  CsvReport rep;
  rep.header = {"m", "cond_M0", "cond_M1", "cond_M2"};
  rep.path = join_path(config.out_dir, "cond_mass.csv");
  for (int m = 1; m <= max_degree; ++m) {
    const BasisTables tables = make_basis_tables(m);
    LocalSpaceOptions lopts;
    lopts.degree = m;
    lopts.betas = betas;
    lopts.n_qp = config.n_qp;
    lopts.preconditioner = config.preconditioner;
    lopts.initial = config.initial;
    lopts.reconstruction = Reconstruction::None;
    const LocalSpace ls = build_local_space(element, curve, guess, -1, tables, lopts);
    const double c0 = condition_number(mass_matrix(ls.initial, ls.vandermonde, ls.quadrature));
    const BasisCoefficients b1 = reconstruct(ls.initial, ls.quadrature, ls.vandermonde, Reconstruction::MassSVD);
    const BasisCoefficients b2 = reconstruct(ls.initial, ls.quadrature, ls.vandermonde, Reconstruction::VandermondeSVD);
    const double c1 = condition_number(mass_matrix(b1, ls.vandermonde, ls.quadrature));
    const double c2 = condition_number(mass_matrix(b2, ls.vandermonde, ls.quadrature));
    rep.rows.push_back({double(m), c0, c1, c2});
  }
  return rep;
}

InspectReport inspect_element(const ExperimentConfig& config) {
  validate(config);
  const double r0 = 1.0 / std::sqrt(3.0);
  const Curve curve = make_curve(config, r0);
  const Betas betas = config.betas.value_or(Betas{1000.0, 1.0});
  const int n = config.mesh_sizes.front();
  const CartesianMesh mesh = build_mesh({-1.0, 1.0}, {-1.0, 1.0}, n, n);
  const int e = config.element;
  if (e < 0 || e >= mesh.element_count()) {
    throw Error(ErrorKind::NotInterfaceElement, "element index out of range", e);
  }
  const Quad corners = mesh.element_corners(e);
  if (classify_cell(corners, curve) != ElementLabel::Interface) {
    throw Error(ErrorKind::NotInterfaceElement, "element " + std::to_string(e) + " is not an interface element", e);
  }
  const std::vector<int> one{e};
  const double guess = xi_init_guess(mesh, one, curve, default_guess_samples(mesh.diameter())).front();

  std::ostringstream os;
  os << std::setprecision(17);
  InspectReport rep;
  rep.csv.header = {"m", "max_res_initial", "max_res_reconstructed", "cond_M_initial", "cond_M_reconstructed",
                    "n_minus", "n_plus"};
  rep.csv.path = join_path(config.out_dir, "inspect_" + std::to_string(e) + ".csv");

  bool first = true;
  std::mt19937_64 rng(config.seed);
  for (int m : config.degrees) {
    const BasisTables tables = make_basis_tables(m);
    LocalSpaceOptions lopts;
    lopts.degree = m;
    lopts.betas = betas;
    lopts.n_qp = config.n_qp;
    lopts.preconditioner = config.preconditioner;
    lopts.reconstruction = config.reconstruction;
    lopts.initial = config.initial;
    const LocalSpace ls = build_local_space(corners, curve, guess, e, tables, lopts);
    if (first) {
      const FrenetElementInfo& info = ls.info;
      os << "element " << e << " (N=" << n << ")\n";
      for (int k = 0; k < 4; ++k) {
        os << "  corner " << k << ": (" << corners[k].x() << ", " << corners[k].y() << ")  eta=" << info.vertices[k].eta
           << " xi=" << info.vertices[k].xi << '\n';
      }
      os << "  eta_h=" << info.eta_h << " xi0=" << info.xi0 << " xi1=" << info.xi1 << " xi_mid=" << info.xi_mid
         << " xi_h=" << info.xi_h << '\n';
      os << "  cut " << (ls.topology.kind == CutKind::TypeI ? "type I" : "type II") << ": edges "
         << ls.topology.crossings[0].edge << ", " << ls.topology.crossings[1].edge << '\n';
      for (const EdgeCrossing& c : ls.topology.crossings) {
        os << "    crossing edge " << c.edge << " at (" << c.point.x() << ", " << c.point.y() << ") xi=" << c.xi
           << '\n';
      }
      first = false;
    }
    const Eigen::MatrixXd F = jump_functionals(curve, ls.info, tables);
    const JumpResidual r0i = jump_residual(ls.initial, F, betas);
    const JumpResidual r1 = jump_residual(ls.coeffs, F, betas);
    const double c0 = condition_number(mass_matrix(ls.initial, ls.vandermonde, ls.quadrature));
    const double c1 = condition_number(mass_matrix(ls.coeffs, ls.vandermonde, ls.quadrature));

    // Value jump of each basis function across the curve at seeded random parameters.
    std::uniform_real_distribution<double> pick(ls.info.xi0, ls.info.xi1);
    double value_jump = 0.0;
    for (int s = 0; s < 4; ++s) {
      const double xi = pick(rng);
      const FrenetApparatus f = frenet_apparatus(curve, xi);
      const double d = 1e-9 * mesh.diameter();
      const Vec2 on = curve.point(xi);
      for (int j = 0; j < ls.coeffs.minus.cols(); ++j) {
        const double vm = basis_eval(ls.coeffs, j, on - d * f.normal, curve, ls.info).value;
        const double vp = basis_eval(ls.coeffs, j, on + d * f.normal, curve, ls.info).value;
        value_jump = std::max(value_jump, std::abs(vp - vm));
      }
    }

    os << "m=" << m << ": nodes minus=" << ls.quadrature.minus.size() << " plus=" << ls.quadrature.plus.size()
       << " (mass " << ls.quadrature.minus.mass() << " + " << ls.quadrature.plus.mass() << ")\n"
       << "  jump residual initial: continuity=" << r0i.continuity.maxCoeff() << " flux=" << r0i.flux.maxCoeff()
       << " extended=" << (r0i.extended.size() ? r0i.extended.maxCoeff() : 0.0) << '\n'
       << "  jump residual reconstructed: continuity=" << r1.continuity.maxCoeff() << " flux=" << r1.flux.maxCoeff()
       << " extended=" << (r1.extended.size() ? r1.extended.maxCoeff() : 0.0) << '\n'
       << "  cond(M) initial=" << c0 << " reconstructed=" << c1 << '\n'
       << "  max value jump near the curve=" << value_jump << '\n';
    rep.csv.rows.push_back({double(m), r0i.max(), r1.max(), c0, c1, double(ls.quadrature.minus.size()),
                            double(ls.quadrature.plus.size())});
  }
  rep.text = os.str();
  return rep;
}

}  // namespace gcife
