#include "gcife/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gcife/errors.hpp"
#include "gcife/experiments.hpp"

namespace gcife {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    parts.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
  }
  return parts;
}

std::vector<int> parse_int_list(const std::string& s, const char* what) {
  std::vector<int> out;
  for (const std::string& p : split_commas(s)) {
    if (p.empty()) throw UsageError(std::string("empty entry in ") + what);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(p, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != p.size()) throw UsageError(std::string("bad integer '") + p + "' in " + what);
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string(what) + " must not be empty");
  return out;
}

std::pair<double, double> parse_pair(const std::string& s, const char* what) {
  const std::vector<std::string> p = split_commas(s);
  if (p.size() != 2) throw UsageError(std::string(what) + " expects two comma-separated numbers");
  try {
    return {std::stod(p[0]), std::stod(p[1])};
  } catch (const std::exception&) {
    throw UsageError(std::string("bad number in ") + what);
  }
}

void write_text(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot open " + path + " for writing");
  out << text;
}

std::string replace_ext(const std::string& path, const std::string& ext) {
  return std::filesystem::path(path).replace_extension(ext).string();
}

std::string cond_plot_script(const std::string& csv, bool log_x) {
  std::ostringstream os;
  const std::string file = std::filesystem::path(csv).filename().string();
  os << "set datafile separator ','\n"
     << "set logscale y\n"
     << (log_x ? "set logscale x\n" : "")
     << "set key outside\n"
     << "plot for [c=2:7] '" << file << "' using 1:c skip 1 with linespoints title columnheader(c)\n";
  return os.str();
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Geometry-conforming immersed finite element basis construction and projection studies"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "flat key=value file; command-line flags override it");

  std::string curve = "circle", center = "0,0", axes = "1,0.6", degrees, sizes = "16,32,64";
  std::string precond = "rownorm", recon = "vandermonde", initial = "extension", out_dir = ".";
  double radius = 0.0, beta_minus = 0.0, beta_plus = 0.0;
  int nqp = 0, regular_nqp = 0, jobs = 1, element = -1;
  std::uint64_t seed = 1;

  app.add_option("--curve", curve, "circle or ellipse")->check(CLI::IsMember({"circle", "ellipse"}));
  app.add_option("--radius", radius, "circle radius");
  app.add_option("--center", center, "curve center X,Y");
  app.add_option("--axes", axes, "ellipse semi-axes A,B");
  app.add_option("--beta-minus", beta_minus, "diffusion coefficient inside");
  app.add_option("--beta-plus", beta_plus, "diffusion coefficient outside");
  app.add_option("--degrees", degrees, "comma-separated polynomial degrees");
  app.add_option("--mesh-sizes", sizes, "comma-separated N for N x N meshes");
  app.add_option("--nqp", nqp, "cut-cell quadrature points per direction (default m+1)");
  app.add_option("--regular-nqp", regular_nqp, "Gauss points per direction on uncut elements");
  app.add_option("--precond", precond, "jacobi or rownorm")->check(CLI::IsMember({"jacobi", "rownorm"}));
  app.add_option("--reconstruct", recon, "none, mass or vandermonde")
      ->check(CLI::IsMember({"none", "mass", "vandermonde"}));
  app.add_option("--initial", initial, "extension or special")->check(CLI::IsMember({"extension", "special"}));
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--jobs", jobs, "worker threads for the element loop");
  app.add_option("--seed", seed, "seed for randomized checks");

  CLI::App* project = app.add_subcommand("project", "L2 projection convergence study");
  CLI::App* cond_a = app.add_subcommand("cond-a", "conditioning of the jump-condition matrices");
  CLI::App* cond_mass = app.add_subcommand("cond-mass", "mass-matrix conditioning before and after reconstruction");
  CLI::App* inspect = app.add_subcommand("inspect", "dump one interface element");
  inspect->add_option("--element", element, "element index on the first mesh size")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  ExperimentConfig cfg;
  try {
    cfg.curve = curve == "ellipse" ? CurveKind::Ellipse : CurveKind::Circle;
    if (app.count("--radius")) cfg.radius = radius;
    const auto c = parse_pair(center, "--center");
    cfg.center = Vec2(c.first, c.second);
    const auto ab = parse_pair(axes, "--axes");
    cfg.ellipse_a = ab.first;
    cfg.ellipse_b = ab.second;
    if (app.count("--beta-minus") || app.count("--beta-plus")) {
      Betas b = cond_mass->parsed() ? Betas{1.0, 1000.0} : Betas{1000.0, 1.0};
      if (app.count("--beta-minus")) b.minus = beta_minus;
      if (app.count("--beta-plus")) b.plus = beta_plus;
      cfg.betas = b;
    }
    if (app.count("--degrees")) cfg.degrees = parse_int_list(degrees, "--degrees");
    cfg.mesh_sizes = parse_int_list(sizes, "--mesh-sizes");
    cfg.n_qp = nqp;
    cfg.regular_n_qp = regular_nqp;
    cfg.preconditioner = precond == "jacobi" ? Preconditioner::Jacobi : Preconditioner::RowNorm;
    cfg.reconstruction = recon == "none"   ? Reconstruction::None
                         : recon == "mass" ? Reconstruction::MassSVD
                                           : Reconstruction::VandermondeSVD;
    cfg.initial = initial == "special" ? InitialBasis::Special : InitialBasis::Extension;
    cfg.out_dir = out_dir;
    cfg.jobs = jobs;
    cfg.seed = seed;
    cfg.element = element;
    validate(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (project->parsed()) {
      const CsvReport rep = run_project(cfg);
      rep.write();
      write_text(replace_ext(rep.path, ".gp"), project_plot_script(rep));
      std::cout << rep.str();
    } else if (cond_a->parsed()) {
      const int max_m = app.count("--degrees") ? *std::max_element(cfg.degrees.begin(), cfg.degrees.end()) : 8;
      const CondAReport rep = run_cond_a(cfg, max_m);
      rep.by_degree.write();
      rep.by_size.write();
      write_text(replace_ext(rep.by_degree.path, ".gp"), cond_plot_script(rep.by_degree.path, false));
      write_text(replace_ext(rep.by_size.path, ".gp"), cond_plot_script(rep.by_size.path, true));
      std::cout << rep.by_degree.str() << '\n' << rep.by_size.str();
    } else if (cond_mass->parsed()) {
      const int max_m = app.count("--degrees") ? *std::max_element(cfg.degrees.begin(), cfg.degrees.end()) : 10;
      const CsvReport rep = run_cond_mass(cfg, max_m);
      rep.write();
      std::cout << rep.str();
    } else if (inspect->parsed()) {
      const InspectReport rep = inspect_element(cfg);
      rep.csv.write();
      write_text(replace_ext(rep.csv.path, ".txt"), rep.text);
      std::cout << rep.text;
    }
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    if (e.kind() == ErrorKind::NotInterfaceElement) return 3;
    if (e.kind() == ErrorKind::InvalidArgument) return 2;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace gcife
