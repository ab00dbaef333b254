#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gcife/assembly.hpp"
#include "gcife/curve.hpp"
#include "gcife/ifebasis.hpp"
#include "gcife/local_space.hpp"

namespace gcife {

enum class CurveKind { Circle, Ellipse };

struct ExperimentConfig {
  CurveKind curve = CurveKind::Circle;
  std::optional<double> radius;  // project: 1/sqrt(3); conditioning studies: 1
  Vec2 center = Vec2::Zero();
  double ellipse_a = 1.0;
  double ellipse_b = 0.6;
  std::optional<Betas> betas;  // project: (1000, 1); cond-mass: (1, 1000)
  std::vector<int> degrees{1, 2, 3, 4};
  std::vector<int> mesh_sizes{16, 32, 64};
  int n_qp = 0;
  int regular_n_qp = 0;
  Preconditioner preconditioner = Preconditioner::RowNorm;
  Reconstruction reconstruction = Reconstruction::VandermondeSVD;
  InitialBasis initial = InitialBasis::Extension;
  std::string out_dir = ".";
  int jobs = 1;
  std::uint64_t seed = 1;
  int element = -1;
};

/// Throws InvalidArgument when a field violates its range.
void validate(const ExperimentConfig& config);

Curve make_curve(const ExperimentConfig& config, double default_radius);

struct CsvReport {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  std::string path;

  /// 17 significant digits; NaN cells are written as "nan".
  std::string str() const;
  void write() const;
};

/// Columns m, N, error, rate.
CsvReport run_project(const ExperimentConfig& config);

/// Same gnuplot script for every run of a given CSV file.
std::string project_plot_script(const CsvReport& report);

/// The diagonal test element (c + r/sqrt2 (1,1)) + (h / (2 sqrt2)) [-1,1]^2,
/// which for the unit circle at the origin is (1/sqrt2)(1 + (h/2)[-1,1]^2).
Quad diagonal_element(const Vec2& center, double radius, double h);

struct ConditionRow {
  double cond_a = 0.0, cond_p1a = 0.0, cond_p2a = 0.0;
  double cond_at = 0.0, cond_p1at = 0.0, cond_p2at = 0.0;
};

ConditionRow condition_numbers(const Curve& curve, const Quad& element, int m);

struct CondAReport {
  CsvReport by_degree;  // m, cond(A), cond(P1 A), cond(P2 A), cond(At), cond(P1 At), cond(P2 At) at h = 1/2
  CsvReport by_size;    // h, ... at m = 4
};

CondAReport run_cond_a(const ExperimentConfig& config, int max_degree = 8, int levels = 8);

/// Columns m, cond(M0), cond(M1), cond(M2) on the diagonal element with h = 1/4.
CsvReport run_cond_mass(const ExperimentConfig& config, int max_degree = 10);

struct InspectReport {
  std::string text;
  CsvReport csv;
};

/// Throws NotInterfaceElement when config.element is not cut by the curve.
InspectReport inspect_element(const ExperimentConfig& config);

}  // namespace gcife
