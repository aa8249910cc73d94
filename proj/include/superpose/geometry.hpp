#pragma once

#include <span>
#include <string>
#include <vector>

#include "superpose/core.hpp"

namespace superpose {

struct ClauseCheck {
  std::string name;
  std::string relation;  // "<", ">", ">=", "<="
  double value = 0.0;
  double bound = 0.0;
  bool pass = false;
};

enum class GeometryMode { Construction, NormBounded };

struct GeometryReport {
  GeometryMode mode = GeometryMode::Construction;
  // |cos(a_i, b_i)| extremes and signed extremes.
  double max_self_cosine = 0.0;
  double min_self_cosine = 0.0;
  double min_rep_pair_cosine = 0.0;
  double max_rep_pair_cosine = 0.0;
  double min_probe_pair_cosine = 0.0;
  double max_probe_pair_cosine = 0.0;
  // delta/tol for Construction, epsilon/gamma for NormBounded.
  double param_1 = 0.0;
  double param_2 = 0.0;
  std::vector<ClauseCheck> clauses;

  bool all_pass() const;
};

// <u, v> / (|u| |v|) clamped to [-1, 1].
double cosine(std::span<const double> u, std::span<const double> v);

// Checks, with o(1) slack `tol`:
//   (i)   max_i |cos(a_i, b_i)|        < delta + tol
//   (ii)  min_{i!=j} cos(a_i, a_j)     > 1 - delta - tol
//   (iii) min_{i!=j} cos(b_i, b_j)     > 1 - delta - tol
GeometryReport verify_construction_geometry(const Matrix& a, const Matrix& b, double delta, double tol);

// Requires |a_i|, |b_i| <= gamma. Checks
//   (i)        min_i cos(a_i, b_i)      >= (1 - eps) / gamma^2
//   (ii),(iii) max_{i!=j} cos(., .)     <= eps gamma^2 / (1 - eps) + sqrt(1 - (1 - eps)^2 / gamma^4)
GeometryReport verify_norm_bounded_geometry(const Matrix& a, const Matrix& b, double epsilon, double gamma);

double norm_bounded_self_bound(double epsilon, double gamma);
double norm_bounded_pair_bound(double epsilon, double gamma);

}  // namespace superpose
