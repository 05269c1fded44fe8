#pragma once

#include <string>
#include <vector>

#include "specgap/core_model.hpp"
#include "specgap/intervals.hpp"
#include "specgap/truncation_analysis.hpp"

namespace specgap {

// Eigenvalues of A(x)_n over a parameter grid. Per fixed (x, k, direction)
// the values are monotone in n (interlacing); per fixed (n, k) neighbouring
// grid points differ by at most the family Lipschitz bound times the step
// (equicontinuity). Violations are collected, not silently dropped.
struct SweepTable {
  std::vector<double> x_grid;
  std::vector<int> n_list;
  int k_max = 0;
  std::vector<TrajectorySet> per_x;                    // index into x_grid
  std::vector<std::vector<std::vector<double>>> svals;  // [xi][ni][k-1], optional
  std::vector<std::string> violations;
  double lipschitz_bound = 0.0;
};

SweepTable sweep(const FamilySpec& family, const std::vector<double>& x_grid,
                 const std::vector<int>& n_list, int k_max, bool with_svals = false);

struct BoundFunctions {
  std::vector<double> x_grid;
  std::vector<double> mu_hat, nu_hat, mu_residual, nu_residual;
  std::vector<std::string> continuity_diagnostics;  // per-pair violations, empty when clean
};

BoundFunctions essential_bound_functions(const SweepTable& table, const FamilySpec& family);

// Certified lower bound on the stability radius of a gap (a, b) of A(0):
// shrink by eps, bound the resolvent on the shrunk interval by M = 1/dist,
// and divide the perturbation budget min(1/M, eps) by the family Lipschitz
// bound. delta = infinity for constant families is reported as unbounded.
struct StabilityReport {
  Interval gap;
  double epsilon = 0.0;
  double resolvent_bound = 0.0;  // M
  double budget = 0.0;           // min(1/M, eps)
  double lipschitz = 0.0;        // L
  bool unbounded = false;
  double delta = 0.0;
  Interval persisted;  // (a + eps, b - eps)
};

struct StabilityOptions {
  int grid_size = 2048;
  int gap_check_n = 400;  // truncation order for the discrete-value check
};

StabilityReport gap_stability_radius(const FamilySpec& family, Interval gap, double eps,
                                     const StabilityOptions& opts = {});

void write_sweep_csv(std::ostream& os, const SweepTable& table);

}  // namespace specgap
