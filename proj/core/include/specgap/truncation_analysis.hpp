#pragma once

#include <complex>
#include <ostream>
#include <utility>
#include <vector>

#include "specgap/core_model.hpp"

namespace specgap {

enum class Direction { top, bottom };
const char* direction_name(Direction d);

// lambda_k(A_n) over growing n for a fixed rank k. Interlacing makes top
// trajectories nondecreasing in n and bottom ones nonincreasing.
struct EigenTrajectory {
  int k = 0;
  Direction direction = Direction::top;
  std::vector<std::pair<int, double>> samples;  // (n, lambda), n strictly increasing

  double limit() const { return samples.back().second; }
  double residual() const {
    return samples.size() < 2 ? 0.0
                              : std::abs(samples.back().second - samples[samples.size() - 2].second);
  }
};

struct TrajectorySet {
  std::vector<int> n_list;
  int k_max = 0;
  double scale = 1.0;                           // tolerance scale from the Gershgorin enclosure
  std::vector<EigenTrajectory> top, bottom;     // index k-1
  std::vector<double> spectrum_at_n_max;        // nonincreasing
};

TrajectorySet eigenvalue_trajectories(const OperatorSpec& spec, const std::vector<int>& n_list,
                                      int k_max);

// Essential-bound and discrete-spectrum estimates from the double limit
// lim_k lim_n: fix k and converge in n (stall tolerance), then cluster the
// per-k limits (cluster tolerance); leading stalled trajectories separated
// from the cluster are discrete eigenvalues.
struct SpectralEstimate {
  double mu_hat = 0.0, nu_hat = 0.0;
  double mu_residual = 0.0, nu_residual = 0.0;
  std::vector<std::pair<double, double>> discrete_above, discrete_below;  // (value, residual)
  std::vector<double> lambda_set_sample;  // estimate of the eigenvalue limit set, ascending
  double stall_tol = 0.0, cluster_tol = 0.0;
};

SpectralEstimate estimate_bounds(const TrajectorySet& trajs);
SpectralEstimate estimate_bounds(const TrajectorySet& trajs, double stall_tol, double cluster_tol);

int count_in_window(const OperatorSpec& spec, int n, double lo, double hi);

enum class PointVerdict { essential, transient, undetermined };
const char* point_verdict_name(PointVerdict v);

struct PointClass {
  PointVerdict verdict = PointVerdict::undetermined;
  double lambda0 = 0.0, delta = 0.0;
  std::vector<std::pair<int, int>> counts;  // (n, N_n)
  int cap = 0;                              // K
  double growth_factor = 0.0;
};

// Empirical classification of lambda0: essential when the window counts keep
// growing by >= growth_factor per tested step, transient when they stay <= K.
PointClass classify_point(const OperatorSpec& spec, double lambda0, double delta,
                          const std::vector<int>& n_list, int cap = 8, double growth_factor = 1.8);

// Discrete eigenvalues inside a certified gap (a, b) of the essential
// spectrum, recovered from the essential lower bound of (A - lambda0)^2 with
// lambda0 the gap midpoint. Candidate signs are resolved by the residual of
// (A_n - beta) on the reconstructed eigenvector.
std::vector<double> in_gap_eigenvalues(const OperatorSpec& spec, double a, double b, int n);

struct TailEstimate {
  double value = 0.0;
  double residual = 0.0;
  std::vector<std::pair<int, double>> samples;  // (k, s_k(A_{n_max}))
};

// Essential-norm estimate: tail of the singular values s_k(A_{n_max}) over
// k_list with stall detection.
TailEstimate essential_norm_estimate(const OperatorSpec& spec, const std::vector<int>& n_list,
                                     const std::vector<int>& k_list);

// 1/dist(z, sigma(A_n)) per n; equals the resolvent norm of the truncation.
std::vector<std::pair<int, double>> resolvent_convergence_check(const OperatorSpec& spec,
                                                                std::complex<double> z,
                                                                const std::vector<int>& n_list);

// CSV: n,k,direction,lambda,residual ordered by (n, direction, k).
void write_trajectories_csv(std::ostream& os, const TrajectorySet& trajs);

}  // namespace specgap
