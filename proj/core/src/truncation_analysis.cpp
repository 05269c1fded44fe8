#include "specgap/truncation_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "specgap/eigensolver.hpp"
#include "specgap/errors.hpp"
#include "specgap/output.hpp"
#include "specgap/parallel.hpp"

namespace specgap {

namespace {

constexpr double kStallFactor = 1e-6;
constexpr double kClusterFactor = 1e-4;
constexpr double kMonotoneSlack = 1e-8;

void require_increasing(const std::vector<int>& n_list) {
  if (n_list.empty()) throw std::invalid_argument("empty n list");
  for (size_t i = 0; i + 1 < n_list.size(); ++i)
    if (n_list[i] >= n_list[i + 1]) throw std::invalid_argument("n list must be strictly increasing");
  if (n_list.front() < 1) throw std::invalid_argument("n must be >= 1");
}

std::vector<std::vector<double>> spectra_over(const OperatorSpec& spec, const std::vector<int>& n_list) {
  std::vector<std::vector<double>> spectra(n_list.size());
  parallel_for_index(n_list.size(), [&](size_t i) {
    spectra[i] = eigenvalues(truncate(spec, n_list[i]));
  });
  return spectra;
}

}  // namespace

const char* direction_name(Direction d) { return d == Direction::top ? "top" : "bottom"; }

const char* point_verdict_name(PointVerdict v) {
  switch (v) {
    case PointVerdict::essential: return "essential";
    case PointVerdict::transient: return "transient";
    case PointVerdict::undetermined: return "undetermined";
  }
  return "unknown";
}

TrajectorySet eigenvalue_trajectories(const OperatorSpec& spec, const std::vector<int>& n_list,
                                      int k_max) {
  require_increasing(n_list);
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  if (n_list.back() < k_max) throw std::invalid_argument("max(n_list) must be >= k_max");

  TrajectorySet out;
  out.n_list = n_list;
  out.k_max = k_max;
  out.scale = operator_scale(spec);

  std::vector<std::vector<double>> spectra = spectra_over(spec, n_list);
  out.spectrum_at_n_max = spectra.back();

  out.top.resize(static_cast<size_t>(k_max));
  out.bottom.resize(static_cast<size_t>(k_max));
  for (int k = 1; k <= k_max; ++k) {
    EigenTrajectory& t = out.top[static_cast<size_t>(k - 1)];
    EigenTrajectory& b = out.bottom[static_cast<size_t>(k - 1)];
    t.k = b.k = k;
    t.direction = Direction::top;
    b.direction = Direction::bottom;
    for (size_t i = 0; i < n_list.size(); ++i) {
      int n = n_list[i];
      if (n < k) continue;
      const auto& ev = spectra[i];
      t.samples.emplace_back(n, ev[static_cast<size_t>(k - 1)]);
      b.samples.emplace_back(n, ev[ev.size() - static_cast<size_t>(k)]);
    }
  }

  // Interlacing is a theorem for nested sections; a violation beyond solver
  // noise indicates a defect, not data.
  double slack = kMonotoneSlack * out.scale;
  for (const auto& t : out.top)
    for (size_t i = 0; i + 1 < t.samples.size(); ++i)
      if (t.samples[i + 1].second < t.samples[i].second - slack)
        throw numeric_error("top trajectory k=" + std::to_string(t.k) + " not nondecreasing at n=" +
                            std::to_string(t.samples[i + 1].first));
  for (const auto& b : out.bottom)
    for (size_t i = 0; i + 1 < b.samples.size(); ++i)
      if (b.samples[i + 1].second > b.samples[i].second + slack)
        throw numeric_error("bottom trajectory k=" + std::to_string(b.k) + " not nonincreasing at n=" +
                            std::to_string(b.samples[i + 1].first));
  return out;
}

SpectralEstimate estimate_bounds(const TrajectorySet& trajs) {
  return estimate_bounds(trajs, kStallFactor * trajs.scale, kClusterFactor * trajs.scale);
}

SpectralEstimate estimate_bounds(const TrajectorySet& trajs, double stall_tol, double cluster_tol) {
  if (trajs.n_list.size() < 2) throw numeric_error("estimate_bounds needs at least two n samples");
  if (trajs.top.empty()) throw numeric_error("estimate_bounds needs at least one trajectory");

  SpectralEstimate est;
  est.stall_tol = stall_tol;
  est.cluster_tol = cluster_tol;
  int k_max = trajs.k_max;

  // Top side: the cluster starts at the smallest k whose limit stays within
  // cluster_tol of the deepest tested trajectory. The cluster value is the
  // bound estimate; every leading trajectory before it is a discrete value
  // (its residual says how converged it is; discrete limits stall fast while
  // band-edge trajectories crawl, which is why the two tolerances differ).
  {
    double tail = trajs.top[static_cast<size_t>(k_max - 1)].limit();
    int k_star = k_max;
    for (int k = 1; k <= k_max; ++k) {
      if (trajs.top[static_cast<size_t>(k - 1)].limit() - tail <= cluster_tol) {
        k_star = k;
        break;
      }
    }
    est.mu_hat = trajs.top[static_cast<size_t>(k_star - 1)].limit();
    est.mu_residual = 0.0;
    for (int k = k_star; k <= k_max; ++k)
      est.mu_residual = std::max(est.mu_residual, trajs.top[static_cast<size_t>(k - 1)].residual());
    for (int k = 1; k < k_star; ++k) {
      const EigenTrajectory& t = trajs.top[static_cast<size_t>(k - 1)];
      est.discrete_above.emplace_back(t.limit(), t.residual());
    }
  }
  {
    double tail = trajs.bottom[static_cast<size_t>(k_max - 1)].limit();
    int k_star = k_max;
    for (int k = 1; k <= k_max; ++k) {
      if (tail - trajs.bottom[static_cast<size_t>(k - 1)].limit() <= cluster_tol) {
        k_star = k;
        break;
      }
    }
    est.nu_hat = trajs.bottom[static_cast<size_t>(k_star - 1)].limit();
    est.nu_residual = 0.0;
    for (int k = k_star; k <= k_max; ++k)
      est.nu_residual = std::max(est.nu_residual, trajs.bottom[static_cast<size_t>(k - 1)].residual());
    for (int k = 1; k < k_star; ++k) {
      const EigenTrajectory& b = trajs.bottom[static_cast<size_t>(k - 1)];
      est.discrete_below.emplace_back(b.limit(), b.residual());
    }
  }

  est.lambda_set_sample = trajs.spectrum_at_n_max;
  std::sort(est.lambda_set_sample.begin(), est.lambda_set_sample.end());
  return est;
}

int count_in_window(const OperatorSpec& spec, int n, double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("window requires lo < hi");
  std::vector<double> ev = eigenvalues(truncate(spec, n));
  int c = 0;
  for (double v : ev)
    if (lo < v && v < hi) ++c;
  return c;
}

PointClass classify_point(const OperatorSpec& spec, double lambda0, double delta,
                          const std::vector<int>& n_list, int cap, double growth_factor) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  require_increasing(n_list);
  if (n_list.size() < 3 || n_list.back() < 4 * n_list.front())
    throw std::invalid_argument("classification needs >= 3 sizes spanning a factor of 4");

  PointClass pc;
  pc.lambda0 = lambda0;
  pc.delta = delta;
  pc.cap = cap;
  pc.growth_factor = growth_factor;
  std::vector<std::vector<double>> spectra = spectra_over(spec, n_list);
  for (size_t i = 0; i < n_list.size(); ++i) {
    int c = 0;
    for (double v : spectra[i])
      if (lambda0 - delta < v && v < lambda0 + delta) ++c;
    pc.counts.emplace_back(n_list[i], c);
  }

  bool growing = true;
  int max_count = 0;
  for (size_t i = 0; i < pc.counts.size(); ++i) {
    max_count = std::max(max_count, pc.counts[i].second);
    if (i + 1 < pc.counts.size()) {
      int a = pc.counts[i].second, b = pc.counts[i + 1].second;
      if (!(b > a && static_cast<double>(b) >= growth_factor * static_cast<double>(a))) growing = false;
    }
  }
  bool bounded = max_count <= cap;
  if (growing && !bounded)
    pc.verdict = PointVerdict::essential;
  else if (bounded && !growing)
    pc.verdict = PointVerdict::transient;
  else
    pc.verdict = PointVerdict::undetermined;  // contradictory or weak evidence
  return pc;
}

std::vector<double> in_gap_eigenvalues(const OperatorSpec& spec, double a, double b, int n) {
  if (!(a < b)) throw std::invalid_argument("gap requires a < b");
  if (n < 16) throw std::invalid_argument("in_gap_eigenvalues needs a usable truncation order");
  double lambda0 = 0.5 * (a + b);
  double half_width = 0.5 * (b - a);

  ExplicitBand squared = squared_shift_spec(spec, lambda0);
  OperatorSpec squared_spec = squared;

  std::vector<int> n_list;
  for (int d = 8; d >= 1; d /= 2) n_list.push_back(std::max(2, n / d));
  n_list.erase(std::unique(n_list.begin(), n_list.end()), n_list.end());

  int k_max = std::min(8, n_list.front());
  TrajectorySet trajs = eigenvalue_trajectories(squared_spec, n_list, k_max);
  SpectralEstimate est = estimate_bounds(trajs);

  // If (a, b) really avoids the essential spectrum, the essential lower bound
  // of the squared operator is at least half_width^2 (estimates approach it
  // from above).
  if (est.nu_hat < 0.98 * half_width * half_width)
    throw std::invalid_argument("interval is not a gap of the estimated essential spectrum");

  HermitianMatrix An = truncate(spec, n);
  HermitianMatrix Sq = truncate(squared_spec, n);
  double scale = operator_scale(spec);

  std::vector<double> found;
  for (const auto& [gamma_raw, residual] : est.discrete_below) {
    (void)residual;
    double gamma = std::max(0.0, gamma_raw);
    if (gamma >= est.nu_hat) continue;
    std::vector<cplx> v = band_eigenvector(Sq, gamma);
    double root = std::sqrt(gamma);
    for (double sign : {+1.0, -1.0}) {
      double beta = lambda0 + sign * root;
      if (!(a < beta && beta < b)) continue;
      // residual ||(A_n - beta) v|| over the band
      int w = std::max(1, An.bandwidth());
      double rnorm = 0.0;
      for (int i = 0; i < n; ++i) {
        cplx acc = -beta * v[static_cast<size_t>(i)];
        for (int j = std::max(0, i - w); j <= std::min(n - 1, i + w); ++j)
          acc += An.at(i, j) * v[static_cast<size_t>(j)];
        rnorm += std::norm(acc);
      }
      rnorm = std::sqrt(rnorm);
      if (rnorm <= 1e-5 * scale) found.push_back(beta);
      if (root == 0.0) break;  // both signs coincide at the midpoint
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end(),
                          [&](double x, double y) { return std::abs(x - y) < 1e-9 * scale; }),
              found.end());
  return found;
}

TailEstimate essential_norm_estimate(const OperatorSpec& spec, const std::vector<int>& n_list,
                                     const std::vector<int>& k_list) {
  require_increasing(n_list);
  if (k_list.empty()) throw std::invalid_argument("empty k list");
  for (size_t i = 0; i + 1 < k_list.size(); ++i)
    if (k_list[i] >= k_list[i + 1]) throw std::invalid_argument("k list must be strictly increasing");
  int n_max = n_list.back();
  if (k_list.back() > n_max) throw std::invalid_argument("max(k_list) must be <= max(n_list)");

  std::vector<double> s = singular_values(truncate(spec, n_max));
  TailEstimate te;
  for (int k : k_list) te.samples.emplace_back(k, s[static_cast<size_t>(k - 1)]);
  te.value = te.samples.back().second;
  te.residual = te.samples.size() < 2
                    ? 0.0
                    : std::abs(te.samples.back().second - te.samples[te.samples.size() - 2].second);
  // Stall detection: report the first tail value after the samples settle.
  double stall = kStallFactor * operator_scale(spec);
  for (size_t i = 0; i + 1 < te.samples.size(); ++i) {
    if (std::abs(te.samples[i + 1].second - te.samples[i].second) < stall) {
      te.value = te.samples[i + 1].second;
      te.residual = std::abs(te.samples[i + 1].second - te.samples[i].second);
      break;
    }
  }
  return te;
}

std::vector<std::pair<int, double>> resolvent_convergence_check(const OperatorSpec& spec,
                                                                std::complex<double> z,
                                                                const std::vector<int>& n_list) {
  if (z.imag() == 0.0) throw std::invalid_argument("resolvent check requires a non-real point");
  require_increasing(n_list);
  std::vector<std::vector<double>> spectra = spectra_over(spec, n_list);
  std::vector<std::pair<int, double>> out;
  for (size_t i = 0; i < n_list.size(); ++i) {
    double d = std::numeric_limits<double>::infinity();
    for (double lam : spectra[i]) d = std::min(d, std::abs(z - std::complex<double>{lam, 0.0}));
    out.emplace_back(n_list[i], 1.0 / d);
  }
  return out;
}

void write_trajectories_csv(std::ostream& os, const TrajectorySet& trajs) {
  os << "n,k,direction,lambda,residual\n";
  for (size_t i = 0; i < trajs.n_list.size(); ++i) {
    int n = trajs.n_list[i];
    for (Direction dir : {Direction::top, Direction::bottom}) {
      const auto& set = dir == Direction::top ? trajs.top : trajs.bottom;
      for (const EigenTrajectory& t : set) {
        const std::pair<int, double>* cur = nullptr;
        const std::pair<int, double>* prev = nullptr;
        for (const auto& s : t.samples) {
          if (s.first == n) {
            cur = &s;
            break;
          }
          prev = &s;
        }
        if (!cur) continue;
        double residual = prev ? std::abs(cur->second - prev->second) : 0.0;
        os << n << ',' << t.k << ',' << direction_name(dir) << ',' << fmt12(cur->second) << ','
           << fmt12(residual) << '\n';
      }
    }
  }
}

}  // namespace specgap
