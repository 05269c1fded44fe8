#include "specgap/family_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "specgap/eigensolver.hpp"
#include "specgap/errors.hpp"
#include "specgap/output.hpp"
#include "specgap/parallel.hpp"
#include "specgap/symbol_spectrum.hpp"

namespace specgap {

namespace {

constexpr double kEquicontinuitySlack = 1e-9;

double potential_distance(const SchrodingerSpec& a, const SchrodingerSpec& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.potential.size(); ++i)
    d = std::max(d, std::abs(a.potential[i] - b.potential[i]));
  return d;
}

}  // namespace

SweepTable sweep(const FamilySpec& family, const std::vector<double>& x_grid,
                 const std::vector<int>& n_list, int k_max, bool with_svals) {
  family.validate();
  if (x_grid.empty()) throw std::invalid_argument("empty x grid");
  for (double x : x_grid)
    if (x < family.x_lo || x > family.x_hi)
      throw std::domain_error("sweep point outside the family domain");

  SweepTable table;
  table.x_grid = x_grid;
  table.n_list = n_list;
  table.k_max = k_max;
  table.lipschitz_bound = family_lipschitz_bound(family);
  table.per_x.resize(x_grid.size());
  if (with_svals) table.svals.resize(x_grid.size());

  std::vector<SchrodingerSpec> specs(x_grid.size());
  for (size_t i = 0; i < x_grid.size(); ++i) specs[i] = family_evaluate(family, x_grid[i]);

  parallel_for_index(x_grid.size(), [&](size_t i) {
    OperatorSpec op = specs[i];
    table.per_x[i] = eigenvalue_trajectories(op, n_list, k_max);
    if (with_svals) {
      auto& sv = table.svals[i];
      sv.resize(n_list.size());
      for (size_t ni = 0; ni < n_list.size(); ++ni) {
        std::vector<double> s = singular_values(truncate(op, n_list[ni]));
        s.resize(static_cast<size_t>(std::min<int>(k_max, n_list[ni])));
        sv[ni] = std::move(s);
      }
    }
  });

  // Equicontinuity across the grid: |lambda_{k,n}(x) - lambda_{k,n}(x')| is
  // bounded by the diagonal perturbation norm plus eigensolver slack.
  for (size_t i = 0; i + 1 < x_grid.size(); ++i) {
    double bound = potential_distance(specs[i], specs[i + 1]) + 2.0 * kEquicontinuitySlack;
    for (Direction dir : {Direction::top, Direction::bottom}) {
      const auto& a = dir == Direction::top ? table.per_x[i].top : table.per_x[i].bottom;
      const auto& b = dir == Direction::top ? table.per_x[i + 1].top : table.per_x[i + 1].bottom;
      for (int k = 0; k < k_max; ++k) {
        const auto& sa = a[static_cast<size_t>(k)].samples;
        const auto& sb = b[static_cast<size_t>(k)].samples;
        for (size_t s = 0; s < std::min(sa.size(), sb.size()); ++s) {
          double dev = std::abs(sa[s].second - sb[s].second);
          if (dev > bound) {
            std::ostringstream msg;
            msg << "equicontinuity violated at x=" << fmt12(x_grid[i]) << "..x=" << fmt12(x_grid[i + 1])
                << " n=" << sa[s].first << " k=" << (k + 1) << " dir=" << direction_name(dir)
                << " dev=" << fmt12(dev) << " bound=" << fmt12(bound);
            table.violations.push_back(msg.str());
          }
        }
      }
    }
  }
  // Monotonicity in n is already enforced inside eigenvalue_trajectories;
  // s-value section monotonicity is checked here when requested.
  if (with_svals) {
    for (size_t i = 0; i < x_grid.size(); ++i)
      for (size_t ni = 0; ni + 1 < n_list.size(); ++ni)
        for (size_t k = 0; k < table.svals[i][ni].size(); ++k)
          if (table.svals[i][ni][k] > table.svals[i][ni + 1][k] + kEquicontinuitySlack) {
            std::ostringstream msg;
            msg << "s-value monotonicity violated at x=" << fmt12(x_grid[i]) << " n=" << n_list[ni]
                << " k=" << (k + 1);
            table.violations.push_back(msg.str());
          }
  }
  return table;
}

BoundFunctions essential_bound_functions(const SweepTable& table, const FamilySpec& family) {
  BoundFunctions bf;
  bf.x_grid = table.x_grid;
  double L = family_lipschitz_bound(family);
  for (size_t i = 0; i < table.x_grid.size(); ++i) {
    SpectralEstimate est = estimate_bounds(table.per_x[i]);
    bf.mu_hat.push_back(est.mu_hat);
    bf.nu_hat.push_back(est.nu_hat);
    bf.mu_residual.push_back(est.mu_residual);
    bf.nu_residual.push_back(est.nu_residual);
  }
  for (size_t i = 0; i + 1 < bf.x_grid.size(); ++i) {
    double step = std::abs(bf.x_grid[i + 1] - bf.x_grid[i]);
    double allowance = L * step + bf.mu_residual[i] + bf.mu_residual[i + 1] + 1e-9;
    if (std::abs(bf.mu_hat[i + 1] - bf.mu_hat[i]) > allowance) {
      std::ostringstream msg;
      msg << "mu_hat continuity violated between x=" << fmt12(bf.x_grid[i]) << " and x="
          << fmt12(bf.x_grid[i + 1]);
      bf.continuity_diagnostics.push_back(msg.str());
    }
    allowance = L * step + bf.nu_residual[i] + bf.nu_residual[i + 1] + 1e-9;
    if (std::abs(bf.nu_hat[i + 1] - bf.nu_hat[i]) > allowance) {
      std::ostringstream msg;
      msg << "nu_hat continuity violated between x=" << fmt12(bf.x_grid[i]) << " and x="
          << fmt12(bf.x_grid[i + 1]);
      bf.continuity_diagnostics.push_back(msg.str());
    }
  }
  return bf;
}

StabilityReport gap_stability_radius(const FamilySpec& family, Interval gap, double eps,
                                     const StabilityOptions& opts) {
  family.validate();
  if (!(eps > 0.0 && eps < gap.width() / 2.0))
    throw std::invalid_argument("eps must lie in (0, (b-a)/2)");

  SchrodingerSpec base = family_evaluate(family, 0.0);
  SampledBands bands = sample_bands(schrodinger_symbol(base), opts.grid_size);
  if (bands.bands.intersects(gap))
    throw std::invalid_argument("interval is not a gap of the base essential spectrum");

  // The theorem hypothesis excludes discrete values inside the gap.
  OperatorSpec base_op = base;
  std::vector<double> inside = in_gap_eigenvalues(base_op, gap.lo, gap.hi, opts.gap_check_n);
  if (!inside.empty())
    throw std::invalid_argument("gap contains a discrete spectral value; stability theorem does not apply");

  StabilityReport rep;
  rep.gap = gap;
  rep.epsilon = eps;
  rep.persisted = {gap.lo + eps, gap.hi - eps};

  double dist = bands.bands.distance(rep.persisted);
  if (!(dist > 0.0)) throw numeric_error("shrunk interval touches the sampled bands");
  rep.resolvent_bound = 1.0 / dist;          // sup of the resolvent norm over the shrunk interval
  rep.budget = std::min(dist, eps);          // min(1/M, eps)
  rep.lipschitz = family_lipschitz_bound(family);
  if (rep.lipschitz == 0.0) {
    rep.unbounded = true;
    rep.delta = std::numeric_limits<double>::infinity();
  } else {
    rep.delta = rep.budget / rep.lipschitz;
  }
  return rep;
}

void write_sweep_csv(std::ostream& os, const SweepTable& table) {
  os << "x,n,k,direction,lambda\n";
  for (size_t xi = 0; xi < table.x_grid.size(); ++xi) {
    const TrajectorySet& ts = table.per_x[xi];
    for (size_t ni = 0; ni < table.n_list.size(); ++ni) {
      int n = table.n_list[ni];
      for (Direction dir : {Direction::top, Direction::bottom}) {
        const auto& set = dir == Direction::top ? ts.top : ts.bottom;
        for (const EigenTrajectory& t : set) {
          for (const auto& s : t.samples)
            if (s.first == n)
              os << fmt12(table.x_grid[xi]) << ',' << n << ',' << t.k << ',' << direction_name(dir)
                 << ',' << fmt12(s.second) << '\n';
        }
      }
    }
  }
}

}  // namespace specgap
