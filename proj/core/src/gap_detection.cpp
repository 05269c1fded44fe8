#include "specgap/gap_detection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specgap/errors.hpp"
#include "specgap/parallel.hpp"

namespace specgap {

namespace {

constexpr double kWeightSumTol = 1e-10;

void check_weights(const std::vector<double>& w) {
  double sum = 0.0;
  for (double v : w) {
    if (v < -kWeightSumTol || v > 1.0 + kWeightSumTol)
      throw std::invalid_argument("weight outside [0, 1]");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kWeightSumTol)
    throw std::invalid_argument("weights must sum to 1 (got " + std::to_string(sum) + ")");
}

int resolve_rank(const RankRef& r, int n) {
  if (r.k < 1 || r.k > n) throw std::invalid_argument("rank out of range for truncation order");
  return r.direction == Direction::top ? r.k - 1 : n - r.k;  // 0-based sorted index
}

std::vector<double> cluster_tail(const std::vector<double>& values, double tol) {
  // Tail clustering: group every value within tol, then keep clusters that
  // contain at least one sample from the second half of the sequence (the
  // accumulation points, not early transients).
  std::vector<std::pair<double, size_t>> tagged;
  for (size_t i = 0; i < values.size(); ++i) tagged.emplace_back(values[i], i);
  std::sort(tagged.begin(), tagged.end());
  std::vector<double> centers;
  size_t half = values.size() / 2;
  size_t i = 0;
  while (i < tagged.size()) {
    size_t j = i;
    double sum = 0.0;
    bool in_tail = false;
    while (j < tagged.size() && tagged[j].first - tagged[i].first <= tol) {
      sum += tagged[j].first;
      if (tagged[j].second >= half) in_tail = true;
      ++j;
    }
    if (in_tail) centers.push_back(sum / static_cast<double>(j - i));
    i = j;
  }
  return centers;
}

}  // namespace

WeightScheme WeightScheme::uniform() { return WeightScheme{}; }

WeightScheme WeightScheme::spectral_entry(int basis_index) {
  if (basis_index < 1) throw std::invalid_argument("basis index must be >= 1");
  WeightScheme s;
  s.kind = Kind::spectral_entry;
  s.basis_index = basis_index;
  return s;
}

WeightScheme WeightScheme::two_point(double t, RankRef l, RankRef m) {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("two-point weight t must lie in (0, 1)");
  WeightScheme s;
  s.kind = Kind::two_point;
  s.t = t;
  s.rank_l = l;
  s.rank_m = m;
  return s;
}

WeightScheme WeightScheme::explicit_table(std::map<int, std::vector<double>> table) {
  for (const auto& [n, w] : table) {
    if (w.size() != static_cast<size_t>(n))
      throw std::invalid_argument("explicit weight vector length must equal n");
    check_weights(w);
  }
  WeightScheme s;
  s.kind = Kind::explicit_table;
  s.table = std::move(table);
  return s;
}

std::vector<double> WeightScheme::weights(const EigenDecomposition& decomp) const {
  int n = decomp.order;
  std::vector<double> w;
  switch (kind) {
    case Kind::uniform:
      w.assign(static_cast<size_t>(n), 1.0 / n);
      break;
    case Kind::spectral_entry: {
      if (basis_index > n) throw std::invalid_argument("basis index exceeds truncation order");
      w = spectral_weights(decomp, basis_index);
      break;
    }
    case Kind::two_point: {
      w.assign(static_cast<size_t>(n), 0.0);
      int il = resolve_rank(rank_l, n), im = resolve_rank(rank_m, n);
      if (il == im) throw std::invalid_argument("two-point ranks coincide");
      w[static_cast<size_t>(il)] += t;
      w[static_cast<size_t>(im)] += 1.0 - t;
      break;
    }
    case Kind::explicit_table: {
      auto it = table.find(n);
      if (it == table.end())
        throw std::invalid_argument("explicit weight table has no vector for n = " + std::to_string(n));
      w = it->second;
      break;
    }
  }
  check_weights(w);
  return w;
}

std::string WeightScheme::name() const {
  switch (kind) {
    case Kind::uniform: return "uniform";
    case Kind::spectral_entry: return "entry:" + std::to_string(basis_index);
    case Kind::two_point:
      return "twopoint:" + std::to_string(t) + ":" +
             (rank_l.direction == Direction::top ? "" : "-") + std::to_string(rank_l.k) + ":" +
             (rank_m.direction == Direction::top ? "" : "-") + std::to_string(rank_m.k);
    case Kind::explicit_table: return "explicit";
  }
  return "unknown";
}

double weighted_statistic(const EigenDecomposition& decomp, const WeightScheme& scheme) {
  std::vector<double> w = scheme.weights(decomp);
  double c = 0.0;
  for (int k = 0; k < decomp.order; ++k) c += w[static_cast<size_t>(k)] * decomp.values[static_cast<size_t>(k)];
  return c;
}

WeightScheme two_point_weights(const TrajectorySet& trajs, double t, RankRef rank_l, RankRef rank_m) {
  WeightScheme s = WeightScheme::two_point(t, rank_l, rank_m);
  auto exists = [&](const RankRef& r) {
    const auto& list = r.direction == Direction::top ? trajs.top : trajs.bottom;
    return r.k >= 1 && r.k <= static_cast<int>(list.size());
  };
  if (!exists(rank_l) || !exists(rank_m))
    throw std::invalid_argument("two-point ranks must reference computed trajectories");
  return s;
}

const char* evidence_verdict_name(EvidenceVerdict v) {
  return v == EvidenceVerdict::evidence_found ? "EvidenceFound" : "NoEvidence";
}

GapEvidence weighted_average_evidence(const OperatorSpec& spec, const WeightScheme& scheme,
                                      double delta, int cap, const std::vector<int>& n_list) {
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
  if (cap < 1) throw std::invalid_argument("count bound K must be >= 1");
  if (n_list.size() < 2) throw std::invalid_argument("need at least two truncation orders");

  GapEvidence ev;
  ev.scheme = scheme.name();
  ev.delta = delta;
  ev.cap = cap;

  // Bounds hypothesis (same upper/lower bounds for spectrum and essential
  // spectrum): verified as the absence of discrete trajectory limits.
  int k_max = std::min(8, n_list.front());
  TrajectorySet trajs = eigenvalue_trajectories(spec, n_list, k_max);
  SpectralEstimate est = estimate_bounds(trajs);
  ev.hypothesis_verified = est.discrete_above.empty() && est.discrete_below.empty();
  ev.nu_hat = est.nu_hat;
  ev.mu_hat = est.mu_hat;

  struct PerN {
    double stat;
    int count;
  };
  std::vector<PerN> rows(n_list.size());
  parallel_for_index(n_list.size(), [&](size_t i) {
    int n = n_list[i];
    HermitianMatrix H = truncate(spec, n);
    std::vector<double> values;
    double stat = 0.0;
    if (scheme.kind == WeightScheme::Kind::spectral_entry) {
      // Row path: same weights as the full decomposition without accumulating
      // the whole eigenvector matrix.
      ValuesAndRow vr = eigh_row(H, scheme.basis_index);
      values = std::move(vr.values);
      for (size_t k = 0; k < values.size(); ++k) stat += std::norm(vr.row[k]) * values[k];
    } else {
      values = eigenvalues(H);
      if (scheme.kind == WeightScheme::Kind::uniform) {
        for (double v : values) stat += v;
        stat /= static_cast<double>(n);
      } else if (scheme.kind == WeightScheme::Kind::two_point) {
        int il = resolve_rank(scheme.rank_l, n), im = resolve_rank(scheme.rank_m, n);
        stat = scheme.t * values[static_cast<size_t>(il)] +
               (1.0 - scheme.t) * values[static_cast<size_t>(im)];
      } else {
        auto it = scheme.table.find(n);
        if (it == scheme.table.end())
          throw std::invalid_argument("explicit weight table has no vector for n = " + std::to_string(n));
        check_weights(it->second);
        for (size_t k = 0; k < values.size(); ++k) stat += it->second[k] * values[k];
      }
    }
    int count = 0;
    for (double v : values)
      if (std::abs(stat - v) < delta) ++count;
    rows[i] = {stat, count};
  });

  bool all_below = true;
  for (size_t i = 0; i < n_list.size(); ++i) {
    ev.statistic.emplace_back(n_list[i], rows[i].stat);
    ev.counts.emplace_back(n_list[i], rows[i].count);
    if (rows[i].count >= cap) all_below = false;
  }
  ev.verdict = all_below ? EvidenceVerdict::evidence_found : EvidenceVerdict::no_evidence;

  std::vector<double> stats;
  for (const auto& [n, c] : ev.statistic) stats.push_back(c);
  ev.centers = cluster_tail(stats, 1e-3 * trajs.scale);

  if (ev.verdict == EvidenceVerdict::evidence_found) {
    for (double c : ev.centers) {
      // Largest eps <= delta/2 keeping (c - eps, c + eps) inside the bounds.
      double eps = std::min({delta / 2.0, c - est.nu_hat, est.mu_hat - c});
      if (eps > 0.0) ev.candidate_intervals.emplace_back(c - eps, c + eps);
    }
  }
  return ev;
}

}  // namespace specgap
