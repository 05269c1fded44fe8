#pragma once

#include <map>
#include <string>
#include <vector>

#include "specgap/core_model.hpp"
#include "specgap/eigensolver.hpp"
#include "specgap/truncation_analysis.hpp"

namespace specgap {

struct RankRef {
  Direction direction = Direction::top;
  int k = 1;
};

// Convex weights w_{n,1..n} over the sorted truncation eigenvalues.
//   uniform        : w = 1/n (the statistic is the trace average)
//   spectral_entry : w_k = |<v_k, e_i>|^2 so the statistic is the (i,i) entry
//   two_point      : t at rank l, 1-t at rank m (top or bottom indexed)
//   explicit_table : caller-supplied vectors per n
struct WeightScheme {
  enum class Kind { uniform, spectral_entry, two_point, explicit_table };
  Kind kind = Kind::uniform;
  int basis_index = 1;
  double t = 0.5;
  RankRef rank_l, rank_m;
  std::map<int, std::vector<double>> table;

  static WeightScheme uniform();
  static WeightScheme spectral_entry(int basis_index);
  static WeightScheme two_point(double t, RankRef l, RankRef m);
  static WeightScheme explicit_table(std::map<int, std::vector<double>> table);

  // Weight vector for a decomposition of order n; validates the convex
  // combination contract (entries in [0,1], sum 1 within 1e-10).
  std::vector<double> weights(const EigenDecomposition& decomp) const;
  std::string name() const;
};

double weighted_statistic(const EigenDecomposition& decomp, const WeightScheme& scheme);

// Two-point scheme bound to trajectories: validates t in (0,1) and that both
// referenced trajectories exist in the set; the scheme statistic then
// converges to t*lim(rank_l) + (1-t)*lim(rank_m).
WeightScheme two_point_weights(const TrajectorySet& trajs, double t, RankRef rank_l, RankRef rank_m);

enum class EvidenceVerdict { evidence_found, no_evidence };
const char* evidence_verdict_name(EvidenceVerdict v);

// Evidence record for the weighted-average gap criterion: if the number of
// eigenvalues within delta of the statistic stays below K for every tested n
// (and the spectrum/essential-spectrum bounds agree), the essential spectrum
// has a gap near the accumulation points of the statistic.
struct GapEvidence {
  std::string scheme;
  double delta = 0.0;
  int cap = 0;  // K
  std::vector<std::pair<int, int>> counts;        // (n, count)
  std::vector<std::pair<int, double>> statistic;  // (n, c_n)
  EvidenceVerdict verdict = EvidenceVerdict::no_evidence;
  std::vector<double> centers;                     // accumulation points of c_n
  std::vector<std::pair<double, double>> candidate_intervals;
  bool hypothesis_verified = false;  // no discrete values outside the essential bounds
  double nu_hat = 0.0, mu_hat = 0.0;
};

GapEvidence weighted_average_evidence(const OperatorSpec& spec, const WeightScheme& scheme,
                                      double delta, int cap, const std::vector<int>& n_list);

}  // namespace specgap
