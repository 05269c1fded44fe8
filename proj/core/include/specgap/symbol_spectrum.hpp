#pragma once

#include <string>
#include <vector>

#include "specgap/core_model.hpp"
#include "specgap/intervals.hpp"

namespace specgap {

// Essential spectrum of a block Laurent operator: the union over branches j
// of [min_theta lambda_j(f(theta)), max_theta lambda_j(f(theta))], sampled on
// a uniform grid with quadratic refinement at the extremal samples.
struct SampledBands {
  IntervalUnion bands;
  std::vector<Interval> branch_extrema;      // branch 1 = largest eigenvalue
  int grid_size = 0;
  double refinement_residual = 0.0;          // max |refined - raw grid extremum|
  std::vector<std::vector<double>> samples;  // samples[i] = sorted eigenvalues at theta_i
};

SampledBands sample_bands(const MatrixSymbol& symbol, int grid_size);

std::vector<Interval> spectrum_gaps(const SampledBands& bands);

// Borg-type diagnostic: an ordered nonconstant periodic potential must show a
// disconnected essential spectrum; a violation signals a software defect.
struct BorgReport {
  bool connected = false;
  bool diagonal_constant = false;
  bool consistent = false;
  bool ordered = false;
};

BorgReport borg_check(const SchrodingerSpec& spec, int grid_size);

// Eigenvalues of the leading and trailing (p-1) principal submatrices of the
// theta-independent tridiagonal part. Equal spectra force a constant
// diagonal through the trace identity.
struct InterlaceReport {
  std::vector<double> eigs_p1;
  std::vector<double> eigs_p2;
  bool all_equal = false;
};

InterlaceReport interlace_submatrices(const MatrixSymbol& symbol);

enum class CertificateMethod { symbol_exact, perturbation_bound, weighted_average_evidence };
const char* certificate_method_name(CertificateMethod m);

struct GapCertificate {
  Interval interval;
  CertificateMethod method = CertificateMethod::perturbation_bound;
  double rho = 0.0;      // perturbation norm used
  int branch_index = 0;  // j with lambda_j - lambda_{j+1} > 2 rho (1-based)
  double residual = 0.0;
};

// Certificates from the constant tridiagonal comparison matrix: consecutive
// eigenvalue spacings larger than twice the corner perturbation norm open a
// certified gap (lambda_{j+1} + rho, lambda_j - rho). Also returns the
// spectral inclusion union of [lambda_j - rho, lambda_j + rho]. Sound, not
// complete: no certificate never asserts connectedness.
struct CertificateReport {
  std::vector<GapCertificate> certificates;
  IntervalUnion inclusion;
  std::vector<double> base_eigenvalues;  // nonincreasing
  double rho = 0.0;
};

CertificateReport perturbation_certificate(const SchrodingerSpec& spec, int grid_size);
CertificateReport perturbation_certificate(const JacobiSpec& spec);

// Certified sup of |f(theta)| = |sum_k a_k e^{ik theta}|: grid maximum plus
// the modulus-of-continuity slack sum_k |k a_k| * (dtheta / 2).
double corner_sup_norm(const std::map<int, double>& corner, int grid_size);

}  // namespace specgap
