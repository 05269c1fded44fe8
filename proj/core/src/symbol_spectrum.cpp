#include "specgap/symbol_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "specgap/eigensolver.hpp"
#include "specgap/errors.hpp"
#include "specgap/parallel.hpp"

namespace specgap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Quadratic vertex through three equally spaced samples; returns the refined
// extremal value and how far it moved from the middle sample.
std::pair<double, double> refine_extremum(double ym, double y0, double yp) {
  double denom = ym - 2.0 * y0 + yp;
  if (denom == 0.0) return {y0, 0.0};
  double t = 0.5 * (ym - yp) / denom;  // vertex offset in grid steps
  if (std::abs(t) > 1.0) return {y0, 0.0};
  double yv = y0 - 0.25 * (ym - yp) * t;
  return {yv, std::abs(yv - y0)};
}

double symbol_scale(const MatrixSymbol& symbol) {
  double s = 0.0;
  int p = symbol.block_size();
  for (const auto& [k, block] : symbol.coeffs())
    for (const cplx& v : block) s += std::abs(v) / p;
  return std::max(1.0, s);
}

HermitianMatrix tridiagonal_part(const MatrixSymbol& symbol) {
  int p = symbol.block_size();
  HermitianMatrix T(p);
  for (int i = 0; i < p; ++i) T.at(i, i) = symbol.coeff_entry(0, i, i).real();
  for (int i = 0; i + 1 < p; ++i) {
    T.at(i, i + 1) = symbol.coeff_entry(0, i, i + 1);
    T.at(i + 1, i) = symbol.coeff_entry(0, i + 1, i);
  }
  return T;
}

CertificateReport certificates_from(const HermitianMatrix& comparison, double rho) {
  CertificateReport rep;
  rep.rho = rho;
  rep.base_eigenvalues = eigenvalues(comparison);
  const auto& lam = rep.base_eigenvalues;
  int p = static_cast<int>(lam.size());
  std::vector<Interval> inclusion;
  for (int j = 0; j < p; ++j) inclusion.push_back({lam[j] - rho, lam[j] + rho});
  rep.inclusion = IntervalUnion::merged(inclusion, 0.0);
  for (int j = 0; j + 1 < p; ++j) {
    double spacing = lam[j] - lam[j + 1];
    if (spacing > 2.0 * rho) {
      GapCertificate cert;
      cert.interval = {lam[j + 1] + rho, lam[j] - rho};
      cert.method = CertificateMethod::perturbation_bound;
      cert.rho = rho;
      cert.branch_index = j + 1;
      cert.residual = spacing - 2.0 * rho;
      rep.certificates.push_back(cert);
    }
  }
  return rep;
}

}  // namespace

SampledBands sample_bands(const MatrixSymbol& symbol, int grid_size) {
  if (grid_size < 16) throw std::invalid_argument("sample_bands requires grid_size >= 16");
  int p = symbol.block_size();
  SampledBands out;
  out.grid_size = grid_size;
  out.samples.assign(static_cast<size_t>(grid_size), {});

  parallel_for_index(static_cast<size_t>(grid_size), [&](size_t i) {
    double theta = kTwoPi * static_cast<double>(i) / grid_size;
    HermitianMatrix M = symbol.eval(theta);
    std::vector<double> ev;
    try {
      ev = eigenvalues(M);
    } catch (const std::exception& e) {
      throw numeric_error("symbol eigensolve failed at theta = " + std::to_string(theta) + ": " +
                          e.what());
    }
    out.samples[i] = std::move(ev);  // nonincreasing; branch j = sample[j-1]
  });

  auto wrap = [&](int i) { return (i % grid_size + grid_size) % grid_size; };
  double residual = 0.0;
  std::vector<Interval> branch_ivs(static_cast<size_t>(p));
  for (int j = 0; j < p; ++j) {
    int imin = 0, imax = 0;
    for (int i = 1; i < grid_size; ++i) {
      if (out.samples[static_cast<size_t>(i)][static_cast<size_t>(j)] <
          out.samples[static_cast<size_t>(imin)][static_cast<size_t>(j)])
        imin = i;
      if (out.samples[static_cast<size_t>(i)][static_cast<size_t>(j)] >
          out.samples[static_cast<size_t>(imax)][static_cast<size_t>(j)])
        imax = i;
    }
    auto branch_at = [&](int i) { return out.samples[static_cast<size_t>(wrap(i))][static_cast<size_t>(j)]; };
    auto [vmin, rmin] = refine_extremum(branch_at(imin - 1), branch_at(imin), branch_at(imin + 1));
    auto [vmax, rmax] = refine_extremum(branch_at(imax - 1), branch_at(imax), branch_at(imax + 1));
    vmin = std::min(vmin, branch_at(imin));
    vmax = std::max(vmax, branch_at(imax));
    residual = std::max({residual, rmin, rmax});
    branch_ivs[static_cast<size_t>(j)] = {vmin, vmax};
  }
  out.branch_extrema = branch_ivs;
  out.refinement_residual = residual;
  out.bands = IntervalUnion::merged(branch_ivs, 1e-9 * symbol_scale(symbol));
  return out;
}

std::vector<Interval> spectrum_gaps(const SampledBands& bands) { return bands.bands.gaps(); }

BorgReport borg_check(const SchrodingerSpec& spec, int grid_size) {
  spec.validate();
  BorgReport rep;
  rep.ordered = spec.ordered;
  SampledBands bands = sample_bands(schrodinger_symbol(spec), grid_size);
  rep.connected = bands.bands.size() == 1;
  double bmin = *std::min_element(spec.potential.begin(), spec.potential.end());
  double bmax = *std::max_element(spec.potential.begin(), spec.potential.end());
  rep.diagonal_constant = (bmax - bmin) <= 1e-12;
  rep.consistent = !(rep.ordered && rep.connected && !rep.diagonal_constant);
  return rep;
}

InterlaceReport interlace_submatrices(const MatrixSymbol& symbol) {
  int p = symbol.block_size();
  if (p < 2) throw std::invalid_argument("interlace check needs block size >= 2");
  // Accept only the Schrodinger shape: unit sub/superdiagonal in the constant
  // block, every other coefficient confined to the corners.
  for (int i = 0; i + 1 < p; ++i)
    if (std::abs(symbol.coeff_entry(0, i, i + 1) - cplx{1.0, 0.0}) > 1e-12)
      throw std::invalid_argument("interlace check requires unit off-diagonals");
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      if (std::abs(i - j) <= 1) continue;
      if ((i == 0 && j == p - 1) || (i == p - 1 && j == 0)) continue;
      if (std::abs(symbol.coeff_entry(0, i, j)) > 1e-12)
        throw std::invalid_argument("interlace check requires tridiagonal-plus-corner form");
    }
  for (const auto& [k, block] : symbol.coeffs()) {
    if (k == 0) continue;
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) {
        if ((i == 0 && j == p - 1) || (i == p - 1 && j == 0)) continue;
        if (std::abs(block[static_cast<size_t>(i) * p + j]) > 1e-12)
          throw std::invalid_argument("interlace check requires corner-only hopping blocks");
      }
  }

  HermitianMatrix T = tridiagonal_part(symbol);
  HermitianMatrix P1(p - 1), P2(p - 1);
  for (int i = 0; i < p - 1; ++i)
    for (int j = 0; j < p - 1; ++j) {
      P1.at(i, j) = T.at(i, j);
      P2.at(i, j) = T.at(i + 1, j + 1);
    }
  InterlaceReport rep;
  rep.eigs_p1 = eigenvalues(P1);
  rep.eigs_p2 = eigenvalues(P2);
  double dev = 0.0;
  for (size_t i = 0; i < rep.eigs_p1.size(); ++i)
    dev = std::max(dev, std::abs(rep.eigs_p1[i] - rep.eigs_p2[i]));
  rep.all_equal = dev <= 1e-10;
  return rep;
}

double corner_sup_norm(const std::map<int, double>& corner, int grid_size) {
  double lip = 0.0;
  for (const auto& [k, a] : corner) lip += std::abs(k) * std::abs(a);
  double dtheta = kTwoPi / grid_size;
  double gmax = 0.0;
  for (int i = 0; i < grid_size; ++i) {
    double theta = kTwoPi * static_cast<double>(i) / grid_size;
    cplx f{0.0, 0.0};
    for (const auto& [k, a] : corner) f += a * std::polar(1.0, k * theta);
    gmax = std::max(gmax, std::abs(f));
  }
  return gmax + lip * dtheta / 2.0;
}

CertificateReport perturbation_certificate(const SchrodingerSpec& spec, int grid_size) {
  spec.validate();
  int p = spec.period;
  HermitianMatrix T(p);
  for (int i = 0; i < p; ++i) T.at(i, i) = spec.potential[static_cast<size_t>(i)];
  for (int i = 0; i + 1 < p; ++i) {
    T.at(i, i + 1) = 1.0;
    T.at(i + 1, i) = 1.0;
  }
  return certificates_from(T, corner_sup_norm(spec.corner, grid_size));
}

CertificateReport perturbation_certificate(const JacobiSpec& spec) {
  spec.validate();
  int p = spec.period, k = spec.rotation;
  auto a = [&](int idx) { return spec.offdiag[static_cast<size_t>(((idx % p) + p) % p)]; };
  auto b = [&](int idx) { return spec.diag[static_cast<size_t>(((idx % p) + p) % p)]; };
  HermitianMatrix T(p);
  for (int i = 0; i < p; ++i) T.at(i, i) = b(k + i);
  for (int i = 0; i + 1 < p; ++i) {
    T.at(i, i + 1) = a(k + i);
    T.at(i + 1, i) = a(k + i);
  }
  return certificates_from(T, std::abs(a(k + p - 1)));
}

const char* certificate_method_name(CertificateMethod m) {
  switch (m) {
    case CertificateMethod::symbol_exact: return "symbol-exact";
    case CertificateMethod::perturbation_bound: return "perturbation-bound";
    case CertificateMethod::weighted_average_evidence: return "weighted-average-evidence";
  }
  return "unknown";
}

}  // namespace specgap
