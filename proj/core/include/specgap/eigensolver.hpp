#pragma once

#include <vector>

#include "specgap/matrix.hpp"

namespace specgap {

// Full spectral decomposition H = V diag(values) V^dagger.
// values are sorted nonincreasing; column k of vectors (row-major n x n)
// is an orthonormal eigenvector for values[k]. Bottom-indexed access
// lambda_{n+1-k} is values[n-k]: a view, never a second sort.
struct EigenDecomposition {
  int order = 0;
  std::vector<double> values;
  std::vector<cplx> vectors;  // row-major; vectors[i*order + k] = component i of eigenvector k

  cplx vector_entry(int i, int k) const { return vectors[static_cast<size_t>(i) * order + k]; }
  double bottom(int k) const { return values[static_cast<size_t>(order) - k]; }  // k = 1..n
};

struct ValuesAndRow {
  std::vector<double> values;  // nonincreasing
  std::vector<cplx> row;       // row[k] = <e_index, v_k>
};

// Relative off-diagonal tolerance of the Jacobi sweep and of the tridiagonal
// QL deflation test, both relative to ||H||_F.
inline constexpr double kEighTol = 1e-12;
inline constexpr int kMaxJacobiSweeps = 30;

EigenDecomposition eigh(const HermitianMatrix& H);

// Eigenvalues only, nonincreasing. Dispatches to a Givens band reduction plus
// implicit-shift QL when the matrix is real symmetric and banded; falls back
// to the Jacobi kernel otherwise. Same ordering contract as eigh.
std::vector<double> eigenvalues(const HermitianMatrix& H);

// Eigenvalues plus a single row of the eigenvector matrix (basis_index is
// 1-based). Avoids accumulating the full eigenvector matrix at large order.
ValuesAndRow eigh_row(const HermitianMatrix& H, int basis_index);

// Hermitian singular values: sorted |eigenvalues|, nonincreasing.
std::vector<double> singular_values(const HermitianMatrix& H);
double spectral_norm(const HermitianMatrix& H);

// w_k = |<v_k, e_index>|^2 with equal redistribution inside numerically
// degenerate clusters (eigenvalue gap below 1e-9*||H||), so the report is
// basis-independent on eigenspaces of multiplicity > 1.
std::vector<double> spectral_weights(const EigenDecomposition& decomp, int basis_index);

// One eigenvector of a Hermitian banded matrix near the isolated eigenvalue
// `shift`, via inverse iteration with a partially pivoted band LU. Returns a
// unit vector with a deterministic sign convention.
std::vector<cplx> band_eigenvector(const HermitianMatrix& H, double shift);

}  // namespace specgap
