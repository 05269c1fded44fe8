#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace specgap {

using cplx = std::complex<double>;

// Dense Hermitian matrix, row-major, 0-based indexing internally.
// Construction routines are expected to fill both triangles consistently;
// hermiticity_defect() measures how far a matrix strays from H = H^dagger.
class HermitianMatrix {
public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, cplx{0.0, 0.0}) {}

  int order() const { return n_; }

  cplx& at(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  const cplx& at(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

  void set(int i, int j, cplx v) {
    at(i, j) = v;
    at(j, i) = std::conj(v);
  }

  double frobenius_norm() const;
  double hermiticity_defect() const;  // max_ij |a_ij - conj(a_ji)|
  double max_abs() const;

  bool is_real(double tol = 0.0) const;
  int bandwidth() const;  // smallest w with a_ij = 0 for |i-j| > w

  HermitianMatrix leading_section(int m) const;

  const std::vector<cplx>& data() const { return a_; }
  std::vector<cplx>& data() { return a_; }

private:
  int n_ = 0;
  std::vector<cplx> a_;
};

}  // namespace specgap
