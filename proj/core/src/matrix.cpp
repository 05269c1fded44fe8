#include "specgap/matrix.hpp"

#include <cmath>

namespace specgap {

double HermitianMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double HermitianMatrix::hermiticity_defect() const {
  double d = 0.0;
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j)
      d = std::max(d, std::abs(at(i, j) - std::conj(at(j, i))));
  return d;
}

double HermitianMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& v : a_) m = std::max(m, std::abs(v));
  return m;
}

bool HermitianMatrix::is_real(double tol) const {
  for (const cplx& v : a_)
    if (std::abs(v.imag()) > tol) return false;
  return true;
}

int HermitianMatrix::bandwidth() const {
  int w = 0;
  for (int i = 0; i < n_; ++i)
    for (int j = i + w + 1; j < n_; ++j)
      if (at(i, j) != cplx{0.0, 0.0}) w = j - i;
  return w;
}

HermitianMatrix HermitianMatrix::leading_section(int m) const {
  HermitianMatrix s(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) s.at(i, j) = at(i, j);
  return s;
}

}  // namespace specgap
