#include "specgap/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "specgap/errors.hpp"

namespace specgap {

namespace {

constexpr double kHermTol = 1e-8;

void require_hermitian(const HermitianMatrix& H) {
  double defect = H.hermiticity_defect();
  double scale = std::max(1.0, H.frobenius_norm());
  if (defect > kHermTol * scale)
    throw std::invalid_argument("matrix is not Hermitian within tolerance (defect " +
                                std::to_string(defect) + ")");
}

double offdiag_norm(const HermitianMatrix& A) {
  double s = 0.0;
  int n = A.order();
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) s += std::norm(A.at(p, q));
  return std::sqrt(2.0 * s);
}

// ----------------------------------------------------------------------------
// Cyclic complex Jacobi. The rotation for pivot (p, q) is the unitary
//   J = I, J_pp = c, J_pq = s*e^{i phi}, J_qp = -s*e^{-i phi}, J_qq = c
// with phi = arg(a_pq) and tan(2 theta) = 2|a_pq| / (a_qq - a_pp).
// ----------------------------------------------------------------------------
struct JacobiResult {
  std::vector<double> values;
  std::vector<cplx> vectors;  // row-major, column k = eigenvector k (unsorted)
};

JacobiResult jacobi_hermitian(HermitianMatrix A, bool want_vectors) {
  int n = A.order();
  JacobiResult out;
  out.values.resize(n);
  if (want_vectors) {
    out.vectors.assign(static_cast<size_t>(n) * n, cplx{0.0, 0.0});
    for (int i = 0; i < n; ++i) out.vectors[static_cast<size_t>(i) * n + i] = 1.0;
  }
  if (n == 1) {
    out.values[0] = A.at(0, 0).real();
    return out;
  }

  double fro = A.frobenius_norm();
  double stop = kEighTol * fro;
  double skip = stop / (2.0 * n);  // leftover off-diagonal mass stays below stop

  int sweep = 0;
  for (; sweep < kMaxJacobiSweeps; ++sweep) {
    double off = offdiag_norm(A);
    if (off <= stop) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        cplx apq = A.at(p, q);
        double aabs = std::abs(apq);
        if (aabs <= skip) continue;
        double app = A.at(p, p).real();
        double aqq = A.at(q, q).real();
        cplx phase = apq / aabs;
        double tau = (aqq - app) / (2.0 * aabs);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        cplx sc = (t * c) * phase;   // J_pq
        cplx scb = std::conj(sc);

        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          cplx akp = A.at(k, p), akq = A.at(k, q);
          cplx nkp = c * akp - scb * akq;
          cplx nkq = sc * akp + c * akq;
          A.at(k, p) = nkp;
          A.at(p, k) = std::conj(nkp);
          A.at(k, q) = nkq;
          A.at(q, k) = std::conj(nkq);
        }
        A.at(p, p) = app - t * aabs;
        A.at(q, q) = aqq + t * aabs;
        A.at(p, q) = 0.0;
        A.at(q, p) = 0.0;

        if (want_vectors) {
          for (int k = 0; k < n; ++k) {
            cplx vkp = out.vectors[static_cast<size_t>(k) * n + p];
            cplx vkq = out.vectors[static_cast<size_t>(k) * n + q];
            out.vectors[static_cast<size_t>(k) * n + p] = c * vkp - scb * vkq;
            out.vectors[static_cast<size_t>(k) * n + q] = sc * vkp + c * vkq;
          }
        }
      }
    }
  }
  if (sweep == kMaxJacobiSweeps) {
    double off = offdiag_norm(A);
    if (off > stop)
      throw numeric_error("Jacobi eigensolver did not converge; off-diagonal residual " +
                          std::to_string(off));
  }
  for (int i = 0; i < n; ++i) out.values[i] = A.at(i, i).real();
  return out;
}

// ----------------------------------------------------------------------------
// Real symmetric path: Givens band reduction to tridiagonal, then implicit
// shift QL. Optionally carries a single accumulator row through every
// rotation, giving one row of the eigenvector matrix in O(n^2).
// ----------------------------------------------------------------------------
struct givens {
  double c, s;
};

givens make_givens(double x, double y) {
  // c*x + s*y = r, -s*x + c*y = 0
  double h = std::hypot(x, y);
  if (h == 0.0) return {1.0, 0.0};
  return {x / h, y / h};
}

// Symmetric two-sided rotation of rows/cols (p, p+1) applied to a band-limited
// window; `reach` must cover every nonzero in the two rows including the bulge.
void apply_sym_rot(std::vector<double>& a, int n, int p, givens g, int reach) {
  int q = p + 1;
  int lo = std::max(0, p - reach);
  int hi = std::min(n - 1, q + reach);
  for (int k = lo; k <= hi; ++k) {
    double& apk = a[static_cast<size_t>(p) * n + k];
    double& aqk = a[static_cast<size_t>(q) * n + k];
    double np = g.c * apk + g.s * aqk;
    double nq = -g.s * apk + g.c * aqk;
    apk = np;
    aqk = nq;
  }
  for (int k = lo; k <= hi; ++k) {
    double& akp = a[static_cast<size_t>(k) * n + p];
    double& akq = a[static_cast<size_t>(k) * n + q];
    double np = g.c * akp + g.s * akq;
    double nq = -g.s * akp + g.c * akq;
    akp = np;
    akq = nq;
  }
}

void rotate_row_acc(std::vector<double>& u, int p, givens g) {
  double up = u[p], uq = u[p + 1];
  u[p] = g.c * up + g.s * uq;
  u[p + 1] = -g.s * up + g.c * uq;
}

// Reduces dense-stored real symmetric A (bandwidth m) to tridiagonal,
// removing one outer diagonal at a time and chasing the bulge in steps of
// the current bandwidth. Rotations are mirrored into the accumulator row.
void band_tridiagonalize(std::vector<double>& a, int n, int m, std::vector<double>* row_acc) {
  for (int bw = m; bw >= 2; --bw) {
    for (int j = 0; j + bw < n; ++j) {
      int r = j + bw;
      for (;;) {
        int c0 = r - bw;
        double x = a[static_cast<size_t>(r - 1) * n + c0];
        double y = a[static_cast<size_t>(r) * n + c0];
        if (y == 0.0) break;
        givens g = make_givens(x, y);
        apply_sym_rot(a, n, r - 1, g, bw + 1);
        if (row_acc) rotate_row_acc(*row_acc, r - 1, g);
        if (r + bw > n - 1) break;
        r += bw;
      }
    }
  }
}

// Implicit-shift QL for a symmetric tridiagonal matrix (diagonal d, subdiagonal
// e with e[i] = T[i+1][i]). Accumulates rotations into an optional row vector.
void tridiag_ql(std::vector<double>& d, std::vector<double>& e, std::vector<double>* row_acc) {
  int n = static_cast<int>(d.size());
  if (n <= 1) return;
  e.resize(n, 0.0);
  const double eps = 2.0 * std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    for (;;) {
      int m = l;
      for (; m < n - 1; ++m) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iter > 64) throw numeric_error("tridiagonal QL did not converge");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      for (int i = m - 1; i >= l; --i) {
        double f = s * e[i];
        double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        if (row_acc) {
          double ui = (*row_acc)[i], ui1 = (*row_acc)[i + 1];
          (*row_acc)[i + 1] = s * ui + c * ui1;
          (*row_acc)[i] = c * ui - s * ui1;
        }
      }
      if (r == 0.0 && m - 1 >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
}

bool use_band_path(const HermitianMatrix& H, int* bandwidth_out) {
  int n = H.order();
  if (n < 16) return false;
  if (!H.is_real(0.0)) return false;
  int w = H.bandwidth();
  if (w > n / 4) return false;
  *bandwidth_out = w;
  return true;
}

std::vector<double> band_values_and_optional_row(const HermitianMatrix& H, int w, int index0,
                                                 std::vector<cplx>* row_out) {
  int n = H.order();
  std::vector<double> a(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<size_t>(i) * n + j] = H.at(i, j).real();

  std::vector<double> acc;
  std::vector<double>* accp = nullptr;
  if (row_out) {
    acc.assign(n, 0.0);
    acc[index0] = 1.0;
    accp = &acc;
  }
  if (w > 1) band_tridiagonalize(a, n, w, accp);

  std::vector<double> d(n), e(n, 0.0);
  for (int i = 0; i < n; ++i) d[i] = a[static_cast<size_t>(i) * n + i];
  for (int i = 0; i + 1 < n; ++i) e[i] = a[static_cast<size_t>(i + 1) * n + i];
  tridiag_ql(d, e, accp);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return d[i] > d[j]; });

  std::vector<double> values(n);
  for (int k = 0; k < n; ++k) values[k] = d[order[k]];
  if (row_out) {
    row_out->resize(n);
    for (int k = 0; k < n; ++k) (*row_out)[k] = cplx{acc[order[k]], 0.0};
  }
  return values;
}

EigenDecomposition sorted_decomposition(JacobiResult r) {
  int n = static_cast<int>(r.values.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return r.values[i] > r.values[j]; });
  EigenDecomposition d;
  d.order = n;
  d.values.resize(n);
  d.vectors.assign(static_cast<size_t>(n) * n, cplx{0.0, 0.0});
  for (int k = 0; k < n; ++k) {
    d.values[k] = r.values[order[k]];
    for (int i = 0; i < n; ++i)
      d.vectors[static_cast<size_t>(i) * n + k] = r.vectors[static_cast<size_t>(i) * n + order[k]];
  }
  return d;
}

}  // namespace

EigenDecomposition eigh(const HermitianMatrix& H) {
  require_hermitian(H);
  return sorted_decomposition(jacobi_hermitian(H, true));
}

std::vector<double> eigenvalues(const HermitianMatrix& H) {
  require_hermitian(H);
  int w = 0;
  if (use_band_path(H, &w)) return band_values_and_optional_row(H, w, 0, nullptr);
  JacobiResult r = jacobi_hermitian(H, false);
  std::sort(r.values.begin(), r.values.end(), std::greater<double>());
  return r.values;
}

ValuesAndRow eigh_row(const HermitianMatrix& H, int basis_index) {
  require_hermitian(H);
  int n = H.order();
  if (basis_index < 1 || basis_index > n) throw std::invalid_argument("basis_index out of range");
  int w = 0;
  if (use_band_path(H, &w)) {
    ValuesAndRow vr;
    vr.values = band_values_and_optional_row(H, w, basis_index - 1, &vr.row);
    return vr;
  }
  EigenDecomposition d = eigh(H);
  ValuesAndRow vr;
  vr.values = d.values;
  vr.row.resize(n);
  for (int k = 0; k < n; ++k) vr.row[k] = d.vector_entry(basis_index - 1, k);
  return vr;
}

std::vector<double> singular_values(const HermitianMatrix& H) {
  std::vector<double> v = eigenvalues(H);
  for (double& x : v) x = std::abs(x);
  std::sort(v.begin(), v.end(), std::greater<double>());
  return v;
}

double spectral_norm(const HermitianMatrix& H) {
  if (H.order() == 0) return 0.0;
  std::vector<double> v = eigenvalues(H);
  return std::max(std::abs(v.front()), std::abs(v.back()));
}

std::vector<double> spectral_weights(const EigenDecomposition& decomp, int basis_index) {
  int n = decomp.order;
  if (basis_index < 1 || basis_index > n) throw std::invalid_argument("basis_index out of range");
  std::vector<double> w(n);
  for (int k = 0; k < n; ++k) w[k] = std::norm(decomp.vector_entry(basis_index - 1, k));

  // Redistribute equally inside numerically degenerate clusters: the
  // projection is onto the whole eigenspace, so only the cluster sum is
  // basis-independent.
  double scale = 0.0;
  for (double v : decomp.values) scale = std::max(scale, std::abs(v));
  double cluster_tol = 1e-9 * std::max(scale, 1e-300);
  int k = 0;
  while (k < n) {
    int j = k;
    while (j + 1 < n && decomp.values[j] - decomp.values[j + 1] < cluster_tol) ++j;
    if (j > k) {
      double sum = 0.0;
      for (int i = k; i <= j; ++i) sum += w[i];
      double each = sum / (j - k + 1);
      for (int i = k; i <= j; ++i) w[i] = each;
    }
    k = j + 1;
  }
  return w;
}

std::vector<cplx> band_eigenvector(const HermitianMatrix& H, double shift) {
  require_hermitian(H);
  int n = H.order();
  int w = std::max(1, H.bandwidth());

  // Banded LU with partial pivoting of (H - shift*I); storage holds the
  // lower band (w) plus the pivoted upper band (2w).
  int upper = 2 * w;
  std::vector<std::vector<cplx>> rows(n, std::vector<cplx>(static_cast<size_t>(upper + w + 1), cplx{0, 0}));
  // rows[i][w + (j - i)] for j in [i - w, i + 2w]
  auto entry = [&](int i, int j) -> cplx& { return rows[i][static_cast<size_t>(w + j - i)]; };
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - w); j <= std::min(n - 1, i + w); ++j)
      entry(i, j) = H.at(i, j) - (i == j ? cplx{shift, 0.0} : cplx{0.0, 0.0});

  std::vector<int> pivots(n);
  std::vector<std::vector<cplx>> multipliers(n);
  double diag_floor = 1e-14 * std::max(1.0, H.max_abs());
  for (int col = 0; col < n; ++col) {
    int last = std::min(n - 1, col + w);
    int piv = col;
    for (int i = col + 1; i <= last; ++i)
      if (std::abs(entry(i, col)) > std::abs(entry(piv, col))) piv = i;
    pivots[col] = piv;
    if (piv != col) {
      for (int j = col; j <= std::min(n - 1, col + upper); ++j) std::swap(entry(col, j), entry(piv, j));
    }
    cplx d = entry(col, col);
    if (std::abs(d) < diag_floor) {
      d = cplx{diag_floor, 0.0};  // exact-shift regularization
      entry(col, col) = d;
    }
    multipliers[col].resize(static_cast<size_t>(last - col), cplx{0, 0});
    for (int i = col + 1; i <= last; ++i) {
      cplx m = entry(i, col) / d;
      multipliers[col][static_cast<size_t>(i - col - 1)] = m;
      entry(i, col) = 0.0;
      for (int j = col + 1; j <= std::min(n - 1, col + upper); ++j) entry(i, j) -= m * entry(col, j);
    }
  }

  auto solve = [&](std::vector<cplx> b) {
    for (int col = 0; col < n; ++col) {
      if (pivots[col] != col) std::swap(b[col], b[pivots[col]]);
      int last = std::min(n - 1, col + w);
      for (int i = col + 1; i <= last; ++i) b[i] -= multipliers[col][static_cast<size_t>(i - col - 1)] * b[col];
    }
    for (int i = n - 1; i >= 0; --i) {
      cplx s = b[i];
      for (int j = i + 1; j <= std::min(n - 1, i + upper); ++j) s -= entry(i, j) * b[j];
      b[i] = s / entry(i, i);
    }
    return b;
  };

  std::vector<cplx> v(n);
  for (int i = 0; i < n; ++i) v[i] = cplx{1.0 / std::sqrt(static_cast<double>(n)), 0.0};
  for (int it = 0; it < 4; ++it) {
    v = solve(std::move(v));
    double nrm = 0.0;
    for (const cplx& x : v) nrm += std::norm(x);
    nrm = std::sqrt(nrm);
    if (nrm == 0.0) throw numeric_error("inverse iteration produced a zero vector");
    for (cplx& x : v) x /= nrm;
  }
  // Deterministic phase: largest-magnitude component made real positive.
  int imax = 0;
  for (int i = 1; i < n; ++i)
    if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
  cplx ph = v[imax] / std::abs(v[imax]);
  for (cplx& x : v) x /= ph;
  return v;
}

}  // namespace specgap
