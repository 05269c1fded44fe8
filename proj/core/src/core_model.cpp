#include "specgap/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specgap/eigensolver.hpp"

namespace specgap {

namespace {

// floor division/modulo: blocks of period p tile all of Z
std::int64_t floordiv(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
std::int64_t floormod(std::int64_t a, std::int64_t b) { return a - floordiv(a, b) * b; }

// Centered enumeration of Z: e_0, e_1, e_{-1}, e_2, e_{-2}, ...
std::int64_t centered_site(std::int64_t index1) {
  if (index1 == 1) return 0;
  std::int64_t k = index1 / 2;
  return (index1 % 2 == 0) ? k : -k;
}

// Scalar entry of the Schrodinger operator at integer sites i <= j.
// Block m covers sites {mp+1..(m+1)p}; hopping 1 inside blocks; the corner
// family places a_k at ((m+k)p + 1, (m+1)p) for every m, k, plus mirrors.
double schrodinger_entry_upper(const SchrodingerSpec& s, std::int64_t i, std::int64_t j) {
  std::int64_t p = s.period;
  if (i == j) return s.potential[static_cast<size_t>(floormod(i - 1, p))];
  double v = 0.0;
  if (j == i + 1 && floormod(i, p) != 0) v += 1.0;
  if (floormod(i - 1, p) == 0 && floormod(j, p) == 0) {
    auto it = s.corner.find(static_cast<int>((i - 1) / p - j / p + 1));
    if (it != s.corner.end()) v += it->second;
  }
  if (floormod(i, p) == 0 && floormod(j - 1, p) == 0) {
    auto it = s.corner.find(static_cast<int>((j - 1) / p - i / p + 1));
    if (it != s.corner.end()) v += it->second;
  }
  return v;
}

double schrodinger_entry(const SchrodingerSpec& s, std::int64_t i, std::int64_t j) {
  return i <= j ? schrodinger_entry_upper(s, i, j) : schrodinger_entry_upper(s, j, i);
}

double jacobi_entry(const JacobiSpec& s, std::int64_t i, std::int64_t j) {
  if (i == j) return s.diag[static_cast<size_t>(floormod(i - 1, s.period))];
  if (std::llabs(i - j) == 1) return s.offdiag[static_cast<size_t>(floormod(std::min(i, j) - 1, s.period))];
  return 0.0;
}

cplx symbol_entry(const SymbolOperator& s, std::int64_t i, std::int64_t j) {
  std::int64_t p = s.symbol.block_size();
  std::int64_t mi = floordiv(i - 1, p), mj = floordiv(j - 1, p);
  int ri = static_cast<int>(i - mi * p - 1), rj = static_cast<int>(j - mj * p - 1);
  return s.symbol.coeff_entry(static_cast<int>(mi - mj), ri, rj);
}

// Site-space bandwidth (max |i - j| with a nonzero entry).
std::int64_t site_bandwidth(const SchrodingerSpec& s) {
  std::int64_t w = 1;
  for (const auto& [k, a] : s.corner) {
    if (a == 0.0) continue;
    w = std::max(w, std::llabs((static_cast<std::int64_t>(k) - 1) * s.period + 1));
  }
  return w;
}

struct EntryRule {
  std::function<cplx(std::int64_t, std::int64_t)> entry;  // on the enumerated basis, 1-based
  int bandwidth;                                          // in the enumerated basis
};

template <typename F>
EntryRule enumerate_sites(F site_entry, std::int64_t site_w, Lattice lattice) {
  EntryRule r;
  if (lattice == Lattice::half_line) {
    r.entry = [site_entry](std::int64_t i, std::int64_t j) { return site_entry(i, j); };
    r.bandwidth = static_cast<int>(site_w);
  } else {
    r.entry = [site_entry](std::int64_t i, std::int64_t j) {
      return site_entry(centered_site(i), centered_site(j));
    };
    r.bandwidth = static_cast<int>(2 * site_w + 1);
  }
  return r;
}

EntryRule entry_rule(const OperatorSpec& spec) {
  if (const auto* s = std::get_if<SchrodingerSpec>(&spec)) {
    s->validate();
    SchrodingerSpec copy = *s;
    return enumerate_sites([copy](std::int64_t i, std::int64_t j) { return cplx{schrodinger_entry(copy, i, j), 0.0}; },
                           site_bandwidth(copy), copy.lattice);
  }
  if (const auto* s = std::get_if<JacobiSpec>(&spec)) {
    s->validate();
    JacobiSpec copy = *s;
    return enumerate_sites([copy](std::int64_t i, std::int64_t j) { return cplx{jacobi_entry(copy, i, j), 0.0}; },
                           1, copy.lattice);
  }
  if (const auto* s = std::get_if<SymbolOperator>(&spec)) {
    SymbolOperator copy = *s;
    std::int64_t w = static_cast<std::int64_t>(copy.symbol.bandwidth()) * copy.symbol.block_size() +
                     copy.symbol.block_size() - 1;
    return enumerate_sites([copy](std::int64_t i, std::int64_t j) { return symbol_entry(copy, i, j); }, w,
                           copy.lattice);
  }
  const auto& b = std::get<ExplicitBand>(spec);
  if (!b.entry) throw std::invalid_argument("ExplicitBand has no entry rule");
  return {b.entry, b.bandwidth};
}

}  // namespace

// ---------------------------------------------------------------------------
// MatrixSymbol
// ---------------------------------------------------------------------------

MatrixSymbol::MatrixSymbol(int block_size, std::map<int, std::vector<cplx>> coeffs)
    : p_(block_size), bandwidth_(0), coeffs_(std::move(coeffs)) {
  if (p_ < 1) throw std::invalid_argument("symbol block size must be positive");
  for (const auto& [k, block] : coeffs_) {
    if (block.size() != static_cast<size_t>(p_) * p_)
      throw std::invalid_argument("symbol coefficient block has wrong dimensions");
    bandwidth_ = std::max(bandwidth_, std::abs(k));
  }
  // A_{-k} = A_k^dagger keeps every evaluation Hermitian.
  for (const auto& [k, block] : coeffs_) {
    auto it = coeffs_.find(-k);
    double defect = 0.0;
    for (int r = 0; r < p_; ++r)
      for (int c = 0; c < p_; ++c) {
        cplx other = (it == coeffs_.end()) ? cplx{0.0, 0.0} : it->second[static_cast<size_t>(c) * p_ + r];
        defect = std::max(defect, std::abs(block[static_cast<size_t>(r) * p_ + c] - std::conj(other)));
      }
    if (defect > 1e-12)
      throw std::invalid_argument("symbol coefficients violate A_{-k} = A_k^dagger");
  }
}

cplx MatrixSymbol::coeff_entry(int k, int r, int c) const {
  auto it = coeffs_.find(k);
  if (it == coeffs_.end()) return cplx{0.0, 0.0};
  return it->second[static_cast<size_t>(r) * p_ + c];
}

HermitianMatrix MatrixSymbol::eval(double theta) const {
  HermitianMatrix M(p_);
  for (const auto& [k, block] : coeffs_) {
    cplx ph = std::polar(1.0, k * theta);
    for (int r = 0; r < p_; ++r)
      for (int c = 0; c < p_; ++c) M.at(r, c) += ph * block[static_cast<size_t>(r) * p_ + c];
  }
  return M;
}

// ---------------------------------------------------------------------------
// Spec validation
// ---------------------------------------------------------------------------

void SchrodingerSpec::validate() const {
  if (period < 2) throw std::invalid_argument("Schrodinger spec requires period >= 2");
  if (potential.size() != static_cast<size_t>(period))
    throw std::invalid_argument("potential length must equal the period");
  if (ordered)
    for (size_t i = 0; i + 1 < potential.size(); ++i)
      if (potential[i] > potential[i + 1])
        throw std::invalid_argument("ordered flag set but potential is not nondecreasing");
}

void JacobiSpec::validate() const {
  if (period < 2) throw std::invalid_argument("Jacobi spec requires period >= 2");
  if (offdiag.size() != static_cast<size_t>(period) || diag.size() != static_cast<size_t>(period))
    throw std::invalid_argument("offdiag/diag length must equal the period");
  for (double a : offdiag)
    if (!(a > 0.0)) throw std::invalid_argument("Jacobi off-diagonal entries must be positive");
  if (rotation < 0 || rotation >= period) throw std::invalid_argument("rotation index out of range");
}

void FamilySpec::validate() const {
  base.validate();
  if (coeffs.size() != static_cast<size_t>(base.period))
    throw std::invalid_argument("family needs one coefficient list per diagonal entry");
  if (!(x_lo <= 0.0 && 0.0 <= x_hi)) throw std::invalid_argument("family domain must contain 0");
  for (size_t i = 0; i < coeffs.size(); ++i) {
    double at0 = coeffs[i].empty() ? 0.0 : coeffs[i][0];
    if (std::abs(at0 - base.potential[i]) > 1e-12)
      throw std::invalid_argument("family evaluation at x = 0 must reproduce the base potential");
  }
}

// ---------------------------------------------------------------------------
// Symbols
// ---------------------------------------------------------------------------

MatrixSymbol schrodinger_symbol(const SchrodingerSpec& spec) {
  spec.validate();
  int p = spec.period;
  std::map<int, std::vector<cplx>> blocks;
  auto& A0 = blocks[0];
  A0.assign(static_cast<size_t>(p) * p, cplx{0.0, 0.0});
  for (int i = 0; i < p; ++i) A0[static_cast<size_t>(i) * p + i] = spec.potential[i];
  for (int i = 0; i + 1 < p; ++i) {
    A0[static_cast<size_t>(i) * p + i + 1] = 1.0;
    A0[static_cast<size_t>(i + 1) * p + i] = 1.0;
  }
  // Corner coefficient a_k contributes a_k e^{ik theta} at (1, p); for p = 2
  // the corner position coincides with the off-diagonal.
  for (const auto& [k, a] : spec.corner) {
    if (a == 0.0) continue;
    auto& Ak = blocks[k];
    if (Ak.empty()) Ak.assign(static_cast<size_t>(p) * p, cplx{0.0, 0.0});
    Ak[static_cast<size_t>(0) * p + (p - 1)] += a;
    auto& Amk = blocks[-k];
    if (Amk.empty()) Amk.assign(static_cast<size_t>(p) * p, cplx{0.0, 0.0});
    Amk[static_cast<size_t>(p - 1) * p + 0] += a;
  }
  return MatrixSymbol(p, std::move(blocks));
}

MatrixSymbol jacobi_symbol(const JacobiSpec& spec) {
  spec.validate();
  int p = spec.period, k = spec.rotation;
  auto a = [&](int idx) { return spec.offdiag[static_cast<size_t>(floormod(idx, p))]; };
  auto b = [&](int idx) { return spec.diag[static_cast<size_t>(floormod(idx, p))]; };
  std::map<int, std::vector<cplx>> blocks;
  auto& A0 = blocks[0];
  A0.assign(static_cast<size_t>(p) * p, cplx{0.0, 0.0});
  for (int i = 0; i < p; ++i) A0[static_cast<size_t>(i) * p + i] = b(k + i);
  for (int i = 0; i + 1 < p; ++i) {
    A0[static_cast<size_t>(i) * p + i + 1] = a(k + i);
    A0[static_cast<size_t>(i + 1) * p + i] = a(k + i);
  }
  double corner = a(k + p - 1);
  auto& A1 = blocks[1];
  A1.assign(static_cast<size_t>(p) * p, cplx{0.0, 0.0});
  A1[static_cast<size_t>(0) * p + (p - 1)] = corner;
  auto& Am1 = blocks[-1];
  Am1.assign(static_cast<size_t>(p) * p, cplx{0.0, 0.0});
  Am1[static_cast<size_t>(p - 1) * p + 0] = corner;
  return MatrixSymbol(p, std::move(blocks));
}

// ---------------------------------------------------------------------------
// Truncation and derived operators
// ---------------------------------------------------------------------------

HermitianMatrix truncate(const OperatorSpec& spec, int n) {
  if (n < 1) throw std::invalid_argument("truncation order must be >= 1");
  EntryRule rule = entry_rule(spec);
  HermitianMatrix H(n);
  for (int i = 0; i < n; ++i) {
    H.at(i, i) = cplx{rule.entry(i + 1, i + 1).real(), 0.0};
    int jmax = std::min(n - 1, i + rule.bandwidth);
    for (int j = i + 1; j <= jmax; ++j) {
      cplx v = rule.entry(i + 1, j + 1);
      H.at(i, j) = v;
      H.at(j, i) = std::conj(v);
    }
  }
  return H;
}

SchrodingerSpec family_evaluate(const FamilySpec& family, double x) {
  family.validate();
  if (x < family.x_lo || x > family.x_hi) throw std::domain_error("family parameter outside the domain");
  SchrodingerSpec s = family.base;
  for (int i = 0; i < s.period; ++i) {
    const auto& c = family.coeffs[static_cast<size_t>(i)];
    double v = 0.0;
    for (size_t j = c.size(); j-- > 0;) v = v * x + c[j];  // Horner
    s.potential[static_cast<size_t>(i)] = v;
  }
  s.ordered = false;
  return s;
}

double family_lipschitz_bound(const FamilySpec& family) {
  family.validate();
  if (family.lipschitz_override) return *family.lipschitz_override;
  double X = std::max(std::abs(family.x_lo), std::abs(family.x_hi));
  double L = 0.0;
  for (const auto& c : family.coeffs) {
    double li = 0.0;
    for (size_t j = 1; j < c.size(); ++j)
      li += static_cast<double>(j) * std::abs(c[j]) * std::pow(X, static_cast<double>(j - 1));
    L = std::max(L, li);
  }
  return L;
}

int degree_rank(const OperatorSpec& spec, int n) {
  if (n < 1) throw std::invalid_argument("degree_rank requires n >= 1");
  EntryRule rule = entry_rule(spec);
  int m = n + rule.bandwidth;
  HermitianMatrix A = truncate(spec, m);
  // C = P_n A - A P_n is anti-Hermitian with C[i][j] = A[i][j] ([i<=n]-[j<=n]);
  // i*C is Hermitian with the same singular values.
  HermitianMatrix M(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      int pi = i < n ? 1 : 0, pj = j < n ? 1 : 0;
      M.at(i, j) = cplx{0.0, 1.0} * A.at(i, j) * static_cast<double>(pi - pj);
    }
  std::vector<double> s = singular_values(M);
  if (s.empty() || s.front() == 0.0) return 0;
  double thresh = s.front() * m * 1e-13;
  int rank = 0;
  for (double v : s)
    if (v > thresh) ++rank;
  return rank;
}

std::pair<double, double> global_bounds(const OperatorSpec& spec) {
  if (const auto* s = std::get_if<SchrodingerSpec>(&spec)) {
    s->validate();
    double corner_sum = 0.0;
    for (const auto& [k, a] : s->corner) corner_sum += std::abs(a);
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < s->period; ++i) {
      double radius = 2.0 + corner_sum;  // hopping plus the corner family row mass
      lo = std::min(lo, s->potential[static_cast<size_t>(i)] - radius);
      hi = std::max(hi, s->potential[static_cast<size_t>(i)] + radius);
    }
    return {lo, hi};
  }
  if (const auto* s = std::get_if<JacobiSpec>(&spec)) {
    s->validate();
    double lo = 0.0, hi = 0.0;
    for (int i = 0; i < s->period; ++i) {
      double radius = s->offdiag[static_cast<size_t>(floormod(i - 1, s->period))] +
                      s->offdiag[static_cast<size_t>(i)];
      lo = std::min(lo, s->diag[static_cast<size_t>(i)] - radius);
      hi = std::max(hi, s->diag[static_cast<size_t>(i)] + radius);
    }
    return {lo, hi};
  }
  if (const auto* s = std::get_if<SymbolOperator>(&spec)) {
    int p = s->symbol.block_size();
    double lo = 0.0, hi = 0.0;
    for (int r = 0; r < p; ++r) {
      double diag = s->symbol.coeff_entry(0, r, r).real();
      double radius = 0.0;
      for (const auto& [k, block] : s->symbol.coeffs())
        for (int c = 0; c < p; ++c) {
          if (k == 0 && c == r) continue;
          radius += std::abs(block[static_cast<size_t>(r) * p + c]);
        }
      lo = std::min(lo, diag - radius);
      hi = std::max(hi, diag + radius);
    }
    return {lo, hi};
  }
  const auto& b = std::get<ExplicitBand>(spec);
  return {b.lower_bound, b.upper_bound};
}

double operator_scale(const OperatorSpec& spec) {
  auto [lo, hi] = global_bounds(spec);
  return std::max({1.0, std::abs(lo), std::abs(hi)});
}

int enumerated_bandwidth(const OperatorSpec& spec) { return entry_rule(spec).bandwidth; }

ExplicitBand squared_shift_spec(const OperatorSpec& spec, double lambda0) {
  EntryRule rule = entry_rule(spec);
  int w = rule.bandwidth;
  auto base = rule.entry;
  ExplicitBand sq;
  sq.bandwidth = 2 * w;
  sq.entry = [base, w, lambda0](std::int64_t i, std::int64_t j) {
    // ((A - l)^2)[i][j] over the enumerated basis; the sum is band-limited.
    cplx acc{0.0, 0.0};
    std::int64_t lo = std::max<std::int64_t>(1, std::max(i, j) - w);
    std::int64_t hi = std::min(i, j) + w;
    for (std::int64_t s = lo; s <= hi; ++s) {
      cplx ais = base(i, s);
      if (s == i) ais -= lambda0;
      cplx asj = base(s, j);
      if (s == j) asj -= lambda0;
      acc += ais * asj;
    }
    return acc;
  };
  auto [lo, hi] = global_bounds(spec);
  double r = std::max(std::abs(lo - lambda0), std::abs(hi - lambda0));
  sq.lower_bound = 0.0;
  sq.upper_bound = r * r;
  sq.label = "squared-shift";
  return sq;
}

ExplicitBand direct_sum_point(double value, const OperatorSpec& spec) {
  EntryRule rule = entry_rule(spec);
  auto base = rule.entry;
  ExplicitBand d;
  d.bandwidth = rule.bandwidth;
  d.entry = [base, value](std::int64_t i, std::int64_t j) {
    if (i == 1 || j == 1) return (i == j) ? cplx{value, 0.0} : cplx{0.0, 0.0};
    return base(i - 1, j - 1);
  };
  auto [lo, hi] = global_bounds(spec);
  d.lower_bound = std::min(lo, value);
  d.upper_bound = std::max(hi, value);
  d.label = "direct-sum-point";
  return d;
}

const char* lattice_name(Lattice l) { return l == Lattice::half_line ? "half" : "full"; }

}  // namespace specgap
