#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "specgap/matrix.hpp"

namespace specgap {

enum class Lattice { half_line, full_line };

// p x p Hermitian-matrix-valued function of theta in [0, 2pi), stored by its
// Fourier coefficient blocks: f(theta) = sum_k coeff[k] e^{i k theta}.
// Hermiticity of every evaluation is forced by coeff[-k] = coeff[k]^dagger.
class MatrixSymbol {
public:
  MatrixSymbol(int block_size, std::map<int, std::vector<cplx>> coeffs);

  int block_size() const { return p_; }
  int bandwidth() const { return bandwidth_; }
  const std::map<int, std::vector<cplx>>& coeffs() const { return coeffs_; }

  cplx coeff_entry(int k, int r, int c) const;  // 0 when block k is absent
  HermitianMatrix eval(double theta) const;

private:
  int p_;
  int bandwidth_;
  std::map<int, std::vector<cplx>> coeffs_;  // k -> row-major p x p block
};

// Periodic discrete Schrodinger operator with hopping perturbations: diagonal
// potential of period p, unit hopping inside each period block, and corner
// coefficients a_k coupling row 1 of block m+k to the last column of block m.
// f(theta) = sum_k a_k e^{i k theta} is the corner entry of the symbol.
struct SchrodingerSpec {
  int period = 0;
  std::vector<double> potential;  // b_1..b_p
  std::map<int, double> corner;   // k -> a_k, finitely supported
  Lattice lattice = Lattice::half_line;
  bool ordered = false;  // asserts b_1 <= ... <= b_p; validated

  void validate() const;
};

// Periodic Jacobi operator J[s][s] = b_s, J[s][s+1] = a_s (period p, a_s > 0).
// rotation selects which of the p equivalent symbols f_k to use: the window
// starts at site k+1, so the corner coefficient is offdiag[(k+p-1) mod p].
struct JacobiSpec {
  int period = 0;
  std::vector<double> offdiag;  // a_1..a_p, positive
  std::vector<double> diag;     // b_1..b_p
  int rotation = 0;             // k in {0..p-1}
  Lattice lattice = Lattice::full_line;

  void validate() const;
};

// Banded self-adjoint operator given directly by an entry rule on the
// enumerated basis (1-based indices). entry(i, j) must vanish for
// |i - j| > bandwidth and be Hermitian; bounds enclose the spectrum.
struct ExplicitBand {
  int bandwidth = 0;
  std::function<cplx(std::int64_t, std::int64_t)> entry;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  std::string label;
};

struct SymbolOperator {
  MatrixSymbol symbol;
  Lattice lattice = Lattice::full_line;
};

using OperatorSpec = std::variant<SchrodingerSpec, JacobiSpec, SymbolOperator, ExplicitBand>;

// One-parameter family: the Schrodinger diagonal entries become polynomials
// a_i(x) given by coefficient lists (coeffs[i][j] is the x^j coefficient).
// base.potential must equal the evaluations a_i(0).
struct FamilySpec {
  SchrodingerSpec base;
  std::vector<std::vector<double>> coeffs;
  double x_lo = 0.0, x_hi = 0.0;  // closed domain containing 0
  std::optional<double> lipschitz_override;

  void validate() const;
};

MatrixSymbol schrodinger_symbol(const SchrodingerSpec& spec);
MatrixSymbol jacobi_symbol(const JacobiSpec& spec);

HermitianMatrix truncate(const OperatorSpec& spec, int n);

SchrodingerSpec family_evaluate(const FamilySpec& family, double x);

// sup over the domain of max_i |a_i'(x)|, via the coefficient bound
// sum_j j*|c_ij|*X^{j-1} with X = max(|x_lo|, |x_hi|); exact for degree <= 1.
double family_lipschitz_bound(const FamilySpec& family);

// Numerical rank of P_n A - A P_n restricted to indices [1, n + w].
int degree_rank(const OperatorSpec& spec, int n);

// Gershgorin enclosure [m, M] of the full operator (every truncation's
// spectrum lies inside), and the tolerance scale max(1, |m|, |M|).
std::pair<double, double> global_bounds(const OperatorSpec& spec);
double operator_scale(const OperatorSpec& spec);

// Bandwidth of the truncation matrices in the enumerated basis (the centered
// full-line enumeration doubles the site-space bandwidth plus one).
int enumerated_bandwidth(const OperatorSpec& spec);

// (A - lambda0 I)^2 as a banded entry rule over the same enumerated basis.
// The square is formed on the operator and then truncated, never the other
// way around: P_n A^2 P_n differs from (P_n A P_n)^2 at the boundary.
ExplicitBand squared_shift_spec(const OperatorSpec& spec, double lambda0);

// Direct sum [value] (+) A: index 1 is a decoupled site with the given
// diagonal value, indices 2.. enumerate A. Plants an exact eigenvalue.
ExplicitBand direct_sum_point(double value, const OperatorSpec& spec);

const char* lattice_name(Lattice l);

}  // namespace specgap
