#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace l96x {

/// One quadratic monomial of an advection map, c * x_{i+a} * x_{i+b},
/// stored with a <= b.
struct Monomial {
  int a = 0;
  int b = 0;
  double coeff = 0.0;
};

/// A shift-equivariant quadratic map on circular arrays, described by the
/// monomials of its component at site 0:
///
///   G(x)_i = sum_t  c_t * x_{i+a_t} * x_{i+b_t}   (indices mod N).
///
/// The description is independent of the array size; evaluation instantiates
/// it at a concrete N. Immutable after construction; terms are kept in a
/// canonical form (a <= b, sorted, merged, zero coefficients dropped) so that
/// equal maps compare equal.
class GMap {
 public:
  GMap() = default;
  explicit GMap(std::vector<Monomial> terms);

  const std::vector<Monomial>& terms() const noexcept { return terms_; }

  /// Localization width k: all offsets lie in [-k, k].
  int localization() const noexcept { return k_; }

  /// Minimum site count for the classification theory (2k + 2); evaluation
  /// itself only needs N >= k + 1 (see evaluate).
  int min_sites() const noexcept { return 2 * k_ + 2; }

  bool is_zero() const noexcept { return terms_.empty(); }

  bool operator==(const GMap& other) const;

  friend GMap operator+(const GMap& g, const GMap& h);
  friend GMap operator-(const GMap& g, const GMap& h);
  friend GMap operator*(double c, const GMap& g);
  GMap operator-() const { return -1.0 * *this; }

 private:
  std::vector<Monomial> terms_;
  int k_ = 0;
};

namespace detail {
// shared by the real and complex evaluation paths
void require_sites(const GMap& g, Eigen::Index n);
inline int wrap(long long i, int n) {
  long long r = i % n;
  return static_cast<int>(r < 0 ? r + n : r);
}
}  // namespace detail

/// G(x) for a state of any size N >= k+1 (offsets wrap modulo N).
template <typename Derived>
Eigen::Vector<typename Derived::Scalar, Eigen::Dynamic> evaluate(
    const GMap& g, const Eigen::MatrixBase<Derived>& x_expr) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Vector<Scalar, Eigen::Dynamic> x = x_expr;
  detail::require_sites(g, x.size());
  const int n = static_cast<int>(x.size());
  Eigen::Vector<Scalar, Eigen::Dynamic> out = Eigen::Vector<Scalar, Eigen::Dynamic>::Zero(n);
  for (const Monomial& t : g.terms())
    for (int i = 0; i < n; ++i)
      out[i] += t.coeff * x[detail::wrap(i + t.a, n)] * x[detail::wrap(i + t.b, n)];
  return out;
}

/// The symmetric bilinear form B with G(x) = B(x,x)/2, i.e. the polarization
/// B(x,y) = (G(x+y) - G(x-y))/2, computed termwise rather than by difference
/// of evaluations. Works on real and complex states.
template <typename DX, typename DY>
Eigen::Vector<typename DX::Scalar, Eigen::Dynamic> bilinear(const GMap& g,
                                                            const Eigen::MatrixBase<DX>& x_expr,
                                                            const Eigen::MatrixBase<DY>& y_expr) {
  using Scalar = typename DX::Scalar;
  static_assert(std::is_same_v<Scalar, typename DY::Scalar>, "bilinear: mixed scalar types");
  const Eigen::Vector<Scalar, Eigen::Dynamic> x = x_expr;
  const Eigen::Vector<Scalar, Eigen::Dynamic> y = y_expr;
  detail::require_sites(g, x.size());
  if (x.size() != y.size()) throw std::invalid_argument("bilinear: mismatched state sizes");
  const int n = static_cast<int>(x.size());
  Eigen::Vector<Scalar, Eigen::Dynamic> out = Eigen::Vector<Scalar, Eigen::Dynamic>::Zero(n);
  for (const Monomial& t : g.terms())
    for (int i = 0; i < n; ++i) {
      const int ia = detail::wrap(i + t.a, n), ib = detail::wrap(i + t.b, n);
      out[i] += t.coeff * (x[ia] * y[ib] + x[ib] * y[ia]);
    }
  return out;
}

/// Entries of the symmetric coefficient matrix Q (component-0 window) with
/// G(x)_0 = x^T Q x / 2: off-diagonal Q_ab = Q_ba = coeff, diagonal
/// Q_aa = 2 coeff. Keys are offset pairs (row, column).
std::map<std::pair<int, int>, double> q_coefficients(const GMap& g);

/// Jacobian of G at x0 as a dense matrix: A[x0] y = B(x0, y).
Eigen::MatrixXd linearize_at(const GMap& g, const Eigen::VectorXd& x0);

struct EnergyViolation {
  int i = 0;
  int j = 0;
  double residual = 0.0;
};

/// Result of the algebraic energy-preservation check. When `preserving` is
/// false, `violations` lists index pairs whose cyclic coefficient sum
/// Q_ij + Q_{(i-j)(-j)} + Q_{(j-i)(-i)} fails to vanish.
struct EnergyCertificate {
  bool preserving = false;
  std::vector<EnergyViolation> violations;
};

/// Checks x^T G(x) = 0 identically via the cyclic condition on the quadratic
/// coefficients. Exact for integer/dyadic coefficients; a 1e-12 relative
/// tolerance absorbs float coefficients.
EnergyCertificate is_energy_preserving(const GMap& g);

/// Basis of the energy-preserving k-localized maps: 2 elements for k=1,
/// 6 for k=2, 12 for k=3 (each generator followed by its reflection).
std::vector<GMap> basis(int k);

/// The named maps G0..G8 of the catalogue; `reflected` applies the
/// index-reversal conjugation (the "~" maps).
GMap standard_gmap(int index, bool reflected = false);

/// Conjugation by index reversal: (~G)(x) = tau(G(tau x)) with
/// tau(x)_i = x_{N-1-i}; on monomial offsets, (a, b) -> (-a, -b).
GMap tilde(const GMap& g);

/// Dimension of { g in the k-localized energy-preserving space :
/// linearization at the all-ones state vanishes }. 0 / 2 / 6 for k = 1 / 2 / 3.
int linearization_kernel_dim(int k);

/// A parsed advection-map expression together with its source text.
struct GMapExpr {
  std::string source;
  GMap resolved;
};

/// Parses expressions like "G3", "G3 - ~G3", "-G1 + 0.5*G5".
/// Grammar: expr ::= ['+'|'-'] term (('+'|'-') term)*
///          term ::= [real '*'] ['~'] 'G' digit        (digit in 0..8)
/// Throws ParseError with the offending position.
GMapExpr parse_gmap(std::string_view source);

}  // namespace l96x
