#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "l96x/gmap.hpp"

namespace l96x {

using Complex = std::complex<double>;

/// z^k for z = exp(2*pi*i*j/N), computed from the reduced angle
/// 2*pi*((j*k) mod N)/N so that symmetry identities hold to the last bit.
Complex unit_root_power(int N, long long jk);

/// A real-coefficient Laurent polynomial p(z) = sum_j d_j z^j on a finite
/// exponent window. Restricted to the unit circle z = e^{2 pi i s} it is the
/// curve Lambda(s) traced by the eigenvalue formula of circulant matrices.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(std::map<int, double> coeffs);

  const std::map<int, double>& coeffs() const noexcept { return coeffs_; }
  double coeff(int j) const;
  bool is_zero() const noexcept { return coeffs_.empty(); }
  int min_exp() const;
  int max_exp() const;

  Complex at(Complex z) const;
  /// p evaluated at the N-th unit root to the j-th power (angle-exact).
  Complex at_root(int j, int N) const;

  /// Lambda_R(s) = Re p(e^{2 pi i s}) and Lambda_I(s) = Im p(e^{2 pi i s}).
  double real_at(double s) const;
  double imag_at(double s) const;
  /// d/ds of the two curve components.
  double real_deriv_at(double s) const;
  double imag_deriv_at(double s) const;

  /// p(z^{-1}) — the polynomial of the reflected map.
  LaurentPoly reciprocal() const;

  bool operator==(const LaurentPoly& other) const { return coeffs_ == other.coeffs_; }

 private:
  std::map<int, double> coeffs_;  // exponent -> coefficient, zeros dropped
};

/// Laurent polynomial of the linearization of g at the all-ones state:
/// d_j = A_{0j} = sum_l Q_{jl}, window [-k, k].
LaurentPoly laurent_of(const GMap& g);

/// Eigenvalues of F*A - I where A is the circulant with symbol p:
/// lambda_j = F * p(omega_N^j) - 1, j = 0..N-1 in index order.
std::vector<Complex> eigenvalues(const LaurentPoly& p, int N, double F);

/// Dense circulant matrix from its first row.
Eigen::MatrixXd circulant_matrix(const Eigen::VectorXd& first_row);

/// Dense circulant whose symbol is p: first_row[j mod N] = d_j.
Eigen::MatrixXd circulant_of(const LaurentPoly& p, int N);

/// Laurent polynomial of a circulant first row, exponent window
/// -N/2 < j <= N/2 (entry j maps to exponent j, or j - N when j > N/2).
LaurentPoly laurent_from_row(const Eigen::VectorXd& first_row);

/// Column l of the normalized symmetric Fourier matrix:
/// (q_l)_k = omega_N^{k l} / sqrt(N).
Eigen::VectorXcd fourier_column(int N, int l);

/// The two-variable symbol P(z, w) = sum_{r,s} Q_rs z^r w^s of the bilinear
/// form: B(q_k, q_l) = P(omega^k, omega^l)/sqrt(N) * q_{k+l}.
class BilinearSymbol {
 public:
  BilinearSymbol() = default;
  explicit BilinearSymbol(std::map<std::pair<int, int>, double> coeffs);

  const std::map<std::pair<int, int>, double>& coeffs() const noexcept { return coeffs_; }
  double coeff(int r, int s) const;
  Complex at(Complex z, Complex w) const;
  /// P(omega_N^k, omega_N^l), angle-exact.
  Complex at_roots(int k, int l, int N) const;

 private:
  std::map<std::pair<int, int>, double> coeffs_;
};

BilinearSymbol bilinear_symbol(const GMap& g);

/// One near-zero of |P| located by a uniform grid scan over the torus.
struct TorusZero {
  int i = 0;             // z = exp(2 pi i * i/grid)
  int j = 0;             // w = exp(2 pi i * j/grid)
  Complex z, w;
  double absval = 0.0;
};

/// Scans the grid x grid torus for |P(z,w)| < tol.
std::vector<TorusZero> torus_zero_check(const BilinearSymbol& symbol, int grid,
                                        double tol = 1e-8);

/// Sampled eigenvalue curve s -> p(e^{2 pi i s}) together with the discrete
/// spectrum lambda_j = p(omega_N^j).
struct EigenCurve {
  std::vector<double> s;              // sample positions in [0, 1)
  std::vector<Complex> curve;         // p at the samples
  std::vector<Complex> discrete;      // p at the N-th unit roots, j ascending
};

EigenCurve eigencurve(const LaurentPoly& p, int N, int samples = 512);

}  // namespace l96x
