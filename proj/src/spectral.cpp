#include "l96x/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace l96x {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

Complex unit_root_power(int N, long long jk) {
  long long r = jk % N;
  if (r < 0) r += N;
  const double angle = two_pi * static_cast<double>(r) / N;
  return {std::cos(angle), std::sin(angle)};
}

LaurentPoly::LaurentPoly(std::map<int, double> coeffs) : coeffs_(std::move(coeffs)) {
  std::erase_if(coeffs_, [](const auto& kv) { return kv.second == 0.0; });
}

double LaurentPoly::coeff(int j) const {
  auto it = coeffs_.find(j);
  return it == coeffs_.end() ? 0.0 : it->second;
}

int LaurentPoly::min_exp() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
int LaurentPoly::max_exp() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

Complex LaurentPoly::at(Complex z) const {
  Complex acc = 0.0;
  for (const auto& [j, d] : coeffs_) acc += d * std::pow(z, j);
  return acc;
}

Complex LaurentPoly::at_root(int j, int N) const {
  Complex acc = 0.0;
  for (const auto& [m, d] : coeffs_)
    acc += d * unit_root_power(N, static_cast<long long>(j) * m);
  return acc;
}

double LaurentPoly::real_at(double s) const {
  double acc = 0.0;
  for (const auto& [j, d] : coeffs_) acc += d * std::cos(two_pi * j * s);
  return acc;
}

double LaurentPoly::imag_at(double s) const {
  double acc = 0.0;
  for (const auto& [j, d] : coeffs_) acc += d * std::sin(two_pi * j * s);
  return acc;
}

double LaurentPoly::real_deriv_at(double s) const {
  double acc = 0.0;
  for (const auto& [j, d] : coeffs_) acc -= d * two_pi * j * std::sin(two_pi * j * s);
  return acc;
}

double LaurentPoly::imag_deriv_at(double s) const {
  double acc = 0.0;
  for (const auto& [j, d] : coeffs_) acc += d * two_pi * j * std::cos(two_pi * j * s);
  return acc;
}

LaurentPoly LaurentPoly::reciprocal() const {
  std::map<int, double> flipped;
  for (const auto& [j, d] : coeffs_) flipped[-j] = d;
  return LaurentPoly(std::move(flipped));
}

LaurentPoly laurent_of(const GMap& g) {
  std::map<int, double> d;
  for (const Monomial& t : g.terms()) {
    d[t.a] += t.coeff;
    d[t.b] += t.coeff;
  }
  return LaurentPoly(std::move(d));
}

std::vector<Complex> eigenvalues(const LaurentPoly& p, int N, double F) {
  if (N < 1) throw std::invalid_argument("eigenvalues: N must be positive");
  std::vector<Complex> out(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) out[static_cast<std::size_t>(j)] = F * p.at_root(j, N) - 1.0;
  return out;
}

Eigen::MatrixXd circulant_matrix(const Eigen::VectorXd& first_row) {
  const int n = static_cast<int>(first_row.size());
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = first_row[((j - i) % n + n) % n];
  return a;
}

Eigen::MatrixXd circulant_of(const LaurentPoly& p, int N) {
  if (N < 1) throw std::invalid_argument("circulant_of: N must be positive");
  if (!p.is_zero() && (p.max_exp() - p.min_exp() >= N))
    throw std::invalid_argument("circulant_of: exponent window wider than N");
  Eigen::VectorXd row = Eigen::VectorXd::Zero(N);
  for (const auto& [j, d] : p.coeffs()) row[detail::wrap(j, N)] += d;
  return circulant_matrix(row);
}

LaurentPoly laurent_from_row(const Eigen::VectorXd& first_row) {
  const int n = static_cast<int>(first_row.size());
  std::map<int, double> d;
  for (int j = 0; j < n; ++j) {
    const int e = (2 * j <= n) ? j : j - n;  // window -N/2 < e <= N/2
    if (first_row[j] != 0.0) d[e] += first_row[j];
  }
  return LaurentPoly(std::move(d));
}

Eigen::VectorXcd fourier_column(int N, int l) {
  if (l < 0 || l >= N) throw std::invalid_argument("fourier_column: index out of range");
  Eigen::VectorXcd q(N);
  const double scale = 1.0 / std::sqrt(static_cast<double>(N));
  for (int k = 0; k < N; ++k)
    q[k] = scale * unit_root_power(N, static_cast<long long>(k) * l);
  return q;
}

BilinearSymbol::BilinearSymbol(std::map<std::pair<int, int>, double> coeffs)
    : coeffs_(std::move(coeffs)) {
  std::erase_if(coeffs_, [](const auto& kv) { return kv.second == 0.0; });
}

double BilinearSymbol::coeff(int r, int s) const {
  auto it = coeffs_.find({r, s});
  return it == coeffs_.end() ? 0.0 : it->second;
}

Complex BilinearSymbol::at(Complex z, Complex w) const {
  Complex acc = 0.0;
  for (const auto& [rs, q] : coeffs_) acc += q * std::pow(z, rs.first) * std::pow(w, rs.second);
  return acc;
}

Complex BilinearSymbol::at_roots(int k, int l, int N) const {
  Complex acc = 0.0;
  for (const auto& [rs, q] : coeffs_)
    acc += q * unit_root_power(N, static_cast<long long>(k) * rs.first +
                                      static_cast<long long>(l) * rs.second);
  return acc;
}

BilinearSymbol bilinear_symbol(const GMap& g) { return BilinearSymbol(q_coefficients(g)); }

std::vector<TorusZero> torus_zero_check(const BilinearSymbol& symbol, int grid, double tol) {
  if (grid < 12) throw std::invalid_argument("torus_zero_check: grid must be >= 12");
  std::vector<TorusZero> zeros;
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) {
      const Complex v = symbol.at_roots(i, j, grid);
      if (std::abs(v) < tol)
        zeros.push_back({i, j, unit_root_power(grid, i), unit_root_power(grid, j),
                         std::abs(v)});
    }
  return zeros;
}

EigenCurve eigencurve(const LaurentPoly& p, int N, int samples) {
  if (samples < 2) throw std::invalid_argument("eigencurve: need at least 2 samples");
  EigenCurve c;
  c.s.reserve(static_cast<std::size_t>(samples));
  c.curve.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double s = static_cast<double>(i) / samples;
    c.s.push_back(s);
    c.curve.push_back({p.real_at(s), p.imag_at(s)});
  }
  c.discrete.reserve(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) c.discrete.push_back(p.at_root(j, N));
  return c;
}

}  // namespace l96x
