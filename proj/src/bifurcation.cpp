#include "l96x/bifurcation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "l96x/errors.hpp"

namespace l96x {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Mode {
  double re = 0.0;
  double im = 0.0;
  int j = -1;
};

// Eigenvalue-curve samples at the complex mode pairs 0 < j < N/2, sorted by
// real part descending (mode index ascending on exact equality).
std::vector<Mode> sorted_modes(const LaurentPoly& p, int N) {
  // Curves that vanish identically on the unit circle (reflection-antisymmetric
  // maps) evaluate to O(eps) residue, not exact zero; clamp so they never count
  // as crossings.
  double scale = 0.0;
  for (const auto& [e, c] : p.coeffs()) scale += std::abs(c);
  const double floor = 1e-13 * scale;
  std::vector<Mode> modes;
  for (int j = 1; 2 * j < N; ++j) {
    const Complex v = p.at_root(j, N);
    const double re = std::abs(v.real()) < floor ? 0.0 : v.real();
    modes.push_back({re, v.imag(), j});
  }
  std::sort(modes.begin(), modes.end(), [](const Mode& a, const Mode& b) {
    return a.re != b.re ? a.re > b.re : a.j < b.j;
  });
  return modes;
}

// Groups the positive-real-part prefix into tie classes: a mode joins the
// current class when its relative gap to the class leader is below
// kHopfTieTol.  Members of a class are ordered by mode index.
std::vector<std::vector<Mode>> tie_classes(const std::vector<Mode>& sorted) {
  std::vector<std::vector<Mode>> classes;
  for (const Mode& m : sorted) {
    if (m.re <= 0.0) break;
    if (!classes.empty() &&
        classes.back().front().re - m.re < kHopfTieTol * classes.back().front().re) {
      classes.back().push_back(m);
    } else {
      classes.push_back({m});
    }
  }
  for (auto& c : classes)
    std::sort(c.begin(), c.end(), [](const Mode& a, const Mode& b) { return a.j < b.j; });
  return classes;
}

HopfReport crossing_report(const Mode& m, int N) {
  HopfReport r;
  r.F1 = 1.0 / m.re;
  r.mode_k = m.j;
  r.tau0 = m.im / m.re;
  r.z1 = unit_root_power(N, m.j);
  return r;
}

}  // namespace

const char* to_string(BifType t) {
  switch (t) {
    case BifType::hopf: return "hopf";
    case BifType::pitchfork: return "pitchfork";
    default: return "none";
  }
}

HopfReport first_hopf(const LaurentPoly& p, int N) {
  const auto classes = tie_classes(sorted_modes(p, N));
  if (classes.empty())
    throw DomainError("no Hopf for F>0: every mode pair of the eigenvalue curve has "
                      "non-positive real part (N=" + std::to_string(N) + ")");
  const auto& top = classes.front();
  HopfReport r = crossing_report(top.front(), N);
  if (top.size() > 1) {
    r.tie = true;
    r.tie_mode = top[1].j;
    r.note = "Hopf-Hopf tie with mode " + std::to_string(top[1].j);
  }
  return r;
}

HopfReport second_hopf(const LaurentPoly& p, int N) {
  const auto classes = tie_classes(sorted_modes(p, N));
  std::size_t crossing = 0;
  for (const auto& c : classes) crossing += c.size();
  if (crossing < 2)
    throw DomainError("second Hopf undefined: fewer than two eigenvalue pairs cross "
                      "the imaginary axis for F>0 (N=" + std::to_string(N) + ")");
  HopfReport r;
  if (classes.front().size() > 1) {
    r = crossing_report(classes.front()[1], N);
    r.tie = true;
    r.tie_mode = classes.front()[0].j;
    r.note = "Hopf-Hopf tie with mode " + std::to_string(r.tie_mode);
  } else {
    r = crossing_report(classes[1].front(), N);
    if (classes[1].size() > 1) {
      r.tie = true;
      r.tie_mode = classes[1][1].j;
      r.note = "second crossing tied with mode " + std::to_string(r.tie_mode);
    }
  }
  return r;
}

HopfReport first_lyapunov(const GMap& g, int N) {
  const LaurentPoly p = laurent_of(g);
  HopfReport r = first_hopf(p, N);
  if (r.tie)
    throw DomainError("first Hopf at F=" + std::to_string(r.F1) +
                      " is a Hopf-Hopf tie between modes " + std::to_string(r.mode_k) +
                      " and " + std::to_string(r.tie_mode) + "; use hopf_hopf");
  // Work with the member of the pair whose frequency is positive; the normal
  // form assumes the eigenvalue +i*tau0 with tau0 > 0.
  const int k = r.tau0 >= 0.0 ? r.mode_k : N - r.mode_k;
  const double tau = std::abs(r.tau0);
  const double F1 = r.F1;
  const Complex pa1 = F1 * p.at(Complex(1.0, 0.0)) - 1.0;
  const Complex den2 = Complex(0.0, 2.0 * tau) - (F1 * p.at_root(2 * k, N) - 1.0);
  if (tau < kResonanceTol) {
    r.degenerate = true;
    r.note = "degenerate: crossing eigenvalue pair is real (tau0 = 0)";
    return r;
  }
  if (std::abs(pa1) < kResonanceTol) {
    r.degenerate = true;
    r.note = "degenerate: zero-mode denominator p(1) is resonant";
    return r;
  }
  if (std::abs(den2) < kResonanceTol) {
    r.degenerate = true;
    r.note = "degenerate: 2 i tau0 lies in the spectrum";
    return r;
  }
  const BilinearSymbol PB = bilinear_symbol(g);
  const double b_mix = PB.at_roots(k, N - k, N).real();  // P_B(z1, conj z1) is real
  const Complex b_one = PB.at_roots(k, 0, N);            // P_B(z1, 1)
  const Complex num2 = PB.at_roots(k, k, N) * PB.at_roots(2 * k, N - k, N);
  const double I1 =
      (-2.0 * b_mix * (b_one / pa1).real() + (num2 / den2).real()) / (2.0 * tau * N);
  r.I1 = I1;
  r.supercritical = I1 < 0.0;
  return r;
}

TwoLocalCriteria hopf_criteria_2local(const LaurentPoly& p) {
  if (!p.is_zero() && (p.min_exp() < -2 || p.max_exp() > 2))
    throw DomainError("2-localized Hopf criteria need an exponent window inside [-2, 2]; "
                      "got [" + std::to_string(p.min_exp()) + ", " +
                      std::to_string(p.max_exp()) + "]");
  const double dm2 = p.coeff(-2), dm1 = p.coeff(-1);
  const double d1 = p.coeff(1), d2 = p.coeff(2);
  const double R1 = dm1 + d1, R2 = dm2 + d2;
  TwoLocalCriteria c;
  c.condition1 = std::abs(R1) < 4.0 * std::abs(R2);
  c.condition2 = (dm2 - d2) * (dm1 + d1) != 2.0 * (d1 - dm1) * (dm2 + d2);
  if (c.condition1) {
    c.s1 = std::acos(std::clamp(-R1 / (4.0 * R2), -1.0, 1.0)) / kTwoPi;
    c.s2 = 1.0 - c.s1;
  } else {
    c.s1 = c.s2 = kNaN;
  }
  c.has_hopf_Fpos = c.condition1 && c.condition2 && R2 < 0.0;
  c.has_hopf_Fneg = c.condition1 && c.condition2 && R2 > 0.0;

  // First-bifurcation classification (even-N convention): the first crossing
  // as |F| grows happens at the extremum of the real curve over the interior
  // critical point and the real mode s = 1/2; an interior extremum whose
  // imaginary part vanishes is a double real crossing, not a Hopf.
  double scale = 1.0;
  for (const auto& [j, d] : p.coeffs()) scale = std::max(scale, std::abs(d));
  const double tol = 1e-12 * scale;
  const double v_half = p.real_at(0.5);
  const double v_crit = c.condition1 ? p.real_at(c.s1) : 0.0;
  const auto type_at = [&](bool interior) {
    if (!interior) return BifType::pitchfork;
    return std::abs(p.imag_at(c.s1)) <= tol ? BifType::pitchfork : BifType::hopf;
  };
  {
    const bool interior = c.condition1 && v_crit > v_half;
    const double v = interior ? v_crit : v_half;
    c.first_bif_type_Fpos = v > tol ? type_at(interior) : BifType::none;
  }
  {
    const bool interior = c.condition1 && v_crit < v_half;
    const double v = interior ? v_crit : v_half;
    c.first_bif_type_Fneg = v < -tol ? type_at(interior) : BifType::none;
  }
  return c;
}

WaveDiagnostics wave_diagnostics(const LaurentPoly& p, int N, double F) {
  const HopfReport h = first_hopf(p, N);
  WaveDiagnostics w;
  w.s1 = static_cast<double>(h.mode_k) / N;
  w.wavelength_sites = static_cast<double>(N) / h.mode_k;
  w.phase_velocity = -F * p.imag_at(w.s1) / (kTwoPi * w.s1);
  w.group_velocity = -F * p.imag_deriv_at(w.s1) / kTwoPi;
  return w;
}

Eigen::MatrixXd perturbation_matrix(int N, int l) {
  if (N < 2) throw DomainError("perturbation matrix needs N >= 2");
  if (l <= 0 || l >= N)
    throw DomainError("perturbation mode must satisfy 0 < l < N; got l=" +
                      std::to_string(l));
  if (2 * l == N)
    throw DomainError("perturbation mode l = N/2 is a real mode (rank drops to 1); "
                      "rejected as degenerate");
  Eigen::MatrixXd C(N, N);
  for (int m = 0; m < N; ++m)
    for (int n = 0; n < N; ++n)
      C(m, n) = 2.0 / N *
                unit_root_power(N, static_cast<long long>(l) * (m - n)).real();
  return C;
}

HopfHopfReport hopf_hopf(const GMap& g, int N) {
  const LaurentPoly p = laurent_of(g);
  const HopfReport h1 = first_hopf(p, N);
  const HopfReport h2 = second_hopf(p, N);
  HopfHopfReport r;
  r.mode_k = h1.mode_k;
  r.mode_l = h2.mode_k;
  r.F1 = h1.F1;
  r.F2 = h2.F1;
  r.tie = h1.tie;
  r.alpha0 = r.tie ? 0.0 : (r.F2 - r.F1) / r.F2;
  if (r.tie) r.note = "exact Hopf-Hopf tie (alpha0 = 0)";

  // Positive-frequency representatives of the two crossing pairs.
  const int k = h1.tau0 >= 0.0 ? r.mode_k : N - r.mode_k;
  const double tau1 = std::abs(h1.tau0);
  const double im2 = r.F1 * p.at_root(r.mode_l, N).imag();
  const int l = im2 >= 0.0 ? r.mode_l : N - r.mode_l;
  const double tau2 = std::abs(im2);
  r.tau1 = tau1;
  r.tau2 = tau2;

  // Spectrum of the unfolded linearization F1*A + alpha0*C_l - I.
  const auto mu = [&](long long j) -> Complex {
    const int jm = static_cast<int>(((j % N) + N) % N);
    Complex v = r.F1 * p.at_root(jm, N) - 1.0;
    if (jm == r.mode_l || jm == N - r.mode_l) v += r.alpha0;
    return v;
  };

  const Complex i_tau1(0.0, tau1), i_tau2(0.0, tau2);
  struct Den {
    Complex v;
    const char* name;
  };
  const Den dens[] = {
      {2.0 * i_tau1 - mu(2LL * k), "2 i tau1 - mu(2k)"},
      {-mu(0), "mu(0)"},
      {i_tau1 + i_tau2 - mu(static_cast<long long>(k) + l), "i(tau1+tau2) - mu(k+l)"},
      {i_tau1 - i_tau2 - mu(static_cast<long long>(k) - l), "i(tau1-tau2) - mu(k-l)"},
      {i_tau2 - i_tau1 - mu(static_cast<long long>(l) - k), "i(tau2-tau1) - mu(l-k)"},
      {2.0 * i_tau2 - mu(2LL * l), "2 i tau2 - mu(2l)"},
  };
  for (const Den& d : dens) {
    if (std::abs(d.v) < kResonanceTol) {
      r.degenerate = true;
      r.note = std::string("resonant denominator ") + d.name;
      r.p.setConstant(kNaN);
      r.theta = r.delta = r.F3_star = kNaN;
      return r;
    }
  }
  const Complex d2000 = dens[0].v, d1100 = dens[1].v, d1010 = dens[2].v;
  const Complex d1001 = dens[3].v, d0110 = dens[4].v, d0020 = dens[5].v;

  const BilinearSymbol PB = bilinear_symbol(g);
  const auto B = [&](int a, int b) { return PB.at_roots(a, b, N); };
  const double n = static_cast<double>(N);
  const Complex G2100 =
      (2.0 * B(k, N - k) * B(k, 0) / d1100 + B(k, k) * B(2 * k, N - k) / d2000) / n;
  const Complex G1011 = (B(l, N - l) * B(k, 0) / d1100 +
                         B(k, N - l) * B(l, k - l) / d1001 +
                         B(k, l) * B(N - l, k + l) / d1010) / n;
  const Complex H1110 = (B(k, N - k) * B(l, 0) / d1100 +
                         B(N - k, l) * B(k, l - k) / d0110 +
                         B(k, l) * B(N - k, k + l) / d1010) / n;
  const Complex H0021 =
      (2.0 * B(l, N - l) * B(l, 0) / d1100 + B(l, l) * B(N - l, 2 * l) / d0020) / n;
  r.p(0, 0) = 0.5 * G2100.real();
  r.p(0, 1) = G1011.real();
  r.p(1, 0) = H1110.real();
  r.p(1, 1) = 0.5 * H0021.real();
  r.theta = r.p(0, 1) / r.p(1, 1);
  r.delta = r.p(1, 0) / r.p(0, 0);
  r.simple_case = r.p(0, 0) * r.p(1, 1) > 0.0;
  r.type_one = r.p(0, 0) * r.p(1, 1) - r.p(0, 1) * r.p(1, 0) < 0.0;
  if (r.tie) {
    r.F3_star = r.F1;
  } else {
    const double gamma1_slope = 1.0 / (r.theta * r.F1) - 1.0 / r.F2;
    r.F3_star = r.F1 - r.alpha0 / gamma1_slope;
  }
  if (!std::isfinite(r.theta) || !std::isfinite(r.F3_star)) {
    r.degenerate = true;
    r.note = "normal-form coefficient ratios are not finite";
  }
  return r;
}

}  // namespace l96x
