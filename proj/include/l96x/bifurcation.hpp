#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "l96x/gmap.hpp"
#include "l96x/spectral.hpp"

namespace l96x {

/// Relative gap below which two crossing values are treated as one exact
/// Hopf-Hopf tie: (F2 - F1)/F2 < kHopfTieTol.  N = 12 is an exact analytic
/// tie, so the tolerance is tight.
inline constexpr double kHopfTieTol = 1e-12;

/// Denominator magnitude below which a normal-form resolvent is treated as
/// resonant and the computation is reported as degenerate.
inline constexpr double kResonanceTol = 1e-10;

/// A Hopf bifurcation of the constant solution F*e as F increases.
///
/// The same type describes the first and the second crossing; for the second
/// crossing the fields F1/mode_k/tau0/z1 hold the second pair's values.
/// first_hopf and second_hopf leave I1 empty; first_lyapunov fills it.
struct HopfReport {
  double F1 = 0.0;       ///< crossing value of the forcing
  int mode_k = -1;       ///< Fourier mode index, 0 < mode_k < N/2
  double tau0 = 0.0;     ///< imaginary part at crossing: F1*p(z1) - 1 = i*tau0
  Complex z1;            ///< the unit root omega_N^mode_k
  bool tie = false;      ///< another mode crosses at the same F (Hopf-Hopf)
  int tie_mode = -1;     ///< the partner mode when tie is set
  std::optional<double> I1;    ///< first Lyapunov coefficient when computed
  bool supercritical = false;  ///< I1 < 0 (meaningful only when I1 is set)
  bool degenerate = false;     ///< resonance prevented the I1 computation
  std::string note;            ///< human-readable remark for flagged cases
};

/// A Hopf-Hopf point unfolded by the rank-2 perturbation alpha*C_l: the two
/// crossing pairs, the normal-form coefficient matrix p_rs, and the tangent
/// estimate F3_star of the Neimark-Sacker value where a second stable limit
/// cycle appears on the physical alpha = 0 line.
struct HopfHopfReport {
  int mode_k = -1;      ///< first crossing mode
  int mode_l = -1;      ///< second crossing mode
  double F1 = 0.0;      ///< first Hopf value
  double F2 = 0.0;      ///< second Hopf value
  double alpha0 = 0.0;  ///< (F2 - F1)/F2, the unfolding shift
  double tau1 = 0.0;    ///< frequency of the mode_k pair at the joint crossing
  double tau2 = 0.0;    ///< frequency of the mode_l pair at the joint crossing
  Eigen::Matrix2d p = Eigen::Matrix2d::Zero();  ///< normal-form matrix p_rs
  double theta = 0.0;   ///< p12/p22
  double delta = 0.0;   ///< p21/p11
  double F3_star = 0.0; ///< F1 - alpha0/gamma1'(F1), tangent N-S estimate
  bool tie = false;          ///< F1 = F2 exactly (alpha0 = 0), e.g. N = 12
  bool simple_case = false;  ///< p11*p22 > 0
  bool type_one = false;     ///< p11*p22 - p12*p21 < 0
  bool degenerate = false;   ///< a resolvent denominator was resonant
  std::string note;          ///< human-readable remark for flagged cases
};

/// First expected bifurcation of the constant solution as |F| grows.
enum class BifType { none, hopf, pitchfork };

const char* to_string(BifType t);

/// Closed-form Hopf-existence test for advection terms with exponent window
/// inside [-2, 2], in terms of R_j = d_j + d_{-j} and I_j = d_j - d_{-j}.
///
/// condition1: |d_-1 + d_1| < 4|d_-2 + d_2| (interior critical points of the
/// real curve exist); condition2: (d_-2 - d_2)(d_-1 + d_1) != 2(d_1 - d_-1)
/// (d_-2 + d_2) (the crossing pair is genuinely complex).  The bifurcation
/// types are classified for even N, where the real mode at s = 1/2 exists;
/// for odd N a pitchfork entry becomes a Hopf of the pair nearest s = 1/2.
struct TwoLocalCriteria {
  bool condition1 = false;
  bool condition2 = false;
  bool has_hopf_Fpos = false;  ///< conditions hold with R2 < 0
  bool has_hopf_Fneg = false;  ///< conditions hold with R2 > 0
  double s1 = 0.0;             ///< interior critical point in (0, 1/2), NaN if none
  double s2 = 0.0;             ///< its mirror 1 - s1, NaN if none
  BifType first_bif_type_Fpos = BifType::none;
  BifType first_bif_type_Fneg = BifType::none;
};

/// Travelling-wave data of the limit cycle born at the first Hopf crossing.
struct WaveDiagnostics {
  double s1 = 0.0;                ///< crossing mode as a fraction, mode_k/N
  double wavelength_sites = 0.0;  ///< 1/s1
  double phase_velocity = 0.0;    ///< c_p = -F*Lambda_I(s1)/(2*pi*s1), signed
  double group_velocity = 0.0;    ///< c_g = -F*Lambda_I'(s1)/(2*pi), signed
};

/// First crossing of the imaginary axis for F > 0: F1 = 1/max Re p(omega^j)
/// over 0 < j < N/2, smallest mode on a tie, tie flagged.  Throws DomainError
/// "no Hopf for F>0" when every such mode has non-positive real part.
HopfReport first_hopf(const LaurentPoly& p, int N);

/// Second crossing: the second-largest positive Re p(omega^j).  Throws
/// DomainError when fewer than two mode pairs cross for F > 0.
HopfReport second_hopf(const LaurentPoly& p, int N);

/// First Hopf crossing together with the first Lyapunov coefficient I1 of
/// the born cycle, evaluated in closed form from the bilinear symbol P_B and
/// p_script(z) = F1*p(z) - 1:
///
///   I1 = 1/(2 tau0 N) * ( -2 P_B(z1, conj z1) Re[P_B(z1, 1)/p_script(1)]
///                         + Re[P_B(z1, z1) P_B(z1^2, conj z1)
///                              / (2 i tau0 - p_script(z1^2))] ).
///
/// Throws DomainError on a tie at F1 (a Hopf-Hopf point; use hopf_hopf).
/// A resonant denominator (2 i tau0 in the spectrum) is reported as
/// degenerate with I1 left empty.
HopfReport first_lyapunov(const GMap& g, int N);

/// Hopf-existence criteria for a 2-localized eigenvalue curve; see
/// TwoLocalCriteria.  Throws DomainError when the window exceeds [-2, 2].
TwoLocalCriteria hopf_criteria_2local(const LaurentPoly& p);

/// Phase and group velocity of the dominant wave at forcing F, evaluated at
/// the discrete crossing mode s1 = mode_k/N of first_hopf.  The linearized
/// mode is exp(i(2 pi s1 k + F Lambda_I(s1) t)), so lines of constant phase
/// move at c_p = -F Lambda_I(s1)/(2 pi s1) and a packet's stationary-phase
/// point at c_g = -F Lambda_I'(s1)/(2 pi), both in sites per time unit.
WaveDiagnostics wave_diagnostics(const LaurentPoly& p, int N, double F);

/// The rank-2 circulant C_l = q_l q_{N-l}^T + q_{N-l} q_l^T with entries
/// 2 cos(2 pi l (m - n)/N)/N: eigenvalue 1 on q_l and q_{N-l}, every other
/// Fourier column in its null space.  Rejects l = 0 and l = N/2 (real mode,
/// rank drops to 1).
Eigen::MatrixXd perturbation_matrix(int N, int l);

/// Hopf-Hopf normal form of the first two crossing pairs under the unfolded
/// linearization F1*A + alpha0*C_l - I, whose eigenvalues are
/// mu_j = F1*p(omega^j) - 1 + alpha0*[j = +-l mod N]; both pairs sit on the
/// imaginary axis at i*tau1, i*tau2.  The coefficients p_rs come from the
/// resolvent formulas of the quadratic normal form (G2100, G1011, H1110,
/// H0021); the amplitude system xi1' = 2 xi1 (mu1 - xi1 - theta xi2),
/// xi2' = 2 xi2 (mu2 - delta xi1 - xi2) has theta = p12/p22, delta = p21/p11
/// with mu1 = F/F1 - 1 and mu2 = F/F2 - 1 + alpha.  The boundary where the
/// second cycle turns stable is mu1 = theta*mu2; solving along alpha = 0
/// with the tangent at (F1, alpha0) gives
///
///   gamma1'(F1) = 1/(theta F1) - 1/F2,   F3_star = F1 - alpha0/gamma1'(F1).
///
/// Resonant denominators produce a degenerate report (p entries NaN).
HopfHopfReport hopf_hopf(const GMap& g, int N);

}  // namespace l96x
