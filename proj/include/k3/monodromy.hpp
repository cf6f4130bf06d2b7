#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "k3/cmatrix.hpp"
#include "k3/jet.hpp"
#include "k3/real.hpp"
#include "k3/series.hpp"

namespace k3 {

struct HypergeometricParams {
  std::vector<mpq_class> rho;
  mpq_class C = 1;

  int n() const { return static_cast<int>(rho.size()); }
  // rho_k = k/(n+1), C = (n+1)^(n+1)
  static HypergeometricParams mirror(int n);
  // true when rho_k = k/(n+1) for all k (the C-independent part of the mirror case)
  bool mirror_exponents() const;
};

// Throws InvalidInput unless rho is strictly increasing in (0,1), nonresonant, and C > 0.
void validate(const HypergeometricParams& p);

CMatrix m0(int n, mpfr_prec_t bits);
CMatrix M_infty(const std::vector<mpq_class>& rho, mpfr_prec_t bits);

struct BJetOptions {
  std::optional<Real> euler_gamma;  // replaces the Euler constant
  bool force_general = false;       // skip the multiplication-formula path
};

// Jet of C^{-eps} B_r(eps) at eps = 0 with `order` coefficients; r is 1-based.
Jet B_jet(int r, const HypergeometricParams& p, int order, mpfr_prec_t bits, const BJetOptions& opt = {});

// P~ with P~[n-1-j][n-k] = [eps^j] C^{-eps} B_k(eps) / (2 pi i)^j.
CMatrix transition_matrix(const HypergeometricParams& p, mpfr_prec_t bits, const BJetOptions& opt = {});

struct MonodromySuite {
  int n = 0;
  CMatrix m0, m1C, mInf, P_tilde;
  long digits = 0;
};
// Works at digits + 20 guard digits; throws PrecisionExhausted when the residual
// checks (P~ P~^-1 = I, m1C m0 = mInf, B_r(0) = 1) fail at the requested digits.
MonodromySuite monodromy_suite(const HypergeometricParams& p, long digits);
MonodromySuite monodromy_suite(int n, long digits);

// Reference monodromy matrices for n = 2..5 as polynomials in kappa with rational coefficients.
struct KappaPoly {
  std::vector<mpq_class> c;  // c[0] + c[1] kappa + c[2] kappa^2
  Complex eval(const Complex& kappa, mpfr_prec_t bits) const;
};
using KappaMatrix = std::vector<std::vector<KappaPoly>>;
struct ReferenceMatrices {
  int n;
  KappaMatrix m0, m1C, mInf;
};
const std::vector<ReferenceMatrices>& reference_matrices();
// kappa_4 = -200 zeta(3)/(2 pi i)^3, kappa_5 = 420 zeta(3)/(2 pi i)^3, zero otherwise.
Complex reference_kappa(int n, mpfr_prec_t bits);
CMatrix evaluate(const KappaMatrix& m, const Complex& kappa, mpfr_prec_t bits);

// pFq(a; b | t) for |t| < 1 with a ratio-test tail bound.
struct SeriesValue {
  Complex value;
  int terms = 0;
  Real tail_bound;
};
SeriesValue pfq_eval(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b, const Complex& t,
                     mpfr_prec_t bits);

// nF(n-1)(rho; 1..1 | t). |t| >= 1 throws DivergentArgument unless continuation is
// requested, in which case the value is carried along the segment from 1/2 to t by
// the ODE integrator (double-extended accuracy, t off [1, inf)).
Complex hypergeometric_eval(const std::vector<mpq_class>& rho, const Complex& t, mpfr_prec_t bits,
                            bool continuation = false);

// Frobenius data at t = 0: y_r[k] = [eps^r] prod (rho_i+eps)_k / (1+eps)_k^n.
struct FrobeniusBasis {
  HypergeometricParams params;
  std::vector<PowerSeries> y;  // r = 0..n-1, series in x = C t

  // values[m][j] = theta^j f~_m(t), principal branch of log t
  std::vector<std::vector<Complex>> state(const Complex& t, mpfr_prec_t bits) const;
  // f~_m(t) for m = 0..n-1
  std::vector<Complex> values(const Complex& t, mpfr_prec_t bits) const;
};
FrobeniusBasis frobenius_zero(const HypergeometricParams& p, int order);

// Clausen: 2F1(1/8,3/8;1|t)^2 - 3F2(1/4,1/2,3/4;1,1|t).
Complex clausen_defect(const Complex& t, mpfr_prec_t bits);

// Hadamard relation: coefficients of nF(n-1)(k/(n+1); 1..1) against
// nF(n-1)(k/(n+1); j/n) * (n-1)F(n-2)(k/n; 1..1), with 1F0(1/2) at the bottom.
struct HadamardReport {
  bool holds = false;
  PowerSeries lhs, rhs;
};
HadamardReport hadamard_relation(int n, int order);

// ---- ODE oracle -------------------------------------------------------------

using cld = std::complex<long double>;

enum class LoopKind { around_zero, around_1overC, around_infinity, custom };

struct Loop {
  LoopKind kind = LoopKind::around_zero;
  std::vector<cld> polyline;  // custom loops, in units of 1/C, closed at 1/2
  static Loop standard(LoopKind k) { return {k, {}}; }
  static Loop custom_loop(std::vector<cld> pts) { return {LoopKind::custom, std::move(pts)}; }
  std::string name() const;
};

struct OdeOptions {
  long double tolerance = 1e-15L;
  long double min_step = 1e-12L;
  bool parallel = false;
};

struct OdeResult {
  std::vector<std::vector<cld>> matrix;  // monodromy in the Frobenius basis at 0
  long steps = 0;
  long double matching_condition = 0;  // |W| |W^-1| at the base point
};

// Monodromy of the basis (f~_{n-1}, ..., f~_0) along the loop, based at t = 1/(2C).
// Throws StepSizeUnderflow and BasisMatchingIllConditioned.
OdeResult ode_transport(const HypergeometricParams& p, const Loop& loop, const OdeOptions& opt = {});
// Several loops at once; loops run concurrently when opt.parallel is set.
std::vector<OdeResult> ode_transport_all(const HypergeometricParams& p, const std::vector<Loop>& loops,
                                         const OdeOptions& opt = {});

// Characteristic polynomial (monic, low to high) of a small complex matrix.
std::vector<cld> charpoly_ld(const std::vector<std::vector<cld>>& m);
std::vector<std::vector<cld>> to_ld(const CMatrix& m);
std::vector<std::vector<cld>> matmul_ld(const std::vector<std::vector<cld>>& a,
                                        const std::vector<std::vector<cld>>& b);

// ---- Mellin-Barnes ------------------------------------------------------------

struct MellinBarnesOptions {
  long digits = 30;
  double tilt = 1.0;       // Re s grows by tilt * |Im s| along the tails
  double panel = 0.5;      // panel width in Im s
  int nodes = 20;          // Gauss-Legendre nodes per panel
  double max_height = 2000;
  bool parallel = false;
};

struct MellinBarnesResult {
  Complex value;
  double H = 0;          // truncation height in Im s
  double tail_bound = 0; // integrand bound beyond H times the remaining length estimate
  long evaluations = 0;
};

// f(0, C t) from the contour integral at Re s = sigma on the real axis.
MellinBarnesResult mellin_barnes_eval(const HypergeometricParams& p, const Complex& t, const mpq_class& sigma,
                                      const MellinBarnesOptions& opt = {});

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int m, mpfr_prec_t bits, std::vector<Real>& x, std::vector<Real>& w);

}  // namespace k3
