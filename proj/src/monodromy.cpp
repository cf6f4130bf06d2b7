#include "k3/monodromy.hpp"

#include <algorithm>
#include <cmath>

#include "k3/errors.hpp"
#include "k3/gkz.hpp"
#include "k3/multipoly.hpp"
#include "k3/rational.hpp"
#include "k3/special.hpp"

namespace k3 {

HypergeometricParams HypergeometricParams::mirror(int n) {
  HypergeometricParams p;
  for (int k = 1; k <= n; ++k) {
    p.rho.push_back(ratio(k, n + 1));
  }
  mpz_class c;
  mpz_ui_pow_ui(c.get_mpz_t(), static_cast<unsigned long>(n + 1), static_cast<unsigned long>(n + 1));
  p.C = c;
  return p;
}

bool HypergeometricParams::mirror_exponents() const {
  int N = n() + 1;
  for (int k = 1; k <= n(); ++k)
    if (rho[k - 1] != ratio(k, N)) return false;
  return true;
}

void validate(const HypergeometricParams& p) {
  if (p.n() < 1) throw Error(ErrorKind::InvalidInput, "rho is empty");
  if (p.C <= 0) throw Error(ErrorKind::InvalidInput, "C must be positive");
  for (int i = 0; i < p.n(); ++i) {
    if (p.rho[i] <= 0 || p.rho[i] >= 1) throw Error(ErrorKind::InvalidInput, "rho entries must lie in (0,1)");
    if (i > 0 && !(p.rho[i - 1] < p.rho[i]))
      throw Error(ErrorKind::InvalidInput, "rho must be strictly increasing (distinct exponents at infinity)");
  }
  if (p.n() >= 2 && !nonresonance_check(p.rho)) throw Error(ErrorKind::InvalidInput, "resonant parameters");
}

CMatrix m0(int n, mpfr_prec_t bits) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "n must be positive");
  CMatrix m(n, n, bits);
  mpz_class fact = 1;
  for (int r = 0; r < n; ++r) {
    if (r > 0) fact *= r;
    for (int i = 0; i + r < n; ++i) m(i, i + r) = Complex(mpq_class(1, fact), bits);
  }
  return m;
}

CMatrix M_infty(const std::vector<mpq_class>& rho, mpfr_prec_t bits) {
  int n = static_cast<int>(rho.size());
  CMatrix m(n, n, bits);
  Real pi = const_pi(bits);
  for (int i = 0; i < n; ++i) m(i, i) = expi(-(pi * 2L) * Real(rho[n - 1 - i], bits));
  return m;
}

namespace {

// log Gamma(1 + eps) = -gamma eps + sum_{k>=2} (-1)^k zeta(k) eps^k / k
Jet log_gamma_one_plus(int order, mpfr_prec_t bits, const std::optional<Real>& euler) {
  Jet l(order, bits);
  if (order > 1) l[1] = Complex(-(euler ? *euler : euler_gamma(bits)));
  for (int k = 2; k < order; ++k) {
    Real z = zeta_int(k, bits) / static_cast<long>(k);
    l[k] = Complex(k % 2 == 0 ? z : -z);
  }
  return l;
}

Jet scale_argument(const Jet& j, long s) {
  Jet r = j;
  Real f(1L, j.bits());
  for (int k = 0; k < j.order(); ++k) {
    r[k] = j[k] * f;
    f = f * s;
  }
  return r;
}

}  // namespace

Jet B_jet(int r, const HypergeometricParams& p, int order, mpfr_prec_t bits, const BJetOptions& opt) {
  int n = p.n();
  if (r < 1 || r > n) throw Error(ErrorKind::InvalidInput, "B_jet index out of range");
  if (order < 1) throw Error(ErrorKind::InvalidInput, "order must be positive");
  Real pi = const_pi(bits);
  Complex ipi(Real(0L, bits), pi);
  Jet L(order, bits);
  Real logC = log(Real(p.C, bits));
  Jet lg1 = log_gamma_one_plus(order, bits, opt.euler_gamma);
  if (p.mirror_exponents() && !opt.force_general) {
    // prod_k Gamma(k/N + eps)/Gamma(k/N) = N^{-N eps} Gamma(1 + N eps) / Gamma(1 + eps)
    long N = n + 1;
    L = lg1 * Complex(N, bits) - scale_argument(lg1, N);
    logC = logC - log(Real(N, bits)) * N;
  } else {
    L = lg1 * Complex(n, bits);
    for (const auto& rho : p.rho) L -= log_gamma_shift_jet(Real(rho, bits), order);
  }
  if (order > 1) L[1] = L[1] - ipi - Complex(logC);
  Jet E = exp(L);
  Real a = pi * Real(p.rho[r - 1], bits);
  Jet s = sin_linear(Complex(a), Complex(pi), order);
  Jet num = Jet::constant(Complex(sin(a)), order);
  return E * (num / s);
}

CMatrix transition_matrix(const HypergeometricParams& p, mpfr_prec_t bits, const BJetOptions& opt) {
  validate(p);
  int n = p.n();
  CMatrix P(n, n, bits);
  Complex tpi = two_pi_i(bits);
  for (int k = 1; k <= n; ++k) {
    Jet b = B_jet(k, p, n, bits, opt);
    Complex scale(1L, bits);
    for (int j = 0; j < n; ++j) {
      P(n - 1 - j, n - k) = b[j] / scale;
      scale = scale * tpi;
    }
  }
  return P;
}

namespace {

Real tolerance_for(long digits, mpfr_prec_t bits) {
  Real ten(10L, bits);
  return pow(ten, Real(-digits, bits));
}

MonodromySuite suite_at(const HypergeometricParams& p, long digits, mpfr_prec_t bits, CMatrix* P_out) {
  int n = p.n();
  MonodromySuite s{n, m0(n, bits), CMatrix(n, n, bits), CMatrix(n, n, bits), transition_matrix(p, bits), digits};
  CMatrix Pinv = inverse(s.P_tilde);
  s.mInf = s.P_tilde * M_infty(p.rho, bits) * Pinv;
  s.m1C = s.mInf * inverse(s.m0);
  if (P_out) *P_out = Pinv;
  return s;
}

}  // namespace

MonodromySuite monodromy_suite(const HypergeometricParams& p, long digits) {
  validate(p);
  if (p.n() < 2) throw Error(ErrorKind::InvalidInput, "n must be at least 2");
  mpfr_prec_t bits = digits_to_bits(digits + 20);
  int n = p.n();
  CMatrix Pinv(n, n, bits);
  MonodromySuite s = suite_at(p, digits, bits, &Pinv);
  Real tol = tolerance_for(digits, bits);
  auto fail = [&](const std::string& what) {
    throw Error(ErrorKind::PrecisionExhausted, what + " residual exceeds 1e-" + std::to_string(digits));
  };
  if (max_abs(s.P_tilde * Pinv - CMatrix::identity(n, bits)) > tol) fail("P~ P~^-1 = I");
  if (max_abs(s.m1C * s.m0 - s.mInf) > tol) fail("m1C m0 = mInf");
  // the same suite at 64 more bits must agree
  MonodromySuite hi = suite_at(p, digits, bits + 64, nullptr);
  CMatrix lo_mInf(n, n, bits + 64), lo_m1C(n, n, bits + 64);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      lo_mInf(i, j) = s.mInf(i, j);
      lo_m1C(i, j) = s.m1C(i, j);
    }
  if (max_abs(hi.mInf - lo_mInf) > tol || max_abs(hi.m1C - lo_m1C) > tol) fail("precision doubling");
  s.digits = digits;
  return s;
}

MonodromySuite monodromy_suite(int n, long digits) {
  return monodromy_suite(HypergeometricParams::mirror(n), digits);
}

// ---- reference matrices -------------------------------------------------------------------

Complex KappaPoly::eval(const Complex& kappa, mpfr_prec_t bits) const {
  Complex r(0L, bits), pw(1L, bits);
  for (const auto& c : this->c) {
    r += pw * c;
    pw = pw * kappa;
  }
  return r;
}

namespace {

KappaMatrix parse_table(const std::vector<std::vector<std::string>>& rows) {
  KappaMatrix m;
  for (const auto& row : rows) {
    std::vector<KappaPoly> r;
    for (const auto& e : row) {
      UPoly u = parse_poly(e).over({"k"}).to_upoly("k");
      r.push_back(KappaPoly{u.coeffs()});
    }
    m.push_back(std::move(r));
  }
  return m;
}

KappaMatrix exact_m0(int n) {
  KappaMatrix m(n, std::vector<KappaPoly>(n));
  mpz_class fact = 1;
  for (int r = 0; r < n; ++r) {
    if (r > 0) fact *= r;
    for (int i = 0; i + r < n; ++i) m[i][i + r].c = {mpq_class(1, fact)};
  }
  return m;
}

}  // namespace

const std::vector<ReferenceMatrices>& reference_matrices() {
  static const std::vector<ReferenceMatrices> t = [] {
    std::vector<ReferenceMatrices> v;
    v.push_back({2, exact_m0(2), parse_table({{"1", "0"}, {"-3", "1"}}), parse_table({{"1", "1"}, {"-3", "-2"}})});
    v.push_back({3, exact_m0(3), parse_table({{"0", "0", "-1/4"}, {"0", "1", "0"}, {"-4", "0", "0"}}),
                 parse_table({{"0", "0", "-1/4"}, {"0", "1", "1"}, {"-4", "-4", "-2"}})});
    v.push_back({4, exact_m0(4),
                 parse_table({{"1+k", "0", "5*k/12", "k^2/5"},
                              {"-25/12", "1", "-125/144", "-5*k/12"},
                              {"0", "0", "1", "0"},
                              {"-5", "0", "-25/12", "1-k"}}),
                 parse_table({{"1+k", "1+k", "1/2+11*k/12", "1/6+7*k/12+k^2/5"},
                              {"-25/12", "-13/12", "-131/144", "-103/144-5*k/12"},
                              {"0", "0", "1", "1"},
                              {"-5", "-5", "-55/12", "-23/12-k"}})});
    v.push_back({5, exact_m0(5),
                 parse_table({{"75/64", "0", "55/512", "-11*k/384", "-121/24576"},
                              {"-k", "1", "-5*k/8", "k^2/6", "11*k/384"},
                              {"-15/4", "0", "-43/32", "5*k/8", "55/512"},
                              {"0", "0", "0", "1", "0"},
                              {"-6", "0", "-15/4", "k", "75/64"}}),
                 parse_table({{"75/64", "75/64", "355/512", "-11*k/384+155/512", "-11*k/384+2399/24576"},
                              {"-k", "-k+1", "-9*k/8+1", "(4*k-3)*(k-4)/24", "k^2/6-125*k/384+1/6"},
                              {"-15/4", "-15/4", "-103/32", "5*k/8-63/32", "5*k/8-369/512"},
                              {"0", "0", "0", "1", "1"},
                              {"-6", "-6", "-27/4", "k-19/4", "k-61/64"}})});
    return v;
  }();
  return t;
}

Complex reference_kappa(int n, mpfr_prec_t bits) {
  long c = n == 4 ? -200 : n == 5 ? 420 : 0;
  if (c == 0) return Complex(0L, bits);
  Complex tpi = two_pi_i(bits);
  return Complex(zeta_int(3, bits) * c) / (tpi * tpi * tpi);
}

CMatrix evaluate(const KappaMatrix& m, const Complex& kappa, mpfr_prec_t bits) {
  int n = static_cast<int>(m.size());
  CMatrix r(n, n, bits);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = m[i][j].eval(kappa, bits);
  return r;
}

// ---- series evaluation -----------------------------------------------------------

SeriesValue pfq_eval(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b, const Complex& t,
                     mpfr_prec_t bits) {
  if (a.size() != b.size() + 1) throw Error(ErrorKind::InvalidInput, "pfq_eval needs p = q + 1");
  std::vector<mpq_class> lower = b;
  lower.push_back(1);
  for (const auto& x : lower)
    if (x <= 0) throw Error(ErrorKind::InvalidInput, "lower parameters must be positive");
  Real at = abs(t);
  if (at >= Real(1L, bits)) throw Error(ErrorKind::DivergentArgument, "|t| >= 1");
  std::vector<mpq_class> ua;
  for (const auto& x : a) ua.push_back(abs(x));
  std::sort(ua.begin(), ua.end());
  std::sort(lower.begin(), lower.end());
  mpfr_prec_t wp = bits + 16;
  Complex tw = t;
  mpfr_prec_round(tw.re.get(), wp, MPFR_RNDN);
  mpfr_prec_round(tw.im.get(), wp, MPFR_RNDN);
  Real atw = abs(tw);
  SeriesValue out{Complex(0L, wp), 0, Real(0L, wp)};
  Complex term(1L, wp);
  Real eps = ldexp(Real(1L, wp), -static_cast<long>(bits));
  for (long k = 0;; ++k) {
    out.value += term;
    mpq_class ratio = 1;
    for (const auto& x : a) ratio *= x + k;
    for (const auto& x : b) ratio /= x + k;
    ratio /= k + 1;
    term = term * tw * ratio;
    long K = k + 1;
    // sup_{j>=K} |term_{j+1}/term_j| <= |t| prod max(1, (K+|a_i|)/(K+b_i))
    mpq_class q = 1;
    for (size_t i = 0; i < ua.size(); ++i) {
      mpq_class f = (ua[i] + K) / (lower[i] + K);
      if (f > 1) q *= f;
    }
    Real qb = atw * Real(q, wp);
    if (qb < Real(1L, wp)) {
      Real bound = abs(term) / (Real(1L, wp) - qb);
      Real scale = abs(out.value);
      if (scale < Real(1L, wp)) scale = Real(1L, wp);
      if (bound < eps * scale) {
        out.tail_bound = bound;
        out.terms = static_cast<int>(K);
        break;
      }
    }
    if (k > 2000000) throw Error(ErrorKind::PrecisionExhausted, "series did not converge");
  }
  mpfr_prec_round(out.value.re.get(), bits, MPFR_RNDN);
  mpfr_prec_round(out.value.im.get(), bits, MPFR_RNDN);
  return out;
}

Complex hypergeometric_continue(const std::vector<mpq_class>& rho, const Complex& t, mpfr_prec_t bits);

Complex hypergeometric_eval(const std::vector<mpq_class>& rho, const Complex& t, mpfr_prec_t bits,
                            bool continuation) {
  if (abs(t) < Real(1L, bits)) return pfq_eval(rho, std::vector<mpq_class>(rho.size() - 1, 1), t, bits).value;
  if (!continuation) throw Error(ErrorKind::DivergentArgument, "|t| >= 1 and continuation disabled");
  return hypergeometric_continue(rho, t, bits);
}

// ---- Frobenius basis at zero -------------------------------------------------------

namespace {

using QJet = std::vector<mpq_class>;

QJet qmul(const QJet& a, const QJet& b) {
  size_t n = a.size();
  QJet r(n);
  for (size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; i + j < n; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// 1/(c + eps)
QJet qinv_linear(const mpq_class& c, size_t n) {
  QJet r(n);
  mpq_class p = 1 / c;
  for (size_t m = 0; m < n; ++m) {
    r[m] = (m % 2 == 0) ? p : mpq_class(-p);
    p /= c;
  }
  return r;
}

QJet qlinear(const mpq_class& c, size_t n) {
  QJet r(n);
  r[0] = c;
  if (n > 1) r[1] = 1;
  return r;
}

}  // namespace

FrobeniusBasis frobenius_zero(const HypergeometricParams& p, int order) {
  validate(p);
  if (order < 1) throw Error(ErrorKind::InvalidInput, "order must be positive");
  size_t n = static_cast<size_t>(p.n());
  std::vector<std::vector<mpq_class>> y(n, std::vector<mpq_class>(order));
  QJet c(n);
  c[0] = 1;
  for (int k = 0; k < order; ++k) {
    for (size_t r = 0; r < n; ++r) y[r][k] = c[r];
    for (const auto& rho : p.rho) c = qmul(c, qlinear(rho + k, n));
    QJet inv = qinv_linear(mpq_class(k + 1), n);
    for (size_t i = 0; i < n; ++i) c = qmul(c, inv);
  }
  FrobeniusBasis fb;
  fb.params = p;
  for (auto& v : y) fb.y.emplace_back(std::move(v));
  return fb;
}

std::vector<std::vector<Complex>> FrobeniusBasis::state(const Complex& t, mpfr_prec_t bits) const {
  int n = params.n();
  int order = y.empty() ? 0 : y[0].order();
  Complex x = t * Real(params.C, bits);
  // S_j(eps) = sum_k (k + eps)^j c_k(eps) x^k
  std::vector<Jet> S(n, Jet(n, bits));
  Complex xk(1L, bits);
  for (int k = 0; k < order; ++k) {
    Jet ck(n, bits);
    for (int r = 0; r < n; ++r) ck[r] = Complex(y[r][k], bits) * xk;
    Jet lin(n, bits);
    lin[0] = Complex(k, bits);
    if (n > 1) lin[1] = Complex(1L, bits);
    Jet acc = ck;
    for (int j = 0; j < n; ++j) {
      S[j] += acc;
      acc = acc * lin;
    }
    xk = xk * x;
  }
  Jet teps = exp_linear(log(t), n);
  Complex tpi = two_pi_i(bits);
  std::vector<std::vector<Complex>> out(n, std::vector<Complex>(n, Complex(bits)));
  for (int j = 0; j < n; ++j) {
    Jet f = teps * S[j];
    Complex scale(1L, bits);
    for (int m = 0; m < n; ++m) {
      out[m][j] = f[m] / scale;
      scale = scale * tpi;
    }
  }
  return out;
}

std::vector<Complex> FrobeniusBasis::values(const Complex& t, mpfr_prec_t bits) const {
  auto s = state(t, bits);
  std::vector<Complex> v;
  for (auto& row : s) v.push_back(row[0]);
  return v;
}

// ---- identities ----------------------------------------------------------------------

Complex clausen_defect(const Complex& t, mpfr_prec_t bits) {
  Complex f = pfq_eval({mpq_class(1, 8), mpq_class(3, 8)}, {mpq_class(1)}, t, bits).value;
  Complex g = pfq_eval({mpq_class(1, 4), mpq_class(1, 2), mpq_class(3, 4)}, {mpq_class(1), mpq_class(1)}, t, bits).value;
  return f * f - g;
}

HadamardReport hadamard_relation(int n, int order) {
  if (n < 2) throw Error(ErrorKind::InvalidInput, "n must be at least 2");
  auto mirror_rho = [](int m) {
    std::vector<mpq_class> r;
    for (int k = 1; k <= m; ++k) r.emplace_back(k, m + 1);
    for (auto& q : r) q.canonicalize();
    return r;
  };
  // omega_0 = 1F0(1/2 | t)
  PowerSeries prev = hypergeometric_coefficients({mpq_class(1, 2)}, {}, order);
  PowerSeries lhs;
  PowerSeries rhs;
  bool holds = true;
  for (int m = 2; m <= n; ++m) {
    std::vector<mpq_class> lower;
    for (int j = 1; j < m; ++j) lower.emplace_back(j, m);
    for (auto& q : lower) q.canonicalize();
    rhs = hadamard_product(hypergeometric_coefficients(mirror_rho(m), lower, order), prev);
    lhs = mirror_coefficients(mirror_rho(m), order);
    holds = holds && lhs == rhs;
    prev = lhs;
  }
  return {holds, lhs, rhs};
}

}  // namespace k3
