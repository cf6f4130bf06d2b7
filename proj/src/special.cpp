#include "k3/special.hpp"

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace k3 {

namespace {
std::mutex g_bern_mutex;
std::vector<mpq_class> g_bern{mpq_class(1)};
}  // namespace

mpq_class bernoulli(int k) {
  if (k < 0) throw std::invalid_argument("bernoulli: negative index");
  std::lock_guard<std::mutex> lock(g_bern_mutex);
  while (static_cast<int>(g_bern.size()) <= k) {
    int m = static_cast<int>(g_bern.size());
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    mpq_class s = 0;
    mpz_class binom = 1;
    for (int j = 0; j < m; ++j) {
      s += binom * g_bern[j];
      binom = binom * (m + 1 - j) / (j + 1);
    }
    g_bern.push_back(-s / binom);
  }
  return g_bern[k];
}

Real zeta_int(int s, mpfr_prec_t bits) {
  if (s < 2) throw std::invalid_argument("zeta_int: s < 2");
  mpfr_prec_t wp = bits + 32;
  long n = static_cast<long>(std::ceil((wp + 10) * 0.6931471805599453 / 1.762747174039086)) + 2;
  std::vector<mpq_class> d(n + 1);
  mpq_class term = 1, acc = 0;
  for (long i = 0; i <= n; ++i) {
    acc += term;
    d[i] = acc;
    term = term * mpq_class(4 * (n + i) * (n - i), (2 * i + 1) * (2 * i + 2));
  }
  Real sum(0L, wp);
  for (long k = 0; k < n; ++k) {
    Real num(mpq_class(d[k] - d[n]), wp);
    Real den(wp);
    mpfr_ui_pow_ui(den.get(), static_cast<unsigned long>(k + 1), static_cast<unsigned long>(s), MPFR_RNDN);
    Real t = num / den;
    if (k % 2) sum -= t;
    else sum += t;
  }
  Real dn(mpq_class(d[n]), wp);
  Real one(1L, wp);
  Real fac = one - ldexp(one, 1 - s);
  Real r = -sum / (dn * fac);
  mpfr_prec_round(r.get(), bits, MPFR_RNDN);
  return r;
}

Real euler_gamma(mpfr_prec_t bits) {
  mpfr_prec_t wp = bits + 32;
  long N = static_cast<long>(std::ceil((wp + 8) * 0.6931471805599453 / 4.0)) + 1;
  Real NN(N * N, wp);
  Real A = -log(Real(N, wp));
  Real B(1L, wp);
  Real U = A, V = B;
  Real eps = ldexp(Real(1L, wp), -static_cast<long>(wp));
  for (long k = 1;; ++k) {
    B = B * NN / (k * k);
    A = (A * NN / k + B) / k;
    U += A;
    V += B;
    if (k > N && abs(A) < eps * abs(U) && B < eps * V) break;
  }
  Real g = U / V;
  mpfr_prec_round(g.get(), bits, MPFR_RNDN);
  return g;
}

Real hurwitz_zeta(int s, const Real& a) {
  if (s < 2) throw std::invalid_argument("hurwitz_zeta: s < 2");
  if (a.sign() <= 0) throw std::invalid_argument("hurwitz_zeta: a <= 0");
  mpfr_prec_t wp = a.prec() + 24;
  long N = static_cast<long>(wp / 3) + 10;
  Real sum(0L, wp);
  Real aw = a;
  mpfr_prec_round(aw.get(), wp, MPFR_RNDN);
  for (long k = 0; k < N; ++k) {
    Real x = aw + k;
    Real p(wp);
    mpfr_pow_si(p.get(), x.get(), -s, MPFR_RNDN);
    sum += p;
  }
  Real x = aw + N;
  Real xs(wp);
  mpfr_pow_si(xs.get(), x.get(), -s, MPFR_RNDN);  // x^{-s}
  sum += xs * x / (s - 1);
  sum += xs / 2L;
  Real eps = ldexp(Real(1L, wp), -static_cast<long>(wp));
  Real xinv2 = Real(1L, wp) / (x * x);
  // term_j = B_{2j}/(2j)! * s(s+1)...(s+2j-2) * x^{-s-2j+1}
  Real pw = xs / x;  // x^{-s-1}
  mpq_class fact = 1;  // (2j)!
  mpz_class rising = s;  // s(s+1)...(s+2j-2)
  for (int j = 1; j < 4 * N; ++j) {
    fact *= (2 * j - 1) * (2 * j);
    if (j > 1) rising *= (s + 2 * j - 3) * (s + 2 * j - 2);
    mpq_class c = bernoulli(2 * j) / fact * rising;
    Real t = Real(c, wp) * pw;
    sum += t;
    if (abs(t) < eps * abs(sum)) break;
    pw *= xinv2;
  }
  mpfr_prec_round(sum.get(), a.prec(), MPFR_RNDN);
  return sum;
}

Real digamma(const Real& a) {
  if (a.sign() <= 0) throw std::invalid_argument("digamma: a <= 0");
  mpfr_prec_t wp = a.prec() + 24;
  long N = static_cast<long>(wp / 3) + 10;
  Real aw = a;
  mpfr_prec_round(aw.get(), wp, MPFR_RNDN);
  Real sum(0L, wp);
  for (long k = 0; k < N; ++k) sum -= Real(1L, wp) / (aw + k);
  Real x = aw + N;
  sum += log(x) - Real(1L, wp) / (x * 2L);
  Real eps = ldexp(Real(1L, wp), -static_cast<long>(wp));
  Real xinv2 = Real(1L, wp) / (x * x);
  Real pw = xinv2;
  for (int j = 1; j < 4 * N; ++j) {
    Real t = Real(mpq_class(bernoulli(2 * j) / (2 * j)), wp) * pw;
    sum -= t;
    if (abs(t) < eps * abs(sum)) break;
    pw *= xinv2;
  }
  mpfr_prec_round(sum.get(), a.prec(), MPFR_RNDN);
  return sum;
}

Complex lgamma_shifted(const Complex& z) {
  mpfr_prec_t bits = z.prec();
  mpfr_prec_t wp = bits + 24;
  Complex w = z;
  mpfr_prec_round(w.re.get(), wp, MPFR_RNDN);
  mpfr_prec_round(w.im.get(), wp, MPFR_RNDN);
  double R = 0.15 * static_cast<double>(wp) + 6.0;
  Complex prod(1L, wp);
  bool shifted = false;
  while (abs(w).to_double() < R || w.re.to_double() < R / 2) {
    prod *= w;
    w.re = w.re + 1L;
    shifted = true;
  }
  Real pi = const_pi(wp);
  Complex lw = log(w);
  Complex half(Real(mpq_class(1, 2), wp), Real(0L, wp));
  Complex r = (w - half) * lw - w;
  r.re += log(pi * 2L) / 2L;
  Complex winv = Complex(1L, wp) / w;
  Complex winv2 = winv * winv;
  Complex pw = winv;
  Real eps = ldexp(Real(1L, wp), -static_cast<long>(wp));
  for (int k = 1; k < 2000; ++k) {
    mpq_class c = bernoulli(2 * k) / mpq_class((2 * k) * (2 * k - 1));
    Complex t = pw * c;
    r += t;
    if (abs(t) < eps * (abs(r) + Real(1L, wp))) break;
    pw *= winv2;
  }
  if (shifted) r -= log(prod);
  mpfr_prec_round(r.re.get(), bits, MPFR_RNDN);
  mpfr_prec_round(r.im.get(), bits, MPFR_RNDN);
  return r;
}

Complex gamma(const Complex& z) {
  mpfr_prec_t bits = z.prec();
  Real half(mpq_class(1, 2), bits);
  if (z.re < half) {
    Real pi = const_pi(bits + 16);
    Complex one(1L, bits);
    Complex s = sin(z * pi);
    if (abs(s).is_zero()) throw std::domain_error("gamma: pole");
    return Complex(pi) / (s * gamma(one - z));
  }
  return exp(lgamma_shifted(z));
}

}  // namespace k3
