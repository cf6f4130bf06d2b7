#include "k3/jet.hpp"

#include "k3/errors.hpp"
#include "k3/special.hpp"

namespace k3 {

Jet::Jet(int order, mpfr_prec_t bits) : bits_(bits) {
  if (order < 1) throw Error(ErrorKind::InvalidInput, "jet order must be >= 1");
  c_.reserve(order);
  for (int k = 0; k < order; ++k) c_.emplace_back(bits);
}

Jet Jet::constant(const Complex& c, int order) {
  Jet j(order, c.prec());
  j.c_[0] = c;
  return j;
}

Jet Jet::epsilon(int order, mpfr_prec_t bits) {
  Jet j(order, bits);
  if (order > 1) j.c_[1] = Complex(1L, bits);
  return j;
}

Complex Jet::eval(const Complex& eps) const {
  Complex r(bits_);
  for (int k = order() - 1; k >= 0; --k) r = r * eps + c_[k];
  return r;
}

namespace {
void check_same(const Jet& a, const Jet& b) {
  if (a.order() != b.order()) throw Error(ErrorKind::InvalidInput, "jet order mismatch");
}
}  // namespace

Jet& Jet::operator+=(const Jet& o) {
  check_same(*this, o);
  for (int k = 0; k < order(); ++k) c_[k] += o.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_same(*this, o);
  for (int k = 0; k < order(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet operator+(const Jet& a, const Jet& b) {
  Jet r = a;
  r += b;
  return r;
}

Jet operator-(const Jet& a, const Jet& b) {
  Jet r = a;
  r -= b;
  return r;
}

Jet operator-(const Jet& a) {
  Jet r = a;
  for (auto& c : r.c_) c = -c;
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  check_same(a, b);
  int n = a.order();
  Jet r(n, std::max(a.bits_, b.bits_));
  for (int i = 0; i < n; ++i)
    for (int j = 0; i + j < n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  return r;
}

Jet operator*(const Jet& a, const Complex& s) {
  Jet r = a;
  for (auto& c : r.c_) c = c * s;
  return r;
}

Jet operator/(const Jet& a, const Jet& b) {
  check_same(a, b);
  int n = a.order();
  mpfr_prec_t bits = std::max(a.bits_, b.bits_);
  Real scale(0L, bits);
  for (const auto& c : b.c_) {
    Real m = abs(c);
    if (m > scale) scale = m;
  }
  Real b0 = abs(b.c_[0]);
  if (b0.is_zero() || b0 < ldexp(scale, -static_cast<long>(bits) + 8))
    throw Error(ErrorKind::DivisionByZeroJet, "divisor has vanishing constant term");
  Jet q(n, bits);
  for (int k = 0; k < n; ++k) {
    Complex s = a.c_[k];
    for (int j = 0; j < k; ++j) s -= q.c_[j] * b.c_[k - j];
    q.c_[k] = s / b.c_[0];
  }
  return q;
}

Jet exp(const Jet& a) {
  int n = a.order();
  Jet f(n, a.bits());
  f[0] = exp(a[0]);
  for (int k = 1; k < n; ++k) {
    Complex s(a.bits());
    for (int j = 1; j <= k; ++j) s += a[j] * f[k - j] * static_cast<long>(j);
    f[k] = s / static_cast<long>(k);
  }
  return f;
}

Jet log(const Jet& a) {
  int n = a.order();
  if (a[0].is_zero()) throw Error(ErrorKind::DivisionByZeroJet, "log of jet with zero constant term");
  Jet g(n, a.bits());
  g[0] = log(a[0]);
  for (int k = 1; k < n; ++k) {
    Complex s = a[k] * static_cast<long>(k);
    for (int j = 1; j < k; ++j) s -= g[j] * a[k - j] * static_cast<long>(j);
    g[k] = s / (a[0] * static_cast<long>(k));
  }
  return g;
}

Jet pow(const Jet& a, const Jet& b) { return exp(b * log(a)); }

Jet jet_arith(const Jet& a, const Jet& b, JetOp op) {
  switch (op) {
    case JetOp::add: return a + b;
    case JetOp::mul: return a * b;
    case JetOp::div: return a / b;
    case JetOp::exp: return exp(a);
    case JetOp::log: return log(a);
    case JetOp::pow: return pow(a, b);
  }
  return a;
}

Jet sin_linear(const Complex& a, const Complex& b, int order) {
  // sin(a + b e) = sum_k sin(a + k pi/2) (b e)^k / k!
  mpfr_prec_t bits = std::max(a.prec(), b.prec());
  Jet j(order, bits);
  Complex s = sin(a), c = cos(a);
  Complex bk(1L, bits);
  Real fact(1L, bits);
  for (int k = 0; k < order; ++k) {
    const Complex& base = (k % 4 == 0) ? s : (k % 4 == 1) ? c : (k % 4 == 2) ? -s : -c;
    j[k] = base * bk / fact;
    bk = bk * b;
    fact = fact * static_cast<long>(k + 1);
  }
  return j;
}

Jet exp_linear(const Complex& b, int order) {
  Jet j(order, b.prec());
  Complex term(1L, b.prec());
  for (int k = 0; k < order; ++k) {
    j[k] = term;
    term = term * b / static_cast<long>(k + 1);
  }
  return j;
}

Jet gamma_one_plus_jet(int order, mpfr_prec_t bits, const std::optional<Real>& euler_gamma_override) {
  Jet l(order, bits);
  if (order > 1) {
    Real g = euler_gamma_override ? *euler_gamma_override : euler_gamma(bits);
    l[1] = Complex(-g);
  }
  for (int k = 2; k < order; ++k) {
    Real z = zeta_int(k, bits) / static_cast<long>(k);
    l[k] = Complex(k % 2 == 0 ? z : -z);
  }
  return exp(l);
}

Jet log_gamma_shift_jet(const Real& r, int order) {
  mpfr_prec_t bits = r.prec();
  Jet l(order, bits);
  if (order > 1) l[1] = Complex(digamma(r));
  for (int m = 2; m < order; ++m) {
    Real z = hurwitz_zeta(m, r) / static_cast<long>(m);
    l[m] = Complex(m % 2 == 0 ? z : -z);
  }
  return l;
}

}  // namespace k3
