#include "k3/real.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace k3 {

mpfr_prec_t digits_to_bits(long digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 16;
}

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}
Real::Real(long v, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_si(v_, v, MPFR_RNDN);
}
Real::Real(double v, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_d(v_, v, MPFR_RNDN);
}
Real::Real(const mpz_class& z, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_z(v_, z.get_mpz_t(), MPFR_RNDN);
}
Real::Real(const mpq_class& q, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}
Real::Real(const std::string& decimal, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  if (mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN) != 0)
    throw std::invalid_argument("bad decimal: " + decimal);
}
Real::Real(const Real& o) {
  mpfr_init2(v_, o.prec());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}
Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}
Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}
Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}
Real::~Real() { mpfr_clear(v_); }

std::string Real::str(int digits) const {
  if (mpfr_zero_p(v_)) return "0";
  if (!mpfr_number_p(v_)) return mpfr_nan_p(v_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
  mpfr_exp_t e = 0;
  char* s = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
  std::string m(s);
  mpfr_free_str(s);
  bool neg = !m.empty() && m[0] == '-';
  if (neg) m.erase(0, 1);
  // strip trailing zeros of the mantissa
  while (m.size() > 1 && m.back() == '0') m.pop_back();
  std::string out = neg ? "-" : "";
  long ex = static_cast<long>(e) - 1;
  if (ex >= -5 && ex < digits) {
    if (ex < 0) return out + "0." + std::string(static_cast<size_t>(-ex - 1), '0') + m;
    if (static_cast<long>(m.size()) <= ex + 1) return out + m + std::string(static_cast<size_t>(ex + 1 - m.size()), '0');
    return out + m.substr(0, ex + 1) + "." + m.substr(ex + 1);
  }
  out += m.substr(0, 1);
  if (m.size() > 1) out += "." + m.substr(1);
  out += "e" + std::to_string(ex);
  return out;
}

long Real::exponent() const {
  if (mpfr_zero_p(v_)) return -(1L << 40);
  return mpfr_get_exp(v_);
}

Real& Real::operator+=(const Real& o) {
  if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  if (o.prec() > prec()) mpfr_prec_round(v_, o.prec(), MPFR_RNDN);
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

namespace {
mpfr_prec_t pmax(const Real& a, const Real& b) { return std::max(a.prec(), b.prec()); }
}  // namespace

Real operator+(const Real& a, const Real& b) {
  Real r(pmax(a, b));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r(pmax(a, b));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r(pmax(a, b));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r(pmax(a, b));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
Real operator-(const Real& a) {
  Real r(a.prec());
  mpfr_neg(r.get(), a.get(), MPFR_RNDN);
  return r;
}
Real operator*(const Real& a, long k) {
  Real r(a.prec());
  mpfr_mul_si(r.get(), a.get(), k, MPFR_RNDN);
  return r;
}
Real operator/(const Real& a, long k) {
  Real r(a.prec());
  mpfr_div_si(r.get(), a.get(), k, MPFR_RNDN);
  return r;
}
Real operator+(const Real& a, long k) {
  Real r(a.prec());
  mpfr_add_si(r.get(), a.get(), k, MPFR_RNDN);
  return r;
}
Real operator-(const Real& a, long k) {
  Real r(a.prec());
  mpfr_sub_si(r.get(), a.get(), k, MPFR_RNDN);
  return r;
}
bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()) != 0; }
bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }
bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.get(), b.get()) != 0; }

#define K3_UNARY(name, fn)                  \
  Real name(const Real& a) {                \
    Real r(a.prec());                       \
    fn(r.get(), a.get(), MPFR_RNDN);        \
    return r;                               \
  }
K3_UNARY(abs, mpfr_abs)
K3_UNARY(sqrt, mpfr_sqrt)
K3_UNARY(exp, mpfr_exp)
K3_UNARY(log, mpfr_log)
K3_UNARY(sin, mpfr_sin)
K3_UNARY(cos, mpfr_cos)
K3_UNARY(sinh, mpfr_sinh)
K3_UNARY(cosh, mpfr_cosh)
#undef K3_UNARY

Real atan2(const Real& y, const Real& x) {
  Real r(pmax(y, x));
  mpfr_atan2(r.get(), y.get(), x.get(), MPFR_RNDN);
  return r;
}
Real pow(const Real& a, const Real& b) {
  Real r(pmax(a, b));
  mpfr_pow(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
Real hypot(const Real& a, const Real& b) {
  Real r(pmax(a, b));
  mpfr_hypot(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
Real const_pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}
Real ldexp(const Real& a, long e) {
  Real r(a.prec());
  mpfr_mul_2si(r.get(), a.get(), e, MPFR_RNDN);
  return r;
}

Complex& Complex::operator+=(const Complex& o) {
  re += o.re;
  im += o.im;
  return *this;
}
Complex& Complex::operator-=(const Complex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}
Complex& Complex::operator*=(const Complex& o) {
  *this = *this * o;
  return *this;
}
Complex& Complex::operator/=(const Complex& o) {
  *this = *this / o;
  return *this;
}

Complex operator+(const Complex& a, const Complex& b) { return Complex(a.re + b.re, a.im + b.im); }
Complex operator-(const Complex& a, const Complex& b) { return Complex(a.re - b.re, a.im - b.im); }
Complex operator*(const Complex& a, const Complex& b) {
  return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}
Complex operator/(const Complex& a, const Complex& b) {
  Real d = b.re * b.re + b.im * b.im;
  return Complex((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
}
Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
Complex operator*(const Complex& a, const Real& b) { return Complex(a.re * b, a.im * b); }
Complex operator/(const Complex& a, const Real& b) { return Complex(a.re / b, a.im / b); }
Complex operator*(const Complex& a, long k) { return Complex(a.re * k, a.im * k); }
Complex operator/(const Complex& a, long k) { return Complex(a.re / k, a.im / k); }
Complex operator*(const Complex& a, const mpq_class& q) {
  Real qq(q, a.prec());
  return a * qq;
}

Complex operator+(const Complex& a, const Real& b) { return Complex(a.re + b, a.im); }
Complex operator-(const Complex& a, const Real& b) { return Complex(a.re - b, a.im); }

Complex conj(const Complex& a) { return Complex(a.re, -a.im); }
Real abs(const Complex& a) { return hypot(a.re, a.im); }
Real norm(const Complex& a) { return a.re * a.re + a.im * a.im; }
Real arg(const Complex& a) { return atan2(a.im, a.re); }
Complex exp(const Complex& a) {
  Real m = exp(a.re);
  return Complex(m * cos(a.im), m * sin(a.im));
}
Complex log(const Complex& a) { return Complex(log(abs(a)), arg(a)); }
Complex sin(const Complex& a) {
  return Complex(sin(a.re) * cosh(a.im), cos(a.re) * sinh(a.im));
}
Complex cos(const Complex& a) {
  return Complex(cos(a.re) * cosh(a.im), -(sin(a.re) * sinh(a.im)));
}
Complex sqrt(const Complex& a) {
  if (a.is_zero()) return Complex(a.prec());
  Real r = abs(a);
  Real u = sqrt((r + abs(a.re)) / 2L);
  if (a.re.sign() >= 0) return Complex(u, a.im / (u * 2L));
  Real v = a.im.sign() >= 0 ? u : -u;
  return Complex(abs(a.im) / (u * 2L), v);
}
Complex pow(const Complex& a, const Complex& b) { return exp(b * log(a)); }
Complex expi(const Real& theta) { return Complex(cos(theta), sin(theta)); }
Complex I_unit(mpfr_prec_t bits) { return Complex(Real(0L, bits), Real(1L, bits)); }
Complex two_pi_i(mpfr_prec_t bits) { return Complex(Real(0L, bits), const_pi(bits) * 2L); }

}  // namespace k3
