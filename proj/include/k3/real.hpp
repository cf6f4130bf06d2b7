#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace k3 {

// Bits needed for `digits` decimal digits, plus a few guard bits.
mpfr_prec_t digits_to_bits(long digits);

class Real {
 public:
  explicit Real(mpfr_prec_t bits = 64);
  Real(long v, mpfr_prec_t bits);
  Real(double v, mpfr_prec_t bits);
  Real(const mpz_class& z, mpfr_prec_t bits);
  Real(const mpq_class& q, mpfr_prec_t bits);
  Real(const std::string& decimal, mpfr_prec_t bits);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string str(int digits) const;
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  long exponent() const;  // floor(log2|x|)+1, very negative for zero

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);

 private:
  mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);
Real operator-(const Real& a);
Real operator*(const Real& a, long k);
Real operator/(const Real& a, long k);
Real operator+(const Real& a, long k);
Real operator-(const Real& a, long k);
bool operator<(const Real& a, const Real& b);
bool operator>(const Real& a, const Real& b);
bool operator<=(const Real& a, const Real& b);
bool operator>=(const Real& a, const Real& b);

Real abs(const Real& a);
Real sqrt(const Real& a);
Real exp(const Real& a);
Real log(const Real& a);
Real sin(const Real& a);
Real cos(const Real& a);
Real sinh(const Real& a);
Real cosh(const Real& a);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& a, const Real& b);
Real hypot(const Real& a, const Real& b);
Real const_pi(mpfr_prec_t bits);
Real ldexp(const Real& a, long e);

struct Complex {
  Real re, im;
  explicit Complex(mpfr_prec_t bits = 64) : re(bits), im(bits) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(const Real& r) : re(r), im(0L, r.prec()) {}
  Complex(long v, mpfr_prec_t bits) : re(v, bits), im(0L, bits) {}
  Complex(const mpq_class& q, mpfr_prec_t bits) : re(q, bits), im(0L, bits) {}

  mpfr_prec_t prec() const { return re.prec() > im.prec() ? re.prec() : im.prec(); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  Complex& operator+=(const Complex& o);
  Complex& operator-=(const Complex& o);
  Complex& operator*=(const Complex& o);
  Complex& operator/=(const Complex& o);
};

Complex operator+(const Complex& a, const Complex& b);
Complex operator-(const Complex& a, const Complex& b);
Complex operator*(const Complex& a, const Complex& b);
Complex operator/(const Complex& a, const Complex& b);
Complex operator-(const Complex& a);
Complex operator*(const Complex& a, const Real& b);
Complex operator/(const Complex& a, const Real& b);
Complex operator*(const Complex& a, long k);
Complex operator/(const Complex& a, long k);
Complex operator*(const Complex& a, const mpq_class& q);
Complex operator+(const Complex& a, const Real& b);
Complex operator-(const Complex& a, const Real& b);

Complex conj(const Complex& a);
Real abs(const Complex& a);
Real norm(const Complex& a);  // |a|^2
Real arg(const Complex& a);
Complex exp(const Complex& a);
Complex log(const Complex& a);
Complex sin(const Complex& a);
Complex cos(const Complex& a);
Complex sqrt(const Complex& a);
Complex pow(const Complex& a, const Complex& b);
Complex expi(const Real& theta);  // e^{i theta}
Complex I_unit(mpfr_prec_t bits);
Complex two_pi_i(mpfr_prec_t bits);

}  // namespace k3
