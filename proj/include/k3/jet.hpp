#pragma once

#include <optional>
#include <vector>

#include "k3/real.hpp"

namespace k3 {

// Truncated power series in epsilon with complex coefficients, eps^order = 0.
class Jet {
 public:
  Jet(int order, mpfr_prec_t bits);
  static Jet constant(const Complex& c, int order);
  static Jet epsilon(int order, mpfr_prec_t bits);  // the jet of eps itself

  int order() const { return static_cast<int>(c_.size()); }
  mpfr_prec_t bits() const { return bits_; }
  Complex& operator[](int k) { return c_[k]; }
  const Complex& operator[](int k) const { return c_[k]; }

  // Horner evaluation at a complex epsilon.
  Complex eval(const Complex& eps) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);

  friend Jet operator+(const Jet& a, const Jet& b);
  friend Jet operator-(const Jet& a, const Jet& b);
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);  // throws DivisionByZeroJet
  friend Jet operator*(const Jet& a, const Complex& s);
  friend Jet operator-(const Jet& a);

 private:
  mpfr_prec_t bits_;
  std::vector<Complex> c_;
};

Jet exp(const Jet& a);
Jet log(const Jet& a);  // principal log of the constant term
Jet pow(const Jet& a, const Jet& b);

enum class JetOp { add, mul, div, exp, log, pow };
// Dispatcher used by the CLI and tests; unary ops ignore b.
Jet jet_arith(const Jet& a, const Jet& b, JetOp op);

// sin(a + b*eps), cos(a + b*eps) and exp(b*eps) as jets.
Jet sin_linear(const Complex& a, const Complex& b, int order);
Jet exp_linear(const Complex& b, int order);

// Gamma(1 + eps) from log Gamma(1+eps) = -gamma eps + sum_{k>=2} (-1)^k zeta(k) eps^k / k.
// euler_gamma_override replaces the Euler constant (used to test independence from it).
Jet gamma_one_plus_jet(int order, mpfr_prec_t bits, const std::optional<Real>& euler_gamma_override = std::nullopt);

// log Gamma(r + eps) - log Gamma(r) for real r > 0, via digamma and Hurwitz zeta values.
Jet log_gamma_shift_jet(const Real& r, int order);

}  // namespace k3
