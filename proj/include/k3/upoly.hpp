#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace k3 {

// Dense univariate polynomial over Q; c[i] is the coefficient of t^i.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<mpq_class> coeffs);
  static UPoly constant(const mpq_class& c);
  static UPoly monomial(const mpq_class& c, int deg);
  static UPoly linear(const mpq_class& root);  // t - root

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const mpq_class& operator[](int i) const { return c_[i]; }
  mpq_class coeff(int i) const { return (i >= 0 && i <= degree()) ? c_[i] : mpq_class(0); }
  const mpq_class& lc() const { return c_.back(); }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  mpq_class eval(const mpq_class& x) const;
  UPoly derivative() const;
  UPoly monic() const;
  // Integer primitive representative with positive leading coefficient.
  std::vector<mpz_class> primitive_integer() const;
  // p(t) -> p(t + s)
  UPoly shift(const mpq_class& s) const;
  // t^deg * p(1/t)
  UPoly reversed(int deg) const;
  // Multiplicity of the root r (0 if not a root).
  int root_multiplicity(const mpq_class& r) const;
  int valuation_at_zero() const;

  std::string str(const std::string& var = "t") const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const mpq_class& s);
  friend UPoly operator-(const UPoly& a);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UPoly& a, const UPoly& b) { return !(a == b); }

 private:
  void trim();
  std::vector<mpq_class> c_;
};

UPoly pow(const UPoly& a, int k);
// a = q*b + r with deg r < deg b.
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
// Monic gcd (zero if both are zero).
UPoly gcd(const UPoly& a, const UPoly& b);
// Yun's algorithm: p = lc * prod f_i^{m_i} with f_i monic, square-free, pairwise coprime.
std::vector<std::pair<UPoly, int>> square_free_decomposition(const UPoly& p);
// Distinct rational roots (p-adic lifting plus exact check), ascending.
std::vector<mpq_class> rational_roots(const UPoly& p);

}  // namespace k3
