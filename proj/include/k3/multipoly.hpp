#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "k3/upoly.hpp"

namespace k3 {

constexpr int kMaxVars = 12;
using Mono = std::array<std::uint16_t, kMaxVars>;

// Sparse polynomial over Q in named variables. The variable list is kept
// sorted; terms are sorted by graded-lex order, largest first, with no zeros.
class MultiPoly {
 public:
  using Term = std::pair<Mono, mpq_class>;

  MultiPoly() = default;
  explicit MultiPoly(const mpq_class& c);
  static MultiPoly var(const std::string& name);
  static MultiPoly from_upoly(const UPoly& p, const std::string& var);

  const std::vector<std::string>& vars() const { return vars_; }
  const std::vector<Term>& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  mpq_class constant_value() const;  // requires is_constant()
  const Term& leading() const { return terms_.front(); }

  int var_index(const std::string& v) const;  // -1 if absent
  int degree_in(const std::string& v) const;
  int total_degree() const;
  bool depends_on(const std::string& v) const { return degree_in(v) > 0; }
  std::vector<std::string> free_vars() const;

  // Coefficient list in powers of v (index k is the coefficient of v^k).
  std::vector<MultiPoly> coefficients_in(const std::string& v) const;
  static MultiPoly from_coefficients(const std::vector<MultiPoly>& c, const std::string& v);

  MultiPoly eval(const std::map<std::string, mpq_class>& values) const;
  MultiPoly substitute(const std::string& v, const MultiPoly& value) const;
  UPoly to_upoly(const std::string& v) const;  // requires no other free variables
  MultiPoly trimmed() const;                   // drops unused variables

  std::string str() const;

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const mpq_class& s);
  friend MultiPoly operator-(const MultiPoly& a);
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  // Rebuild over a superset variable list.
  MultiPoly over(const std::vector<std::string>& vars) const;

  static MultiPoly from_terms(std::vector<std::string> vars, std::vector<Term> terms);

 private:
  void normalize();
  std::vector<std::string> vars_;
  std::vector<Term> terms_;
};

MultiPoly pow(const MultiPoly& a, int k);

// Term cap for multiplications; 0 disables. Throws SizeCapExceeded when exceeded.
// The cap is thread-local so concurrent callers do not interfere.
void set_term_cap(size_t cap);
size_t term_cap();

// Exact quotient a / b if b divides a.
std::optional<MultiPoly> divide_exact(const MultiPoly& a, const MultiPoly& b);
// gcd normalized to leading coefficient 1; gcd(0, 0) = 0.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);
// lc^k * a = q * b + r as polynomials in v, with lc the leading coefficient of b in v.
struct PseudoDivision {
  MultiPoly q, r, lc;
  int k = 0;
};
PseudoDivision pseudo_divide(const MultiPoly& a, const MultiPoly& b, const std::string& v);

// Parses expressions with + - * / ^ (integer exponents), parentheses,
// integer and p/q constants and identifiers.
MultiPoly parse_poly(const std::string& s);

class RationalFunction;
// Same grammar as parse_poly, division by polynomials allowed.
RationalFunction parse_ratfun(const std::string& s);

class RationalFunction {
 public:
  RationalFunction() : num_(), den_(mpq_class(1)) {}
  RationalFunction(const MultiPoly& p) : num_(p), den_(mpq_class(1)) {}  // NOLINT
  RationalFunction(const MultiPoly& n, const MultiPoly& d);
  explicit RationalFunction(const mpq_class& c) : num_(c), den_(mpq_class(1)) {}

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  std::string str() const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);

 private:
  void reduce();
  MultiPoly num_, den_;
};

RationalFunction pow(const RationalFunction& a, int k);

// Substitutes each bound variable; unbound variables are kept. Throws
// DenominatorVanishesIdentically when a denominator becomes zero.
RationalFunction ratfun_substitute(const RationalFunction& target,
                                   const std::map<std::string, RationalFunction>& bindings);

// Homogenized polynomial substitution: returns (N, D) with
// p(bindings) = N / D, without any gcd cancellation.
std::pair<MultiPoly, MultiPoly> substitute_cleared(const MultiPoly& p,
                                                   const std::map<std::string, RationalFunction>& bindings);

}  // namespace k3
