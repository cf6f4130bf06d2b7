#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "k3/matrix.hpp"
#include "k3/series.hpp"

namespace k3 {

enum class AForm { primed, unprimed };

// Right-hand forms: primed (n+1)x(n+2), unprimed (2n-1)x(2n).
IntMatrix build_A(int n, AForm which);
// Left-hand forms, read off from the integrand.
IntMatrix build_A_raw(int n, AForm which);
// Column permutation taking the raw unprimed form to the printed column order
// (identity for the primed form); true when the row spaces then coincide.
bool row_equivalent_to_raw(int n, AForm which);

// Primitive kernel generator, sign fixed so the first entry of absolute value 1 is +1.
std::vector<mpz_class> relation_lattice(const IntMatrix& A);

// Affine functional h: first row (primed) or sum of the first n rows (unprimed).
std::vector<mpz_class> h_values(const IntMatrix& A, int n, AForm which);

struct GkzSystem {
  int n = 0;
  IntMatrix A;
  std::vector<mpz_class> B;
  std::vector<mpq_class> gamma0;  // (0,...,0,-rho_1,...,-rho_n)
  std::vector<mpq_class> rho;
};
GkzSystem build_system(const std::vector<mpq_class>& rho);

struct NonresonanceReport {
  bool nonresonant = false;
  std::vector<mpq_class> alpha, beta;
  mpq_class sum;  // sum alpha + sum beta
};
NonresonanceReport nonresonance_report(const std::vector<mpq_class>& rho);
bool nonresonance_check(const std::vector<mpq_class>& rho);

struct Triangulation {
  int label = 0;           // k in I_k, 1-based
  std::vector<int> index;  // 1-based column indices, 2n-1 of them
  mpz_class det;
  std::vector<int> nu;     // convergence direction
  int pi_nu = 0;           // +1 or -1
  mpq_class mu;
  std::vector<mpq_class> gamma;  // gamma0 - mu B
};

struct SecondaryFan {
  int n = 0;
  mpq_class zonotope_lo, zonotope_hi;
  std::vector<Triangulation> plus, minus;
  bool unimodular() const;
};
SecondaryFan secondary_fan(int n, const std::vector<mpq_class>& rho);
SecondaryFan secondary_fan(int n);  // rho_k = k/(n+1)

struct GammaChoice {
  int shift = 0;  // 0 for gamma0, r in 1..n for the shift along I_{n+r}
  static GammaChoice gamma0() { return {0}; }
  static GammaChoice shifted(int r) { return {r}; }
};

struct GammaSeries {
  PowerSeries series;
  mpq_class exponent;     // leading power of t
  std::string variable;   // "t" or "1/t"
  std::string prefactor;  // symbolic
};
GammaSeries gamma_series(const std::vector<mpq_class>& rho, GammaChoice choice, int order);

}  // namespace k3
