#pragma once

#include <vector>

#include "k3/real.hpp"

namespace k3 {

// Dense square-or-rectangular matrix of arbitrary-precision complex numbers.
class CMatrix {
 public:
  CMatrix(int rows, int cols, mpfr_prec_t bits);
  static CMatrix identity(int n, mpfr_prec_t bits);

  int rows() const { return r_; }
  int cols() const { return c_; }
  mpfr_prec_t bits() const { return bits_; }
  Complex& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const Complex& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator+(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator-(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator*(const CMatrix& a, const Complex& s);

 private:
  int r_, c_;
  mpfr_prec_t bits_;
  std::vector<Complex> a_;
};

// Gauss-Jordan with partial pivoting; throws DivisionByZero when singular to precision.
CMatrix inverse(const CMatrix& m);
CMatrix pow(const CMatrix& m, int k);
Complex determinant(const CMatrix& m);
Complex trace(const CMatrix& m);
// max |a_ij|
Real max_abs(const CMatrix& m);

// Monic characteristic polynomial det(xI - m), coefficients low to high (Faddeev-LeVerrier).
std::vector<Complex> charpoly(const CMatrix& m);

// Roots of a polynomial (coefficients low to high, nonzero leading) by Aberth iteration
// followed by Newton polishing.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs);

// Singular values in decreasing order (one-sided Jacobi).
std::vector<Real> singular_values(const CMatrix& m);

}  // namespace k3
