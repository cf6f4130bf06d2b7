#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace k3 {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}
  IntMatrix(int rows, int cols, const std::vector<long>& entries);
  static IntMatrix identity(int n);

  int rows() const { return r_; }
  int cols() const { return c_; }
  mpz_class& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const mpz_class& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  IntMatrix transpose() const;
  bool is_symmetric() const;
  bool is_diagonal() const;
  std::string str() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

 private:
  int r_ = 0, c_ = 0;
  std::vector<mpz_class> a_;
};

// Block direct sum.
IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b);

struct SmithForm {
  IntMatrix U, D, V;  // U * M * V = D
};
SmithForm smith_normal_form(const IntMatrix& M);

mpz_class determinant(const IntMatrix& M);  // Bareiss
int rank(const IntMatrix& M);

using QMatrix = std::vector<std::vector<mpq_class>>;

QMatrix to_rational(const IntMatrix& M);
// Reduced row echelon form with zero rows removed.
QMatrix rref(const QMatrix& M);
// Inverse of a square nonsingular matrix; throws DivisionByZero if singular.
QMatrix inverse(const QMatrix& M);
QMatrix mul(const QMatrix& a, const QMatrix& b);

struct Inertia {
  int positive = 0, negative = 0, zero = 0;
};
// Inertia of a symmetric rational matrix by congruence diagonalization.
Inertia inertia(const QMatrix& S);

}  // namespace k3
