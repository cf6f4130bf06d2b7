#include "k3/matrix.hpp"

#include <sstream>
#include <utility>

#include "k3/errors.hpp"

namespace k3 {

IntMatrix::IntMatrix(int rows, int cols, const std::vector<long>& entries) : IntMatrix(rows, cols) {
  if (entries.size() != a_.size()) throw Error(ErrorKind::InvalidInput, "entry count mismatch");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] = entries[i];
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntMatrix::is_symmetric() const {
  if (r_ != c_) return false;
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < i; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

bool IntMatrix::is_diagonal() const {
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      if (i != j && (*this)(i, j) != 0) return false;
  return true;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < r_; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.c_ != b.r_) throw Error(ErrorKind::InvalidInput, "matrix shape mismatch");
  IntMatrix m(a.r_, b.c_);
  for (int i = 0; i < a.r_; ++i)
    for (int k = 0; k < a.c_; ++k) {
      const mpz_class& x = a(i, k);
      if (x == 0) continue;
      for (int j = 0; j < b.c_; ++j) m(i, j) += x * b(k, j);
    }
  return m;
}

IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  return m;
}

namespace {

void swap_rows(IntMatrix& m, int i, int j) {
  for (int k = 0; k < m.cols(); ++k) std::swap(m(i, k), m(j, k));
}
void swap_cols(IntMatrix& m, int i, int j) {
  for (int k = 0; k < m.rows(); ++k) std::swap(m(k, i), m(k, j));
}

// rows (i, j) <- (s*ri + u*rj, v*ri + w*rj)
void combine_rows(IntMatrix& m, int i, int j, const mpz_class& s, const mpz_class& u, const mpz_class& v,
                  const mpz_class& w) {
  for (int k = 0; k < m.cols(); ++k) {
    mpz_class a = m(i, k), b = m(j, k);
    m(i, k) = s * a + u * b;
    m(j, k) = v * a + w * b;
  }
}
void combine_cols(IntMatrix& m, int i, int j, const mpz_class& s, const mpz_class& u, const mpz_class& v,
                  const mpz_class& w) {
  for (int k = 0; k < m.rows(); ++k) {
    mpz_class a = m(k, i), b = m(k, j);
    m(k, i) = s * a + u * b;
    m(k, j) = v * a + w * b;
  }
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& M) {
  if (M.rows() == 0 || M.cols() == 0) throw Error(ErrorKind::InvalidInput, "empty matrix");
  int m = M.rows(), n = M.cols();
  SmithForm f{IntMatrix::identity(m), M, IntMatrix::identity(n)};
  IntMatrix& D = f.D;
  for (int t = 0; t < std::min(m, n); ++t) {
    // pivot: smallest nonzero entry in the trailing block
    int pi = -1, pj = -1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j)
        if (D(i, j) != 0 && (pi < 0 || abs(D(i, j)) < abs(D(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi < 0) break;
    if (pi != t) {
      swap_rows(D, pi, t);
      swap_rows(f.U, pi, t);
    }
    if (pj != t) {
      swap_cols(D, pj, t);
      swap_cols(f.V, pj, t);
    }
    while (true) {
      bool clean = true;
      for (int i = t + 1; i < m; ++i) {
        if (D(i, t) == 0) continue;
        mpz_class a = D(t, t), b = D(i, t), g, s, u;
        if (b % a == 0) {
          mpz_class q = b / a;
          combine_rows(D, t, i, 1, 0, -q, 1);
          combine_rows(f.U, t, i, 1, 0, -q, 1);
          continue;
        }
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        mpz_class v = -b / g, w = a / g;
        combine_rows(D, t, i, s, u, v, w);
        combine_rows(f.U, t, i, s, u, v, w);
      }
      for (int j = t + 1; j < n; ++j) {
        if (D(t, j) == 0) continue;
        mpz_class a = D(t, t), b = D(t, j), g, s, u;
        if (b % a == 0) {
          mpz_class q = b / a;
          combine_cols(D, t, j, 1, 0, -q, 1);
          combine_cols(f.V, t, j, 1, 0, -q, 1);
          continue;
        }
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), u.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        mpz_class v = -b / g, w = a / g;
        combine_cols(D, t, j, s, u, v, w);
        combine_cols(f.V, t, j, s, u, v, w);
        clean = false;
      }
      if (!clean) continue;  // column ops may have refilled column t
      // divisibility: every trailing entry must be a multiple of the pivot
      int bad = -1;
      for (int i = t + 1; i < m && bad < 0; ++i)
        for (int j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      combine_rows(D, t, bad, 1, 1, 0, 1);
      combine_rows(f.U, t, bad, 1, 1, 0, 1);
    }
    if (D(t, t) < 0) {
      for (int k = 0; k < n; ++k) D(t, k) = -D(t, k);
      for (int k = 0; k < m; ++k) f.U(t, k) = -f.U(t, k);
    }
  }
  return f;
}

mpz_class determinant(const IntMatrix& M0) {
  if (M0.rows() != M0.cols()) throw Error(ErrorKind::InvalidInput, "determinant of non-square matrix");
  int n = M0.rows();
  if (n == 0) return 1;
  IntMatrix M = M0;
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (M(k, k) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (M(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      swap_rows(M, k, p);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j));
        mpz_divexact(M(i, j).get_mpz_t(), M(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

QMatrix to_rational(const IntMatrix& M) {
  QMatrix q(M.rows(), std::vector<mpq_class>(M.cols()));
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) q[i][j] = M(i, j);
  return q;
}

QMatrix rref(const QMatrix& M0) {
  QMatrix M = M0;
  int m = static_cast<int>(M.size());
  int n = m ? static_cast<int>(M[0].size()) : 0;
  int row = 0;
  for (int col = 0; col < n && row < m; ++col) {
    int p = -1;
    for (int i = row; i < m; ++i)
      if (M[i][col] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(M[p], M[row]);
    mpq_class inv = 1 / M[row][col];
    for (auto& x : M[row]) x *= inv;
    for (int i = 0; i < m; ++i) {
      if (i == row || M[i][col] == 0) continue;
      mpq_class f = M[i][col];
      for (int j = 0; j < n; ++j) M[i][j] -= f * M[row][j];
    }
    ++row;
  }
  M.resize(row);
  return M;
}

int rank(const IntMatrix& M) { return static_cast<int>(rref(to_rational(M)).size()); }

QMatrix inverse(const QMatrix& M) {
  int n = static_cast<int>(M.size());
  QMatrix A(n, std::vector<mpq_class>(2 * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) A[i][j] = M[i][j];
    A[i][n + i] = 1;
  }
  QMatrix R = rref(A);
  if (static_cast<int>(R.size()) < n) throw Error(ErrorKind::DivisionByZero, "singular matrix");
  for (int i = 0; i < n; ++i)
    if (R[i][i] != 1) throw Error(ErrorKind::DivisionByZero, "singular matrix");
  QMatrix inv(n, std::vector<mpq_class>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv[i][j] = R[i][n + j];
  return inv;
}

QMatrix mul(const QMatrix& a, const QMatrix& b) {
  size_t m = a.size(), k = b.size(), n = k ? b[0].size() : 0;
  QMatrix c(m, std::vector<mpq_class>(n));
  for (size_t i = 0; i < m; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (size_t j = 0; j < n; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

Inertia inertia(const QMatrix& S0) {
  QMatrix S = S0;
  int n = static_cast<int>(S.size());
  Inertia res;
  for (int k = 0; k < n; ++k) {
    if (S[k][k] == 0) {
      int p = -1;
      for (int j = k + 1; j < n; ++j)
        if (S[j][j] != 0) {
          p = j;
          break;
        }
      if (p >= 0) {
        std::swap(S[k], S[p]);
        for (auto& row : S) std::swap(row[k], row[p]);
      } else {
        int q = -1;
        for (int j = k + 1; j < n; ++j)
          if (S[k][j] != 0) {
            q = j;
            break;
          }
        if (q < 0) {
          ++res.zero;
          continue;
        }
        // e_k <- e_k + e_q makes the diagonal entry 2 S[k][q] != 0
        for (int j = 0; j < n; ++j) S[k][j] += S[q][j];
        for (int j = 0; j < n; ++j) S[j][k] += S[j][q];
      }
    }
    const mpq_class piv = S[k][k];
    if (piv > 0) ++res.positive;
    else ++res.negative;
    for (int i = k + 1; i < n; ++i) {
      if (S[i][k] == 0) continue;
      mpq_class f = S[i][k] / piv;
      for (int j = k + 1; j < n; ++j) S[i][j] -= f * S[k][j];
    }
    for (int i = k + 1; i < n; ++i) S[i][k] = S[k][i] = 0;
  }
  return res;
}

}  // namespace k3
