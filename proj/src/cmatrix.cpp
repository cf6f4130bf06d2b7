#include "k3/cmatrix.hpp"

#include <algorithm>
#include <cmath>

#include "k3/errors.hpp"

namespace k3 {

CMatrix::CMatrix(int rows, int cols, mpfr_prec_t bits) : r_(rows), c_(cols), bits_(bits) {
  a_.reserve(static_cast<size_t>(rows) * cols);
  for (int i = 0; i < rows * cols; ++i) a_.emplace_back(bits);
}

CMatrix CMatrix::identity(int n, mpfr_prec_t bits) {
  CMatrix m(n, n, bits);
  for (int i = 0; i < n; ++i) m(i, i) = Complex(1L, bits);
  return m;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.c_ != b.r_) throw Error(ErrorKind::InvalidInput, "matrix shape mismatch");
  CMatrix r(a.r_, b.c_, std::max(a.bits_, b.bits_));
  for (int i = 0; i < a.r_; ++i)
    for (int k = 0; k < a.c_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (int j = 0; j < b.c_; ++j) r(i, j) += a(i, k) * b(k, j);
    }
  return r;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
  CMatrix r = a;
  for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
  return r;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  CMatrix r = a;
  for (size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
  return r;
}

CMatrix operator*(const CMatrix& a, const Complex& s) {
  CMatrix r = a;
  for (auto& x : r.a_) x = x * s;
  return r;
}

CMatrix inverse(const CMatrix& m) {
  int n = m.rows();
  if (n != m.cols()) throw Error(ErrorKind::InvalidInput, "inverse of non-square matrix");
  CMatrix a = m;
  CMatrix inv = CMatrix::identity(n, m.bits());
  Real scale = max_abs(m);
  Real tiny = ldexp(scale, -static_cast<long>(m.bits()) + 16);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    Real best = abs(a(col, col));
    for (int i = col + 1; i < n; ++i) {
      Real v = abs(a(i, col));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best <= tiny) throw Error(ErrorKind::DivisionByZero, "matrix singular to working precision");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    Complex p = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) = a(col, j) / p;
      inv(col, j) = inv(col, j) / p;
    }
    for (int i = 0; i < n; ++i) {
      if (i == col || a(i, col).is_zero()) continue;
      Complex f = a(i, col);
      for (int j = 0; j < n; ++j) {
        a(i, j) -= f * a(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

CMatrix pow(const CMatrix& m, int k) {
  CMatrix r = CMatrix::identity(m.rows(), m.bits());
  for (int i = 0; i < k; ++i) r = r * m;
  return r;
}

Complex determinant(const CMatrix& m) {
  int n = m.rows();
  CMatrix a = m;
  Complex det(1L, m.bits());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    Real best = abs(a(col, col));
    for (int i = col + 1; i < n; ++i) {
      Real v = abs(a(i, col));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best.is_zero()) return Complex(m.bits());
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
      det = -det;
    }
    det = det * a(col, col);
    for (int i = col + 1; i < n; ++i) {
      Complex f = a(i, col) / a(col, col);
      for (int j = col; j < n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  return det;
}

Complex trace(const CMatrix& m) {
  Complex t(m.bits());
  for (int i = 0; i < std::min(m.rows(), m.cols()); ++i) t += m(i, i);
  return t;
}

Real max_abs(const CMatrix& m) {
  Real r(0L, m.bits());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      Real v = abs(m(i, j));
      if (v > r) r = v;
    }
  return r;
}

std::vector<Complex> charpoly(const CMatrix& m) {
  int n = m.rows();
  mpfr_prec_t bits = m.bits();
  std::vector<Complex> c(n + 1, Complex(bits));
  c[n] = Complex(1L, bits);
  CMatrix M(n, n, bits);
  CMatrix I = CMatrix::identity(n, bits);
  for (int k = 1; k <= n; ++k) {
    M = m * M + I * c[n - k + 1];
    c[n - k] = -(trace(m * M) / static_cast<long>(k));
  }
  return c;
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs) {
  int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 1) return {};
  mpfr_prec_t bits = coeffs.back().prec();
  std::vector<Complex> p(coeffs.size(), Complex(bits));
  for (int i = 0; i <= n; ++i) p[i] = coeffs[i] / coeffs[n];
  auto eval = [&](const Complex& z, Complex& f, Complex& df) {
    f = p[n];
    df = Complex(bits);
    for (int i = n - 1; i >= 0; --i) {
      df = df * z + f;
      f = f * z + p[i];
    }
  };
  // Cauchy bound for the initial circle.
  Real rad(1L, bits);
  for (int i = 0; i < n; ++i) {
    Real v = abs(p[i]) + 1L;
    if (v > rad) rad = v;
  }
  std::vector<Complex> z;
  Real pi = const_pi(bits);
  for (int k = 0; k < n; ++k) {
    Real th = pi * 2L * Real(static_cast<long>(k), bits) / static_cast<long>(n) + Real(0.4, bits);
    z.push_back(expi(th) * (rad / 2L));
  }
  Real eps = ldexp(Real(1L, bits), -static_cast<long>(bits) + 8);
  for (int it = 0; it < 100 * n + 200; ++it) {
    Real worst(0L, bits);
    for (int k = 0; k < n; ++k) {
      Complex f(bits), df(bits);
      eval(z[k], f, df);
      if (f.is_zero()) continue;
      Complex ratio = f / df;
      Complex s(bits);
      for (int j = 0; j < n; ++j)
        if (j != k) s += Complex(1L, bits) / (z[k] - z[j]);
      Complex w = ratio / (Complex(1L, bits) - ratio * s);
      z[k] -= w;
      Real rel = abs(w) / (abs(z[k]) + 1L);
      if (rel > worst) worst = rel;
    }
    if (worst < eps) break;
  }
  for (auto& r : z)
    for (int it = 0; it < 3; ++it) {
      Complex f(bits), df(bits);
      eval(r, f, df);
      if (df.is_zero()) break;
      r -= f / df;
    }
  return z;
}

std::vector<Real> singular_values(const CMatrix& m) {
  int rows = m.rows(), cols = m.cols();
  mpfr_prec_t bits = m.bits();
  CMatrix a = m;
  Real eps = ldexp(Real(1L, bits), -static_cast<long>(bits) + 4);
  for (int sweep = 0; sweep < 80; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < cols; ++p)
      for (int q = p + 1; q < cols; ++q) {
        Real alpha(0L, bits), beta(0L, bits);
        Complex gamma(bits);
        for (int i = 0; i < rows; ++i) {
          alpha += norm(a(i, p));
          beta += norm(a(i, q));
          gamma += conj(a(i, p)) * a(i, q);
        }
        Real g = abs(gamma);
        if (g.is_zero() || g <= eps * sqrt(alpha * beta)) continue;
        rotated = true;
        // Rotate column q by the phase of gamma so the inner product is real.
        Complex phase = conj(gamma) / g;
        for (int i = 0; i < rows; ++i) a(i, q) = a(i, q) * phase;
        Real zeta = (beta - alpha) / (g * 2L);
        Real t = Real(1L, bits) / (abs(zeta) + sqrt(Real(1L, bits) + zeta * zeta));
        if (zeta.sign() < 0) t = -t;
        Real c = Real(1L, bits) / sqrt(Real(1L, bits) + t * t);
        Real s = c * t;
        for (int i = 0; i < rows; ++i) {
          Complex ap = a(i, p), aq = a(i, q);
          a(i, p) = ap * c - aq * s;
          a(i, q) = ap * s + aq * c;
        }
      }
    if (!rotated) break;
  }
  std::vector<Real> sv;
  for (int j = 0; j < cols; ++j) {
    Real s(0L, bits);
    for (int i = 0; i < rows; ++i) s += norm(a(i, j));
    sv.push_back(sqrt(s));
  }
  std::sort(sv.begin(), sv.end(), [](const Real& x, const Real& y) { return x > y; });
  return sv;
}

}  // namespace k3
