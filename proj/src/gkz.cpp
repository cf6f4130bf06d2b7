#include "k3/gkz.hpp"

#include <sstream>

#include "k3/errors.hpp"

namespace k3 {

namespace {

void require_n(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidInput, "n must be at least 2");
}

std::string q_str(const mpq_class& q) { return q.get_str(); }

}  // namespace

IntMatrix build_A(int n, AForm which) {
  require_n(n);
  if (which == AForm::primed) {
    IntMatrix a(n + 1, n + 2);
    for (int j = 0; j < n + 2; ++j) a(0, j) = 1;
    for (int i = 1; i <= n; ++i) {
      a(i, i) = 1;
      a(i, n + 1) = -1;
    }
    return a;
  }
  IntMatrix a(2 * n - 1, 2 * n);
  for (int i = 0; i + 1 < n; ++i) {
    a(i, i) = 1;
    a(i, n + i) = 1;
  }
  a(n - 1, n - 1) = 1;
  a(n - 1, 2 * n - 1) = 1;
  for (int j = 0; j + 1 < n; ++j) {
    a(n + j, n - 1) = 1;
    a(n + j, n + j) = 1;
  }
  return a;
}

IntMatrix build_A_raw(int n, AForm which) {
  require_n(n);
  if (which == AForm::primed) {
    IntMatrix a(n + 1, n + 2);
    for (int i = 0; i <= n; ++i) a(i, i) = 1;
    a(0, n + 1) = n + 1;
    for (int i = 1; i <= n; ++i) a(i, n + 1) = -1;
    return a;
  }
  IntMatrix a(2 * n - 1, 2 * n);
  for (int i = 0; i < n; ++i) a(i, 2 * i) = a(i, 2 * i + 1) = 1;
  for (int j = 0; j + 1 < n; ++j) {
    a(n + j, 2 * j + 1) = 1;
    a(n + j, 2 * n - 1) = 1;
  }
  return a;
}

bool row_equivalent_to_raw(int n, AForm which) {
  IntMatrix raw = build_A_raw(n, which);
  IntMatrix printed = build_A(n, which);
  IntMatrix permuted = raw;
  if (which == AForm::unprimed) {
    // term i of the integrand owns raw columns (2i, 2i+1); the printed order
    // lists the first column of every term, then the second
    for (int r = 0; r < raw.rows(); ++r) {
      for (int i = 0; i + 1 < n; ++i) {
        permuted(r, i) = raw(r, 2 * i);
        permuted(r, n + i) = raw(r, 2 * i + 1);
      }
      permuted(r, n - 1) = raw(r, 2 * n - 1);
      permuted(r, 2 * n - 1) = raw(r, 2 * n - 2);
    }
  }
  return rref(to_rational(permuted)) == rref(to_rational(printed));
}

std::vector<mpz_class> relation_lattice(const IntMatrix& A) {
  int corank = A.cols() - rank(A);
  if (corank != 1) throw Error(ErrorKind::CorankNotOne, "kernel has rank " + std::to_string(corank));
  SmithForm f = smith_normal_form(A);
  // U A V = D, so the last column of V spans the kernel
  std::vector<mpz_class> b(A.cols());
  for (int i = 0; i < A.cols(); ++i) b[i] = f.V(i, A.cols() - 1);
  mpz_class g = 0;
  for (const auto& x : b) g = gcd(g, x);
  for (auto& x : b) x /= g;
  for (const auto& x : b)
    if (abs(x) == 1) {
      if (x < 0)
        for (auto& y : b) y = -y;
      break;
    }
  return b;
}

std::vector<mpz_class> h_values(const IntMatrix& A, int n, AForm which) {
  int rows = which == AForm::primed ? 1 : n;
  std::vector<mpz_class> h(A.cols());
  for (int j = 0; j < A.cols(); ++j)
    for (int i = 0; i < rows; ++i) h[j] += A(i, j);
  return h;
}

GkzSystem build_system(const std::vector<mpq_class>& rho) {
  int n = static_cast<int>(rho.size());
  GkzSystem s;
  s.n = n;
  s.A = build_A(n, AForm::unprimed);
  s.B = relation_lattice(s.A);
  s.rho = rho;
  s.gamma0.assign(2 * n, 0);
  for (int i = 0; i < n; ++i) s.gamma0[n + i] = -rho[i];
  return s;
}

NonresonanceReport nonresonance_report(const std::vector<mpq_class>& rho) {
  int n = static_cast<int>(rho.size());
  require_n(n);
  NonresonanceReport r;
  // alpha vector (-rho_1..-rho_n, -rho_1..-rho_{n-1}) = (alpha_1..alpha_{n-1}, -beta_1-1, ..., -beta_n-1)
  std::vector<mpq_class> vec;
  for (int i = 0; i < n; ++i) vec.push_back(-rho[i]);
  for (int i = 0; i + 1 < n; ++i) vec.push_back(-rho[i]);
  for (int i = 0; i + 1 < n; ++i) r.alpha.push_back(vec[i]);
  for (int j = n - 1; j < 2 * n - 1; ++j) r.beta.push_back(-vec[j] - 1);
  auto integral = [](const mpq_class& q) { return q.get_den() == 1; };
  r.nonresonant = true;
  for (const auto& x : rho)
    if (integral(x)) r.nonresonant = false;
  for (const auto& a : r.alpha) {
    r.sum += a;
    if (integral(a)) r.nonresonant = false;
  }
  for (const auto& b : r.beta) {
    r.sum += b;
    if (integral(b)) r.nonresonant = false;
  }
  if (integral(r.sum)) r.nonresonant = false;
  return r;
}

bool nonresonance_check(const std::vector<mpq_class>& rho) { return nonresonance_report(rho).nonresonant; }

bool SecondaryFan::unimodular() const {
  for (const auto* list : {&plus, &minus})
    for (const auto& t : *list)
      if (abs(t.det) != 1) return false;
  return true;
}

SecondaryFan secondary_fan(int n, const std::vector<mpq_class>& rho) {
  require_n(n);
  if (static_cast<int>(rho.size()) != n) throw Error(ErrorKind::InvalidInput, "rho must have n entries");
  GkzSystem sys = build_system(rho);
  SecondaryFan f;
  f.n = n;
  mpq_class half = 0;
  for (const auto& b : sys.B) half += mpq_class(abs(b)) / 4;
  f.zonotope_lo = -half;
  f.zonotope_hi = half;
  for (int k = 1; k <= 2 * n; ++k) {
    Triangulation t;
    t.label = k;
    for (int i = 1; i <= 2 * n; ++i)
      if (i != k) t.index.push_back(i);
    IntMatrix sub(2 * n - 1, 2 * n - 1);
    for (int r = 0; r < 2 * n - 1; ++r)
      for (int c = 0; c < 2 * n - 1; ++c) sub(r, c) = sys.A(r, t.index[c] - 1);
    t.det = determinant(sub);
    t.nu.assign(2 * n, 0);
    t.nu[k - 1] = 1;
    t.pi_nu = k <= n ? 1 : -1;
    t.mu = k <= n ? mpq_class(0) : rho[k - n - 1];
    for (int i = 0; i < 2 * n; ++i) t.gamma.push_back(sys.gamma0[i] - t.mu * sys.B[i]);
    (k <= n ? f.plus : f.minus).push_back(std::move(t));
  }
  return f;
}

SecondaryFan secondary_fan(int n) {
  std::vector<mpq_class> rho;
  for (int k = 1; k <= n; ++k) rho.emplace_back(k, n + 1);
  for (auto& r : rho) r.canonicalize();
  return secondary_fan(n, rho);
}

GammaSeries gamma_series(const std::vector<mpq_class>& rho, GammaChoice choice, int order) {
  int n = static_cast<int>(rho.size());
  require_n(n);
  if (order < 1) throw Error(ErrorKind::InvalidInput, "order must be positive");
  GammaSeries g;
  std::ostringstream pre;
  if (choice.shift == 0) {
    g.series = mirror_coefficients(rho, order);
    g.exponent = 0;
    g.variable = "t";
    for (int i = 0; i < n; ++i) pre << (i ? " * " : "") << "1/Gamma(1 - " << q_str(rho[i]) << ")";
    g.prefactor = pre.str();
    return g;
  }
  int r = choice.shift;
  if (r < 1 || r > n) throw Error(ErrorKind::InvalidInput, "shift index out of range");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rho[i] == rho[j]) throw Error(ErrorKind::ResonantShift, "repeated exponent " + q_str(rho[i]));
  for (int i = 0; i + 1 < n; ++i)
    if (!(rho[i] < rho[i + 1])) throw Error(ErrorKind::InvalidInput, "rho must be strictly increasing");
  const mpq_class& rr = rho[r - 1];
  std::vector<mpq_class> upper(n, rr), lower;
  for (int i = 0; i < n; ++i)
    if (i != r - 1) lower.push_back(1 + rr - rho[i]);
  g.series = hypergeometric_coefficients(upper, lower, order);
  g.exponent = -rr;
  g.variable = "1/t";
  pre << "exp(pi*i*" << n << "*" << q_str(rr) << ") / Gamma(1 - " << q_str(rr) << ")^" << n;
  for (int i = 0; i < n; ++i) pre << " / Gamma(1 + " << q_str(rr) << " - " << q_str(rho[i]) << ")";
  g.prefactor = pre.str();
  return g;
}

}  // namespace k3
