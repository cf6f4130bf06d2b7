#include <omp.h>

#include <algorithm>
#include <cmath>

#include "k3/errors.hpp"
#include "k3/monodromy.hpp"

namespace k3 {

namespace {

using Mat = std::vector<std::vector<cld>>;

struct System {
  int n = 0;
  std::vector<long double> e;  // prod (theta + rho_i) = sum_k e[k] theta^k, e[n] = 1
};

System make_system(const std::vector<mpq_class>& rho) {
  System s;
  s.n = static_cast<int>(rho.size());
  std::vector<long double> e{1.0L};
  for (const auto& r : rho) {
    long double v = static_cast<long double>(r.get_num().get_d()) / static_cast<long double>(r.get_den().get_d());
    std::vector<long double> next(e.size() + 1, 0.0L);
    for (size_t k = 0; k < e.size(); ++k) {
      next[k] += v * e[k];
      next[k + 1] += e[k];
    }
    e = next;
  }
  s.e = e;
  return s;
}

long double vec_norm(const std::vector<cld>& y) {
  long double m = 0;
  for (const auto& v : y) m = std::max(m, std::abs(v));
  return m;
}

// One Taylor step of tau Y_j' = Y_{j+1} (j < n-1), (1 - tau) Y_{n-1}' = sum_k e_k Y_k
// from tau_c to tau_c + h, in the scaled variable tau = C t.
std::vector<cld> taylor_step(const System& s, const std::vector<cld>& y, cld tc, cld h, long double tol) {
  int n = s.n;
  std::vector<std::vector<cld>> a(n);
  for (int j = 0; j < n; ++j) a[j].push_back(y[j]);
  std::vector<cld> out = y;
  long double scale = std::max(vec_norm(y), 1e-300L);
  cld hp = 1;
  int small = 0;
  for (int m = 0; m < 400; ++m) {
    std::vector<cld> next(n);
    for (int j = 0; j + 1 < n; ++j)
      next[j] = (a[j + 1][m] - static_cast<long double>(m) * a[j][m]) / (tc * static_cast<long double>(m + 1));
    cld S = 0;
    for (int k = 0; k < n; ++k) S += s.e[k] * a[k][m];
    next[n - 1] = (S + static_cast<long double>(m) * a[n - 1][m]) / ((1.0L - tc) * static_cast<long double>(m + 1));
    hp *= h;
    long double mag = 0;
    for (int j = 0; j < n; ++j) {
      a[j].push_back(next[j]);
      cld term = next[j] * hp;
      out[j] += term;
      mag = std::max(mag, std::abs(term));
    }
    small = mag < tol * 1e-3L * scale ? small + 1 : 0;
    if (small >= 3) return out;
  }
  throw Error(ErrorKind::StepSizeUnderflow, "Taylor series did not converge within 400 terms");
}

struct Integrator {
  const System& sys;
  const OdeOptions& opt;
  long steps = 0;

  std::vector<cld> along(std::vector<cld> y, const std::vector<cld>& path) {
    for (size_t i = 0; i + 1 < path.size(); ++i) {
      cld a = path[i], b = path[i + 1];
      cld cur = a;
      while (true) {
        cld rem = b - cur;
        long double len = std::abs(rem);
        if (len == 0) break;
        long double R = std::min(std::abs(cur), std::abs(1.0L - cur));
        long double hmax = R / 3;
        if (hmax < opt.min_step)
          throw Error(ErrorKind::StepSizeUnderflow, "path passes too close to a singular point");
        cld h = len <= hmax ? rem : rem * (hmax / len);
        y = taylor_step(sys, y, cur, h, opt.tolerance);
        cur = len <= hmax ? b : cur + h;
        ++steps;
        if (len <= hmax) break;
      }
    }
    return y;
  }
};

std::vector<cld> circle(cld center, long double radius, long double start_angle, int pieces) {
  std::vector<cld> pts;
  const long double two_pi = 6.283185307179586476925286766559L;
  for (int k = 0; k <= pieces; ++k) pts.push_back(center + std::polar(radius, start_angle + two_pi * k / pieces));
  pts.back() = pts.front();
  return pts;
}

std::vector<cld> loop_path(const Loop& loop) {
  switch (loop.kind) {
    case LoopKind::around_zero:
      return circle(0.0L, 0.5L, 0.0L, 96);
    case LoopKind::around_1overC:
      return circle(1.0L, 0.5L, 3.141592653589793238462643383279L, 96);
    case LoopKind::around_infinity:
      // counterclockwise rectangle enclosing 0 and 1, reached from 1/2 by a vertical spoke
      return {cld(0.5L, 0), cld(0.5L, -1), cld(2, -1), cld(2, 1), cld(-1, 1), cld(-1, -1), cld(0.5L, -1),
              cld(0.5L, 0)};
    case LoopKind::custom:
      if (loop.polyline.size() < 2 || loop.polyline.front() != cld(0.5L, 0) || loop.polyline.back() != cld(0.5L, 0))
        throw Error(ErrorKind::InvalidInput, "custom loops must start and end at 1/2");
      return loop.polyline;
  }
  return {};
}

Mat inverse_ld(Mat a) {
  int n = static_cast<int>(a.size());
  Mat inv(n, std::vector<cld>(n, 0));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    if (std::abs(a[piv][c]) == 0) throw Error(ErrorKind::BasisMatchingIllConditioned, "singular basis matrix");
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    cld d = a[c][c];
    for (int k = 0; k < n; ++k) {
      a[c][k] /= d;
      inv[c][k] /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      cld f = a[r][c];
      if (f == cld(0)) continue;
      for (int k = 0; k < n; ++k) {
        a[r][k] -= f * a[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

long double norm_inf(const Mat& a) {
  long double m = 0;
  for (const auto& row : a) {
    long double s = 0;
    for (const auto& v : row) s += std::abs(v);
    m = std::max(m, s);
  }
  return m;
}

// Rows: (f~_{n-1}, ..., f~_0); columns: theta^j, at t = 1/(2C).
Mat basis_at_base(const HypergeometricParams& p) {
  int n = p.n();
  mpfr_prec_t bits = 160;
  FrobeniusBasis fb = frobenius_zero(p, 150);
  Complex t0(mpq_class(1) / (2 * p.C), bits);
  auto st = fb.state(t0, bits);
  Mat W(n, std::vector<cld>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Complex& v = st[n - 1 - i][j];
      W[i][j] = cld(mpfr_get_ld(v.re.get(), MPFR_RNDN), mpfr_get_ld(v.im.get(), MPFR_RNDN));
    }
  return W;
}

}  // namespace

std::string Loop::name() const {
  switch (kind) {
    case LoopKind::around_zero: return "around_zero";
    case LoopKind::around_1overC: return "around_1overC";
    case LoopKind::around_infinity: return "around_infinity";
    case LoopKind::custom: return "custom";
  }
  return "";
}

Mat matmul_ld(const Mat& a, const Mat& b) {
  size_t n = a.size(), m = b[0].size(), k = b.size();
  Mat c(n, std::vector<cld>(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t l = 0; l < k; ++l)
      for (size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

Mat to_ld(const CMatrix& m) {
  Mat r(m.rows(), std::vector<cld>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      r[i][j] = cld(mpfr_get_ld(m(i, j).re.get(), MPFR_RNDN), mpfr_get_ld(m(i, j).im.get(), MPFR_RNDN));
  return r;
}

std::vector<cld> charpoly_ld(const Mat& m) {
  // Faddeev-LeVerrier: M_1 = I, c_{n-k} = -tr(A M_k)/k, M_{k+1} = A M_k + c_{n-k} I
  int n = static_cast<int>(m.size());
  std::vector<cld> c(n + 1, 0);
  c[n] = 1;
  Mat M(n, std::vector<cld>(n, 0));
  for (int i = 0; i < n; ++i) M[i][i] = 1;
  for (int k = 1; k <= n; ++k) {
    Mat AM = matmul_ld(m, M);
    cld tr = 0;
    for (int i = 0; i < n; ++i) tr += AM[i][i];
    c[n - k] = -tr / static_cast<long double>(k);
    M = AM;
    for (int i = 0; i < n; ++i) M[i][i] += c[n - k];
  }
  return c;
}

std::vector<OdeResult> ode_transport_all(const HypergeometricParams& p, const std::vector<Loop>& loops,
                                         const OdeOptions& opt) {
  validate(p);
  int n = p.n();
  System sys = make_system(p.rho);
  Mat W = basis_at_base(p);
  Mat Winv = inverse_ld(W);
  long double cond = norm_inf(W) * norm_inf(Winv);
  if (!(cond < 1e13L)) throw Error(ErrorKind::BasisMatchingIllConditioned, "basis matrix condition number too large");

  std::vector<std::vector<cld>> paths;
  for (const auto& l : loops) paths.push_back(loop_path(l));
  int L = static_cast<int>(loops.size());
  int jobs = L * n;
  std::vector<std::vector<cld>> rows(jobs);
  std::vector<long> steps(jobs, 0);
  std::vector<std::string> errors(jobs);
  std::vector<int> kinds(jobs, -1);
  auto run = [&](int job) {
    int l = job / n, i = job % n;
    try {
      Integrator it{sys, opt};
      rows[job] = it.along(W[i], paths[l]);
      steps[job] = it.steps;
    } catch (const Error& e) {
      errors[job] = e.what();
      kinds[job] = static_cast<int>(e.kind());
    }
  };
  if (opt.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int job = 0; job < jobs; ++job) run(job);
  } else {
    for (int job = 0; job < jobs; ++job) run(job);
  }
  for (int job = 0; job < jobs; ++job)
    if (kinds[job] >= 0) throw Error(static_cast<ErrorKind>(kinds[job]), errors[job]);

  std::vector<OdeResult> out(L);
  for (int l = 0; l < L; ++l) {
    Mat Wp(rows.begin() + l * n, rows.begin() + (l + 1) * n);
    out[l].matrix = matmul_ld(Wp, Winv);
    for (int i = 0; i < n; ++i) out[l].steps += steps[l * n + i];
    out[l].matching_condition = cond;
  }
  return out;
}

OdeResult ode_transport(const HypergeometricParams& p, const Loop& loop, const OdeOptions& opt) {
  return ode_transport_all(p, {loop}, opt).front();
}

Complex hypergeometric_continue(const std::vector<mpq_class>& rho, const Complex& t, mpfr_prec_t bits) {
  int n = static_cast<int>(rho.size());
  long double tr = mpfr_get_ld(t.re.get(), MPFR_RNDN), ti = mpfr_get_ld(t.im.get(), MPFR_RNDN);
  cld target(tr, ti);
  if (ti == 0 && tr >= 1) throw Error(ErrorKind::DivergentArgument, "t lies on the branch cut [1, inf)");
  // theta^j F at 1/2 from the series
  mpfr_prec_t wp = 128;
  std::vector<Complex> y0(n, Complex(0L, wp));
  Real c(1L, wp), x(mpq_class(1, 2), wp);
  for (long k = 0; k < 400; ++k) {
    Real kp(1L, wp);
    for (int j = 0; j < n; ++j) {
      y0[j].re += c * kp;
      kp = kp * k;
    }
    mpq_class ratio = 1;
    for (const auto& r : rho) ratio *= (r + k) / (k + 1);
    c = c * Real(ratio, wp) * x;
  }
  std::vector<cld> y(n);
  for (int j = 0; j < n; ++j) y[j] = cld(mpfr_get_ld(y0[j].re.get(), MPFR_RNDN), 0);
  // arc of radius 1/2 to arg t, then radially out
  long double ang = std::arg(target);
  std::vector<cld> path;
  const int pieces = 64;
  for (int k = 0; k <= pieces; ++k) path.push_back(std::polar(0.5L, ang * k / pieces));
  path.push_back(target);
  System sys = make_system(rho);
  OdeOptions opt;
  Integrator it{sys, opt};
  std::vector<cld> yt = it.along(y, path);
  Complex out(bits);
  mpfr_set_ld(out.re.get(), yt[0].real(), MPFR_RNDN);
  mpfr_set_ld(out.im.get(), yt[0].imag(), MPFR_RNDN);
  return out;
}

}  // namespace k3
