#include <omp.h>

#include <algorithm>
#include <cmath>

#include "k3/errors.hpp"
#include "k3/monodromy.hpp"
#include "k3/special.hpp"

namespace k3 {

void gauss_legendre(int m, mpfr_prec_t bits, std::vector<Real>& x, std::vector<Real>& w) {
  if (m < 1) throw Error(ErrorKind::InvalidInput, "need at least one node");
  mpfr_prec_t wp = bits + 32;
  x.assign(m, Real(wp));
  w.assign(m, Real(wp));
  Real eps = ldexp(Real(1L, wp), -static_cast<long>(bits) - 8);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    Real z(std::cos(M_PI * (i + 0.75) / (m + 0.5)), wp);
    Real dp(wp);
    for (int it = 0; it < 200; ++it) {
      Real p0(1L, wp), p1 = z;
      for (int k = 2; k <= m; ++k) {
        Real p2 = (z * p1 * (2 * k - 1) - p0 * (k - 1)) / k;
        p0 = p1;
        p1 = p2;
      }
      // P_m' = m (z P_m - P_{m-1}) / (z^2 - 1)
      dp = (z * p1 - p0) * m / (z * z - 1L);
      Real dz = p1 / dp;
      z = z - dz;
      if (abs(dz) < eps) break;
    }
    {
      Real p0(1L, wp), p1 = z;
      for (int k = 2; k <= m; ++k) {
        Real p2 = (z * p1 * (2 * k - 1) - p0 * (k - 1)) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = (z * p1 - p0) * m / (z * z - 1L);
    }
    Real wi = Real(2L, wp) / ((Real(1L, wp) - z * z) * dp * dp);
    x[i] = -z;
    x[m - 1 - i] = z;
    w[i] = wi;
    w[m - 1 - i] = wi;
  }
  for (int i = 0; i < m; ++i) {
    mpfr_prec_round(x[i].get(), bits, MPFR_RNDN);
    mpfr_prec_round(w[i].get(), bits, MPFR_RNDN);
  }
}

namespace {

struct Integrand {
  std::vector<mpq_class> rho;
  Complex log_mx;  // principal log(-x)
  Real sigma;
  double tilt;
  mpfr_prec_t bits;

  // integrand in y for s = sigma + tilt |y| + i y, including ds/dy
  Complex operator()(const Real& y) const {
    Real ay = abs(y);
    Complex s(sigma + ay * Real(tilt, bits), y);
    Complex lg(0L, bits);
    for (const auto& r : rho) lg += lgamma_shifted(s + Real(r, bits));
    Complex l1 = lgamma_shifted(s + Real(1L, bits));
    for (size_t i = 0; i < rho.size(); ++i) lg -= l1;
    Complex v = exp(lg + s * log_mx);
    v = v * const_pi(bits) / sin(s * const_pi(bits));
    Complex ds(Real(y.sign() >= 0 ? tilt : -tilt, bits), Real(1L, bits));
    return v * ds;
  }
};

}  // namespace

MellinBarnesResult mellin_barnes_eval(const HypergeometricParams& p, const Complex& t, const mpq_class& sigma,
                                      const MellinBarnesOptions& opt) {
  int n = p.n();
  if (n < 1) throw Error(ErrorKind::InvalidInput, "empty rho");
  for (int i = 0; i + 1 < n; ++i)
    if (p.rho[i] > p.rho[i + 1]) throw Error(ErrorKind::InvalidInput, "rho must be sorted");
  if (!(p.rho[0] > 0)) throw Error(ErrorKind::InvalidInput, "rho must be positive");
  if (!(sigma < 0 && sigma > -p.rho[0]))
    throw Error(ErrorKind::SigmaOutOfRange, "sigma must lie in (-rho_1, 0), got " + sigma.get_str());
  if (opt.tilt < 0 || opt.panel <= 0 || opt.nodes < 2) throw Error(ErrorKind::InvalidInput, "bad quadrature options");

  mpfr_prec_t bits = digits_to_bits(opt.digits + 10);
  Complex x = t * Real(p.C, bits);
  if (x.is_zero()) throw Error(ErrorKind::InvalidInput, "t = 0 lies outside the integral representation");
  Integrand f{p.rho, log(-x), Real(sigma, bits), opt.tilt, bits};

  double ax = abs(x).to_double();
  double argmx = std::fabs(f.log_mx.im.to_double());
  double rate = M_PI + opt.tilt * std::log(1.0 / ax) - argmx;
  if (!(rate > 0.05))
    throw Error(ErrorKind::TruncationBoundViolated, "integrand does not decay along the contour");

  double tol = std::pow(10.0, -static_cast<double>(opt.digits));
  double K = std::max(1.0, abs(f(Real(0L, bits))).to_double()) * 10.0;
  double H = std::log(K / (tol * rate)) / rate;
  if (!(H <= opt.max_height)) throw Error(ErrorKind::TruncationBoundViolated, "truncation height exceeds the cap");

  // panels shrink near y = 0, where poles at s = 0 and s = -rho_1 sit close to the contour
  double d = std::min(-sigma.get_d(), mpq_class(p.rho[0] + sigma).get_d()) / (1.0 + opt.tilt);
  std::vector<std::pair<double, double>> panels;
  for (double a = 0; a < H;) {
    double width = std::min(opt.panel, 0.5 * (d + a / (1.0 + opt.tilt)));
    double b = std::min(H, a + width);
    panels.emplace_back(a, b);
    panels.emplace_back(-b, -a);
    a = b;
  }
  std::vector<Real> gx, gw;
  gauss_legendre(opt.nodes, bits, gx, gw);

  size_t total = panels.size() * static_cast<size_t>(opt.nodes);
  std::vector<Complex> vals(total, Complex(bits));
  auto node = [&](size_t idx) {
    const auto& [a, b] = panels[idx / opt.nodes];
    int k = static_cast<int>(idx % opt.nodes);
    Real ra(a, bits), rb(b, bits);
    Real mid = ldexp(ra + rb, -1), half = ldexp(rb - ra, -1);
    vals[idx] = f(mid + half * gx[k]) * (half * gw[k]);
  };
  if (opt.parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (long idx = 0; idx < static_cast<long>(total); ++idx) node(static_cast<size_t>(idx));
  } else {
    for (size_t idx = 0; idx < total; ++idx) node(idx);
  }
  Complex sum(0L, bits);
  for (const auto& v : vals) sum += v;

  double edge = std::max(abs(f(Real(H, bits))).to_double(), abs(f(Real(-H, bits))).to_double());
  double tail = 2.0 * edge / rate;
  double scale = std::max(1.0, abs(sum).to_double() / (2 * M_PI));
  if (!(tail < tol * scale)) throw Error(ErrorKind::TruncationBoundViolated, "tail beyond H exceeds the tolerance");

  // f = -(1/(2 pi i)) int ... ds with ds = (tilt sign y + i) dy folded into the integrand
  Complex pref(1L, bits);
  for (const auto& r : p.rho) pref = pref / gamma(Complex(r, bits));
  Complex value = -(sum * pref) / two_pi_i(bits);
  int dbits = static_cast<int>(digits_to_bits(opt.digits));
  mpfr_prec_round(value.re.get(), dbits, MPFR_RNDN);
  mpfr_prec_round(value.im.get(), dbits, MPFR_RNDN);
  return {value, H, tail, static_cast<long>(total) + 3};
}

}  // namespace k3
