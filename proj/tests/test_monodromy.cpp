#include <mpfr.h>

#include "doctest.h"
#include "k3/errors.hpp"
#include "k3/monodromy.hpp"
#include "k3/report.hpp"
#include "k3/special.hpp"

using namespace k3;

namespace {

mpq_class qq(long a, long b) {
  mpq_class r(a, b);
  r.canonicalize();
  return r;
}

Real tol(const char* s, mpfr_prec_t bits) { return Real(std::string(s), bits); }

Real mp_gamma(const Real& x) {
  Real out(x.prec());
  mpfr_gamma(out.get(), x.get(), MPFR_RNDN);
  return out;
}

// C^{-eps} B_r(eps) straight from the closed form, real eps.
Complex b_closed(int r, const HypergeometricParams& p, const Real& eps) {
  mpfr_prec_t bits = eps.prec();
  Real pi = const_pi(bits), one(1L, bits);
  Real prod = one;
  for (const auto& rho : p.rho) {
    Real x(rho, bits);
    prod = prod * mp_gamma(x) * mp_gamma(one + eps) / mp_gamma(x + eps);
  }
  Real rr(p.rho[r - 1], bits);
  Real ratio = sin(pi * rr) / sin(pi * rr + pi * eps);
  Real cpow = exp(-(eps * log(Real(p.C, bits))));
  return expi(-(pi * eps)) * (prod * ratio * cpow);
}

Real max_diff(const CMatrix& a, const CMatrix& b) { return max_abs(a - b); }

CMatrix rational_matrix(const std::vector<std::vector<mpq_class>>& v, mpfr_prec_t bits) {
  int n = static_cast<int>(v.size());
  CMatrix m(n, n, bits);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(v[i][j], bits);
  return m;
}

long double ld_diff(const std::vector<std::vector<cld>>& a, const std::vector<std::vector<cld>>& b) {
  long double worst = 0;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[i][j] - b[i][j]));
  return worst;
}

}  // namespace

TEST_SUITE("monodromy") {
  TEST_CASE("local monodromy at zero") {
    mpfr_prec_t bits = digits_to_bits(40);
    CHECK(max_diff(m0(2, bits), rational_matrix({{1, 1}, {0, 1}}, bits)) < tol("1e-38", bits));
    CMatrix m4 = m0(4, bits);
    CHECK(abs(m4(0, 2) - Complex(qq(1, 2), bits)) < tol("1e-38", bits));
    CHECK(abs(m4(0, 3) - Complex(qq(1, 6), bits)) < tol("1e-38", bits));
    for (int n = 1; n <= 7; ++n) {
      CMatrix N = m0(n, bits) - CMatrix::identity(n, bits);
      CHECK(max_abs(pow(N, n)) < tol("1e-38", bits));
      if (n > 1) CHECK(max_abs(pow(N, n - 1)) > tol("1e-3", bits));
      CHECK(abs(determinant(m0(n, bits)) - Complex(1L, bits)) < tol("1e-38", bits));
    }
  }

  TEST_CASE("local monodromy at infinity") {
    mpfr_prec_t bits = digits_to_bits(40);
    Real pi = const_pi(bits);
    CMatrix d = M_infty({qq(1, 3), qq(2, 3)}, bits);
    CHECK(abs(d(0, 0) - expi(-(pi * 4L) / 3L)) < tol("1e-38", bits));
    CHECK(abs(d(1, 1) - expi(-(pi * 2L) / 3L)) < tol("1e-38", bits));
    CHECK(abs(d(0, 1)) < tol("1e-38", bits));
    CMatrix d5 = M_infty({qq(1, 5), qq(2, 5), qq(3, 5), qq(4, 5)}, bits);
    CHECK(abs(trace(d5) + Complex(1L, bits)) < tol("1e-36", bits));
    CHECK(abs(determinant(d5) - Complex(1L, bits)) < tol("1e-36", bits));
  }

  TEST_CASE("transition functions") {
    mpfr_prec_t bits = digits_to_bits(60);
    HypergeometricParams p{{qq(1, 3), qq(2, 3)}, 27};
    for (int r = 1; r <= 2; ++r) {
      Jet j = B_jet(r, p, 2, bits);
      CHECK(abs(j[0] - Complex(1L, bits)) < tol("1e-55", bits));
      Real h = tol("1e-10", bits);
      Complex fd = (b_closed(r, p, h) - b_closed(r, p, -h)) / (h * 2L);
      CHECK(abs(j[1] - fd) < tol("1e-16", bits));  // O(h^2) truncation
    }

    HypergeometricParams q{{qq(1, 4), qq(1, 2), qq(3, 4)}, 3};
    for (int r = 1; r <= 3; ++r) {
      Jet j = B_jet(r, q, 3, bits);
      CHECK(abs(j[0] - Complex(1L, bits)) < tol("1e-55", bits));
      Real h = tol("1e-10", bits);
      Complex fd = (b_closed(r, q, h) - b_closed(r, q, -h)) / (h * 2L);
      CHECK(abs(j[1] - fd) < tol("1e-16", bits));  // O(h^2) truncation
    }
  }

  TEST_CASE("mirror jets do not depend on the Euler constant") {
    mpfr_prec_t bits = digits_to_bits(60);
    for (int n = 2; n <= 5; ++n) {
      HypergeometricParams p = HypergeometricParams::mirror(n);
      BJetOptions perturbed;
      perturbed.euler_gamma = Real(std::string("0.123456789"), bits);
      BJetOptions general;
      general.force_general = true;
      for (int r = 1; r <= n; ++r) {
        Jet a = B_jet(r, p, n, bits), b = B_jet(r, p, n, bits, perturbed), c = B_jet(r, p, n, bits, general);
        for (int k = 0; k < n; ++k) {
          CHECK(abs(a[k] - b[k]) < tol("1e-50", bits));
          CHECK(abs(a[k] - c[k]) < tol("1e-50", bits));
        }
      }
    }
    // away from the mirror exponents the constant does enter
    HypergeometricParams q{{qq(1, 6), qq(1, 2), qq(5, 6)}, 3};
    BJetOptions perturbed;
    perturbed.euler_gamma = Real(std::string("0.123456789"), bits);
    CHECK(abs(B_jet(1, q, 3, bits)[1] - B_jet(1, q, 3, bits, perturbed)[1]) > tol("1e-3", bits));
  }

  TEST_CASE("transition matrix and table entries") {
    mpfr_prec_t bits = digits_to_bits(60);
    for (int n = 2; n <= 5; ++n) {
      CMatrix P = transition_matrix(HypergeometricParams::mirror(n), bits);
      for (int k = 0; k < n; ++k) CHECK(abs(P(n - 1, k) - Complex(1L, bits)) < tol("1e-55", bits));
    }
    HypergeometricParams p2 = HypergeometricParams::mirror(2);
    CHECK(p2.C == 27);
    CMatrix P = transition_matrix(p2, bits);
    CMatrix minf = P * M_infty(p2.rho, bits) * inverse(P);
    CHECK(max_diff(minf, rational_matrix({{1, 1}, {-3, -2}}, bits)) < tol("1e-50", bits));

    MonodromySuite s3 = monodromy_suite(3, 60);
    CHECK(max_diff(s3.mInf, rational_matrix({{0, 0, qq(-1, 4)}, {0, 1, 1}, {-4, -4, -2}}, s3.mInf.bits())) <
          tol("1e-50", bits));
    CHECK(max_diff(s3.m1C, rational_matrix({{0, 0, qq(-1, 4)}, {0, 1, 0}, {-4, 0, 0}}, s3.m1C.bits())) <
          tol("1e-50", bits));

    MonodromySuite s4 = monodromy_suite(4, 60);
    Complex tpi = two_pi_i(bits);
    Complex kappa4 = Complex(zeta_int(3, bits) * -200L) / (tpi * tpi * tpi);
    CHECK(abs(s4.m1C(0, 0) - (Complex(1L, bits) + kappa4)) < tol("1e-50", bits));
    CHECK(abs(kappa4 - reference_kappa(4, bits)) < tol("1e-50", bits));

    MonodromySuite s5 = monodromy_suite(5, 60);
    CHECK(abs(s5.m1C(0, 0) - Complex(qq(75, 64), bits)) < tol("1e-50", bits));
  }

  TEST_CASE("suite invariants") {
    for (int n = 2; n <= 5; ++n) {
      MonodromySuite s = monodromy_suite(n, 60);
      mpfr_prec_t bits = s.m0.bits();
      CHECK(max_diff(s.m1C * s.m0, s.mInf) < tol("1e-50", bits));
      CHECK(abs(determinant(s.m0) - Complex(1L, bits)) < tol("1e-50", bits));
      CMatrix expected = evaluate(reference_matrices()[n - 2].mInf, reference_kappa(n, bits), bits);
      CHECK(max_diff(s.mInf, expected) < tol("1e-30", bits));
      // eigenvalues of m_inf are exp(-2 pi i k/(n+1))
      std::vector<Complex> roots = polynomial_roots(charpoly(s.mInf));
      Real pi = const_pi(bits);
      for (int k = 1; k <= n; ++k) {
        Complex w = expi(-(pi * (2L * k)) / static_cast<long>(n + 1));
        Real best = abs(roots[0] - w);
        for (const auto& r : roots)
          if (abs(r - w) < best) best = abs(r - w);
        CHECK(best < tol("1e-40", bits));
      }
      // m_1/C is a reflection
      std::vector<Real> sv = singular_values(s.m1C - CMatrix::identity(n, bits));
      CHECK(sv[0] > tol("1e-20", bits));
      for (int k = 1; k < n; ++k) CHECK(sv[k] < tol("1e-20", bits));
    }
  }

  TEST_CASE("series evaluation") {
    mpfr_prec_t bits = digits_to_bits(40);
    CHECK(abs(hypergeometric_eval({qq(1, 2), qq(1, 2)}, Complex(0L, bits), bits) - Complex(1L, bits)) <
          tol("1e-38", bits));

    // 200-term partial sum with a geometric remainder estimate
    std::vector<mpq_class> rho{qq(1, 2), qq(1, 2), qq(1, 2)};
    mpq_class t = qq(1, 10), term = 1, sum = 0;
    for (int k = 0; k < 200; ++k) {
      sum += term;
      term *= (rho[0] + k) * (rho[1] + k) * (rho[2] + k) / ((k + 1) * (k + 1) * (k + 1)) * t;
    }
    Real oracle(sum, bits);
    Real remainder = Real(term, bits) / Real(qq(9, 10), bits);
    Complex v = hypergeometric_eval(rho, Complex(Real(t, bits)), bits);
    CHECK(abs(v.re - oracle) < remainder + tol("1e-36", bits));
    CHECK(abs(v.im) < tol("1e-36", bits));

    try {
      hypergeometric_eval(rho, Complex(2L, bits), bits);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DivergentArgument);
    }
  }

  TEST_CASE("clausen") {
    mpfr_prec_t bits = digits_to_bits(50);
    for (const char* s : {"0.3", "-0.4", "0.05", "0.49"}) {
      Complex t(Real(std::string(s), bits));
      CHECK(abs(clausen_defect(t, bits)) < tol("1e-25", bits));
    }
    Complex z(Real(std::string("0.2"), bits), Real(std::string("0.3"), bits));
    CHECK(abs(clausen_defect(z, bits)) < tol("1e-25", bits));
  }

  TEST_CASE("hadamard relation") {
    for (int n = 2; n <= 5; ++n) {
      HadamardReport r = hadamard_relation(n, 40);
      CHECK(r.holds);
      CHECK(r.lhs == r.rhs);
    }
  }

  TEST_CASE("frobenius basis") {
    HypergeometricParams p{{qq(1, 3), qq(2, 3)}, 1};
    FrobeniusBasis f = frobenius_zero(p, 12);
    CHECK(f.y[0] == mirror_coefficients(p.rho, 12));
    CHECK(f.y[1][0] == 0);
    // d/de (1/3+e)(2/3+e)/(1+e)^2 at e = 0
    CHECK(f.y[1][1] == qq(5, 9));
    mpfr_prec_t bits = digits_to_bits(80);
    Real e = tol("1e-20", bits);
    Real third(qq(1, 3), bits), two_thirds(qq(2, 3), bits), one(1L, bits);
    Real deformed = (third + e) * (two_thirds + e) / ((one + e) * (one + e));
    Real fd = (deformed - Real(qq(2, 9), bits)) / e;
    CHECK(abs(fd - Real(f.y[1][1], bits)) < tol("1e-18", bits));

    Complex t(Real(std::string("0.01"), bits));
    std::vector<Complex> vals = f.values(t, bits);
    CHECK(abs(vals[0] - hypergeometric_eval(p.rho, t, bits)) < tol("1e-20", bits));
  }

  TEST_CASE("ode transport") {
    OdeOptions opt;
    for (int n = 2; n <= 4; ++n) {
      HypergeometricParams p = HypergeometricParams::mirror(n);
      MonodromySuite s = monodromy_suite(p, 40);
      OdeResult z = ode_transport(p, Loop::standard(LoopKind::around_zero), opt);
      CHECK(ld_diff(z.matrix, to_ld(s.m0)) < 1e-8L);
      std::vector<cld> cp = charpoly_ld(z.matrix);
      std::vector<cld> target = charpoly_ld(to_ld(s.m0));
      for (int k = 0; k <= n; ++k) CHECK(std::abs(cp[k] - target[k]) < 1e-8L);
      OdeResult c = ode_transport(p, Loop::standard(LoopKind::around_1overC), opt);
      OdeResult inf = ode_transport(p, Loop::standard(LoopKind::around_infinity), opt);
      CHECK(ld_diff(matmul_ld(c.matrix, z.matrix), inf.matrix) < 1e-8L);
      std::vector<cld> ci = charpoly_ld(inf.matrix), ti = charpoly_ld(to_ld(s.mInf));
      for (int k = 0; k <= n; ++k) CHECK(std::abs(ci[k] - ti[k]) < 1e-8L);
    }

    HypergeometricParams p2 = HypergeometricParams::mirror(2);
    OdeResult inf = ode_transport(p2, Loop::standard(LoopKind::around_infinity));
    std::vector<cld> cp = charpoly_ld(inf.matrix);
    // x^2 + x + 1 has roots exp(-2 pi i/3), exp(-4 pi i/3)
    CHECK(std::abs(cp[0] - cld(1)) < 1e-8L);
    CHECK(std::abs(cp[1] - cld(1)) < 1e-8L);

    // a square around 0 gives the same matrix as the standard loop
    Loop square = Loop::custom_loop({{0.5L, 0}, {0.5L, 0.5L}, {-0.5L, 0.5L}, {-0.5L, -0.5L}, {0.5L, -0.5L}, {0.5L, 0}});
    OdeResult sq = ode_transport(p2, square);
    CHECK(ld_diff(sq.matrix, ode_transport(p2, Loop::standard(LoopKind::around_zero)).matrix) < 1e-8L);

    try {
      ode_transport(p2, Loop::custom_loop({{0.25L, 0}, {0.25L, 1}, {0.5L, 0}}));
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidInput);
    }

    OdeOptions par;
    par.parallel = true;
    std::vector<Loop> loops{Loop::standard(LoopKind::around_zero), Loop::standard(LoopKind::around_1overC),
                            Loop::standard(LoopKind::around_infinity)};
    auto serial = ode_transport_all(p2, loops), parallel = ode_transport_all(p2, loops, par);
    for (size_t l = 0; l < loops.size(); ++l) CHECK(ld_diff(serial[l].matrix, parallel[l].matrix) == 0);
  }

  TEST_CASE("mellin barnes") {
    mpfr_prec_t bits = digits_to_bits(40);
    HypergeometricParams p{{qq(1, 3), qq(2, 3)}, 1};
    Complex t(Real(std::string("0.1"), bits));
    MellinBarnesResult r = mellin_barnes_eval(p, t, -p.rho[0] / 2);
    CHECK(abs(r.value - hypergeometric_eval(p.rho, t, bits)) < tol("1e-10", bits));
    CHECK(r.H > 0);

    HypergeometricParams q{{qq(1, 4), qq(1, 2), qq(3, 4)}, 1};
    Complex tm(Real(std::string("-0.1"), bits));
    MellinBarnesResult rq = mellin_barnes_eval(q, tm, -q.rho[0] / 2);
    CHECK(abs(rq.value - hypergeometric_eval(q.rho, tm, bits)) < tol("1e-10", bits));

    for (const mpq_class& sigma : {mpq_class(0), mpq_class(-1, 2), mpq_class(1, 10)}) {
      try {
        mellin_barnes_eval(p, t, sigma);
        CHECK(false);
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SigmaOutOfRange);
      }
    }
  }

  TEST_CASE("parameter validation") {
    auto kind = [](const HypergeometricParams& p) {
      try {
        validate(p);
      } catch (const Error& e) {
        return e.kind();
      }
      return ErrorKind::SizeCapExceeded;
    };
    CHECK(kind({{qq(1, 2), qq(1, 2)}, 1}) == ErrorKind::InvalidInput);
    CHECK(kind({{qq(2, 3), qq(1, 3)}, 1}) == ErrorKind::InvalidInput);
    CHECK(kind({{qq(1, 3), qq(2, 3)}, 0}) == ErrorKind::InvalidInput);
    CHECK(kind({{qq(1, 3), qq(2, 3)}, 27}) == ErrorKind::SizeCapExceeded);
  }

  TEST_CASE("json serialization") {
    MonodromySuite s = monodromy_suite(2, 40);
    json j = to_json(s.mInf, 20);
    CHECK(j["precision"] == 20);
    CHECK(j["entries"].size() == 2);
    CHECK(j["entries"][0][0]["re"] == "1");
    CHECK(j["entries"][0][0]["im"] == "0");
    CHECK(j["entries"][1][0]["re"] == "-3");
    json full = to_json(s);
    CHECK(full["n"] == 2);
    CHECK(full.contains("m0"));
    CHECK(full.contains("m1C"));
    CHECK(full.contains("mInf"));
  }
}
