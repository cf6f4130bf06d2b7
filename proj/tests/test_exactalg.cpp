#include <mpfr.h>

#include <functional>
#include <random>

#include "doctest.h"
#include "k3/errors.hpp"
#include "k3/jet.hpp"
#include "k3/lattice.hpp"
#include "k3/matrix.hpp"
#include "k3/multipoly.hpp"
#include "k3/rational.hpp"
#include "k3/series.hpp"

using namespace k3;

namespace {

// Invariant factors from determinantal divisors: d_k = D_k / D_{k-1}, D_k = gcd of k x k minors.
std::vector<mpz_class> invariant_factors_by_minors(const IntMatrix& M) {
  int r = M.rows(), c = M.cols();
  std::vector<mpz_class> D{1};
  int kmax = std::min(r, c);
  for (int k = 1; k <= kmax; ++k) {
    mpz_class g = 0;
    std::vector<int> rs(k), cs(k);
    std::function<void(int, int)> pick_cols;
    std::function<void(int, int)> pick_rows = [&](int idx, int start) {
      if (idx == k) {
        pick_cols(0, 0);
        return;
      }
      for (int i = start; i < r; ++i) {
        rs[idx] = i;
        pick_rows(idx + 1, i + 1);
      }
    };
    pick_cols = [&](int idx, int start) {
      if (idx == k) {
        IntMatrix sub(k, k);
        for (int a = 0; a < k; ++a)
          for (int b = 0; b < k; ++b) sub(a, b) = M(rs[a], cs[b]);
        g = gcd(g, determinant(sub));
        return;
      }
      for (int j = start; j < c; ++j) {
        cs[idx] = j;
        pick_cols(idx + 1, j + 1);
      }
    };
    pick_rows(0, 0);
    D.push_back(g);
  }
  std::vector<mpz_class> f;
  for (int k = 1; k <= kmax; ++k) f.push_back(D[k - 1] == 0 ? mpz_class(0) : mpz_class(D[k] / D[k - 1]));
  return f;
}

IntMatrix random_matrix(std::mt19937_64& rng, int r, int c, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = d(rng);
  return m;
}

Real mp_gamma(const Real& x) {
  Real out(x.prec());
  mpfr_gamma(out.get(), x.get(), MPFR_RNDN);
  return out;
}

Jet random_int_jet(std::mt19937_64& rng, int order, mpfr_prec_t bits) {
  std::uniform_int_distribution<int> d(-9, 9);
  Jet j(order, bits);
  for (int k = 0; k < order; ++k) j[k] = Complex(Real(static_cast<long>(d(rng)), bits), Real(static_cast<long>(d(rng)), bits));
  return j;
}

bool jets_equal(const Jet& a, const Jet& b) {
  if (a.order() != b.order()) return false;
  for (int k = 0; k < a.order(); ++k)
    if (!(a[k] - b[k]).is_zero()) return false;
  return true;
}

}  // namespace

TEST_SUITE("exactalg") {
  TEST_CASE("snf examples") {
    SmithForm id = smith_normal_form(IntMatrix::identity(2));
    CHECK(id.D == IntMatrix::identity(2));
    SmithForm h = smith_normal_form(gram_H());
    CHECK(h.D == IntMatrix::identity(2));
    SmithForm big = smith_normal_form(build_lattice("H + E8(-1) + 6*A1(-1)").gram);
    int twos = 0, ones = 0;
    for (int i = 0; i < big.D.rows(); ++i) {
      if (abs(big.D(i, i)) == 2) ++twos;
      if (abs(big.D(i, i)) == 1) ++ones;
    }
    CHECK(twos == 6);
    CHECK(ones == 10);
  }

  TEST_CASE("snf matches determinantal divisors and is unimodular") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
      int r = 1 + static_cast<int>(rng() % 4), c = 1 + static_cast<int>(rng() % 4);
      IntMatrix M = random_matrix(rng, r, c, 6);
      if (trial % 5 == 0 && r > 1)
        for (int j = 0; j < c; ++j) M(r - 1, j) = 2 * M(0, j);  // force rank deficiency
      SmithForm f = smith_normal_form(M);
      CHECK(f.U * M * f.V == f.D);
      CHECK(abs(determinant(f.U)) == 1);
      CHECK(abs(determinant(f.V)) == 1);
      CHECK(f.D.is_diagonal());
      std::vector<mpz_class> oracle = invariant_factors_by_minors(M);
      for (int k = 0; k < std::min(r, c); ++k) {
        CHECK(f.D(k, k) >= 0);
        CHECK(f.D(k, k) == oracle[k]);
        if (k + 1 < std::min(r, c) && f.D(k, k) != 0) CHECK(f.D(k + 1, k + 1) % f.D(k, k) == 0);
      }
    }
  }

  TEST_CASE("jet examples") {
    mpfr_prec_t bits = 200;
    Jet e2 = Jet::epsilon(2, bits);
    Jet one2 = Jet::constant(Complex(1L, bits), 2);
    Jet p = (one2 + e2) * (one2 - e2);
    CHECK(jets_equal(p, one2));

    Jet e5 = Jet::epsilon(5, bits), one5 = Jet::constant(Complex(1L, bits), 5);
    Jet round = jet_arith(jet_arith(one5 + e5, one5, JetOp::log), one5, JetOp::exp);
    Jet target = one5 + e5;
    for (int k = 0; k < 5; ++k) CHECK(abs(round[k] - target[k]) < Real(std::string("1e-55"), bits));

    Jet e3 = Jet::epsilon(3, bits), one3 = Jet::constant(Complex(1L, bits), 3);
    Jet inv = jet_arith(one3, one3 + e3, JetOp::div);
    CHECK(abs(inv[0] - Complex(1L, bits)) < Real(std::string("1e-55"), bits));
    CHECK(abs(inv[1] + Complex(1L, bits)) < Real(std::string("1e-55"), bits));
    CHECK(abs(inv[2] - Complex(1L, bits)) < Real(std::string("1e-55"), bits));

    bool threw = false;
    try {
      jet_arith(one3, e3, JetOp::div);
    } catch (const Error& e) {
      threw = e.kind() == ErrorKind::DivisionByZeroJet;
    }
    CHECK(threw);
  }

  TEST_CASE("jet ring laws on random jets") {
    std::mt19937_64 rng(3);
    mpfr_prec_t bits = 256;
    for (int trial = 0; trial < 120; ++trial) {
      int order = 1 + static_cast<int>(rng() % 7);
      Jet a = random_int_jet(rng, order, bits), b = random_int_jet(rng, order, bits), c = random_int_jet(rng, order, bits);
      CHECK(jets_equal((a * b) * c, a * (b * c)));
      CHECK(jets_equal(a * (b + c), a * b + a * c));
      CHECK(jets_equal(a * b, b * a));
      Jet en(order, bits);
      en[0] = Complex(1L, bits);
      Jet eps = Jet::epsilon(order, bits);
      for (int k = 0; k < order; ++k) en = en * eps;
      CHECK(jets_equal(en, Jet(order, bits)));
    }
  }

  TEST_CASE("gamma jet coefficients") {
    mpfr_prec_t bits = digits_to_bits(60);
    Jet g = gamma_one_plus_jet(4, bits);
    CHECK(abs(g[0] - Complex(1L, bits)) < Real(std::string("1e-58"), bits));
    CHECK(gamma_one_plus_jet(1, bits).order() == 1);

    Real euler(bits), z2(bits);
    mpfr_const_euler(euler.get(), MPFR_RNDN);
    mpfr_zeta_ui(z2.get(), 2, MPFR_RNDN);
    CHECK(abs(g[1].re + euler) < Real(std::string("1e-55"), bits));
    CHECK(abs(g[2].re - (euler * euler + z2) / 2L) < Real(std::string("1e-55"), bits));

    // central differences on MPFR's own gamma
    Real h(std::string("1e-20"), bits), one(1L, bits);
    Real d1 = (mp_gamma(one + h) - mp_gamma(one - h)) / (h * 2L);
    CHECK(abs(g[1].re - d1) < Real(std::string("1e-35"), bits));
    Real h2(std::string("1e-12"), bits);
    Real d2 = (mp_gamma(one + h2) - mp_gamma(one) * 2L + mp_gamma(one - h2)) / (h2 * h2 * 2L);
    CHECK(abs(g[2].re - d2) < Real(std::string("1e-20"), bits));
  }

  TEST_CASE("gamma jet evaluation matches direct gamma") {
    mpfr_prec_t bits = digits_to_bits(60);
    Jet g = gamma_one_plus_jet(30, bits);
    for (const char* e : {"1e-3", "-1e-3", "3.7e-4", "-5e-5"}) {
      Real eps(std::string(e), bits);
      Complex v = g.eval(Complex(eps));
      Real direct = mp_gamma(Real(1L, bits) + eps);
      CHECK(abs(v.re - direct) < Real(std::string("1e-55"), bits));
      CHECK(abs(v.im) < Real(std::string("1e-55"), bits));
    }
  }

  TEST_CASE("hadamard product") {
    int order = 12;
    PowerSeries k = PowerSeries::generate(order, [](int i) { return mpq_class(i); });
    PowerSeries k2 = PowerSeries::generate(order, [](int i) { return mpq_class(i * i); });
    CHECK(hadamard_product(k, PowerSeries::ones(order)) == k);
    CHECK(hadamard_product(k, k) == k2);

    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(-20, 20), q(1, 9);
    auto rnd = [&] { return PowerSeries::generate(order, [&](int) { mpq_class r(d(rng), q(rng)); r.canonicalize(); return r; }); };
    for (int trial = 0; trial < 30; ++trial) {
      PowerSeries f = rnd(), g = rnd(), h = rnd();
      mpq_class s(d(rng), q(rng));
      s.canonicalize();
      CHECK(hadamard_product(f, g) == hadamard_product(g, f));
      CHECK(hadamard_product(hadamard_product(f, g), h) == hadamard_product(f, hadamard_product(g, h)));
      CHECK(hadamard_product(f + g * s, h) == hadamard_product(f, h) + hadamard_product(g, h) * s);
    }
    PowerSeries shortf = PowerSeries::ones(5);
    CHECK(hadamard_product(shortf, k).order() == 5);
  }

  TEST_CASE("ratfun substitution") {
    RationalFunction f = parse_ratfun("x/(x+1)");
    CHECK(ratfun_substitute(f, {{"x", parse_ratfun("x")}}) == f);
    CHECK(ratfun_substitute(parse_ratfun("t^2"), {{"t", parse_ratfun("1/s")}}) == parse_ratfun("1/s^2"));

    bool threw = false;
    try {
      ratfun_substitute(parse_ratfun("1/(x-1)"), {{"x", RationalFunction(mpq_class(1))}});
    } catch (const Error& e) {
      threw = e.kind() == ErrorKind::DenominatorVanishesIdentically;
    }
    CHECK(threw);

    std::map<std::string, RationalFunction> b{{"x", parse_ratfun("(s+1)/(s-2)")}, {"y", parse_ratfun("s^2 - u")}};
    const char* fs[] = {"x^2 + y", "(x - y)/(x + 3)", "x*y - 1/2", "1/(y^2 + 1)"};
    for (const char* a : fs)
      for (const char* c : fs) {
        RationalFunction A = parse_ratfun(a), C = parse_ratfun(c);
        CHECK(ratfun_substitute(A * C, b) == ratfun_substitute(A, b) * ratfun_substitute(C, b));
        CHECK(ratfun_substitute(A + C, b) == ratfun_substitute(A, b) + ratfun_substitute(C, b));
      }
  }

  TEST_CASE("rationals") {
    CHECK(parse_rational(" -6/4 ") == mpq_class(-3, 2));
    CHECK(rat_str(parse_rational("4/2")) == "2");
    CHECK(parse_rational_list("1/3,2/3").size() == 2);
    bool threw = false;
    try {
      parse_rational("1/0");
    } catch (const Error& e) {
      threw = true;
    }
    CHECK(threw);
  }
}
