#include <set>

#include "doctest.h"
#include "k3/errors.hpp"
#include "k3/gkz.hpp"
#include "k3/monodromy.hpp"

using namespace k3;

namespace {

std::vector<mpq_class> q(std::initializer_list<std::pair<long, long>> xs) {
  std::vector<mpq_class> v;
  for (auto [a, b] : xs) {
    mpq_class r(a, b);
    r.canonicalize();
    v.push_back(r);
  }
  return v;
}

std::vector<mpz_class> z(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

mpq_class pochhammer(const mpq_class& a, int k) {
  mpq_class p = 1;
  for (int i = 0; i < k; ++i) p *= a + i;
  return p;
}

mpq_class factorial(int k) {
  mpq_class f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

template <class F>
ErrorKind error_of(F f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::SizeCapExceeded;
}

}  // namespace

TEST_SUITE("gkz") {
  TEST_CASE("A matrices") {
    IntMatrix p2 = build_A(2, AForm::primed);
    CHECK(p2.rows() == 3);
    CHECK(p2.cols() == 4);
    for (int j = 0; j < 4; ++j) CHECK(p2(0, j) == 1);
    IntMatrix u2 = build_A(2, AForm::unprimed);
    CHECK(u2.rows() == 3);
    CHECK(u2.cols() == 4);
    for (int n = 2; n <= 8; ++n) {
      CHECK(build_A(n, AForm::unprimed).rows() == 2 * n - 1);
      CHECK(rank(build_A(n, AForm::unprimed)) == 2 * n - 1);
      CHECK(row_equivalent_to_raw(n, AForm::primed));
      CHECK(row_equivalent_to_raw(n, AForm::unprimed));
    }
    CHECK(error_of([] { build_A(1, AForm::primed); }) == ErrorKind::InvalidInput);
  }

  TEST_CASE("relation lattices") {
    CHECK(relation_lattice(build_A(3, AForm::unprimed)) == z({1, 1, 1, -1, -1, -1}));
    CHECK(relation_lattice(build_A(3, AForm::primed)) == z({-4, 1, 1, 1, 1}));
    IntMatrix pad(2, 4);
    pad(0, 0) = 1;
    pad(1, 1) = 1;
    CHECK(error_of([&] { relation_lattice(pad); }) == ErrorKind::CorankNotOne);

    for (int n = 2; n <= 8; ++n)
      for (AForm f : {AForm::primed, AForm::unprimed}) {
        IntMatrix A = build_A(n, f);
        std::vector<mpz_class> B = relation_lattice(A);
        for (int i = 0; i < A.rows(); ++i) {
          mpz_class s = 0;
          for (int j = 0; j < A.cols(); ++j) s += A(i, j) * B[j];
          CHECK(s == 0);
        }
        mpz_class g = 0;
        for (const auto& b : B) g = gcd(g, b);
        CHECK(g == 1);
        for (const auto& h : h_values(A, n, f)) CHECK(h == 1);
      }
  }

  TEST_CASE("nonresonance") {
    for (int n = 2; n <= 10; ++n) CHECK(nonresonance_check(HypergeometricParams::mirror(n).rho));
    CHECK(nonresonance_check(q({{1, 2}, {1, 2}, {1, 2}})));
    NonresonanceReport r = nonresonance_report(q({{1, 2}, {1, 2}, {1, 2}}));
    CHECK(r.nonresonant);
    CHECK_FALSE(nonresonance_check(q({{1, 3}, {1, 1}})));
    CHECK_FALSE(nonresonance_check(q({{0, 1}, {1, 2}})));
    for (int n = 2; n <= 5; ++n) {
      std::vector<mpq_class> rho = HypergeometricParams::mirror(n).rho;
      rho.back() = 2;
      CHECK_FALSE(nonresonance_check(rho));
    }
  }

  TEST_CASE("secondary fan") {
    SecondaryFan f2 = secondary_fan(2);
    CHECK(f2.zonotope_lo == -1);
    CHECK(f2.zonotope_hi == 1);
    SecondaryFan f3 = secondary_fan(3);
    CHECK(f3.minus[0].label == 4);
    CHECK(f3.minus[0].mu == HypergeometricParams::mirror(3).rho[0]);
    for (int n = 2; n <= 6; ++n) {
      SecondaryFan f = secondary_fan(n);
      CHECK(f.zonotope_lo == mpq_class(-n) / 2);
      CHECK(f.zonotope_hi == mpq_class(n) / 2);
      CHECK(f.plus.size() == static_cast<size_t>(n));
      CHECK(f.minus.size() == static_cast<size_t>(n));
      CHECK(f.unimodular());
      IntMatrix A = build_A(n, AForm::unprimed);
      std::set<int> covered;
      for (const auto* l : {&f.plus, &f.minus})
        for (const auto& t : *l) {
          CHECK(t.index.size() == static_cast<size_t>(2 * n - 1));
          IntMatrix sub(2 * n - 1, 2 * n - 1);
          for (int i = 0; i < 2 * n - 1; ++i)
            for (int j = 0; j < 2 * n - 1; ++j) sub(i, j) = A(i, t.index[j] - 1);
          CHECK(abs(determinant(sub)) == 1);
          covered.insert(t.index.begin(), t.index.end());
        }
      CHECK(covered.size() == static_cast<size_t>(2 * n));
      std::vector<mpq_class> rho = HypergeometricParams::mirror(n).rho;
      for (int k = 0; k < n; ++k) CHECK(f.minus[k].mu == rho[k]);
    }
  }

  TEST_CASE("gamma series") {
    GammaSeries g = gamma_series(q({{1, 2}, {1, 2}, {1, 2}}), GammaChoice::gamma0(), 3);
    CHECK(g.series[0] == 1);
    CHECK(g.series[1] == mpq_class(1, 8));
    // (1/2)_2^3 / (2!)^3 = (3/4)^3 / 8
    CHECK(g.series[2] == mpq_class(27, 512));

    GammaSeries s = gamma_series(q({{1, 4}, {1, 2}, {3, 4}}), GammaChoice::shifted(1), 5);
    CHECK(s.exponent == mpq_class(-1, 4));
    CHECK(s.variable == "1/t");
    CHECK(error_of([] { gamma_series(q({{1, 2}, {1, 2}}), GammaChoice::shifted(1), 4); }) ==
          ErrorKind::ResonantShift);

    std::vector<std::vector<mpq_class>> rhos{q({{1, 3}, {2, 3}}), q({{1, 4}, {1, 2}, {3, 4}}),
                                             q({{1, 6}, {1, 3}, {3, 5}, {7, 8}}), q({{1, 5}, {2, 5}, {3, 5}, {4, 5}})};
    for (const auto& rho : rhos) {
      int n = static_cast<int>(rho.size());
      GammaSeries g0 = gamma_series(rho, GammaChoice::gamma0(), 20);
      for (int k = 0; k < 20; ++k) {
        mpq_class num = 1;
        for (const auto& r : rho) num *= pochhammer(r, k);
        mpq_class den = 1;
        for (int i = 0; i < n; ++i) den *= factorial(k);
        CHECK(g0.series[k] == num / den);
      }
      for (int r = 1; r <= n; ++r) {
        GammaSeries gs = gamma_series(rho, GammaChoice::shifted(r), 15);
        CHECK(gs.exponent == -rho[r - 1]);
        CHECK(gs.series[0] == 1);
        for (int k = 0; k + 1 < 15; ++k) {
          mpq_class ratio = 1;
          for (int i = 0; i < n; ++i) ratio *= rho[r - 1] + k;
          for (int i = 0; i < n; ++i) ratio /= 1 + rho[r - 1] - rho[i] + k;
          CHECK(gs.series[k + 1] == gs.series[k] * ratio);
        }
      }
    }
  }

  TEST_CASE("systems") {
    for (int n = 2; n <= 8; ++n) {
      GkzSystem sys = build_system(HypergeometricParams::mirror(n).rho);
      CHECK(sys.A.cols() == 2 * n);
      CHECK(sys.gamma0.size() == static_cast<size_t>(2 * n));
      for (int i = 0; i < n; ++i) CHECK(sys.gamma0[i] == 0);
      for (int i = 0; i < n; ++i) CHECK(sys.gamma0[n + i] == -sys.rho[i]);
      for (int i = 0; i < sys.A.rows(); ++i) {
        mpz_class s = 0;
        for (int j = 0; j < sys.A.cols(); ++j) s += sys.A(i, j) * sys.B[j];
        CHECK(s == 0);
      }
    }
  }
}
