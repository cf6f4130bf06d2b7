#include <cmath>
#include <random>

#include "doctest.h"
#include "k3/errors.hpp"
#include "k3/lattice.hpp"

using namespace k3;

namespace {

// Signature from Jacobi eigenvalue iteration in double precision.
std::pair<int, int> jacobi_signature(const IntMatrix& g) {
  int n = g.rows();
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = g(i, j).get_d();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-22) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        double t = (theta >= 0 ? 1 : -1) / (std::abs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  int pos = 0, neg = 0;
  for (int i = 0; i < n; ++i) (a[i][i] > 0 ? pos : neg)++;
  return {pos, neg};
}

mpz_class disc_product(const NikulinTriple& t) {
  mpz_class p = 1;
  for (const auto& d : t.disc_group) p *= d;
  return p;
}

const char* kConstructors[] = {"H", "A1(-1)", "A2(-1)", "A3(-1)", "D4(-1)", "D5(-1)", "D7(-1)",
                               "D8(-1)", "E7(-1)", "E8(-1)", "<-4>", "H(2)", "<2>"};

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("constructors") {
    CHECK(build_lattice("H").gram == IntMatrix(2, 2, {0, 1, 1, 0}));
    GramLattice m2 = build_lattice("H + 2*E8(-1) + <-4>");
    NikulinTriple t = invariants(m2);
    CHECK(t.rank == 19);
    CHECK(t.signature == std::pair{1, 18});
    NikulinTriple tr = invariants(build_lattice("H(2) + H(2) + 2*<-2>"));
    CHECK(tr.rank == 6);
    CHECK(tr.disc_group == std::vector<mpz_class>(6, 2));
    for (const char* name : {"A1", "A5", "D4", "D9", "E7", "E8"}) {
      GramLattice L = build_lattice(name);
      CHECK(L.is_even());
      CHECK(L.gram.is_symmetric());
      CHECK(jacobi_signature(L.gram).second == 0);
    }
    CHECK(determinant(gram_A(5)) == 6);
    CHECK(determinant(gram_D(6)) == 4);
    CHECK(determinant(gram_E(6)) == 3);
    CHECK(determinant(gram_E(7)) == 2);
    CHECK(determinant(gram_E(8)) == 1);
  }

  TEST_CASE("spec errors") {
    auto kind = [](const char* s) {
      try {
        build_lattice(s);
      } catch (const Error& e) {
        return e.kind();
      }
      return ErrorKind::SizeCapExceeded;
    };
    CHECK(kind("F4") == ErrorKind::UnknownLatticeName);
    CHECK(kind("H +") == ErrorKind::ParseError);
    CHECK(kind("2*(E8") == ErrorKind::ParseError);
    try {
      invariants(IntMatrix(2, 2, {1, 1, 1, 1}));
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::DegenerateGram);
    }
  }

  TEST_CASE("invariant examples") {
    NikulinTriple e8 = invariants(build_lattice("E8(-1)"));
    CHECK(e8.str() == "(8, 0, 0)");
    CHECK(e8.signature == std::pair{0, 8});
    CHECK(invariants(build_lattice("H + E8(-1) + 6*A1(-1)")).str() == "(16, 6, 1)");
    NikulinTriple m4 = invariants(build_lattice("<-4>"));
    CHECK(m4.disc_group == std::vector<mpz_class>{4});
    CHECK_FALSE(m4.two_elementary());
    NikulinTriple u2 = invariants(build_lattice("H(2)"));
    CHECK(u2.length == 2);
    CHECK(u2.parity == 0);
    CHECK(invariants(build_lattice("<-2>")).parity == 1);
    CHECK(invariants(build_lattice("D4(-1)")).parity == 0);
  }

  TEST_CASE("presentations") {
    for (int k = 0; k <= 3; ++k) {
      TripleComparison c = triple_equal(presentation_list(k));
      CHECK(c.equal);
      for (const auto& t : c.triples) {
        CHECK(t.rank == 16 + k);
        CHECK(t.length == 6 - k);
        CHECK(t.parity == 1);
        CHECK(t.signature == std::pair{1, 15 + k});
        CHECK(t.two_elementary());
      }
    }
    CHECK(presentation_list(0).size() == 6);
    CHECK(presentation_list(3).size() == 4);
    CHECK_FALSE(triple_equal({"H + E8(-1)", "H + D8(-1)"}).equal);

    TripleComparison kum = triple_equal(polarization_presentations());
    CHECK(kum.equal);
    CHECK(kum.triples[0].disc_group == kum.triples[1].disc_group);

    ChainReport chain = polarization_chain_check();
    CHECK(chain.ok);
    CHECK(chain.steps.size() == 4);
    CHECK(chain.steps[2].triple.str() == "(18, 4, 1)");
  }

  TEST_CASE("direct sums") {
    for (const char* a : kConstructors)
      for (const char* b : kConstructors) {
        NikulinTriple ta = invariants(build_lattice(a)), tb = invariants(build_lattice(b));
        NikulinTriple ts = invariants(build_lattice(std::string(a) + " + " + b));
        CHECK(ts.rank == ta.rank + tb.rank);
        CHECK(disc_product(ts) == disc_product(ta) * disc_product(tb));
        CHECK(ts.signature.first == ta.signature.first + tb.signature.first);
      }
  }

  TEST_CASE("scaling") {
    CHECK(invariants(build_lattice("H(2)")).length == 2);
    for (const char* base : {"A2", "D4", "E7", "H", "A1(-1)"})
      for (int lam : {2, 3}) {
        std::string s = std::string(base);
        std::string scaled = s.find('(') == std::string::npos ? s + "(" + std::to_string(lam) + ")"
                                                              : s.substr(0, s.find('(')) + "(-" + std::to_string(lam) + ")";
        GramLattice L = build_lattice(s), Ls = build_lattice(scaled);
        mpz_class ratio = abs(determinant(Ls.gram)) / abs(determinant(L.gram));
        mpz_class expect;
        mpz_pow_ui(expect.get_mpz_t(), mpz_class(lam).get_mpz_t(), L.rank());
        CHECK(ratio == expect);
        CHECK(invariants(Ls).rank == L.rank());
      }
  }

  TEST_CASE("oracle agreement") {
    std::vector<std::string> specs;
    for (int k = 0; k <= 3; ++k)
      for (const auto& s : presentation_list(k)) specs.push_back(s);
    for (const char* c : kConstructors) specs.push_back(c);
    for (const auto& s : specs) {
      GramLattice L = build_lattice(s);
      NikulinTriple t = invariants(L);
      CHECK(jacobi_signature(L.gram) == t.signature);
      CHECK(disc_product(t) == abs(determinant(L.gram)));
      CHECK(t.length <= t.rank);
      CHECK(static_cast<int>(t.disc_group.size()) == t.length);
    }
  }

  TEST_CASE("invariants are stable under change of basis") {
    std::mt19937_64 rng(41);
    std::vector<std::string> specs = presentation_list(0);
    for (const auto& s : presentation_list(2)) specs.push_back(s);
    specs.push_back("H + D8(-1) + D4(-1) + A3(-1)");
    specs.push_back("H(2) + <-2> + A3(-1)");
    for (int trial = 0; trial < 60; ++trial) {
      GramLattice L = build_lattice(specs[trial % specs.size()]);
      IntMatrix U = random_unimodular(L.rank(), rng);
      REQUIRE(abs(determinant(U)) == 1);
      IntMatrix G = U.transpose() * L.gram * U;
      NikulinTriple a = invariants(L), b = invariants(G);
      CHECK(a.same_invariants(b));
      CHECK(a.disc_group == b.disc_group);
    }
  }
}
