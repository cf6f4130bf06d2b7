#pragma once

#include <gmpxx.h>

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "k3/matrix.hpp"

namespace k3 {

struct GramLattice {
  IntMatrix gram;
  std::string label;

  int rank() const { return gram.rows(); }
  bool is_even() const;
};

struct NikulinTriple {
  int rank = 0;
  int length = 0;
  int parity = 0;
  std::pair<int, int> signature{0, 0};
  std::vector<mpz_class> disc_group;  // invariant factors > 1, d1 | d2 | ...

  mpz_class disc_order() const;
  bool two_elementary() const;
  bool same_invariants(const NikulinTriple& o) const {
    return rank == o.rank && length == o.length && parity == o.parity && signature == o.signature;
  }
  std::string str() const;  // "(rho, l, delta)"
};

// Root-lattice Gram matrices, positive definite.
IntMatrix gram_A(int n);
IntMatrix gram_D(int n);
IntMatrix gram_E(int n);  // n = 6, 7, 8
IntMatrix gram_H();

// Sum of terms k*NAME(lambda), NAME in {H, A<n>, D<n>, E7, E8, <m>}.
GramLattice build_lattice(const std::string& spec);

NikulinTriple invariants(const GramLattice& L);
NikulinTriple invariants(const IntMatrix& gram);

struct TripleComparison {
  bool equal = false;
  std::vector<std::string> specs;
  std::vector<NikulinTriple> triples;
};
TripleComparison triple_equal(const std::vector<std::string>& specs);

// Presentation lists with (rho, l, delta) = (16 + k, 6 - k, 1).
std::vector<std::string> presentation_list(int k);
// The two presentations of the rank-17 lattice on the Kummer locus.
std::vector<std::string> polarization_presentations();

struct ChainStep {
  int k = 0;
  std::string spec;
  NikulinTriple triple;
  bool ok = false;
};
struct ChainReport {
  bool ok = false;
  std::vector<ChainStep> steps;
};
ChainReport polarization_chain_check();

// Random unimodular matrix as a product of elementary moves.
IntMatrix random_unimodular(int n, std::mt19937_64& rng, int moves = 24);

}  // namespace k3
