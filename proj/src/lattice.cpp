#include "k3/lattice.hpp"

#include <cctype>
#include <sstream>

#include "k3/errors.hpp"

namespace k3 {

bool GramLattice::is_even() const {
  for (int i = 0; i < gram.rows(); ++i)
    if (mpz_odd_p(gram(i, i).get_mpz_t())) return false;
  return true;
}

mpz_class NikulinTriple::disc_order() const {
  mpz_class o = 1;
  for (const auto& d : disc_group) o *= d;
  return o;
}

bool NikulinTriple::two_elementary() const {
  for (const auto& d : disc_group)
    if (d != 2) return false;
  return true;
}

std::string NikulinTriple::str() const {
  std::ostringstream os;
  os << "(" << rank << ", " << length << ", " << parity << ")";
  return os.str();
}

IntMatrix gram_H() { return IntMatrix(2, 2, {0, 1, 1, 0}); }

IntMatrix gram_A(int n) {
  IntMatrix g(n, n);
  for (int i = 0; i < n; ++i) {
    g(i, i) = 2;
    if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = -1;
  }
  return g;
}

IntMatrix gram_D(int n) {
  // chain 0..n-2, node n-1 attached to node n-3
  IntMatrix g = gram_A(n);
  g(n - 2, n - 1) = g(n - 1, n - 2) = 0;
  g(n - 3, n - 1) = g(n - 1, n - 3) = -1;
  return g;
}

IntMatrix gram_E(int n) {
  // chain 0..n-2, node n-1 attached to node n-4 (arms 1, 2, n-4)
  IntMatrix g = gram_A(n);
  g(n - 2, n - 1) = g(n - 1, n - 2) = 0;
  g(n - 4, n - 1) = g(n - 1, n - 4) = -1;
  return g;
}

namespace {

[[noreturn]] void parse_error(const std::string& spec, size_t pos, const std::string& msg) {
  throw Error(ErrorKind::ParseError, msg + " at position " + std::to_string(pos) + " in '" + spec + "'");
}

struct SpecParser {
  const std::string& s;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool peek(char c) {
    skip();
    return pos < s.size() && s[pos] == c;
  }
  long integer() {
    skip();
    size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) parse_error(s, start, "expected integer");
    try {
      return std::stol(s.substr(start, pos - start));
    } catch (const std::out_of_range&) {
      parse_error(s, start, "integer out of range");
    }
  }

  IntMatrix name() {
    skip();
    if (pos >= s.size()) parse_error(s, pos, "expected lattice name");
    size_t start = pos;
    if (s[pos] == '<') {
      ++pos;
      long m = integer();
      if (!peek('>')) parse_error(s, pos, "expected '>'");
      ++pos;
      if (m == 0) throw Error(ErrorKind::DegenerateGram, "<0> is degenerate");
      return IntMatrix(1, 1, {m});
    }
    if (!std::isalpha(static_cast<unsigned char>(s[pos]))) parse_error(s, pos, "expected lattice name");
    char head = s[pos++];
    size_t dstart = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    std::string word = s.substr(start, pos - start);
    if (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos])))
      throw Error(ErrorKind::UnknownLatticeName, "'" + word + s[pos] + "...'");
    bool has_index = pos > dstart;
    long idx = has_index ? std::stol(s.substr(dstart, pos - dstart)) : 0;
    if (head == 'H' && !has_index) return gram_H();
    if (head == 'A' && has_index && idx >= 1 && idx <= 64) return gram_A(static_cast<int>(idx));
    if (head == 'D' && has_index && idx >= 4 && idx <= 64) return gram_D(static_cast<int>(idx));
    if (head == 'E' && (idx == 7 || idx == 8)) return gram_E(static_cast<int>(idx));
    throw Error(ErrorKind::UnknownLatticeName, "'" + word + "'");
  }

  IntMatrix term() {
    skip();
    long mult = 1;
    if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      mult = integer();
      if (peek('*')) ++pos;
      if (mult < 1 || mult > 64) parse_error(s, pos, "multiplicity out of range");
    }
    IntMatrix g = name();
    if (peek('(')) {
      ++pos;
      long lambda = integer();
      if (!peek(')')) parse_error(s, pos, "expected ')'");
      ++pos;
      if (lambda == 0) throw Error(ErrorKind::DegenerateGram, "scale 0");
      for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j) g(i, j) *= lambda;
    }
    IntMatrix out = g;
    for (long k = 1; k < mult; ++k) out = direct_sum(out, g);
    return out;
  }
};

}  // namespace

GramLattice build_lattice(const std::string& spec) {
  SpecParser p{spec};
  IntMatrix g = p.term();
  while (true) {
    p.skip();
    if (p.pos >= spec.size()) break;
    if (spec[p.pos] != '+') parse_error(spec, p.pos, "expected '+'");
    ++p.pos;
    g = direct_sum(g, p.term());
  }
  return GramLattice{g, spec};
}

NikulinTriple invariants(const IntMatrix& gram) {
  if (!gram.is_symmetric()) throw Error(ErrorKind::InvalidInput, "Gram matrix is not symmetric");
  int n = gram.rows();
  if (determinant(gram) == 0) throw Error(ErrorKind::DegenerateGram, "singular Gram matrix");
  NikulinTriple t;
  t.rank = n;
  Inertia in = inertia(to_rational(gram));
  t.signature = {in.positive, in.negative};

  SmithForm f = smith_normal_form(gram);
  std::vector<int> gens;
  for (int i = 0; i < n; ++i) {
    mpz_class d = abs(f.D(i, i));
    if (d > 1) {
      t.disc_group.push_back(d);
      gens.push_back(i);
    }
  }
  t.length = static_cast<int>(t.disc_group.size());

  // generators x_i = V e_i / d_i of L*/L, q(x) = x^T G x
  QMatrix G = to_rational(gram);
  std::vector<std::vector<mpq_class>> x;
  for (int i : gens) {
    std::vector<mpq_class> v(n);
    for (int r = 0; r < n; ++r) v[r] = mpq_class(f.V(r, i)) / f.D(i, i);
    x.push_back(std::move(v));
  }
  auto q = [&](const std::vector<mpq_class>& v) {
    mpq_class s = 0;
    for (int r = 0; r < n; ++r) {
      if (v[r] == 0) continue;
      mpq_class row = 0;
      for (int c = 0; c < n; ++c) row += G[r][c] * v[c];
      s += v[r] * row;
    }
    return s;
  };
  auto integral = [](const mpq_class& a) { return a.get_den() == 1; };
  t.parity = 0;
  for (size_t i = 0; i < x.size() && t.parity == 0; ++i) {
    if (!integral(q(x[i]))) t.parity = 1;
    for (size_t j = i + 1; j < x.size() && t.parity == 0; ++j) {
      std::vector<mpq_class> s(n);
      for (int r = 0; r < n; ++r) s[r] = x[i][r] + x[j][r];
      if (!integral(q(s))) t.parity = 1;
    }
  }
  return t;
}

NikulinTriple invariants(const GramLattice& L) { return invariants(L.gram); }

TripleComparison triple_equal(const std::vector<std::string>& specs) {
  TripleComparison c;
  c.specs = specs;
  for (const auto& s : specs) c.triples.push_back(invariants(build_lattice(s)));
  c.equal = true;
  for (size_t i = 1; i < c.triples.size(); ++i)
    if (!c.triples[i].same_invariants(c.triples[0])) c.equal = false;
  return c;
}

std::vector<std::string> presentation_list(int k) {
  switch (k) {
    case 0:
      return {"H + E8(-1) + 6*A1(-1)",       "H + E7(-1) + D4(-1) + 3*A1(-1)",
              "H + D6(-1) + 2*D4(-1)",       "H + 2*D6(-1) + 2*A1(-1)",
              "H + D10(-1) + 4*A1(-1)",      "H + D8(-1) + D4(-1) + 2*A1(-1)"};
    case 1:
      return {"H + E8(-1) + D4(-1) + 3*A1(-1)", "H + E7(-1) + 2*D4(-1)", "H + D12(-1) + 3*A1(-1)",
              "H + D10(-1) + D4(-1) + A1(-1)",  "H + D8(-1) + D6(-1) + A1(-1)"};
    case 2:
      return {"H + E8(-1) + D6(-1) + 2*A1(-1)", "H + 2*E7(-1) + 2*A1(-1)", "H + E7(-1) + D8(-1) + A1(-1)",
              "H + D14(-1) + 2*A1(-1)",         "H + D10(-1) + D6(-1)"};
    case 3:
      return {"H + E8(-1) + E7(-1) + 2*A1(-1)", "H + E7(-1) + D10(-1)", "H + E8(-1) + D8(-1) + A1(-1)",
              "H + D16(-1) + A1(-1)"};
    default:
      throw Error(ErrorKind::InvalidInput, "presentation list index must be 0..3");
  }
}

std::vector<std::string> polarization_presentations() {
  return {"H + D8(-1) + D4(-1) + A3(-1)", "H + D7(-1) + 2*D4(-1)"};
}

ChainReport polarization_chain_check() {
  ChainReport r;
  r.ok = true;
  for (int k = 0; k <= 3; ++k) {
    ChainStep s;
    s.k = k;
    s.spec = presentation_list(k).front();
    s.triple = invariants(build_lattice(s.spec));
    s.ok = s.triple.rank == 16 + k && s.triple.length == 6 - k && s.triple.parity == 1 &&
           s.triple.two_elementary();
    r.ok = r.ok && s.ok;
    r.steps.push_back(s);
  }
  return r;
}

IntMatrix random_unimodular(int n, std::mt19937_64& rng, int moves) {
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) {
    if (rng() & 1) u(0, 0) = -1;
    return u;
  }
  std::uniform_int_distribution<int> idx(0, n - 1), coef(-2, 2);
  for (int m = 0; m < moves; ++m) {
    int i = idx(rng), j = idx(rng);
    if (i == j) {
      for (int c = 0; c < n; ++c) u(i, c) = -u(i, c);
      continue;
    }
    int a = coef(rng);
    for (int c = 0; c < n; ++c) u(i, c) += a * u(j, c);
  }
  return u;
}

}  // namespace k3
