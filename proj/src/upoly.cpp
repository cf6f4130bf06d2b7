#include "k3/upoly.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "k3/errors.hpp"

namespace k3 {

UPoly::UPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::constant(const mpq_class& c) { return UPoly({c}); }

UPoly UPoly::monomial(const mpq_class& c, int deg) {
  std::vector<mpq_class> v(deg + 1);
  v[deg] = c;
  return UPoly(std::move(v));
}

UPoly UPoly::linear(const mpq_class& root) { return UPoly({-root, mpq_class(1)}); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

mpq_class UPoly::eval(const mpq_class& x) const {
  mpq_class r = 0;
  for (int i = degree(); i >= 0; --i) r = r * x + c_[i];
  return r;
}

UPoly UPoly::derivative() const {
  if (degree() < 1) return UPoly();
  std::vector<mpq_class> v(degree());
  for (int i = 1; i <= degree(); ++i) v[i - 1] = c_[i] * i;
  return UPoly(std::move(v));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return *this * mpq_class(1 / lc());
}

std::vector<mpz_class> UPoly::primitive_integer() const {
  std::vector<mpz_class> out;
  if (is_zero()) return out;
  mpz_class l = 1;
  for (const auto& q : c_) l = lcm(l, q.get_den());
  mpz_class g = 0;
  out.reserve(c_.size());
  for (const auto& q : c_) {
    mpz_class z = q.get_num() * (l / q.get_den());
    out.push_back(z);
    g = gcd(g, z);
  }
  if (lc() < 0) g = -g;
  for (auto& z : out) z /= g;
  return out;
}

UPoly UPoly::shift(const mpq_class& s) const {
  // Horner in the shifted variable.
  UPoly r;
  UPoly lin({s, mpq_class(1)});
  for (int i = degree(); i >= 0; --i) r = r * lin + UPoly::constant(c_[i]);
  return r;
}

UPoly UPoly::reversed(int deg) const {
  std::vector<mpq_class> v(deg + 1);
  for (int i = 0; i <= degree(); ++i) v[deg - i] = c_[i];
  return UPoly(std::move(v));
}

int UPoly::root_multiplicity(const mpq_class& r) const {
  if (is_zero()) return 0;
  return shift(r).valuation_at_zero();
}

int UPoly::valuation_at_zero() const {
  int v = 0;
  while (v <= degree() && c_[v] == 0) ++v;
  return v;
}

std::string UPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i] == 0) continue;
    mpq_class a = abs(c_[i]);
    bool neg = c_[i] < 0;
    if (first) os << (neg ? "-" : "");
    else os << (neg ? " - " : " + ");
    first = false;
    if (i == 0 || a != 1) {
      os << a.get_str();
      if (i > 0) os << "*";
    }
    if (i > 0) os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<mpq_class> v(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return UPoly(std::move(v));
}

UPoly operator-(const UPoly& a) {
  std::vector<mpq_class> v(a.c_);
  for (auto& x : v) x = -x;
  return UPoly(std::move(v));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<mpq_class> v(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(v));
}

UPoly operator*(const UPoly& a, const mpq_class& s) {
  std::vector<mpq_class> v(a.c_);
  for (auto& x : v) x *= s;
  return UPoly(std::move(v));
}

UPoly pow(const UPoly& a, int k) {
  UPoly r = UPoly::constant(1), b = a;
  while (k > 0) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  std::vector<mpq_class> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {UPoly(), a};
  std::vector<mpq_class> q(a.degree() - db + 1);
  mpq_class inv = 1 / b.lc();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    mpq_class f = r[i] * inv;
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b[j];
  }
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::vector<std::pair<UPoly, int>> square_free_decomposition(const UPoly& p) {
  std::vector<std::pair<UPoly, int>> out;
  if (p.degree() < 1) return out;
  UPoly f = p.monic();
  UPoly d = f.derivative();
  UPoly a = gcd(f, d);
  UPoly b = divmod(f, a).first;
  UPoly c = divmod(d, a).first;
  UPoly e = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    UPoly g = gcd(b, e);
    if (g.degree() > 0) out.emplace_back(g, i);
    b = divmod(b, g).first;
    c = divmod(e, g).first;
    e = c - b.derivative();
    ++i;
  }
  return out;
}

namespace {

using i64 = std::int64_t;

i64 mod_pow(i64 b, i64 e, i64 p) {
  i64 r = 1;
  b %= p;
  if (b < 0) b += p;
  while (e > 0) {
    if (e & 1) r = static_cast<i64>((__int128)r * b % p);
    b = static_cast<i64>((__int128)b * b % p);
    e >>= 1;
  }
  return r;
}

std::vector<i64> reduce_mod(const std::vector<mpz_class>& f, i64 p) {
  std::vector<i64> out(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), f[i].get_mpz_t(), static_cast<unsigned long>(p));
    out[i] = r.get_si();
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<i64> poly_mod_rem(std::vector<i64> a, const std::vector<i64>& b, i64 p) {
  i64 inv = mod_pow(b.back(), p - 2, p);
  while (a.size() >= b.size()) {
    i64 f = static_cast<i64>((__int128)a.back() * inv % p);
    size_t off = a.size() - b.size();
    for (size_t j = 0; j < b.size(); ++j) {
      a[off + j] = (a[off + j] - static_cast<i64>((__int128)f * b[j] % p)) % p;
      if (a[off + j] < 0) a[off + j] += p;
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  return a;
}

int gcd_degree_mod(std::vector<i64> a, std::vector<i64> b, i64 p) {
  while (!b.empty()) {
    auto r = poly_mod_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return static_cast<int>(a.size()) - 1;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

mpz_class eval_z(const std::vector<mpz_class>& f, const mpz_class& x, const mpz_class& m) {
  mpz_class r = 0;
  for (size_t i = f.size(); i-- > 0;) {
    r = r * x + f[i];
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  }
  return r;
}

// Finds a/b = r mod m with |a|, |b| <= bound, if one exists.
bool rational_reconstruct(const mpz_class& r, const mpz_class& m, const mpz_class& bound, mpq_class& out) {
  mpz_class r0 = m, r1 = r, s0 = 0, s1 = 1;
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (s1 == 0 || abs(s1) > bound) return false;
  out = mpq_class(r1, s1);
  out.canonicalize();
  return true;
}

}  // namespace

std::vector<mpq_class> rational_roots(const UPoly& p) {
  std::vector<mpq_class> roots;
  if (p.degree() < 1) return roots;
  UPoly f = p;
  int v = f.valuation_at_zero();
  if (v > 0) {
    roots.push_back(0);
    std::vector<mpq_class> c(f.coeffs().begin() + v, f.coeffs().end());
    f = UPoly(std::move(c));
  }
  if (f.degree() >= 1) {
    UPoly sf = divmod(f, gcd(f, f.derivative())).first;
    std::vector<mpz_class> g = sf.primitive_integer();
    int deg = static_cast<int>(g.size()) - 1;
    if (deg == 1) {
      mpq_class r(-g[0], g[1]);
      r.canonicalize();
      roots.push_back(r);
    } else if (deg > 1) {
      std::vector<mpz_class> dg(deg);
      for (int i = 1; i <= deg; ++i) dg[i - 1] = g[i] * i;
      mpz_class bound = std::max(abs(g[0]), abs(g[deg]));
      mpz_class need = 2 * bound * bound + 1;
      i64 prime = 0;
      std::vector<i64> gp;
      for (i64 cand = 1009;; cand += 2) {
        if (!is_prime(cand)) continue;
        gp = reduce_mod(g, cand);
        if (static_cast<int>(gp.size()) - 1 != deg) continue;
        auto dgp = reduce_mod(dg, cand);
        if (dgp.empty() || gcd_degree_mod(gp, dgp, cand) != 0) continue;
        prime = cand;
        break;
      }
      mpz_class pz = prime;
      for (i64 r0 = 0; r0 < prime; ++r0) {
        i64 acc = 0;
        for (size_t i = gp.size(); i-- > 0;) acc = static_cast<i64>(((__int128)acc * r0 + gp[i]) % prime);
        if (acc != 0) continue;
        // Newton/Hensel lifting of a simple root.
        mpz_class r = r0, m = pz;
        while (m < need) {
          mpz_class m2 = m * m;
          mpz_class fr = eval_z(g, r, m2);
          mpz_class dr = eval_z(dg, r, m2);
          mpz_class inv;
          mpz_invert(inv.get_mpz_t(), dr.get_mpz_t(), m2.get_mpz_t());
          r = r - fr * inv;
          mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m2.get_mpz_t());
          m = m2;
        }
        mpq_class cand;
        if (!rational_reconstruct(r, m, bound, cand)) continue;
        if (sf.eval(cand) == 0) roots.push_back(cand);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

}  // namespace k3
