#include "k3/weierstrass.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "k3/errors.hpp"
#include "k3/rational.hpp"

namespace k3 {

namespace {

const char* kG2Rational = "4/3*(t^4-(2*c+d+1)*t^3+(c^2+c*d+d^2+2*c-d+1)*t^2-c*(c-d+2)*t+c^2)";
const char* kG3Rational = "4/27*(t^2-(c-d+2)*t+2*c)*(t^2-(c+2*d-1)*t-c)*(2*t^2-(2*c+d+1)*t+c)";
const char* kG2Mirror =
    "4/(3*lambda^4)*u^2*(u^4+8*lambda^2*u^3+(4*lambda^2-1)*(4*lambda^2+1)*u^2+8*lambda^2*u+1)";
const char* kG3Mirror =
    "4/(27*lambda^6)*u^3*(u^2+4*lambda^2*u+1)*(2*u^4+16*lambda^2*u^3+(32*lambda^4-5)*u^2+16*lambda^2*u+2)";

std::string paren(const std::string& s) { return "(" + s + ")"; }

// Weierstrass form of y^2 = x(x-1)(x-t) q(t): X = q x gives X^3 + A X^2 + B X.
WeierstrassModel legendre_family(const std::string& name, const MultiPoly& q, std::vector<std::string> params) {
  MultiPoly t = MultiPoly::var("t");
  MultiPoly one(mpq_class(1));
  MultiPoly A = -(q * (one + t));
  MultiPoly B = q * q * t;
  MultiPoly p = B - A * A * mpq_class(1, 3);
  MultiPoly r = A * A * A * mpq_class(2, 27) - A * B * mpq_class(1, 3);
  WeierstrassModel m;
  m.name = name;
  m.g2 = RationalFunction(p * mpq_class(-4));
  m.g3 = RationalFunction(r * mpq_class(-4));
  m.params = std::move(params);
  return m;
}

MultiPoly linear_factor(const std::string& v, const std::string& root) {
  return MultiPoly::var(v) - MultiPoly::var(root);
}

int weight_of(const UPoly& g2, const UPoly& g3) {
  int k = 0;
  while (g2.degree() > 4 * k || g3.degree() > 6 * k) ++k;
  return k;
}

int ord_rational(const UPoly& p, const mpq_class& r) {
  if (p.is_zero()) return kInfiniteOrder;
  return p.root_multiplicity(r);
}

UPoly exact_quotient(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw Error(ErrorKind::InvalidInput, "inexact polynomial division");
  return q;
}

// Splits a square-free h into pieces on which ord_P is constant.
std::vector<std::pair<UPoly, int>> split_by_order(const UPoly& h, const UPoly& P) {
  std::vector<std::pair<UPoly, int>> out;
  if (P.is_zero()) {
    out.emplace_back(h, kInfiniteOrder);
    return out;
  }
  UPoly rest = h.monic(), P0 = P;
  int level = 0;
  while (rest.degree() > 0) {
    UPoly g = gcd(rest, P0);
    UPoly part = exact_quotient(rest, g);
    if (part.degree() > 0) out.emplace_back(part.monic(), level);
    if (g.degree() <= 0) break;
    rest = g;
    P0 = exact_quotient(P0, g);
    ++level;
  }
  return out;
}

int type_rank(const std::string& type) {
  // Ordering used in summaries: starred I_k, other starred, I_k, II, III, IV.
  if (type.size() > 1 && type[0] == 'I' && std::isdigit(static_cast<unsigned char>(type[1]))) {
    int k = std::stoi(type.substr(1));
    bool star = type.back() == '*';
    return star ? 1000 - k : 3000 - k;
  }
  if (type == "II*") return 2000;
  if (type == "III*") return 2001;
  if (type == "IV*") return 2002;
  if (type == "II") return 4000;
  if (type == "III") return 4001;
  return 4002;
}

// Removes u^4, u^6 factors at every finite place where the model is not minimal.
BaseModel minimalize(BaseModel m) {
  for (int round = 0;; ++round) {
    UPoly delta = discriminant(m);
    if (delta.is_zero()) throw Error(ErrorKind::DegenerateParameters, "discriminant vanishes identically");
    bool changed = false;
    for (const auto& [f, mult] : square_free_decomposition(delta)) {
      if (mult < 12) continue;
      for (const auto& [piece2, o2] : split_by_order(f, m.g2)) {
        if (o2 < 4) continue;
        for (const auto& [piece, o3] : split_by_order(piece2, m.g3)) {
          if (o3 < 6) continue;
          UPoly p4 = pow(piece, 4), p6 = pow(piece, 6);
          if (!m.g2.is_zero()) m.g2 = exact_quotient(m.g2, p4);
          if (!m.g3.is_zero()) m.g3 = exact_quotient(m.g3, p6);
          changed = true;
        }
      }
    }
    if (!changed) return m;
    if (round >= 3) throw Error(ErrorKind::NonMinimalUnresolved, "minimality reduction did not terminate");
  }
}

KodairaFiber fiber_at_infinity(const BaseModel& m) {
  int k = weight_of(m.g2, m.g3);
  UPoly delta = discriminant(m);
  KodairaFiber f;
  f.place = Place::infinity();
  f.ord_g2 = m.g2.is_zero() ? kInfiniteOrder : 4 * k - m.g2.degree();
  f.ord_g3 = m.g3.is_zero() ? kInfiniteOrder : 6 * k - m.g3.degree();
  f.ord_delta = 12 * k - delta.degree();
  f.type = kodaira_symbol(f.ord_g2, f.ord_g3, f.ord_delta);
  return f;
}

mpq_class random_rational(std::mt19937_64& rng) {
  long p = static_cast<long>(rng() % 97) + 1;
  long q = static_cast<long>(rng() % 97) + 1;
  mpq_class r(p, q);
  r.canonicalize();
  return r;
}

}  // namespace

std::string WeierstrassModel::canonical_text() const {
  std::ostringstream os;
  os << "g2 = " << g2.str() << "; g3 = " << g3.str() << "; params = [";
  for (size_t i = 0; i < params.size(); ++i) os << (i ? "," : "") << params[i];
  os << "]";
  return os.str();
}

const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names{"S_cd",           "twisted_4param", "legendre_d0",
                                              "legendre_cd0",   "legendre_b1cd0", "narumiya_shiga"};
  return names;
}

WeierstrassModel build_family(const std::string& name) {
  MultiPoly t = MultiPoly::var("t");
  if (name == "S_cd") {
    WeierstrassModel m;
    m.name = name;
    m.g2 = parse_ratfun(kG2Rational);
    m.g3 = parse_ratfun(kG3Rational);
    m.params = {"c", "d"};
    return m;
  }
  if (name == "twisted_4param") {
    WeierstrassModel m;
    m.name = name;
    m.g2 = parse_ratfun("(t-a)^2*(t-b)^2*" + paren(kG2Rational));
    m.g3 = parse_ratfun("(t-a)^3*(t-b)^3*" + paren(kG3Rational));
    m.params = {"a", "b", "c", "d"};
    return m;
  }
  if (name == "legendre_d0")
    return legendre_family(name, linear_factor("t", "a") * linear_factor("t", "b") * linear_factor("t", "c"),
                           {"a", "b", "c"});
  if (name == "legendre_cd0")
    return legendre_family(name, t * linear_factor("t", "a") * linear_factor("t", "b"), {"a", "b"});
  if (name == "legendre_b1cd0")
    return legendre_family(name, t * (t - MultiPoly(mpq_class(1))) * linear_factor("t", "a"), {"a"});
  if (name == "narumiya_shiga") {
    WeierstrassModel m;
    m.name = name;
    m.var = "u";
    m.g2 = parse_ratfun(kG2Mirror);
    m.g3 = parse_ratfun(kG3Mirror);
    m.params = {"lambda"};
    return m;
  }
  throw Error(ErrorKind::UnknownFamily, name);
}

BaseModel specialize(const WeierstrassModel& m, const Bindings& params) {
  for (const auto& p : m.params)
    if (!params.count(p)) throw Error(ErrorKind::InvalidInput, "parameter " + p + " is not bound");
  auto spec = [&](const RationalFunction& f) {
    MultiPoly den = f.den().eval(params);
    if (!den.is_constant() || den.constant_value() == 0)
      throw Error(ErrorKind::DegenerateParameters, "coefficient denominator vanishes");
    MultiPoly num = f.num().eval(params);
    for (const auto& v : num.free_vars())
      if (v != m.var) throw Error(ErrorKind::InvalidInput, "unbound variable " + v);
    return num.to_upoly(m.var) * (mpq_class(1) / den.constant_value());
  };
  return BaseModel{spec(m.g2), spec(m.g3)};
}

mpq_class c_ij(int i, int j) {
  mpz_class num, den, ii, jj;
  mpz_ui_pow_ui(ii.get_mpz_t(), i, i);
  mpz_ui_pow_ui(jj.get_mpz_t(), j, j);
  mpz_ui_pow_ui(den.get_mpz_t(), i + j, i + j);
  num = ii * jj;
  if (i % 2) num = -num;
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

WeierstrassModel mixed_twist(const WeierstrassModel& model, const FunctionalInvariant& inv, TwistMode mode,
                             const std::optional<std::pair<mpq_class, mpq_class>>& ab) {
  if (inv.i < 1 || inv.i > 6 || inv.j < 1 || inv.j > 6 || (inv.alpha != 1 && inv.alpha != mpq_class(1, 2)))
    throw Error(ErrorKind::InvalidInput, "functional invariant out of range");
  const std::string& v0 = model.var;
  int d2 = model.g2.num().degree_in(v0), d3 = model.g3.num().degree_in(v0);
  // deg g2 <= min(4/i, 4 alpha/j), deg g3 <= min(6/i, 6 alpha/j)
  auto within = [&](int deg, int w) {
    return deg <= 0 || (mpq_class(deg) <= ratio(w, inv.i) && mpq_class(deg) <= inv.alpha * w / inv.j);
  };
  if (!within(d2, 4) || !within(d3, 6)) throw Error(ErrorKind::DegreeBoundViolated, "degree bounds fail");

  MultiPoly v = MultiPoly::var("v");
  MultiPoly one(mpq_class(1));
  if (mode == TwistMode::one_param_tilde_t) {
    MultiPoly base = pow(v, inv.i) * pow(v + one, inv.j);
    RationalFunction arg(MultiPoly::var("tt") * c_ij(inv.i, inv.j), base);
    int e2 = (inv.alpha == 1) ? 4 : 2, e3 = (inv.alpha == 1) ? 6 : 3;
    RationalFunction w2(pow(v, 4) * pow(v + one, e2)), w3(pow(v, 6) * pow(v + one, e3));
    WeierstrassModel r;
    r.name = model.name + ".twist";
    r.var = "v";
    r.g2 = ratfun_substitute(model.g2, {{v0, arg}}) * w2;
    r.g3 = ratfun_substitute(model.g3, {{v0, arg}}) * w3;
    if (r.g2.den().depends_on("v") || r.g3.den().depends_on("v"))
      throw Error(ErrorKind::DegreeBoundViolated, "pullback is not polynomial");
    r.params = model.params;
    r.params.push_back("tt");
    return r;
  }

  if (inv.i != 1 || inv.j != 1 || inv.alpha != 1)
    throw Error(ErrorKind::InvalidInput, "two-parameter twist requires (1,1,1)");
  RationalFunction a = MultiPoly::var("a"), b = MultiPoly::var("b");
  if (ab) {
    if (ab->first == ab->second) throw Error(ErrorKind::RamificationCollision, "a = b");
    a = RationalFunction(ab->first);
    b = RationalFunction(ab->second);
  }
  if (model.g2.den().depends_on(v0) || model.g3.den().depends_on(v0))
    throw Error(ErrorKind::InvalidInput, "coefficients must be polynomial in the base variable");
  RationalFunction t = MultiPoly::var(v0);
  RationalFunction q = (t - a) * (t - b);
  WeierstrassModel r;
  r.name = model.name + ".twist";
  r.var = v0;
  r.g2 = model.g2 * pow(q, 2);
  r.g3 = model.g3 * pow(q, 3);
  r.params = model.params;
  if (!ab) {
    r.params.push_back("a");
    r.params.push_back("b");
  }
  // Certificate: along t = a + (a-b)/(4v(v+1)) the twisted model equals the
  // pullback of the original with weights v^4 (v+1)^4, v^6 (v+1)^6 up to
  // the rescaling lambda^4, lambda^6 with lambda = (a-b)(2v+1)/(4 v^2 (v+1)^2).
  MultiPoly A = ab ? MultiPoly(ab->first) : MultiPoly::var("a");
  MultiPoly B = ab ? MultiPoly(ab->second) : MultiPoly::var("b");
  MultiPoly vv = v * (v + one);
  RationalFunction f(A * vv * mpq_class(4) + A - B, vv * mpq_class(4));
  MultiPoly lam_num = (A - B) * (v * mpq_class(2) + one), lam_den = vv * vv * mpq_class(4);
  MultiPoly qpoly = (MultiPoly::var(v0) - A) * (MultiPoly::var(v0) - B);
  auto certify = [&](const MultiPoly& g, int w) {
    auto [N, D] = substitute_cleared(g, {{v0, f}});
    auto [Nt, Dt] = substitute_cleared(g * pow(qpoly, w / 2), {{v0, f}});
    return Nt * D * pow(lam_den, w) == N * Dt * pow(vv, w) * pow(lam_num, w);
  };
  if (!certify(model.g2.num(), 4) || !certify(model.g3.num(), 6))
    throw Error(ErrorKind::InvalidInput, "pullback certificate failed");
  return r;
}

RationalFunction discriminant(const WeierstrassModel& m) {
  return pow(m.g2, 3) - pow(m.g3, 2) * RationalFunction(mpq_class(27));
}

UPoly discriminant(const BaseModel& m) { return pow(m.g2, 3) - pow(m.g3, 2) * mpq_class(27); }

std::string Place::str(const std::string& var) const {
  switch (kind) {
    case Kind::rational: return var + "=" + value.get_str();
    case Kind::infinity: return var + "=oo";
    case Kind::factor: return "roots of " + factor.str(var);
  }
  return "";
}

std::string kodaira_symbol(int a, int b, int c) {
  if (c == 0) return "I0";
  if (a == 0 && b == 0) return "I" + std::to_string(c);
  if (a >= 4 && b >= 6 && c >= 12)
    throw Error(ErrorKind::NonMinimalUnresolved, "valuations are not minimal");
  if (c == 2 && a >= 1 && b == 1) return "II";
  if (c == 3 && a == 1 && b >= 2) return "III";
  if (c == 4 && a >= 2 && b == 2) return "IV";
  if (c == 6 && a >= 2 && b >= 3) return "I0*";
  if (a == 2 && b == 3 && c > 6) return "I" + std::to_string(c - 6) + "*";
  if (c == 8 && a >= 3 && b == 4) return "IV*";
  if (c == 9 && a == 3 && b >= 5) return "III*";
  if (c == 10 && a >= 4 && b == 5) return "II*";
  throw Error(ErrorKind::NonMinimalUnresolved,
              "valuations (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
                  ") match no Kodaira type");
}

const char* surface_class_name(SurfaceClass c) {
  switch (c) {
    case SurfaceClass::rational_elliptic: return "rational_elliptic";
    case SurfaceClass::K3: return "K3";
    case SurfaceClass::other: return "other";
  }
  return "other";
}

std::map<std::string, int> FiberConfiguration::counts() const {
  std::map<std::string, int> c;
  for (const auto& f : fibers) c[f.type] += f.place.degree();
  return c;
}

std::string FiberConfiguration::summary() const {
  auto c = counts();
  std::vector<std::pair<std::string, int>> items(c.begin(), c.end());
  std::sort(items.begin(), items.end(),
            [](const auto& x, const auto& y) { return type_rank(x.first) < type_rank(y.first); });
  std::ostringstream os;
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) os << " + ";
    if (items[i].second > 1) os << items[i].second;
    os << items[i].first;
  }
  return items.empty() ? "none" : os.str();
}

KodairaFiber kodaira_type(const BaseModel& m0, const Place& place) {
  BaseModel m = minimalize(m0);
  if (place.kind == Place::Kind::infinity) return fiber_at_infinity(m);
  UPoly delta = discriminant(m);
  KodairaFiber f;
  f.place = place;
  if (place.kind == Place::Kind::rational) {
    f.ord_g2 = ord_rational(m.g2, place.value);
    f.ord_g3 = ord_rational(m.g3, place.value);
    f.ord_delta = delta.root_multiplicity(place.value);
  } else {
    auto order_along = [&](const UPoly& P) {
      auto parts = split_by_order(place.factor, P);
      if (parts.size() != 1) throw Error(ErrorKind::InvalidInput, "factor is not uniform for the model");
      return parts[0].second;
    };
    f.ord_g2 = order_along(m.g2);
    f.ord_g3 = order_along(m.g3);
    f.ord_delta = order_along(delta);
  }
  f.type = kodaira_symbol(f.ord_g2, f.ord_g3, f.ord_delta);
  return f;
}

KodairaFiber kodaira_type(const WeierstrassModel& m, const Place& place, const Bindings& params) {
  return kodaira_type(specialize(m, params), place);
}

FiberConfiguration fiber_configuration(const BaseModel& m0) {
  BaseModel m = minimalize(m0);
  UPoly delta = discriminant(m);
  FiberConfiguration cfg;
  for (const auto& [f, mult] : square_free_decomposition(delta)) {
    UPoly rest = f;
    for (const auto& r : rational_roots(f)) {
      KodairaFiber k;
      k.place = Place::at(r);
      k.ord_g2 = ord_rational(m.g2, r);
      k.ord_g3 = ord_rational(m.g3, r);
      k.ord_delta = mult;
      k.type = kodaira_symbol(k.ord_g2, k.ord_g3, k.ord_delta);
      cfg.fibers.push_back(k);
      cfg.deg_delta += mult;
      rest = exact_quotient(rest, UPoly::linear(r));
    }
    if (rest.degree() < 1) continue;
    for (const auto& [p2, o2] : split_by_order(rest, m.g2))
      for (const auto& [p3, o3] : split_by_order(p2, m.g3)) {
        KodairaFiber k;
        k.place = Place::along(p3);
        k.ord_g2 = o2;
        k.ord_g3 = o3;
        k.ord_delta = mult;
        k.type = kodaira_symbol(o2, o3, mult);
        cfg.fibers.push_back(k);
        cfg.deg_delta += mult * p3.degree();
      }
  }
  KodairaFiber inf = fiber_at_infinity(m);
  if (inf.ord_delta > 0) cfg.fibers.push_back(inf);
  cfg.deg_delta += inf.ord_delta;
  cfg.weight = weight_of(m.g2, m.g3);
  cfg.surface = cfg.deg_delta == 12 ? SurfaceClass::rational_elliptic
                : cfg.deg_delta == 24 ? SurfaceClass::K3
                                      : SurfaceClass::other;
  return cfg;
}

FiberConfiguration fiber_configuration(const WeierstrassModel& m, const Bindings& params) {
  return fiber_configuration(specialize(m, params));
}

BaseModel mobius_transform(const BaseModel& m, const mpq_class& p, const mpq_class& q, const mpq_class& r,
                           const mpq_class& s) {
  if (p * s - q * r == 0) throw Error(ErrorKind::InvalidInput, "degenerate Mobius map");
  int k = weight_of(m.g2, m.g3);
  UPoly num({q, p}), den({s, r});
  auto tr = [&](const UPoly& g, int w) {
    UPoly out;
    for (int i = 0; i <= g.degree(); ++i)
      if (g[i] != 0) out = out + pow(num, i) * pow(den, w - i) * g[i];
    return out;
  };
  return BaseModel{tr(m.g2, 4 * k), tr(m.g3, 6 * k)};
}

BaseModel quadratic_twist(const BaseModel& m, const UPoly& f) {
  return BaseModel{m.g2 * pow(f, 2), m.g3 * pow(f, 3)};
}

Bindings generic_parameters(const WeierstrassModel& m, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 100000; ++attempt) {
    Bindings b;
    for (const auto& p : m.params) b[p] = random_rational(rng);
    std::vector<mpq_class> pts{0, 1};
    for (const char* name : {"a", "b", "c", "tt"})
      if (b.count(name)) pts.push_back(b[name]);
    if (b.count("c") && b.count("d")) {
      if (b["d"] == 1) continue;
      pts.push_back(b["c"] + b["d"]);
      pts.push_back(b["c"] / (b["d"] - 1));
      if (b["c"] != 0) pts.push_back(b["c"] / (1 - b["d"]));  // where the fifth finite I2 actually sits
    }
    if (b.count("lambda")) {
      mpq_class l4 = b["lambda"] * b["lambda"] * b["lambda"] * b["lambda"];
      if (l4 * 16 == 1 || l4 * 4 == 1) continue;
    }
    std::set<mpq_class> distinct(pts.begin(), pts.end());
    if (distinct.size() != pts.size()) continue;
    return b;
  }
  throw Error(ErrorKind::DegenerateParameters, "no generic parameters found");
}

int two_torsion_rank(const BaseModel& m) {
  if (discriminant(m).is_zero()) throw Error(ErrorKind::DegenerateParameters, "singular generic fiber");
  int D = 0;
  while (2 * D < m.g2.degree() || 3 * D < m.g3.degree()) ++D;
  const int extra = 2;
  // Sample points where the cubic is separable.
  std::vector<mpq_class> ts;
  std::vector<std::vector<mpq_class>> roots;
  UPoly delta = discriminant(m);
  for (long j = 0; static_cast<int>(ts.size()) < D + 1 + extra; ++j) {
    mpq_class tj(j);
    if (delta.eval(tj) == 0) continue;
    UPoly cubic({-m.g3.eval(tj), -m.g2.eval(tj), mpq_class(0), mpq_class(4)});
    auto r = rational_roots(cubic);
    if (r.empty()) return 0;
    ts.push_back(tj);
    roots.push_back(r);
  }
  std::vector<UPoly> found;
  std::vector<size_t> idx(D + 1, 0);
  while (true) {
    // Lagrange interpolation through the chosen roots.
    UPoly x;
    for (int i = 0; i <= D; ++i) {
      UPoly basis = UPoly::constant(1);
      for (int k = 0; k <= D; ++k)
        if (k != i) basis = basis * UPoly::linear(ts[k]) * (mpq_class(1) / (ts[i] - ts[k]));
      x = x + basis * roots[i][idx[i]];
    }
    bool ok = true;
    for (int e = D + 1; e < D + 1 + extra && ok; ++e) {
      mpq_class xv = x.eval(ts[e]);
      ok = std::find(roots[e].begin(), roots[e].end(), xv) != roots[e].end();
    }
    if (ok) {
      UPoly F = pow(x, 3) * mpq_class(4) - m.g2 * x - m.g3;
      if (F.is_zero() && std::find(found.begin(), found.end(), x) == found.end()) found.push_back(x);
    }
    int pos = 0;
    while (pos <= D && ++idx[pos] == roots[pos].size()) idx[pos++] = 0;
    if (pos > D) break;
  }
  int n = static_cast<int>(found.size());
  return n == 0 ? 0 : (n == 1 ? 1 : 2);
}

int two_torsion_rank(const WeierstrassModel& m, const Bindings& params) {
  return two_torsion_rank(specialize(m, params));
}

KummerReport kummer_criterion(const mpq_class& a, const mpq_class& b, const mpq_class& c, const mpq_class& d) {
  KummerReport r;
  r.statement_variant = d * (a * b - b) == (a - c) * (b - c);
  r.special_d = (a * b - c) != 0 && d * (a * b - c) == (a - c) * (b - c);
  return r;
}

MatsumotoParameters matsumoto_parameters(const mpq_class& a, const mpq_class& b, const mpq_class& c,
                                         const mpq_class& d) {
  if (b == 0 || b == c) throw Error(ErrorKind::DivisionByZero, "b = 0 or b = c");
  MatsumotoParameters p;
  p.x1 = a / b;
  p.x2 = (a - c) / (b - c);
  p.x3 = mpq_class(1) / b;
  p.x4 = d / (b - c);
  p.mu = b * (b - c);
  return p;
}

MultiPoly mirror_pencil(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "n must be >= 1");
  MultiPoly prod(mpq_class(1)), sum(mpq_class(1));
  for (int i = 1; i <= n; ++i) {
    MultiPoly xi = MultiPoly::var("x" + std::to_string(i));
    prod = prod * xi;
    sum = sum + xi;
  }
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), n + 1, n + 1);
  mpq_class c(mpz_class(n % 2 ? 1 : -1), den);
  c.canonicalize();
  return prod * sum + MultiPoly::var("t") * c;
}

bool mirror_fibration_check(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidInput, "n must be >= 2");
  MultiPoly xn = MultiPoly::var("x" + std::to_string(n));
  MultiPoly one(mpq_class(1));
  RationalFunction xn1 = RationalFunction(xn + one);
  // f_{n-1} is written in x1..x_{n-1}, t; rename to avoid clashes before substituting.
  MultiPoly lower = mirror_pencil(n - 1);
  std::map<std::string, RationalFunction> b;
  for (int i = 1; i < n; ++i) {
    std::string xi = "x" + std::to_string(i);
    b[xi] = RationalFunction(MultiPoly::var(xi)) / xn1;
  }
  mpz_class nn, m1;
  mpz_ui_pow_ui(nn.get_mpz_t(), n, n);
  mpz_ui_pow_ui(m1.get_mpz_t(), n + 1, n + 1);
  mpq_class coef(-nn, m1);
  coef.canonicalize();
  b["t"] = RationalFunction(MultiPoly::var("t") * coef) / (RationalFunction(xn) * pow(xn1, n));
  auto [N, D] = substitute_cleared(lower, b);
  return mirror_pencil(n) * D == xn * pow(xn + one, n) * N;
}

namespace {

MultiPoly reduce_relations(MultiPoly p, const std::vector<SideRelation>& rel) {
  for (const auto& r : rel) {
    if (!p.depends_on(r.var)) continue;
    p = pseudo_divide(p, r.poly, r.var).r;
  }
  return p;
}

struct ExactOutcome {
  bool holds;
  std::string unit, detail;
};

ExactOutcome verify_exact(const RationalFunction& src, const RationalFunction& dst,
                          const std::map<std::string, RationalFunction>& bindings, const std::string& dst_var,
                          const std::vector<SideRelation>& rel) {
  auto [N, D] = substitute_cleared(src.num(), bindings);
  N = reduce_relations(N, rel);
  MultiPoly T = reduce_relations(dst.num(), rel);
  if (N.is_zero()) return {false, "", "substitution annihilates the source identically"};
  if (!T.depends_on(dst_var)) return {false, "", "target does not involve " + dst_var};
  PseudoDivision pd = pseudo_divide(N, T, dst_var);
  MultiPoly r = reduce_relations(pd.r, rel);
  if (!r.is_zero()) return {false, "", "remainder has " + std::to_string(r.size()) + " terms"};
  MultiPoly q = reduce_relations(pd.q, rel);
  PseudoDivision qq = pseudo_divide(q, T, dst_var);
  if (reduce_relations(qq.r, rel).is_zero()) return {false, "", "unit factor vanishes on the target"};
  std::string unit;
  MultiPoly den = pow(pd.lc, pd.k) * D;
  if (q.size() + den.size() < 400 && rel.empty()) unit = RationalFunction(q, den).str();
  else unit = "(" + std::to_string(q.size()) + " terms)/(" + std::to_string(den.size()) + " terms)";
  return {true, unit, ""};
}

RationalFunction specialize_rf(const RationalFunction& f, const Bindings& b) {
  return RationalFunction(f.num().eval(b), f.den().eval(b));
}

}  // namespace

BirationalResult verify_birational(const RationalFunction& src, const RationalFunction& dst,
                                   const std::map<std::string, RationalFunction>& bindings,
                                   const std::string& dst_var, const std::vector<SideRelation>& relations,
                                   const std::vector<std::string>& params, std::uint64_t seed) {
  BirationalResult res;
  const size_t cap = 4000000;
  size_t old = term_cap();
  set_term_cap(cap);
  try {
    auto out = verify_exact(src, dst, bindings, dst_var, relations);
    set_term_cap(old);
    res.holds = out.holds;
    res.unit = out.unit;
    res.detail = out.detail;
    return res;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SizeCapExceeded) {
      set_term_cap(old);
      throw;
    }
  }
  // Random specializations of the parameters.
  res.exact = false;
  res.term_cap = cap;
  res.holds = true;
  std::mt19937_64 rng(seed);
  try {
    for (int s = 0; s < 20; ++s) {
      Bindings b;
      for (const auto& p : params) b[p] = random_rational(rng);
      std::map<std::string, RationalFunction> sb;
      for (const auto& [k, v] : bindings) sb[k] = specialize_rf(v, b);
      auto out = verify_exact(specialize_rf(src, b), specialize_rf(dst, b), sb, dst_var, relations);
      ++res.specializations;
      if (!out.holds) {
        res.holds = false;
        res.detail = out.detail;
        break;
      }
    }
  } catch (...) {
    set_term_cap(old);
    throw;
  }
  set_term_cap(old);
  return res;
}

const std::vector<BirationalIdentity>& birational_catalog() {
  static const std::vector<BirationalIdentity> catalog = [] {
    const std::string g2 = paren(kG2Rational), g3 = paren(kG3Rational);
    const std::string P = "(t^2+(d+1-c)*t-c)";
    const std::string q = "((t-a)*(t-b))";
    const std::string rational = "y^2-(4*x^3-" + g2 + "*x-" + g3 + ")";
    const std::string legendre = "yt^2-xt*(xt-1)*(xt-t)*(t-c-d*xt)";
    const std::string four = "yh^2-(4*xh^3-" + q + "^2*" + g2 + "*xh-" + q + "^3*" + g3 + ")";
    const std::string extended = "y^2-x*(x-1)*(x-t)*(t-a)*(t-b)*(t-c-d*x)";
    std::vector<BirationalIdentity> v;
    v.push_back({"rational_to_legendre.printed", rational, legendre,
                 {{"x", "3*t*(t-c)/(3*xt+" + P + ")"}, {"y", "3*yt*t*(t-c)/(2*(3*xt+" + P + ")^2)"}},
                 "yt", {"c", "d"}, false, true});
    v.push_back({"rational_to_legendre.corrected", legendre, rational,
                 {{"xt", "3*t*(t-c)/(3*x+" + P + ")"}, {"yt", "9*t*(t-c)*y/(2*(3*x+" + P + ")^2)"}},
                 "y", {"c", "d"}, false, false});
    v.push_back({"rational_to_legendre.inverse", rational, legendre,
                 {{"x", "t*(t-c)/xt-" + P + "/3"}, {"y", "2*yt*t*(t-c)/xt^2"}},
                 "yt", {"c", "d"}, false, false});
    v.push_back({"four_parameter_to_extended_legendre.printed", four, extended,
                 {{"xh", "3*t*" + q + "*(t-c)/(3*x+" + q + "*" + P + ")"},
                  {"yh", "3*y*t*" + q + "*(t-c)/(2*(3*x+" + q + "*" + P + ")^2)"}},
                 "y", {"a", "b", "c", "d"}, false, true});
    v.push_back({"four_parameter_to_extended_legendre.corrected", extended, four,
                 {{"x", "3*t*" + q + "*(t-c)/(3*xh+" + q + "*" + P + ")"},
                  {"y", "9*t*" + q + "*(t-c)*yh/(2*(3*xh+" + q + "*" + P + ")^2)"}},
                 "yh", {"a", "b", "c", "d"}, false, false});
    const std::string A = "(4*u^2*lambda^2+3*X*lambda^2+u^3+u)";
    const std::string B = "(4*u^2*lambda^2+3*X*lambda^2+u^3-2*u)";
    auto Cw = [](const std::string& iy) { return "(16*u^3*lambda^2-3*" + iy + "*lambda^2+12*X*u*lambda^2+4*u^4+4*u^2)"; };
    const std::string quartic = "x1*x2*x3*(x1+x2+x3+1)+1/(256*lambda^4)";
    auto ns_bind = [&](const std::string& iy) {
      return std::map<std::string, std::string>{
          {"x1", "-" + A + "*" + B + "/(6*lambda^2*u*" + Cw(iy) + ")"},
          {"x2", "-" + Cw(iy) + "/(8*u*" + B + ")"},
          {"x3", "u^2*" + B + "/(2*lambda^2*" + Cw(iy) + ")"}};
    };
    v.push_back({"mirror_quartic_to_weierstrass.printed", quartic,
                 "Y^2-(4*X^3-" + paren(kG2Mirror) + "*X-" + paren(kG3Mirror) + ")", ns_bind("I*Y"), "Y",
                 {"lambda"}, true, true});
    v.push_back({"mirror_quartic_to_weierstrass.corrected", quartic,
                 "W^2+4*X^3-" + paren(kG2Mirror) + "*X-" + paren(kG3Mirror), ns_bind("W"), "W", {"lambda"},
                 false, false});
    const std::string two_src = "y^2-x*(x-1)*(x-t)*t*(t-a)*(t-b)";
    const std::map<std::string, std::string> two_bind{
        {"t", "a*b/(a+(b-a)*T)"}, {"x", "1/X"}, {"y", "a*b*(b-a)*Yt/((a+(b-a)*T)^2*X^2)"}};
    v.push_back({"two_parameter_legendre.printed", two_src,
                 "1/a*Yt^2-X*(1-X)*T*(1-T)*(1-(1-b/a)*T-b*X)", two_bind, "Yt", {"a", "b"}, false, true});
    v.push_back({"two_parameter_legendre.corrected", two_src,
                 "1/a*Yt^2-X*(1-X)*T*(1-T)*((1-b/a)*T+b*X-1)", two_bind, "Yt", {"a", "b"}, false, false});
    v.push_back({"one_parameter_legendre.printed", "y^2-x*(x-1)*(x-t)*t*(t-1)*(t-a)",
                 "(1-(1-1/a))*Yt^2-X*(1-X)*T*(1-T)*(1-(1-1/a)*T*X)",
                 {{"t", "a/(a+(1-a)*T)"},
                  {"x", "-a*(1-X)/((a+(1-a)*T)*X)"},
                  {"y", "-(1-a)*a^2*Yt/((a+(1-a)*T)^3*X^2)"}},
                 "Yt", {"a"}, false, true});
    return v;
  }();
  return catalog;
}

BirationalResult verify_identity(const BirationalIdentity& id, std::uint64_t seed) {
  std::map<std::string, RationalFunction> b;
  for (const auto& [k, e] : id.bindings) b[k] = parse_ratfun(e);
  std::vector<SideRelation> rel;
  if (id.uses_imaginary_unit) rel.push_back({"I", parse_poly("I^2+1")});
  return verify_birational(parse_ratfun(id.src), parse_ratfun(id.dst), b, id.dst_var, rel, id.params, seed);
}

}  // namespace k3
