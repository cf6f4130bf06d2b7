#include "k3/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

#include "k3/errors.hpp"

namespace k3 {

namespace {

thread_local size_t g_term_cap = 0;

int mono_degree(const Mono& m) {
  int d = 0;
  for (auto e : m) d += e;
  return d;
}

// Graded lex: true if a comes before b (a is larger).
bool grlex_greater(const Mono& a, const Mono& b) {
  int da = mono_degree(a), db = mono_degree(b);
  if (da != db) return da > db;
  for (int i = 0; i < kMaxVars; ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

struct MonoHash {
  size_t operator()(const Mono& m) const {
    size_t h = 1469598103934665603ULL;
    for (auto e : m) h = (h ^ e) * 1099511628211ULL;
    return h;
  }
};

Mono zero_mono() {
  Mono m{};
  m.fill(0);
  return m;
}

std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  if (out.size() > static_cast<size_t>(kMaxVars))
    throw Error(ErrorKind::InvalidInput, "too many polynomial variables");
  return out;
}

}  // namespace

void set_term_cap(size_t cap) { g_term_cap = cap; }
size_t term_cap() { return g_term_cap; }

MultiPoly::MultiPoly(const mpq_class& c) {
  if (c != 0) terms_.emplace_back(zero_mono(), c);
}

MultiPoly MultiPoly::var(const std::string& name) {
  MultiPoly p;
  p.vars_ = {name};
  Mono m = zero_mono();
  m[0] = 1;
  p.terms_.emplace_back(m, mpq_class(1));
  return p;
}

MultiPoly MultiPoly::from_upoly(const UPoly& q, const std::string& var) {
  MultiPoly p;
  p.vars_ = {var};
  for (int i = q.degree(); i >= 0; --i) {
    if (q[i] == 0) continue;
    Mono m = zero_mono();
    m[0] = static_cast<std::uint16_t>(i);
    p.terms_.emplace_back(m, q[i]);
  }
  return p;
}

MultiPoly MultiPoly::from_terms(std::vector<std::string> vars, std::vector<Term> terms) {
  MultiPoly p;
  p.vars_ = std::move(vars);
  p.terms_ = std::move(terms);
  p.normalize();
  return p;
}

void MultiPoly::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return grlex_greater(a.first, b.first); });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first) out.back().second += t.second;
    else out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const Term& t) { return t.second == 0; }), out.end());
  terms_ = std::move(out);
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && mono_degree(terms_[0].first) == 0);
}

mpq_class MultiPoly::constant_value() const { return terms_.empty() ? mpq_class(0) : terms_[0].second; }

int MultiPoly::var_index(const std::string& v) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
  if (it == vars_.end() || *it != v) return -1;
  return static_cast<int>(it - vars_.begin());
}

int MultiPoly::degree_in(const std::string& v) const {
  int i = var_index(v);
  if (i < 0) return is_zero() ? -1 : 0;
  int d = is_zero() ? -1 : 0;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.first[i]));
  return d;
}

int MultiPoly::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, mono_degree(t.first));
  return d;
}

std::vector<std::string> MultiPoly::free_vars() const {
  std::vector<std::string> out;
  for (size_t i = 0; i < vars_.size(); ++i)
    for (const auto& t : terms_)
      if (t.first[i] > 0) {
        out.push_back(vars_[i]);
        break;
      }
  return out;
}

MultiPoly MultiPoly::over(const std::vector<std::string>& vars) const {
  if (vars == vars_) return *this;
  std::vector<int> map(vars_.size());
  for (size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::lower_bound(vars.begin(), vars.end(), vars_[i]);
    if (it == vars.end() || *it != vars_[i]) throw Error(ErrorKind::InvalidInput, "variable list mismatch");
    map[i] = static_cast<int>(it - vars.begin());
  }
  MultiPoly p;
  p.vars_ = vars;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Mono m = zero_mono();
    for (size_t i = 0; i < vars_.size(); ++i) m[map[i]] = t.first[i];
    p.terms_.emplace_back(m, t.second);
  }
  p.normalize();
  return p;
}

MultiPoly MultiPoly::trimmed() const {
  auto fv = free_vars();
  if (fv.size() == vars_.size()) return *this;
  MultiPoly p;
  p.vars_ = fv;
  std::vector<int> keep;
  for (const auto& v : fv) keep.push_back(var_index(v));
  for (const auto& t : terms_) {
    Mono m = zero_mono();
    for (size_t j = 0; j < keep.size(); ++j) m[j] = t.first[keep[j]];
    p.terms_.emplace_back(m, t.second);
  }
  p.normalize();
  return p;
}

std::vector<MultiPoly> MultiPoly::coefficients_in(const std::string& v) const {
  int idx = var_index(v);
  if (idx < 0) return {*this};
  int d = degree_in(v);
  std::vector<MultiPoly> out(std::max(d, 0) + 1);
  for (auto& c : out) c.vars_ = vars_;
  for (const auto& t : terms_) {
    Mono m = t.first;
    int k = m[idx];
    m[idx] = 0;
    out[k].terms_.emplace_back(m, t.second);
  }
  for (auto& c : out) c.normalize();
  return out;
}

MultiPoly MultiPoly::from_coefficients(const std::vector<MultiPoly>& c, const std::string& v) {
  MultiPoly x = var(v);
  MultiPoly r;
  for (size_t k = c.size(); k-- > 0;) r = r * x + c[k];
  return r;
}

MultiPoly MultiPoly::eval(const std::map<std::string, mpq_class>& values) const {
  std::vector<std::pair<int, mpq_class>> idx;
  for (const auto& [name, val] : values) {
    int i = var_index(name);
    if (i >= 0) idx.emplace_back(i, val);
  }
  if (idx.empty()) return *this;
  MultiPoly p;
  p.vars_ = vars_;
  for (const auto& t : terms_) {
    Mono m = t.first;
    mpq_class c = t.second;
    for (const auto& [i, val] : idx) {
      if (m[i] == 0) continue;
      mpq_class pw;
      mpz_pow_ui(pw.get_num_mpz_t(), val.get_num_mpz_t(), m[i]);
      mpz_pow_ui(pw.get_den_mpz_t(), val.get_den_mpz_t(), m[i]);
      pw.canonicalize();
      c *= pw;
      m[i] = 0;
    }
    p.terms_.emplace_back(m, c);
  }
  p.normalize();
  return p;
}

MultiPoly MultiPoly::substitute(const std::string& v, const MultiPoly& value) const {
  if (var_index(v) < 0) return *this;
  auto c = coefficients_in(v);
  MultiPoly r;
  for (size_t k = c.size(); k-- > 0;) r = r * value + c[k];
  return r;
}

UPoly MultiPoly::to_upoly(const std::string& v) const {
  auto c = coefficients_in(v);
  std::vector<mpq_class> q;
  for (const auto& p : c) {
    if (!p.is_constant()) throw Error(ErrorKind::InvalidInput, "polynomial has free parameters besides " + v);
    q.push_back(p.constant_value());
  }
  return UPoly(std::move(q));
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    mpq_class a = abs(t.second);
    bool neg = t.second < 0;
    if (first) os << (neg ? "-" : "");
    else os << (neg ? " - " : " + ");
    first = false;
    bool any = false;
    std::ostringstream mono;
    for (size_t i = 0; i < vars_.size(); ++i) {
      if (t.first[i] == 0) continue;
      if (any) mono << "*";
      mono << vars_[i];
      if (t.first[i] > 1) mono << "^" << t.first[i];
      any = true;
    }
    if (!any) os << a.get_str();
    else if (a == 1) os << mono.str();
    else os << a.get_str() << "*" << mono.str();
  }
  return os.str();
}

MultiPoly operator+(const MultiPoly& a0, const MultiPoly& b0) {
  if (a0.is_zero()) return b0;
  if (b0.is_zero()) return a0;
  auto vars = merge_vars(a0.vars_, b0.vars_);
  MultiPoly a = a0.over(vars), b = b0.over(vars);
  MultiPoly r;
  r.vars_ = vars;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  size_t i = 0, j = 0;
  while (i < a.terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() || (i < a.terms_.size() && grlex_greater(a.terms_[i].first, b.terms_[j].first))) {
      r.terms_.push_back(a.terms_[i++]);
    } else if (i == a.terms_.size() || grlex_greater(b.terms_[j].first, a.terms_[i].first)) {
      r.terms_.push_back(b.terms_[j++]);
    } else {
      mpq_class s = a.terms_[i].second + b.terms_[j].second;
      if (s != 0) r.terms_.emplace_back(a.terms_[i].first, s);
      ++i;
      ++j;
    }
  }
  return r;
}

MultiPoly operator-(const MultiPoly& a) {
  MultiPoly r = a;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

MultiPoly operator*(const MultiPoly& a, const mpq_class& s) {
  if (s == 0) return MultiPoly();
  MultiPoly r = a;
  for (auto& t : r.terms_) t.second *= s;
  return r;
}

MultiPoly operator*(const MultiPoly& a0, const MultiPoly& b0) {
  if (a0.is_zero() || b0.is_zero()) return MultiPoly();
  if (a0.is_constant()) return b0 * a0.constant_value();
  if (b0.is_constant()) return a0 * b0.constant_value();
  auto vars = merge_vars(a0.vars_, b0.vars_);
  MultiPoly a = a0.over(vars), b = b0.over(vars);
  std::unordered_map<Mono, mpq_class, MonoHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size() / 2 + 8);
  mpq_class prod;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      Mono m;
      for (int k = 0; k < kMaxVars; ++k) m[k] = static_cast<std::uint16_t>(ta.first[k] + tb.first[k]);
      mpq_mul(prod.get_mpq_t(), ta.second.get_mpq_t(), tb.second.get_mpq_t());
      auto it = acc.find(m);
      if (it == acc.end()) acc.emplace(m, prod);
      else it->second += prod;
    }
    if (g_term_cap && acc.size() > g_term_cap)
      throw Error(ErrorKind::SizeCapExceeded, "product exceeds " + std::to_string(g_term_cap) + " terms");
  }
  MultiPoly r;
  r.vars_ = vars;
  r.terms_.reserve(acc.size());
  for (auto& kv : acc)
    if (kv.second != 0) r.terms_.emplace_back(kv.first, std::move(kv.second));
  std::sort(r.terms_.begin(), r.terms_.end(),
            [](const MultiPoly::Term& x, const MultiPoly::Term& y) { return grlex_greater(x.first, y.first); });
  return r;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) { return (a - b).is_zero(); }

MultiPoly pow(const MultiPoly& a, int k) {
  MultiPoly r(mpq_class(1)), b = a;
  while (k > 0) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

namespace {

bool mono_divides(const Mono& d, const Mono& m) {
  for (int k = 0; k < kMaxVars; ++k)
    if (d[k] > m[k]) return false;
  return true;
}

MultiPoly normalize_lc(const MultiPoly& p) {
  if (p.is_zero()) return p;
  return p * mpq_class(1 / p.leading().second);
}

}  // namespace

std::optional<MultiPoly> divide_exact(const MultiPoly& a0, const MultiPoly& b0) {
  if (b0.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (a0.is_zero()) return MultiPoly();
  if (b0.is_constant()) return a0 * mpq_class(1 / b0.constant_value());
  auto vars = merge_vars(a0.vars(), b0.vars());
  MultiPoly r = a0.over(vars), b = b0.over(vars);
  std::vector<MultiPoly::Term> q;
  const auto& lb = b.leading();
  while (!r.is_zero()) {
    const auto& lr = r.leading();
    if (!mono_divides(lb.first, lr.first)) return std::nullopt;
    Mono m;
    for (int k = 0; k < kMaxVars; ++k) m[k] = static_cast<std::uint16_t>(lr.first[k] - lb.first[k]);
    mpq_class c = lr.second / lb.second;
    q.emplace_back(m, c);
    MultiPoly t = MultiPoly::from_terms(vars, {{m, c}});
    r = r - t * b;
  }
  return MultiPoly::from_terms(vars, std::move(q));
}

namespace {

MultiPoly content_in(const MultiPoly& p, const std::string& v) {
  auto c = p.coefficients_in(v);
  MultiPoly g;
  for (const auto& ci : c) {
    if (ci.is_zero()) continue;
    g = gcd(g, ci);
    if (g.is_constant()) return MultiPoly(mpq_class(1));
  }
  return g;
}

int udeg(const std::vector<MultiPoly>& a) {
  for (size_t i = a.size(); i-- > 0;)
    if (!a[i].is_zero()) return static_cast<int>(i);
  return -1;
}

// Returns k with lc(b)^k a = q b + r.
int pseudo_divide_vec(std::vector<MultiPoly> a, const std::vector<MultiPoly>& b, std::vector<MultiPoly>& q,
                      std::vector<MultiPoly>& r) {
  int db = udeg(b);
  const MultiPoly& lb = b[db];
  int da = udeg(a);
  q.assign(std::max(da - db + 1, 0), MultiPoly());
  int k = 0;
  while (true) {
    int d = udeg(a);
    if (d < db) break;
    MultiPoly lr = a[d];
    for (auto& qi : q) qi = qi * lb;
    q[d - db] = q[d - db] + lr;
    for (int i = 0; i <= d; ++i) a[i] = a[i] * lb;
    for (int i = 0; i <= db; ++i) a[d - db + i] = a[d - db + i] - lr * b[i];
    ++k;
  }
  r = std::move(a);
  return k;
}

}  // namespace

PseudoDivision pseudo_divide(const MultiPoly& a, const MultiPoly& b, const std::string& v) {
  std::vector<MultiPoly> q, r;
  auto bc = b.coefficients_in(v);
  PseudoDivision out;
  out.k = pseudo_divide_vec(a.coefficients_in(v), bc, q, r);
  out.lc = bc[udeg(bc)];
  out.q = MultiPoly::from_coefficients(q, v);
  out.r = MultiPoly::from_coefficients(r, v);
  return out;
}

// True when gcd(a, b) is certainly constant: for each shared variable x the
// specialization of the other variables at a point where both leading
// coefficients in x survive gives a constant univariate gcd.
bool gcd_certainly_trivial(const MultiPoly& a, const MultiPoly& b) {
  auto fa = a.free_vars(), fb = b.free_vars();
  for (const auto& x : fa) {
    if (std::find(fb.begin(), fb.end(), x) == fb.end()) continue;
    auto ca = a.coefficients_in(x), cb = b.coefficients_in(x);
    bool decided = false;
    for (long attempt = 0; attempt < 6 && !decided; ++attempt) {
      std::map<std::string, mpq_class> pt;
      long seed = 7919 * (attempt + 1);
      for (const auto& v : fa)
        if (v != x) pt[v] = mpq_class((seed = (seed * 1103 + 12345) % 10007) - 5003, 1 + attempt);
      for (const auto& v : fb)
        if (v != x && !pt.count(v)) pt[v] = mpq_class((seed = (seed * 1103 + 12345) % 10007) - 5003, 1 + attempt);
      if (ca.back().eval(pt).is_zero() || cb.back().eval(pt).is_zero()) continue;
      UPoly ua = a.eval(pt).to_upoly(x), ub = b.eval(pt).to_upoly(x);
      if (gcd(ua, ub).degree() > 0) return false;
      decided = true;
    }
    if (!decided) return false;
  }
  return true;
}

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return normalize_lc(b);
  if (b.is_zero()) return normalize_lc(a);
  if (a.is_constant() || b.is_constant()) return MultiPoly(mpq_class(1));
  auto fa = a.free_vars(), fb = b.free_vars();
  std::string v;
  for (const auto& x : fa)
    if (std::find(fb.begin(), fb.end(), x) != fb.end()) {
      v = x;
      break;
    }
  if (v.empty()) return MultiPoly(mpq_class(1));
  if (gcd_certainly_trivial(a, b)) return MultiPoly(mpq_class(1));
  if (auto q = divide_exact(a, b)) return normalize_lc(b);
  if (auto q = divide_exact(b, a)) return normalize_lc(a);
  MultiPoly ca = content_in(a, v), cb = content_in(b, v);
  MultiPoly gc = gcd(ca, cb);
  MultiPoly pa = *divide_exact(a, ca), pb = *divide_exact(b, cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  std::vector<MultiPoly> A = pa.coefficients_in(v), B = pb.coefficients_in(v);
  MultiPoly g;
  while (true) {
    std::vector<MultiPoly> q, r;
    pseudo_divide_vec(A, B, q, r);
    int dr = udeg(r);
    if (dr < 0) {
      g = MultiPoly::from_coefficients(B, v);
      break;
    }
    if (dr == 0) {
      g = MultiPoly(mpq_class(1));
      break;
    }
    r.resize(dr + 1);
    MultiPoly rp = MultiPoly::from_coefficients(r, v);
    rp = *divide_exact(rp, content_in(rp, v));
    A = std::move(B);
    B = rp.coefficients_in(v);
  }
  if (!g.is_constant()) g = *divide_exact(g, content_in(g, v));
  return normalize_lc(g * gc);
}

// ---- parsing ----

namespace {

struct Parser {
  const std::string& s;
  size_t pos = 0;

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw Error(ErrorKind::ParseError, msg + " at position " + std::to_string(pos) + " in '" + s + "'");
  }

  RationalFunction expr() {
    RationalFunction r = term();
    while (true) {
      if (eat('+')) r = r + term();
      else if (eat('-')) r = r - term();
      else return r;
    }
  }
  RationalFunction term() {
    RationalFunction r = unary();
    while (true) {
      if (eat('*')) r = r * unary();
      else if (eat('/')) r = r / unary();
      else return r;
    }
  }
  RationalFunction unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  RationalFunction power() {
    RationalFunction b = primary();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      skip();
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) fail("expected exponent");
      int e = std::stoi(s.substr(start, pos - start));
      RationalFunction r = pow(b, e);
      return neg ? RationalFunction(mpq_class(1)) / r : r;
    }
    return b;
  }
  RationalFunction primary() {
    skip();
    if (pos >= s.size()) fail("unexpected end");
    if (eat('(')) {
      RationalFunction r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      return RationalFunction(mpq_class(mpz_class(s.substr(start, pos - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos;
      while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
      return RationalFunction(MultiPoly::var(s.substr(start, pos - start)));
    }
    fail(std::string("unexpected character '") + c + "'");
  }
};

}  // namespace

RationalFunction parse_ratfun(const std::string& s) {
  Parser p{s};
  RationalFunction r = p.expr();
  p.skip();
  if (p.pos != s.size()) p.fail("trailing input");
  return r;
}

MultiPoly parse_poly(const std::string& s) {
  RationalFunction r = parse_ratfun(s);
  if (!r.den().is_constant()) throw Error(ErrorKind::ParseError, "not a polynomial: '" + s + "'");
  return r.num() * mpq_class(1 / r.den().constant_value());
}

// ---- rational functions ----

RationalFunction::RationalFunction(const MultiPoly& n, const MultiPoly& d) : num_(n), den_(d) { reduce(); }

void RationalFunction::reduce() {
  if (den_.is_zero()) throw Error(ErrorKind::DenominatorVanishesIdentically, "zero denominator");
  if (num_.is_zero()) {
    den_ = MultiPoly(mpq_class(1));
    return;
  }
  if (!den_.is_constant()) {
    MultiPoly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *divide_exact(num_, g);
      den_ = *divide_exact(den_, g);
    }
  }
  mpq_class l = den_.leading().second;
  if (l != 1) {
    num_ = num_ * mpq_class(1 / l);
    den_ = den_ * mpq_class(1 / l);
  }
}

std::string RationalFunction::str() const {
  if (den_.is_constant() && den_.constant_value() == 1) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
RationalFunction operator-(const RationalFunction& a) {
  RationalFunction r = a;
  r.num_ = -r.num_;
  return r;
}
RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}
RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.num_.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational function division by zero");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}
bool operator==(const RationalFunction& a, const RationalFunction& b) {
  return (a.num_ * b.den_ - b.num_ * a.den_).is_zero();
}

RationalFunction pow(const RationalFunction& a, int k) {
  RationalFunction r(mpq_class(1)), b = a;
  while (k > 0) {
    if (k & 1) r = r * b;
    k >>= 1;
    if (k) b = b * b;
  }
  return r;
}

namespace {

struct BoundVar {
  std::string name;
  int e;
  std::vector<MultiPoly> npow, dpow;
};

MultiPoly cleared_rec(const MultiPoly& p, const std::vector<BoundVar>& bv, size_t idx) {
  if (idx == bv.size() || p.is_zero()) return p;
  const BoundVar& b = bv[idx];
  auto c = p.coefficients_in(b.name);
  MultiPoly r;
  for (size_t k = 0; k < c.size(); ++k) {
    if (c[k].is_zero()) continue;
    MultiPoly sub = cleared_rec(c[k], bv, idx + 1);
    r = r + sub * b.npow[k] * b.dpow[b.e - k];
  }
  return r;
}

}  // namespace

std::pair<MultiPoly, MultiPoly> substitute_cleared(const MultiPoly& p,
                                                   const std::map<std::string, RationalFunction>& bindings) {
  std::vector<BoundVar> bv;
  MultiPoly den(mpq_class(1));
  for (const auto& [name, val] : bindings) {
    int e = p.degree_in(name);
    if (e <= 0) continue;
    BoundVar b{name, e, {}, {}};
    b.npow.push_back(MultiPoly(mpq_class(1)));
    b.dpow.push_back(MultiPoly(mpq_class(1)));
    for (int k = 1; k <= e; ++k) {
      b.npow.push_back(b.npow.back() * val.num());
      b.dpow.push_back(b.dpow.back() * val.den());
    }
    den = den * b.dpow[e];
    bv.push_back(std::move(b));
  }
  return {cleared_rec(p, bv, 0), den};
}

RationalFunction ratfun_substitute(const RationalFunction& target,
                                   const std::map<std::string, RationalFunction>& bindings) {
  auto [nn, nd] = substitute_cleared(target.num(), bindings);
  auto [dn, dd] = substitute_cleared(target.den(), bindings);
  if (dn.is_zero()) throw Error(ErrorKind::DenominatorVanishesIdentically, "substituted denominator is zero");
  return RationalFunction(nn * dd, nd * dn);
}

}  // namespace k3
