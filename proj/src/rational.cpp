#include "k3/rational.hpp"

#include <cctype>

#include "k3/errors.hpp"

namespace k3 {

namespace {
std::string strip(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool is_int_literal(const std::string& s) {
  size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}
}  // namespace

mpq_class parse_rational(const std::string& raw) {
  std::string s = strip(raw);
  size_t slash = s.find('/');
  std::string num = slash == std::string::npos ? s : strip(s.substr(0, slash));
  std::string den = slash == std::string::npos ? "1" : strip(s.substr(slash + 1));
  if (!is_int_literal(num) || !is_int_literal(den) || den[0] == '-' || den[0] == '+')
    throw Error(ErrorKind::ParseError, "not a rational: '" + raw + "'");
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + raw + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

std::vector<mpq_class> parse_rational_list(const std::string& s) {
  std::vector<mpq_class> out;
  size_t start = 0;
  while (true) {
    size_t comma = s.find(',', start);
    out.push_back(parse_rational(s.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string rat_str(const mpq_class& q) { return q.get_str(); }

mpq_class ratio(long a, long b) {
  mpq_class q(a, b);
  q.canonicalize();
  return q;
}

}  // namespace k3
