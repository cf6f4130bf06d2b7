#include "k3/series.hpp"

#include <algorithm>
#include <sstream>

#include "k3/errors.hpp"

namespace k3 {

PowerSeries PowerSeries::ones(int order) { return PowerSeries(std::vector<mpq_class>(order, mpq_class(1))); }

PowerSeries PowerSeries::truncated(int order) const {
  std::vector<mpq_class> c(c_.begin(), c_.begin() + std::min(order, this->order()));
  return PowerSeries(std::move(c));
}

std::string PowerSeries::str(int terms, const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k < std::min(terms, order()); ++k) {
    if (c_[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c_[k].get_str();
    if (k == 1) os << "*" << var;
    if (k > 1) os << "*" << var << "^" << k;
  }
  if (first) os << "0";
  os << " + O(" << var << "^" << order() << ")";
  return os.str();
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  int n = std::min(a.order(), b.order());
  std::vector<mpq_class> c(n);
  for (int k = 0; k < n; ++k) c[k] = a.c_[k] + b.c_[k];
  return PowerSeries(std::move(c));
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
  int n = std::min(a.order(), b.order());
  std::vector<mpq_class> c(n);
  for (int k = 0; k < n; ++k) c[k] = a.c_[k] - b.c_[k];
  return PowerSeries(std::move(c));
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  int n = std::min(a.order(), b.order());
  std::vector<mpq_class> c(n);
  for (int i = 0; i < n; ++i) {
    if (a.c_[i] == 0) continue;
    for (int j = 0; i + j < n; ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return PowerSeries(std::move(c));
}

PowerSeries operator*(const PowerSeries& a, const mpq_class& s) {
  PowerSeries r = a;
  for (auto& x : r.c_) x *= s;
  return r;
}

PowerSeries hadamard_product(const PowerSeries& f, const PowerSeries& g) {
  int n = std::min(f.order(), g.order());
  std::vector<mpq_class> c(n);
  for (int k = 0; k < n; ++k) c[k] = f[k] * g[k];
  return PowerSeries(std::move(c));
}

PowerSeries hypergeometric_coefficients(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b,
                                        int order) {
  std::vector<mpq_class> c(order);
  if (order == 0) return PowerSeries(c);
  c[0] = 1;
  for (int k = 0; k + 1 < order; ++k) {
    mpq_class r = 1;
    for (const auto& x : a) r *= x + k;
    for (const auto& y : b) {
      if (y + k == 0) throw Error(ErrorKind::DivisionByZero, "lower parameter is a non-positive integer");
      r /= y + k;
    }
    r /= k + 1;
    c[k + 1] = c[k] * r;
  }
  return PowerSeries(std::move(c));
}

PowerSeries mirror_coefficients(const std::vector<mpq_class>& rho, int order) {
  std::vector<mpq_class> ones(rho.size() - 1, mpq_class(1));
  return hypergeometric_coefficients(rho, ones, order);
}

}  // namespace k3
