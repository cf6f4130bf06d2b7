#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace k3 {

// Truncated power series in t over Q; coefficients c[0..order-1].
class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {}
  static PowerSeries ones(int order);
  // sum_k f(k) t^k for a rational-valued function
  template <class F>
  static PowerSeries generate(int order, F f) {
    std::vector<mpq_class> c(order);
    for (int k = 0; k < order; ++k) c[k] = f(k);
    return PowerSeries(std::move(c));
  }

  int order() const { return static_cast<int>(c_.size()); }
  const mpq_class& operator[](int k) const { return c_[k]; }
  mpq_class& operator[](int k) { return c_[k]; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  PowerSeries truncated(int order) const;
  std::string str(int terms, const std::string& var = "t") const;

  friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
  friend PowerSeries operator*(const PowerSeries& a, const mpq_class& s);
  friend bool operator==(const PowerSeries& a, const PowerSeries& b) { return a.c_ == b.c_; }

 private:
  std::vector<mpq_class> c_;
};

// Coefficient-wise product, truncated to the smaller order.
PowerSeries hadamard_product(const PowerSeries& f, const PowerSeries& g);

// Coefficients of pFq(a; b | t) = sum_k prod (a_i)_k / prod (b_j)_k * t^k / k!.
PowerSeries hypergeometric_coefficients(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b,
                                        int order);

// Coefficients of nF(n-1)(rho; 1,...,1 | t) = prod (rho_i)_k / (k!)^n.
PowerSeries mirror_coefficients(const std::vector<mpq_class>& rho, int order);

}  // namespace k3
