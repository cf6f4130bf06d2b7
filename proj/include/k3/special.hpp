#pragma once

#include <gmpxx.h>

#include "k3/real.hpp"

namespace k3 {

// B_k with B_1 = -1/2. Cached behind a mutex.
mpq_class bernoulli(int k);

// zeta(k) for integer k >= 2, Borwein's alternating-series acceleration.
Real zeta_int(int k, mpfr_prec_t bits);

// Euler-Mascheroni constant, Brent-McMillan series.
Real euler_gamma(mpfr_prec_t bits);

// Hurwitz zeta(s, a) for integer s >= 2 and real a > 0 (Euler-Maclaurin).
Real hurwitz_zeta(int s, const Real& a);

// digamma(a) for real a > 0.
Real digamma(const Real& a);

// log Gamma(z) for Re z > 0 via shifted Stirling series. The branch is not the
// principal one; only exp() of sums of these values is meaningful.
Complex lgamma_shifted(const Complex& z);

// Gamma(z) for any z off the non-positive integers (reflection for Re z < 1/2).
Complex gamma(const Complex& z);

}  // namespace k3
