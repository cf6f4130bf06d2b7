#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "json.hpp"
#include "k3/cmatrix.hpp"
#include "k3/gkz.hpp"
#include "k3/lattice.hpp"
#include "k3/monodromy.hpp"
#include "k3/weierstrass.hpp"

namespace k3 {

using json = nlohmann::json;

// Decimal string with `digits` significant digits; magnitudes below 10^-digits print as "0".
std::string decimal(const Real& x, long digits);
json to_json(const Complex& z, long digits);
// Row-major {re, im} entries plus the precision used.
json to_json(const CMatrix& m, long digits);
json to_json(const std::vector<std::vector<cld>>& m);
json to_json(const IntMatrix& m);
json to_json(const std::vector<mpz_class>& v);
json to_json(const std::vector<mpq_class>& v);

json to_json(const MonodromySuite& s);
json to_json(const std::string& spec, const NikulinTriple& t);
json to_json(const FiberConfiguration& c);
json to_json(const GkzSystem& s);
json to_json(const SecondaryFan& f);

}  // namespace k3
