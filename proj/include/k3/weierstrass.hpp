#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "k3/multipoly.hpp"
#include "k3/upoly.hpp"

namespace k3 {

using Bindings = std::map<std::string, mpq_class>;

// y^2 = 4x^3 - g2 x - g3 over the line with coordinate `var`; g2, g3 are
// polynomials in `var` whose coefficients are rational functions of the named
// parameters (denominators never involve `var`).
struct WeierstrassModel {
  std::string name;
  std::string var = "t";
  RationalFunction g2, g3;
  std::vector<std::string> params;

  // g2 = <poly>; g3 = <poly>; params = [a,b,c,d]
  std::string canonical_text() const;
};

// Specialized model over Q[var].
struct BaseModel {
  UPoly g2, g3;
};

const std::vector<std::string>& family_names();
WeierstrassModel build_family(const std::string& name);  // throws UnknownFamily
BaseModel specialize(const WeierstrassModel& m, const Bindings& params);

struct FunctionalInvariant {
  int i = 1, j = 1;
  mpq_class alpha = 1;
};
// c_ij = (-1)^i i^i j^j / (i+j)^(i+j)
mpq_class c_ij(int i, int j);

enum class TwistMode { one_param_tilde_t, two_param_ab };

// one_param_tilde_t: pullback along v -> c_ij s / (v^i (v+1)^j) with weights
// v^4 (v+1)^(4 alpha), v^6 (v+1)^(6 alpha); the result lives on the v-line with
// new parameter `tt`. two_param_ab: quadratic twist by (t-a)(t-b), certified
// against the pullback along t = a + (a-b)/(4v(v+1)). `ab` optionally binds a, b
// (RamificationCollision when equal).
WeierstrassModel mixed_twist(const WeierstrassModel& model, const FunctionalInvariant& inv, TwistMode mode,
                             const std::optional<std::pair<mpq_class, mpq_class>>& ab = std::nullopt);

RationalFunction discriminant(const WeierstrassModel& m);
UPoly discriminant(const BaseModel& m);

constexpr int kInfiniteOrder = INT_MAX / 8;

struct Place {
  enum class Kind { rational, factor, infinity };
  Kind kind = Kind::rational;
  mpq_class value;  // rational place
  UPoly factor;     // square-free factor without rational roots
  int degree() const { return kind == Kind::factor ? factor.degree() : 1; }
  std::string str(const std::string& var = "t") const;
  static Place at(const mpq_class& v) { return Place{Kind::rational, v, UPoly()}; }
  static Place infinity() { return Place{Kind::infinity, 0, UPoly()}; }
  static Place along(const UPoly& f) { return Place{Kind::factor, 0, f}; }
};

struct KodairaFiber {
  Place place;
  std::string type;  // I0, I3, I2*, II, III, IV, IV*, III*, II*
  int ord_g2 = 0, ord_g3 = 0, ord_delta = 0;
};

// Type from a minimal valuation triple; throws NonMinimalUnresolved if inconsistent.
std::string kodaira_symbol(int ord_g2, int ord_g3, int ord_delta);

enum class SurfaceClass { rational_elliptic, K3, other };
const char* surface_class_name(SurfaceClass c);

struct FiberConfiguration {
  std::vector<KodairaFiber> fibers;  // singular fibers only; factor places count degree() times
  int deg_delta = 0;                 // sum of ord Delta over all places
  int weight = 0;                    // k with g2, g3 sections of O(4k), O(6k)
  SurfaceClass surface = SurfaceClass::other;
  std::map<std::string, int> counts() const;
  std::string summary() const;  // e.g. "2I0* + 6I2"
};

KodairaFiber kodaira_type(const WeierstrassModel& m, const Place& place, const Bindings& params);
KodairaFiber kodaira_type(const BaseModel& m, const Place& place);
FiberConfiguration fiber_configuration(const WeierstrassModel& m, const Bindings& params);
FiberConfiguration fiber_configuration(const BaseModel& m);

// t -> (p t + q)/(r t + s) with the weight of the model; ps - qr != 0.
BaseModel mobius_transform(const BaseModel& m, const mpq_class& p, const mpq_class& q, const mpq_class& r,
                           const mpq_class& s);
// Quadratic twist g2 -> f^2 g2, g3 -> f^3 g3.
BaseModel quadratic_twist(const BaseModel& m, const UPoly& f);

// Random generic rational parameters for a family (numerators and denominators
// in [1, 97]) avoiding the degeneracies of the family.
Bindings generic_parameters(const WeierstrassModel& m, std::mt19937_64& rng);

// Rank of the 2-torsion of the Mordell-Weil group: number of roots of 4x^3 - g2 x - g3
// in Q(t), mapped 0 -> 0, 1 -> 1, 3 -> 2.
int two_torsion_rank(const BaseModel& m);
int two_torsion_rank(const WeierstrassModel& m, const Bindings& params);

struct KummerReport {
  bool statement_variant = false;  // d(ab - b) = (a - c)(b - c)
  bool special_d = false;          // d = (a - c)(b - c)/(ab - c)
};
KummerReport kummer_criterion(const mpq_class& a, const mpq_class& b, const mpq_class& c, const mpq_class& d);

struct MatsumotoParameters {
  mpq_class x1, x2, x3, x4, mu;
};
MatsumotoParameters matsumoto_parameters(const mpq_class& a, const mpq_class& b, const mpq_class& c,
                                         const mpq_class& d);

// f_n = x1...xn (x1 + ... + xn + 1) + (-1)^(n+1) t / (n+1)^(n+1)
MultiPoly mirror_pencil(int n);
bool mirror_fibration_check(int n);

// Birational verification: src(bindings) = unit * dst modulo the side relations.
struct BirationalResult {
  bool holds = false;
  bool exact = true;          // false when random specializations were used
  int specializations = 0;    // number of random specializations checked
  size_t term_cap = 0;        // cap that triggered the fallback (0 if none)
  std::string unit;           // nonzero rational-function factor, when exact
  std::string detail;
};

struct SideRelation {
  std::string var;  // e.g. "I" for I^2 + 1
  MultiPoly poly;   // monic in var
};

BirationalResult verify_birational(const RationalFunction& src, const RationalFunction& dst,
                                   const std::map<std::string, RationalFunction>& bindings,
                                   const std::string& dst_var, const std::vector<SideRelation>& relations = {},
                                   const std::vector<std::string>& params = {}, std::uint64_t seed = 0);

struct BirationalIdentity {
  std::string name;     // e.g. "legendre_to_rational.printed"
  std::string src, dst;  // defining equations (expression = 0)
  std::map<std::string, std::string> bindings;
  std::string dst_var;
  std::vector<std::string> params;
  bool uses_imaginary_unit = false;  // adds the relation I^2 + 1 = 0
  bool printed = true;               // false for the corrected forms
};

// The birational maps between the families, in the printed form and, where the
// printed form does not hold over Q, a corrected form.
const std::vector<BirationalIdentity>& birational_catalog();
BirationalResult verify_identity(const BirationalIdentity& id, std::uint64_t seed = 0);

}  // namespace k3
