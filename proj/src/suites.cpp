#include "k3/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>

#include "k3/errors.hpp"
#include "k3/rational.hpp"

namespace k3 {

void RunConfig::validate() const {
  if (precision < 30) throw Error(ErrorKind::InvalidInput, "--precision must be at least 30");
  if (order < 8) throw Error(ErrorKind::InvalidInput, "--order must be at least 8");
}

json RunConfig::to_json() const {
  return json{{"precision", precision}, {"order", order}, {"output", json_output ? "json" : "text"}, {"seed", seed}};
}

bool SuiteReport::ok() const {
  for (const auto& c : checks)
    if (!c.ok) return false;
  return !checks.empty();
}

bool SuiteReport::numerical_failure() const {
  for (const auto& c : checks)
    if (c.numerical_failure) return true;
  return false;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"birational", "clausen",       "fibers",     "gamma-series", "gkz",
                                              "hadamard",   "lattices",      "mellin-barnes", "ode-oracle",   "table1"};
  return names;
}

const std::vector<std::pair<std::string, std::string>>& expected_fibers() {
  static const std::vector<std::pair<std::string, std::string>> e{
      {"S_cd", "6I2"},
      {"twisted_4param", "2I0* + 6I2"},
      {"legendre_d0", "3I0* + 3I2"},
      {"legendre_cd0", "I2* + 2I0* + 2I2"},
      {"legendre_b1cd0", "2I2* + I0* + 2I2"},
      {"narumiya_shiga", "2I4* + 4I1"},
  };
  return e;
}

namespace {

std::string pad(int n) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d", n);
  return buf;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

using Body = std::function<void(Check&)>;

void run(std::vector<Check>& out, const std::string& name, const Body& body) {
  Check c;
  c.name = name;
  try {
    body(c);
  } catch (const Error& e) {
    c.ok = false;
    c.numerical_failure = e.is_numerical();
    c.data["error"] = e.what();
  }
  out.push_back(std::move(c));
}

Real tolerance(long digits, mpfr_prec_t bits) { return pow(Real(10L, bits), Real(-digits, bits)); }

// ---- table1 ---------------------------------------------------------------------

void suite_table1(const RunConfig& cfg, std::vector<Check>& out) {
  long digits = cfg.precision;
  mpfr_prec_t bits = digits_to_bits(digits + 20);
  long tol_digits = digits / 2;
  for (int n = 2; n <= 5; ++n) {
    std::optional<MonodromySuite> suite;
    run(out, "matrices.n=" + pad(n), [&](Check& c) {
      suite = monodromy_suite(n, digits);
      const MonodromySuite& s = *suite;
      const ReferenceMatrices& e = reference_matrices()[n - 2];
      Complex kappa = reference_kappa(n, bits);
      Real worst(0L, bits);
      for (auto [mine, printed] : {std::pair{&s.m0, &e.m0}, {&s.m1C, &e.m1C}, {&s.mInf, &e.mInf}}) {
        CMatrix ref = evaluate(*printed, kappa, bits);
        Real d = max_abs(*mine - ref);
        if (d > worst) worst = d;
      }
      c.ok = worst < tolerance(tol_digits, bits);
      c.data = {{"max_error", decimal(worst, 6)}, {"tolerance", "1e-" + std::to_string(tol_digits)}};
    });
    if (!suite) continue;
    const MonodromySuite& s = *suite;
    run(out, "exponents.n=" + pad(n), [&](Check& c) {
      Real tol40 = tolerance(std::min<long>(40, digits - 20), bits);
      // eigenvalues of m_infinity
      std::vector<Complex> roots = polynomial_roots(charpoly(s.mInf));
      Real worst(0L, bits);
      Real two_pi = const_pi(bits) * 2L;
      for (int k = 1; k <= n; ++k) {
        Complex target = expi(-(two_pi * k) / static_cast<long>(n + 1));
        Real best = abs(roots[0] - target);
        for (const auto& r : roots) {
          Real d = abs(r - target);
          if (d < best) best = d;
        }
        if (best > worst) worst = best;
      }
      // unipotency of m0
      CMatrix N = s.m0 - CMatrix::identity(n, s.m0.bits());
      CMatrix Nn = pow(N, n), Nn1 = pow(N, n - 1);
      bool nil = true, nil_prev = true;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          nil = nil && Nn(i, j).is_zero();
          nil_prev = nil_prev && Nn1(i, j).is_zero();
        }
      // rank one of m_{1/C} - I
      std::vector<Real> sv = singular_values(s.m1C - CMatrix::identity(n, s.m1C.bits()));
      Real gap = sv[1].is_zero() ? Real(std::string("1e1000"), bits) : sv[0] / sv[1];
      bool gap_ok = gap > Real(std::string("1e10"), bits);
      c.ok = worst < tol40 && nil && !nil_prev && gap_ok;
      c.data = {{"eigenvalue_error", decimal(worst, 6)},
                {"nilpotent_order_n", nil},
                {"nilpotent_order_n_minus_1", nil_prev},
                {"singular_values", json::array()},
                {"gap", decimal(gap, 6)}};
      for (const auto& v : sv) c.data["singular_values"].push_back(decimal(v, 6));
    });
  }
}

// ---- clausen --------------------------------------------------------------------

void suite_clausen(const RunConfig& cfg, std::vector<Check>& out) {
  mpfr_prec_t bits = digits_to_bits(cfg.precision);
  // (re, im) as rationals, all with |t| <= 1/2
  const std::vector<std::pair<mpq_class, mpq_class>> pts{
      {mpq_class(1, 2), 0},         {mpq_class(-1, 2), 0},        {mpq_class(3, 10), 0},
      {mpq_class(-1, 4), 0},        {0, mpq_class(1, 2)},         {0, mpq_class(-1, 3)},
      {mpq_class(1, 4), mpq_class(1, 4)}, {mpq_class(1, 5), mpq_class(-2, 5)}, {mpq_class(-3, 10), mpq_class(2, 5)},
      {mpq_class(1, 10), 0}};
  for (size_t i = 0; i < pts.size(); ++i) {
    const auto& [re, im] = pts[i];
    run(out, "t" + pad(static_cast<int>(i)), [&](Check& c) {
      Complex t(Real(re, bits), Real(im, bits));
      Real d = abs(clausen_defect(t, bits));
      c.ok = d < tolerance(25, bits);
      c.data = {{"t", {rat_str(re), rat_str(im)}}, {"defect", decimal(d, 6)}};
    });
  }
}

// ---- hadamard -------------------------------------------------------------------

void suite_hadamard(const RunConfig& cfg, std::vector<Check>& out) {
  for (int n = 2; n <= 5; ++n) {
    run(out, "iterative.n=" + pad(n), [&](Check& c) {
      HadamardReport r = hadamard_relation(n, cfg.order);
      c.ok = r.holds;
      c.data = {{"order", cfg.order}, {"lhs", r.lhs.str(4)}, {"rhs", r.rhs.str(4)}};
    });
    run(out, "mirror_fibration.n=" + pad(n), [&](Check& c) {
      c.ok = mirror_fibration_check(n);
      c.data = {{"n", n}};
    });
  }
}

// ---- gamma-series ---------------------------------------------------------------

// Gamma-series coefficients read directly off the GKZ data: terms
// prod_i u_i^(gamma_i + m b_i) / Gamma(gamma_i + m b_i + 1) with u_1 = (-1)^n t and the
// other u_i = 1, stepping m by `dir` and normalized to a leading coefficient 1.
PowerSeries lattice_gamma_series(const GkzSystem& sys, const std::vector<mpq_class>& gamma, int dir, int order) {
  int n = sys.n;
  std::vector<mpq_class> c{1};
  mpq_class sign_u1 = (n % 2 == 0) ? 1 : -1;
  for (int m = 0; static_cast<int>(c.size()) < order; m += dir) {
    mpq_class ratio = dir > 0 ? sign_u1 : 1 / sign_u1;
    for (size_t i = 0; i < gamma.size(); ++i) {
      mpq_class x = gamma[i] + m * mpq_class(sys.B[i]);  // Gamma(x + 1) in the current term
      int step = dir * static_cast<int>(sys.B[i].get_si());
      if (step > 0)
        ratio /= x + 1;  // Gamma(x+1) / Gamma(x+2)
      else
        ratio *= x;  // Gamma(x+1) / Gamma(x)
    }
    c.push_back(c.back() * ratio);
  }
  return PowerSeries(c);
}

void suite_gamma_series(const RunConfig& cfg, std::vector<Check>& out) {
  const int order = std::min(cfg.order, 30);
  std::vector<std::vector<mpq_class>> rhos;
  for (int n = 2; n <= 5; ++n) rhos.push_back(HypergeometricParams::mirror(n).rho);
  rhos.push_back({mpq_class(1, 2), mpq_class(1, 2), mpq_class(1, 2)});
  rhos.push_back({mpq_class(1, 4), mpq_class(1, 2), mpq_class(3, 4)});
  rhos.push_back({mpq_class(1, 6), mpq_class(1, 3), mpq_class(3, 5), mpq_class(7, 8)});
  for (const auto& rho : rhos) {
    std::string label;
    for (const auto& r : rho) label += (label.empty() ? "" : ",") + rat_str(r);
    int n = static_cast<int>(rho.size());
    GkzSystem sys = build_system(rho);
    run(out, "gamma0.rho=" + label, [&](Check& c) {
      GammaSeries g = gamma_series(rho, GammaChoice::gamma0(), order);
      PowerSeries lattice = lattice_gamma_series(sys, sys.gamma0, +1, order);
      PowerSeries hyper = hypergeometric_coefficients(rho, std::vector<mpq_class>(n - 1, 1), order);
      c.ok = g.series == lattice && g.series == hyper;
      c.data = {{"order", order}, {"series", g.series.str(4)}, {"prefactor", g.prefactor}};
    });
    bool distinct = std::set<mpq_class>(rho.begin(), rho.end()).size() == rho.size();
    if (!distinct) continue;
    for (int r = 1; r <= n; ++r) {
      run(out, "shifted.rho=" + label + ".r=" + std::to_string(r), [&](Check& c) {
        GammaSeries g = gamma_series(rho, GammaChoice::shifted(r), order);
        std::vector<mpq_class> gamma = sys.gamma0;
        for (size_t i = 0; i < gamma.size(); ++i) gamma[i] -= rho[r - 1] * mpq_class(sys.B[i]);
        PowerSeries lattice = lattice_gamma_series(sys, gamma, -1, order);
        c.ok = g.series == lattice && g.exponent == -rho[r - 1];
        c.data = {{"order", order}, {"exponent", rat_str(g.exponent)}, {"series", g.series.str(3, "1/t")}};
      });
    }
  }
}

// ---- gkz --------------------------------------------------------------------------

void suite_gkz(const RunConfig&, std::vector<Check>& out) {
  for (int n = 2; n <= 8; ++n) {
    run(out, "system.n=" + pad(n), [&](Check& c) {
      GkzSystem sys = build_system(HypergeometricParams::mirror(n).rho);
      bool kernel = true;
      for (int i = 0; i < sys.A.rows(); ++i) {
        mpz_class s = 0;
        for (int j = 0; j < sys.A.cols(); ++j) s += sys.A(i, j) * sys.B[j];
        kernel = kernel && s == 0;
      }
      bool hyperplane = true;
      for (const auto& h : h_values(sys.A, n, AForm::unprimed)) hyperplane = hyperplane && h == 1;
      std::vector<mpz_class> bp = relation_lattice(build_A(n, AForm::primed));
      bool printed_B = true;
      for (int i = 0; i < 2 * n; ++i) printed_B = printed_B && sys.B[i] == (i < n ? 1 : -1);
      bool printed_Bp = bp[0] == -(n + 1);
      for (int i = 1; i < n + 2; ++i) printed_Bp = printed_Bp && bp[i] == 1;
      bool rows = row_equivalent_to_raw(n, AForm::primed) && row_equivalent_to_raw(n, AForm::unprimed);
      c.ok = kernel && hyperplane && printed_B && printed_Bp && rows;
      c.data = {{"A_B_zero", kernel},       {"h_equals_one", hyperplane}, {"B", to_json(sys.B)},
                {"B_primed", to_json(bp)}, {"row_equivalent", rows}};
    });
    run(out, "secondary_fan.n=" + pad(n), [&](Check& c) {
      SecondaryFan f = secondary_fan(n);
      std::vector<mpq_class> rho = HypergeometricParams::mirror(n).rho;
      bool zon = f.zonotope_lo == ratio(-n, 2) && f.zonotope_hi == ratio(n, 2);
      bool counts = static_cast<int>(f.plus.size()) == n && static_cast<int>(f.minus.size()) == n;
      std::set<int> cover;
      bool sizes = true, mu = true;
      for (const auto* l : {&f.plus, &f.minus})
        for (const auto& t : *l) {
          sizes = sizes && static_cast<int>(t.index.size()) == 2 * n - 1;
          cover.insert(t.index.begin(), t.index.end());
        }
      for (int k = 1; k <= n; ++k) mu = mu && f.minus[k - 1].mu == rho[k - 1];
      c.ok = zon && counts && sizes && mu && f.unimodular() && static_cast<int>(cover.size()) == 2 * n;
      c.data = {{"zonotope", {rat_str(f.zonotope_lo), rat_str(f.zonotope_hi)}},
                {"unimodular", f.unimodular()},
                {"triangulations", {f.plus.size(), f.minus.size()}}};
    });
  }
  for (int n = 2; n <= 10; ++n) {
    run(out, "nonresonance.n=" + pad(n), [&](Check& c) {
      std::vector<mpq_class> rho = HypergeometricParams::mirror(n).rho;
      NonresonanceReport r = nonresonance_report(rho);
      // any integer entry must be rejected
      bool rejects = true;
      for (int i = 0; i < n; ++i)
        for (long v : {0L, 1L, 2L}) {
          std::vector<mpq_class> bad = rho;
          bad[i] = v;
          rejects = rejects && !nonresonance_check(bad);
        }
      c.ok = r.nonresonant && rejects;
      c.data = {{"nonresonant", r.nonresonant}, {"sum", rat_str(r.sum)}, {"integer_entries_rejected", rejects}};
    });
  }
}

// ---- lattices ---------------------------------------------------------------------

void suite_lattices(const RunConfig&, std::vector<Check>& out) {
  for (int k = 0; k <= 3; ++k) {
    run(out, "presentations.k=" + std::to_string(k), [&](Check& c) {
      TripleComparison cmp = triple_equal(presentation_list(k));
      bool printed = true;
      json items = json::array();
      for (size_t i = 0; i < cmp.specs.size(); ++i) {
        const NikulinTriple& t = cmp.triples[i];
        printed = printed && t.rank == 16 + k && t.length == 6 - k && t.parity == 1 && t.two_elementary() &&
                  t.signature == std::pair<int, int>{1, 15 + k};
        items.push_back(to_json(cmp.specs[i], t));
      }
      c.ok = cmp.equal && printed;
      c.data = {{"expected", "(" + std::to_string(16 + k) + ", " + std::to_string(6 - k) + ", 1)"}, {"lattices", items}};
    });
  }
  run(out, "presentations.kummer", [&](Check& c) {
    TripleComparison cmp = triple_equal(polarization_presentations());
    bool same_group = true;
    json items = json::array();
    for (size_t i = 0; i < cmp.specs.size(); ++i) {
      same_group = same_group && cmp.triples[i].disc_group == cmp.triples[0].disc_group;
      items.push_back(to_json(cmp.specs[i], cmp.triples[i]));
    }
    c.ok = cmp.equal && same_group && cmp.triples[0].rank == 17;
    c.data = {{"lattices", items}};
  });
  run(out, "chain", [&](Check& c) {
    ChainReport r = polarization_chain_check();
    c.ok = r.ok;
    json steps = json::array();
    for (const auto& s : r.steps) steps.push_back(json{{"k", s.k}, {"spec", s.spec}, {"triple", s.triple.str()}, {"ok", s.ok}});
    c.data = {{"steps", steps}};
  });
}

// ---- fibers -------------------------------------------------------------------------

void suite_fibers(const RunConfig& cfg, std::vector<Check>& out) {
  const int draws = 20;
  for (const auto& [family, expected] : expected_fibers()) {
    run(out, "family." + family, [&](Check& c) {
      WeierstrassModel m = build_family(family);
      std::mt19937_64 rng(cfg.seed);
      int expected_deg = family == "S_cd" ? 12 : 24;
      std::map<std::string, int> seen;
      bool all = true;
      json first;
      for (int d = 0; d < draws; ++d) {
        Bindings b = generic_parameters(m, rng);
        FiberConfiguration f = fiber_configuration(m, b);
        seen[f.summary()]++;
        all = all && f.summary() == expected && f.deg_delta == expected_deg;
        if (d == 0) {
          first = to_json(f);
          json params = json::object();
          for (const auto& [k, v] : b) params[k] = rat_str(v);
          first["params"] = params;
        }
      }
      c.ok = all;
      c.data = {{"expected", expected}, {"deg_delta", expected_deg}, {"draws", draws}, {"seed", cfg.seed},
                {"observed", seen}, {"first_draw", first}};
    });
  }
}

// ---- birational -----------------------------------------------------------------------

void suite_birational(const RunConfig& cfg, std::vector<Check>& out) {
  for (const auto& id : birational_catalog()) {
    run(out, id.name, [&](Check& c) {
      BirationalResult r = verify_identity(id, cfg.seed);
      c.ok = r.holds;
      c.data = {{"form", id.printed ? "printed" : "corrected"},
                {"exact", r.exact},
                {"specializations", r.specializations},
                {"term_cap", r.term_cap},
                {"detail", r.detail}};
    });
  }
}

// ---- mellin-barnes ----------------------------------------------------------------------

void suite_mellin_barnes(const RunConfig& cfg, std::vector<Check>& out) {
  std::vector<HypergeometricParams> ps(2);
  ps[0].rho = {mpq_class(1, 3), mpq_class(2, 3)};
  ps[1].rho = {mpq_class(1, 4), mpq_class(1, 2), mpq_class(3, 4)};
  mpfr_prec_t bits = digits_to_bits(cfg.precision);
  for (const auto& p : ps) {
    for (int sg : {1, -1}) {
      std::string name = "n=" + pad(p.n()) + ".t=" + (sg > 0 ? "+" : "-") + "1/10";
      run(out, name, [&](Check& c) {
        Complex t(mpq_class(sg, 10), bits);
        MellinBarnesOptions opt;
        opt.digits = 30;
        opt.parallel = true;
        mpq_class sigma = -p.rho[0] / 2;
        MellinBarnesResult r = mellin_barnes_eval(p, t, sigma, opt);
        Complex series = hypergeometric_eval(p.rho, t, bits);
        Real d = abs(r.value - series);
        c.ok = d < tolerance(10, bits);
        c.data = {{"sigma", rat_str(sigma)}, {"H", sci(r.H)},           {"difference", decimal(d, 6)},
                  {"value", to_json(r.value, 25)}, {"evaluations", r.evaluations}};
      });
    }
  }
}

// ---- ode-oracle ---------------------------------------------------------------------------

void suite_ode(const RunConfig&, std::vector<Check>& out) {
  const long double tol = 1e-8L;
  for (int n = 2; n <= 4; ++n) {
    HypergeometricParams p = HypergeometricParams::mirror(n);
    std::vector<OdeResult> res;
    std::optional<MonodromySuite> suite;
    run(out, "n=" + pad(n) + ".transport", [&](Check& c) {
      OdeOptions opt;
      opt.parallel = true;
      res = ode_transport_all(
          p, {Loop::standard(LoopKind::around_zero), Loop::standard(LoopKind::around_1overC),
              Loop::standard(LoopKind::around_infinity)},
          opt);
      suite = monodromy_suite(n, 30);
      long steps = 0;
      for (const auto& r : res) steps += r.steps;
      c.ok = true;
      c.data = {{"steps", steps}, {"matching_condition", sci(static_cast<double>(res[0].matching_condition))}};
    });
    if (!suite) continue;
    const CMatrix* analytic[3] = {&suite->m0, &suite->m1C, &suite->mInf};
    for (int l = 0; l < 3; ++l) {
      Loop loop = Loop::standard(static_cast<LoopKind>(l));
      run(out, "n=" + pad(n) + ".charpoly." + loop.name(), [&](Check& c) {
        std::vector<cld> ode = charpoly_ld(res[l].matrix);
        std::vector<Complex> ref = charpoly(*analytic[l]);
        long double worst = 0;
        for (int k = 0; k <= n; ++k) {
          cld r(mpfr_get_ld(ref[k].re.get(), MPFR_RNDN), mpfr_get_ld(ref[k].im.get(), MPFR_RNDN));
          worst = std::max(worst, std::abs(ode[k] - r));
        }
        c.ok = worst < tol;
        c.data = {{"max_error", sci(static_cast<double>(worst))}, {"matrix", to_json(res[l].matrix)}};
      });
    }
    run(out, "n=" + pad(n) + ".composite", [&](Check& c) {
      auto prod = matmul_ld(res[1].matrix, res[0].matrix);
      long double worst = 0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) worst = std::max(worst, std::abs(prod[i][j] - res[2].matrix[i][j]));
      c.ok = worst < tol;
      c.data = {{"relation", "m_inf = m_1/C * m_0"}, {"max_error", sci(static_cast<double>(worst))}};
    });
  }
}

}  // namespace

SuiteReport run_suite(const std::string& name, const RunConfig& cfg) {
  static const std::map<std::string, void (*)(const RunConfig&, std::vector<Check>&)> table{
      {"birational", suite_birational}, {"clausen", suite_clausen},         {"fibers", suite_fibers},
      {"gamma-series", suite_gamma_series}, {"gkz", suite_gkz},           {"hadamard", suite_hadamard},
      {"lattices", suite_lattices},     {"mellin-barnes", suite_mellin_barnes}, {"ode-oracle", suite_ode},
      {"table1", suite_table1}};
  auto it = table.find(name);
  if (it == table.end()) throw Error(ErrorKind::InvalidInput, "unknown suite '" + name + "'");
  cfg.validate();
  SuiteReport r;
  r.suite = name;
  auto t0 = std::chrono::steady_clock::now();
  it->second(cfg, r.checks);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::stable_sort(r.checks.begin(), r.checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
  return r;
}

}  // namespace k3
