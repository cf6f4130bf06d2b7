#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "k3/errors.hpp"
#include "k3/rational.hpp"
#include "k3/suites.hpp"

using namespace k3;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kInvalidInput = 2, kNumerical = 3 };

struct Output {
  std::string command;
  json results = json::array();
  bool ok = true;
};

int emit(const Output& o, const RunConfig& cfg, const std::ostringstream& text) {
  if (cfg.json_output) {
    json doc{{"command", o.command}, {"config", cfg.to_json()}, {"results", o.results}, {"status", o.ok ? "ok" : "fail"}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << text.str();
    std::cout << "status: " << (o.ok ? "ok" : "fail") << "\n";
  }
  return o.ok ? kOk : kCheckFailed;
}

void print_matrix(std::ostream& os, const std::string& label, const json& m) {
  os << label << " =\n";
  for (const auto& row : m["entries"]) {
    os << "  [";
    bool first = true;
    for (const auto& z : row) {
      os << (first ? "" : ", ") << z["re"].get<std::string>();
      if (z["im"] != "0") os << (z["im"].get<std::string>()[0] == '-' ? " - " : " + ")
                             << (z["im"].get<std::string>()[0] == '-' ? z["im"].get<std::string>().substr(1)
                                                                      : z["im"].get<std::string>())
                             << "i";
      first = false;
    }
    os << "]\n";
  }
}

int cmd_monodromy(const RunConfig& cfg, std::optional<int> n, const std::string& rho, const std::string& C) {
  HypergeometricParams p;
  if (n) {
    if (!rho.empty()) throw Error(ErrorKind::InvalidInput, "give either --n or --rho, not both");
    if (*n < 2) throw Error(ErrorKind::InvalidInput, "--n must be at least 2");
    p = HypergeometricParams::mirror(*n);
  } else {
    if (rho.empty()) throw Error(ErrorKind::InvalidInput, "monodromy needs --n or --rho");
    p.rho = parse_rational_list(rho);
    p.C = C.empty() ? mpq_class(1) : parse_rational(C);
  }
  validate(p);
  MonodromySuite s = monodromy_suite(p, cfg.precision);
  Output o{"monodromy"};
  json r = to_json(s);
  r["name"] = "suite";
  r["rho"] = to_json(p.rho);
  r["C"] = rat_str(p.C);
  o.results.push_back(r);
  std::ostringstream text;
  long shown = std::min<long>(cfg.precision, 20);
  text << "rho = " << r["rho"].dump() << ", C = " << rat_str(p.C) << ", precision " << cfg.precision << "\n";
  print_matrix(text, "m0", to_json(s.m0, shown));
  print_matrix(text, "m1C", to_json(s.m1C, shown));
  print_matrix(text, "mInf", to_json(s.mInf, shown));
  return emit(o, cfg, text);
}

int cmd_fibers(const RunConfig& cfg, const std::string& family, const std::map<std::string, std::string>& args) {
  WeierstrassModel m = build_family(family);
  Bindings b;
  for (const auto& name : m.params) {
    auto it = args.find(name);
    if (it == args.end() || it->second.empty())
      throw Error(ErrorKind::InvalidInput, "family " + family + " needs --" + name);
    b[name] = parse_rational(it->second);
  }
  FiberConfiguration f = fiber_configuration(m, b);
  Output o{"fibers"};
  json r = to_json(f);
  r["name"] = family;
  json params = json::object();
  for (const auto& [k, v] : b) params[k] = rat_str(v);
  r["params"] = params;
  r["two_torsion_rank"] = two_torsion_rank(m, b);
  r["model"] = m.canonical_text();
  o.results.push_back(r);
  std::ostringstream text;
  text << family << " (";
  bool first = true;
  for (const auto& [k, v] : b) {
    text << (first ? "" : ", ") << k << " = " << rat_str(v);
    first = false;
  }
  text << ")\n";
  for (const auto& fb : f.fibers)
    text << "  " << fb.place.str(m.var) << ": " << fb.type << " (ord g2, g3, Delta) = (" << fb.ord_g2 << ", "
         << fb.ord_g3 << ", " << fb.ord_delta << ")\n";
  text << "fibers: " << f.summary() << "\ndeg Delta: " << f.deg_delta << "\nsurface: " << surface_class_name(f.surface)
       << "\n";
  return emit(o, cfg, text);
}

int cmd_lattice(const RunConfig& cfg, const std::string& spec) {
  GramLattice L = build_lattice(spec);
  NikulinTriple t = invariants(L);
  Output o{"lattice"};
  o.results.push_back(to_json(spec, t));
  std::ostringstream text;
  text << spec << ": " << t.str() << " signature (" << t.signature.first << ", " << t.signature.second
       << ") discriminant group";
  if (t.disc_group.empty()) text << " trivial";
  for (const auto& d : t.disc_group) text << " Z/" << d;
  text << "\n";
  return emit(o, cfg, text);
}

int cmd_gkz(const RunConfig& cfg, int n, bool dump) {
  if (n < 2) throw Error(ErrorKind::InvalidInput, "--n must be at least 2");
  std::vector<mpq_class> rho = HypergeometricParams::mirror(n).rho;
  GkzSystem sys = build_system(rho);
  SecondaryFan fan = secondary_fan(n);
  NonresonanceReport nr = nonresonance_report(rho);
  Output o{"gkz"};
  json r{{"name", "n=" + std::to_string(n)},
         {"B", to_json(sys.B)},
         {"nonresonant", nr.nonresonant},
         {"zonotope", {rat_str(fan.zonotope_lo), rat_str(fan.zonotope_hi)}}};
  if (dump) {
    r["system"] = to_json(sys);
    r["secondary_fan"] = to_json(fan);
  }
  o.results.push_back(r);
  std::ostringstream text;
  text << "B = " << r["B"].dump() << "\nzonotope = (" << rat_str(fan.zonotope_lo) << ", " << rat_str(fan.zonotope_hi)
       << ")\nnonresonant: " << (nr.nonresonant ? "yes" : "no") << "\n";
  if (dump) {
    text << "A =\n";
    for (int i = 0; i < sys.A.rows(); ++i) {
      text << "  [";
      for (int j = 0; j < sys.A.cols(); ++j) text << (j ? " " : "") << sys.A(i, j);
      text << "]\n";
    }
    for (const auto* l : {&fan.plus, &fan.minus})
      for (const auto& t : *l) {
        text << "  I" << t.label << " = {";
        for (size_t k = 0; k < t.index.size(); ++k) text << (k ? "," : "") << t.index[k];
        text << "} det " << t.det << " mu " << rat_str(t.mu) << "\n";
      }
  }
  return emit(o, cfg, text);
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
  SuiteReport rep = run_suite(suite, cfg);
  Output o{"verify " + suite};
  std::ostringstream text;
  text << "suite " << suite << " (seed " << cfg.seed << ")\n";
  for (const auto& c : rep.checks) {
    o.results.push_back(json{{"name", c.name}, {"ok", c.ok}, {"data", c.data}});
    text << (c.ok ? "PASS " : "FAIL ") << c.name;
    if (c.data.contains("error")) text << "  " << c.data["error"].get<std::string>();
    text << "\n";
  }
  o.ok = rep.ok();
  int code = emit(o, cfg, text);
  if (rep.numerical_failure()) return kNumerical;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monodromy, fibration and lattice computations for K3 families"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--precision", cfg.precision, "working precision in decimal digits (>= 30)");
  app.add_option("--order", cfg.order, "series truncation order (>= 8)");
  app.add_flag("--json", cfg.json_output, "machine-readable output");
  app.add_option("--seed", cfg.seed, "seed for randomized checks");

  auto* mono = app.add_subcommand("monodromy", "monodromy matrices around 0, 1/C and infinity");
  std::optional<int> n_opt;
  std::string rho, C;
  mono->add_option("--n", n_opt, "mirror family of dimension n");
  mono->add_option("--rho", rho, "exponents at infinity, p/q,...");
  mono->add_option("--C", C, "scale of the singular point 1/C");

  auto* fib = app.add_subcommand("fibers", "singular fibers of a Weierstrass family");
  std::string family;
  std::map<std::string, std::string> fargs;
  fib->add_option("--family", family, "family name")->required();
  for (const char* p : {"a", "b", "c", "d", "lambda"}) fib->add_option(std::string("--") + p, fargs[p]);

  auto* lat = app.add_subcommand("lattice", "Nikulin invariants of a lattice");
  std::string spec;
  lat->add_option("--spec", spec, "lattice, e.g. \"H + E8(-1) + 6*A1(-1)\"")->required();

  auto* gkz = app.add_subcommand("gkz", "toric data of the GKZ system");
  int gn = 0;
  bool dump = false;
  gkz->add_option("--n", gn, "dimension")->required();
  gkz->add_flag("--dump", dump, "print A, B and the triangulations");

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  ver->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInvalidInput;
  }

  try {
    cfg.validate();
    if (*mono) return cmd_monodromy(cfg, n_opt, rho, C);
    if (*fib) return cmd_fibers(cfg, family, fargs);
    if (*lat) return cmd_lattice(cfg, spec);
    if (*gkz) return cmd_gkz(cfg, gn, dump);
    if (*ver) return cmd_verify(cfg, suite);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_numerical() ? kNumerical : kInvalidInput;
  }
  return kInvalidInput;
}
