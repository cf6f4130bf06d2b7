#include "k3/report.hpp"

#include <cmath>

#include "k3/rational.hpp"

namespace k3 {

std::string decimal(const Real& x, long digits) {
  if (x.is_zero()) return "0";
  if (x.is_finite() && abs(x) < pow(Real(10L, x.prec()), Real(-digits, x.prec()))) return "0";
  return x.str(static_cast<int>(digits));
}

json to_json(const Complex& z, long digits) { return json{{"re", decimal(z.re, digits)}, {"im", decimal(z.im, digits)}}; }

json to_json(const CMatrix& m, long digits) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j), digits));
    rows.push_back(row);
  }
  return json{{"entries", rows}, {"precision", digits}};
}

json to_json(const std::vector<std::vector<cld>>& m) {
  json rows = json::array();
  char buf[64];
  auto fmt = [&](long double v) {
    if (std::fabs(v) < 1e-15L) return std::string("0");
    std::snprintf(buf, sizeof buf, "%.15Le", v);
    return std::string(buf);
  };
  for (const auto& r : m) {
    json row = json::array();
    for (const auto& v : r) row.push_back(json{{"re", fmt(v.real())}, {"im", fmt(v.imag())}});
    rows.push_back(row);
  }
  return json{{"entries", rows}, {"precision", 15}};
}

json to_json(const IntMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_str());
    rows.push_back(row);
  }
  return rows;
}

json to_json(const std::vector<mpz_class>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

json to_json(const std::vector<mpq_class>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(rat_str(x));
  return a;
}

json to_json(const MonodromySuite& s) {
  return json{{"n", s.n},
              {"m0", to_json(s.m0, s.digits)},
              {"m1C", to_json(s.m1C, s.digits)},
              {"mInf", to_json(s.mInf, s.digits)},
              {"P_tilde", to_json(s.P_tilde, s.digits)}};
}

json to_json(const std::string& spec, const NikulinTriple& t) {
  return json{{"spec", spec},
              {"rank", t.rank},
              {"signature", {t.signature.first, t.signature.second}},
              {"disc_group", to_json(t.disc_group)},
              {"length", t.length},
              {"parity", t.parity}};
}

json to_json(const FiberConfiguration& c) {
  json fibers = json::array();
  for (const auto& f : c.fibers)
    fibers.push_back(json{{"place", f.place.str()},
                          {"type", f.type},
                          {"ord_g2", f.ord_g2 >= kInfiniteOrder ? -1 : f.ord_g2},
                          {"ord_g3", f.ord_g3 >= kInfiniteOrder ? -1 : f.ord_g3},
                          {"ord_delta", f.ord_delta},
                          {"degree", f.place.degree()}});
  return json{{"fibers", fibers},
              {"summary", c.summary()},
              {"deg_delta", c.deg_delta},
              {"surface", surface_class_name(c.surface)}};
}

json to_json(const GkzSystem& s) {
  return json{{"n", s.n}, {"A", to_json(s.A)}, {"B", to_json(s.B)}, {"gamma0", to_json(s.gamma0)}, {"rho", to_json(s.rho)}};
}

json to_json(const SecondaryFan& f) {
  auto list = [](const std::vector<Triangulation>& ts) {
    json a = json::array();
    for (const auto& t : ts)
      a.push_back(json{{"label", "I" + std::to_string(t.label)},
                       {"index", t.index},
                       {"det", t.det.get_str()},
                       {"nu", t.nu},
                       {"pi_nu", t.pi_nu},
                       {"mu", rat_str(t.mu)},
                       {"gamma", to_json(t.gamma)}});
    return a;
  };
  return json{{"n", f.n},
              {"zonotope", {rat_str(f.zonotope_lo), rat_str(f.zonotope_hi)}},
              {"plus", list(f.plus)},
              {"minus", list(f.minus)},
              {"unimodular", f.unimodular()}};
}

}  // namespace k3
