#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

using json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run k3(const std::string& args) {
  std::string cmd = std::string(K3_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json k3_json(const std::string& args, int expected_code = 0) {
  Run r = k3("--json " + args);
  CHECK(r.code == expected_code);
  return json::parse(r.out);
}

std::string entry(const json& m, int i, int j) {
  const json& z = m["entries"][i][j];
  return z["re"].get<std::string>() + "," + z["im"].get<std::string>();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("monodromy") {
    json doc = k3_json("monodromy --n 2");
    CHECK(doc["command"] == "monodromy");
    CHECK(doc["status"] == "ok");
    CHECK(doc["config"]["precision"] == 60);
    const json& r = doc["results"][0];
    CHECK(entry(r["m0"], 0, 0) == "1,0");
    CHECK(entry(r["m0"], 0, 1) == "1,0");
    CHECK(entry(r["m0"], 1, 0) == "0,0");
    CHECK(entry(r["m1C"], 0, 0) == "1,0");
    CHECK(entry(r["m1C"], 0, 1) == "0,0");
    CHECK(entry(r["m1C"], 1, 0) == "-3,0");
    CHECK(entry(r["m1C"], 1, 1) == "1,0");
    CHECK(r["m1C"]["precision"] == 60);

    json same = k3_json("monodromy --rho 1/3,2/3 --C 27");
    CHECK(same["results"] == doc["results"]);

    CHECK(k3("monodromy --rho 1/2,1/2").code == 2);
    CHECK(k3("monodromy --rho 1/3,1").code == 2);
    CHECK(k3("monodromy --rho 1/3,x").code == 2);
    CHECK(k3("monodromy").code == 2);
  }

  TEST_CASE("fibers") {
    json doc = k3_json("fibers --family twisted_4param --a 2 --b 3 --c 5 --d 7");
    const json& r = doc["results"][0];
    CHECK(r["surface"] == "K3");
    CHECK(r["deg_delta"] == 24);
    CHECK(r["summary"] == "2I0* + 6I2");
    CHECK(r["two_torsion_rank"] == 2);
    CHECK(k3("fibers --family nope").code == 2);
    CHECK(k3("fibers --family S_cd --c 1").code == 2);
    Run text = k3("fibers --family S_cd --c 3 --d 5");
    CHECK(text.code == 0);
    CHECK(text.out.find("surface: rational_elliptic") != std::string::npos);
  }

  TEST_CASE("lattice") {
    json doc = k3_json("lattice --spec \"H + D10(-1) + D4(-1) + 2*A1(-1)\"");
    const json& r = doc["results"][0];
    // rank 2 + 10 + 4 + 2
    CHECK(r["rank"] == 18);
    CHECK(r["length"] == 6);
    CHECK(r["parity"] == 1);
    CHECK(r["signature"] == json::array({1, 17}));
    json e = k3_json("lattice --spec \"H + E8(-1) + 6*A1(-1)\"")["results"][0];
    CHECK(e["rank"] == 16);
    CHECK(e["disc_group"].size() == 6);
    CHECK(k3("lattice --spec \"F4\"").code == 2);
    CHECK(k3("lattice --spec \"H +\"").code == 2);
  }

  TEST_CASE("gkz") {
    json doc = k3_json("gkz --n 4 --dump");
    const json& r = doc["results"][0];
    CHECK(r["zonotope"] == json::array({"-2", "2"}));
    CHECK(r["nonresonant"] == true);
    CHECK(r["system"]["A"].size() == 7);
    CHECK(r["secondary_fan"]["plus"].size() == 4);
    CHECK(r["secondary_fan"]["minus"].size() == 4);
    CHECK(r["secondary_fan"]["unimodular"] == true);
    CHECK(k3("gkz --n 1").code == 2);
  }

  TEST_CASE("verify") {
    Run lat = k3("--json verify lattices");
    CHECK(lat.code == 0);
    json doc = json::parse(lat.out);
    CHECK(doc["status"] == "ok");
    bool chain = false;
    for (const auto& c : doc["results"]) chain |= c["name"] == "chain" && c["ok"] == true;
    CHECK(chain);

    Run fib = k3("--json --seed 7 verify fibers");
    json f = json::parse(fib.out);
    CHECK(f["config"]["seed"] == 7);
    bool any_fail = false, twisted = false;
    for (const auto& c : f["results"]) {
      any_fail |= c["ok"] == false;
      if (c["name"] == "family.twisted_4param") twisted = c["ok"] == true;
    }
    CHECK(twisted);
    CHECK(fib.code == (any_fail ? 1 : 0));
    CHECK(f["status"] == (any_fail ? "fail" : "ok"));

    // names come back sorted
    std::vector<std::string> names;
    for (const auto& c : f["results"]) names.push_back(c["name"]);
    CHECK(std::is_sorted(names.begin(), names.end()));

    CHECK(k3("verify nosuch").code == 2);
  }

  TEST_CASE("determinism") {
    Run a = k3("--json --seed 7 verify fibers"), b = k3("--json --seed 7 verify fibers");
    CHECK(a.out == b.out);
    Run c = k3("--json monodromy --n 3"), d = k3("--json monodromy --n 3");
    CHECK(c.out == d.out);
    Run e = k3("--json --seed 8 verify fibers");
    CHECK(json::parse(e.out)["config"]["seed"] == 8);
  }

  TEST_CASE("configuration limits") {
    CHECK(k3("--precision 29 lattice --spec H").code == 2);
    CHECK(k3("--order 7 lattice --spec H").code == 2);
    CHECK(k3("--precision 30 --order 8 lattice --spec H").code == 0);
    Run help = k3("--help");
    CHECK(help.code == 0);
    CHECK(help.out.find("verify") != std::string::npos);
  }
}
