#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "kcuts/json_io.hpp"

namespace {

std::string bin() {
  const char* b = std::getenv("KCUTS_BIN");
  REQUIRE(b != nullptr);
  return b;
}

std::string tmpdir() {
  static std::string dir = [] {
    char tmpl[] = "/tmp/kcuts_cli_XXXXXX";
    char* d = mkdtemp(tmpl);
    REQUIRE(d != nullptr);
    return std::string(d);
  }();
  return dir;
}

int run(const std::string& cmd) {
  int status = std::system((cmd + " 2>/dev/null").c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("generated graphs feed back through the cut command") {
  const std::string d = tmpdir();
  REQUIRE(run(bin() + " gen --family disjoint-cliques --params k=3,s=4 --out " + d + "/g.txt") == 0);
  const std::string text = slurp(d + "/g.txt");
  CHECK(text.find("# family: disjoint-cliques") != std::string::npos);
  CHECK(text.find("# vertices: 12 edges: 18") != std::string::npos);

  REQUIRE(run(bin() + " cut --graph " + d + "/g.txt --k 3 --seed 5 --out " + d + "/a.json") == 0);
  REQUIRE(run(bin() + " cut --graph " + d + "/g.txt --k 3 --seed 5 --out " + d + "/b.json") == 0);
  CHECK(slurp(d + "/a.json") == slurp(d + "/b.json"));

  auto j = kcuts::json::parse(slurp(d + "/a.json"));
  CHECK(j["tool"]["name"] == "kcuts");
  CHECK(j["command"] == "cut");
  CHECK(j["config"]["seed"] == 5);
  CHECK(j["result"]["certificate"]["pass"] == true);
  REQUIRE(j["result"]["cuts"].size() == 2);
  for (const auto& c : j["result"]["cuts"]) CHECK(c["expansion"] == 0.0);
}

TEST_CASE("stdin streaming matches file input") {
  const std::string d = tmpdir();
  REQUIRE(run(bin() + " gen --family ring-of-cliques --params k=4,s=3,bridge=0.25 --out " + d +
              "/ring.txt") == 0);
  REQUIRE(run(bin() + " cut --graph " + d + "/ring.txt --k 4 --seed 9 --out " + d + "/file.json") == 0);
  REQUIRE(run(bin() + " gen --family ring-of-cliques --params k=4,s=3,bridge=0.25 2>/dev/null | " +
              bin() + " cut --graph - --k 4 --seed 9 --out " + d + "/pipe.json") == 0);
  auto jf = kcuts::json::parse(slurp(d + "/file.json"));
  auto jp = kcuts::json::parse(slurp(d + "/pipe.json"));
  // The config records where the graph came from; the result must not care.
  CHECK(jf["config"]["graph"] != jp["config"]["graph"]);
  CHECK(jf["result"].dump() == jp["result"].dump());
}

TEST_CASE("spectrum command reports the requested eigenpairs") {
  const std::string d = tmpdir();
  REQUIRE(run(bin() + " gen --family path --params n=8 --out " + d + "/p.txt") == 0);
  REQUIRE(run(bin() + " spectrum --graph " + d + "/p.txt --k 3 --seed 2 --out " + d + "/s.json") == 0);
  auto j = kcuts::json::parse(slurp(d + "/s.json"));
  CHECK(j["command"] == "spectrum");
  REQUIRE(j["result"]["eigenvalues"].size() == 3);
  CHECK(double(j["result"]["eigenvalues"][0]) <= 1e-10);
  CHECK(j["result"]["solver"]["mode"] == "dense");
}

TEST_CASE("verify command treats a failed certificate as a result") {
  const std::string d = tmpdir();
  REQUIRE(run(bin() + " gen --family disjoint-cliques --params k=2,s=3 --out " + d + "/dj.txt") == 0);
  {
    std::ofstream cuts(d + "/cuts.txt");
    cuts << "# two cliques\n0 1 2\n3 4 5\n";
  }
  REQUIRE(run(bin() + " verify --graph " + d + "/dj.txt --cuts " + d + "/cuts.txt --out " + d +
              "/ok.json") == 0);
  auto ok = kcuts::json::parse(slurp(d + "/ok.json"));
  CHECK(ok["config"]["lambda_source"] == "computed");
  CHECK(ok["result"]["certificate"]["pass"] == true);

  // A deliberately inflated eigenvalue fails the verdict but not the process.
  REQUIRE(run(bin() + " verify --graph " + d + "/dj.txt --cuts " + d + "/cuts.txt --lambda 1.5 --out " +
              d + "/bad.json") == 0);
  auto bad = kcuts::json::parse(slurp(d + "/bad.json"));
  CHECK(bad["config"]["lambda_source"] == "option");
  CHECK(bad["result"]["certificate"]["pass"] == false);
}

TEST_CASE("bench command writes a metric table") {
  const std::string d = tmpdir();
  REQUIRE(run(bin() + " bench --experiment appendix-a --params n=64,k=16,eps=0.5,c=1 --seed 1 --out " +
              d + "/bench.json --csv " + d + "/bench.csv") == 0);
  const std::string csv = slurp(d + "/bench.csv");
  CHECK(csv.rfind("metric,value\n", 0) == 0);
  CHECK(csv.find("lambda_k,") != std::string::npos);
  CHECK(csv.find("clique_phi_max,") != std::string::npos);
  auto j = kcuts::json::parse(slurp(d + "/bench.json"));
  CHECK(j["command"] == "bench");
  CHECK(j["result"]["experiment"] == "appendix-a");
}

TEST_CASE("exit codes separate usage errors from bad input") {
  const std::string d = tmpdir();
  CHECK(run(bin() + " cut --no-such-flag") == 2);
  CHECK(run(bin() + " cut --graph " + d + "/g.txt") == 2);  // --k is required
  CHECK(run(bin() + " frobnicate") == 2);
  CHECK(run(bin() + " cut --graph " + d + "/missing.txt --k 2") == 1);
  CHECK(run(bin() + " gen --family no-such-family") == 1);
  CHECK(run(bin() + " --help >/dev/null") == 0);
  CHECK(run(bin() + " cut --help >/dev/null") == 0);
}
