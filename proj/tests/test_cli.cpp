#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "json.hpp"

using nlohmann::json;

namespace {

struct CmdResult {
  int status = -1;
  std::string out;
};

// Runs the installed binary with the given arguments, capturing stdout (and
// stderr too when asked).
CmdResult run_cli(const std::string& args, bool merge_stderr = false) {
  const std::string cmd =
      std::string(LATBAND_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  CmdResult r;
  std::FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int rc = pclose(pipe);
  if (WIFEXITED(rc)) r.status = WEXITSTATUS(rc);
  return r;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t next = text.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(text.substr(pos));
      break;
    }
    out.push_back(text.substr(pos, next - pos));
    pos = next + 1;
  }
  if (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

double rel(double got, double want) { return std::abs(got / want - 1.0); }

}  // namespace

TEST_CASE("spectrum") {
  const CmdResult r = run_cli("spectrum --dim 3 --k 0,0,0 --format json");
  REQUIRE(r.status == 0);
  const json obj = json::parse(r.out);
  CHECK(obj["e_min"].get<double>() == 0.0);
  CHECK(obj["e_max"].get<double>() == 12.0);
  CHECK(obj["pi_class"].get<int>() == 0);
  CHECK(obj["d_eff"].get<int>() == 3);

  // A component parked exactly at pi freezes its axis out.
  const CmdResult rp = run_cli("spectrum --dim 3 --k 3.141592653589793,0.2,0.1 --format json");
  REQUIRE(rp.status == 0);
  const json op = json::parse(rp.out);
  CHECK(op["pi_class"].get<int>() == 1);
  CHECK(op["d_eff"].get<int>() == 2);

  // CSV is the default and always leads with its header.
  const CmdResult rc = run_cli("spectrum --dim 2 --k 0.5,-0.5");
  REQUIRE(rc.status == 0);
  const std::vector<std::string> lines = split(rc.out, '\n');
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "e_min,e_max,pi_class,d_eff");
}

TEST_CASE("usage errors exit with status 1") {
  CHECK(run_cli("spectrum --dim 3 --k 0,x,0").status == 1);
  CHECK(run_cli("spectrum --dim 3 --k 0,0").status == 1);
  CHECK(run_cli("spectrum").status == 1);
  CHECK(run_cli("no-such-command").status == 1);
  CHECK(run_cli("").status == 1);
  CHECK(run_cli("eigenvalue --dim 3 --mu -0.5").status == 1);
}

TEST_CASE("threshold") {
  const CmdResult r = run_cli("threshold --dim 3 --format json");
  REQUIRE(r.status == 0);
  const json obj = json::parse(r.out);
  CHECK(rel(obj["mu0"].get<double>(), 0.0159515122675467) < 1e-6);
  CHECK(rel(obj["nu_edge"].get<double>(), 62.689980938954293) < 1e-6);

  // Two axes: the edge integral diverges, and the message says so.
  const CmdResult rd = run_cli("threshold --dim 2", true);
  CHECK(rd.status == 2);
  CHECK(rd.out.find("edge integral diverges") != std::string::npos);
}

TEST_CASE("eigenvalue above and below threshold") {
  const CmdResult r =
      run_cli("eigenvalue --dim 1 --k 0 --mu 0.3183098861837907 --format json");
  REQUIRE(r.status == 0);
  const json obj = json::parse(r.out);
  CHECK(obj["bound"].get<bool>());
  CHECK(rel(obj["z"].get<double>(), 4.8284271247461903) < 1e-8);

  const CmdResult rb = run_cli("eigenvalue --dim 3 --mu 0.001 --format json");
  REQUIRE(rb.status == 0);
  const json ob = json::parse(rb.out);
  CHECK(!ob["bound"].get<bool>());
  CHECK(rel(ob["mu0"].get<double>(), 0.0159515122675467) < 1e-6);
}

TEST_CASE("coupling scan") {
  const CmdResult r = run_cli("scan --axis coupling --dim 3 --points 17");
  REQUIRE(r.status == 0);
  const std::vector<std::string> lines = split(r.out, '\n');
  REQUIRE(lines.size() == 18);
  CHECK(lines[0] == "s,lambda,sigma,tau,omega");
  double prev_lambda = 0.0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> cells = split(lines[i], ',');
    REQUIRE(cells.size() >= 2);
    const double lambda = std::strtod(cells[1].c_str(), nullptr);
    CHECK(lambda > prev_lambda);
    prev_lambda = lambda;
  }
  CHECK(std::strtod(split(lines[1], ',')[0].c_str(), nullptr) == 1e-12);
  CHECK(std::strtod(split(lines[17], ',')[0].c_str(), nullptr) == 1e-4);
  // No log-corrected variables with three axes: those cells stay empty.
  CHECK(split(r.out, '\n')[1].substr(lines[1].size() - 3) == ",,,");

  // Four axes fill sigma from lambda / ln(1/lambda).
  const CmdResult r4 = run_cli("scan --axis coupling --dim 4 --points 3 --format json");
  REQUIRE(r4.status == 0);
  const json rows = json::parse(r4.out);
  REQUIRE(rows.size() == 3);
  for (const json& row : rows) {
    const double lambda = row["lambda"].get<double>();
    const double sigma = row["sigma"].get<double>();
    CHECK(rel(sigma, lambda / -std::log(lambda)) < 1e-12);
  }
}

TEST_CASE("momentum scan tracks the band-edge drop") {
  const CmdResult r = run_cli("scan --axis momentum --dim 3 --points 8");
  REQUIRE(r.status == 0);
  const std::vector<std::string> lines = split(r.out, '\n');
  REQUIRE(lines.size() == 9);
  CHECK(lines[0] == "k_norm,z_minus_emax0");
  for (int i = 1; i <= 8; ++i) {
    const std::vector<std::string> cells = split(lines[i], ',');
    REQUIRE(cells.size() == 2);
    const double kap = std::strtod(cells[0].c_str(), nullptr);
    const double shift = std::strtod(cells[1].c_str(), nullptr);
    CHECK(kap == 0.25 * std::ldexp(1.0, -(i - 1)));
    CHECK(shift < 0.0);
    CHECK(rel(shift, -0.25 * kap * kap) < 0.02);
  }

  // Byte-identical on rerun.
  const CmdResult again = run_cli("scan --axis momentum --dim 3 --points 8");
  CHECK(again.out == r.out);
}

TEST_CASE("finite-lattice oracle") {
  const CmdResult r = run_cli("oracle --dim 1 --s 1 --grid 2 --mu 0.5 --format json");
  REQUIRE(r.status == 0);
  const json rows = json::parse(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0]["quantity"].get<std::string>() == "nu");
  const double pi = 3.14159265358979323846;
  CHECK(rel(rows[0]["lattice"].get<double>(), 2.0 * pi / 3.0) < 1e-13);
  CHECK(rel(rows[0]["reference"].get<double>(), 2.0 * pi / std::sqrt(5.0)) < 1e-7);
  CHECK(rows[1]["quantity"].get<std::string>() == "eigenvalue");
  CHECK(rel(rows[1]["lattice"].get<double>(), 2.0 + pi) < 1e-12);

  // A finer grid tightens the match against the continuum reference.
  const CmdResult rf = run_cli("oracle --dim 3 --s 1 --grid 64 --format json");
  REQUIRE(rf.status == 0);
  const json fine = json::parse(rf.out);
  CHECK(std::abs(fine[0]["rel_diff"].get<double>()) < 1e-6);

  CHECK(run_cli("oracle --dim 3 --s 1 --grid 7").status == 1);
}

TEST_CASE("verification suite on reduced grids") {
  const CmdResult r = run_cli("verify --dim 3 --coarse");
  REQUIRE(r.status == 0);
  const std::vector<std::string> lines = split(r.out, '\n');
  REQUIRE(lines.size() >= 4);
  CHECK(lines[0] == "name,measured,predicted,rel_dev,tol,pass");
  bool saw_exponent = false, saw_k2 = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::vector<std::string> cells = split(lines[i], ',');
    REQUIRE(cells.size() == 6);
    if (cells[0] == "coupling:exponent") saw_exponent = true;
    if (cells[0] == "momentum:k2_coefficient") saw_k2 = true;
    CHECK(cells[5] == "1");
  }
  CHECK(saw_exponent);
  CHECK(saw_k2);

  CHECK(run_cli("verify --dim 7 --coarse").status == 2);
}
