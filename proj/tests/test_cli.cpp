#include <catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string lab()
{
  const char* p = std::getenv("BLOWUP_LAB");
  return p ? p : "blowup-lab";
}

fs::path scratch()
{
  static fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("blowup_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args)
{
  auto so = scratch() / "stdout.txt";
  std::string cmd = lab() + " " + args + " > " + so.string() + " 2> " + (scratch() / "stderr.txt").string();
  int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream f(so);
  std::stringstream ss;
  ss << f.rdbuf();
  r.out = ss.str();
  return r;
}

std::string slurp(const fs::path& p)
{
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

json json_file(const fs::path& p) { return json::parse(slurp(p)); }

} // namespace

TEST_CASE("verify-profiles in exact and float modes")
{
  auto r = run("verify-profiles --d 9 --family u-star");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["residual-max"] == 0.0);
  CHECK(j["positivity-min"].get<double>() == Catch::Approx(10.0).margin(1e-9));
  CHECK(j["verdict"] == "pass");
  CHECK(j["config"]["command"] == "verify-profiles");
  CHECK(j["config"]["precision"] == "exact");
  CHECK(j.contains("anchor"));
  CHECK(j["scaling-exponents"]["k1"]["fitted"].get<double>() == Catch::Approx(3.5).epsilon(0.02));

  auto b = run("verify-profiles --d 9 --family u-star --precision f64 --boost 0.1,0,...,0");
  REQUIRE(b.code == 0);
  CHECK(json::parse(b.out)["residual-max"].get<double>() <= 1e-10);

  // the boosted exact family still solves the equation identically
  auto be = run("verify-profiles --d 7 --family kappa --boost 0.3,0,-0.2");
  REQUIRE(be.code == 0);
  CHECK(json::parse(be.out)["residual-max"] == 0.0);
}

TEST_CASE("irrational constants need a float mode")
{
  CHECK(run("verify-profiles --d 8").code == 64);
  auto r = run("verify-profiles --d 8 --precision f128");
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["constants"]["exact"] == false);
}

TEST_CASE("usage errors exit with 64")
{
  CHECK(run("no-such-command").code == 64);
  CHECK(run("certify").code == 64);
  CHECK(run("certify --ell-class 7").code == 64);
  CHECK(run("suite --name nightly").code == 64);
  CHECK(run("resolvent --lambda 2.0").code == 64);
  CHECK(run("scan --grid 20by20").code == 64);
  CHECK(run("evolve --f cubic:1").code == 64);
  CHECK(run("verify-profiles --precision f32").code == 64);
  CHECK(run("evolve --T 2.0 --N 64 --tau-end 0.1").code == 64);
}

TEST_CASE("kappa-spectrum")
{
  auto r = run("kappa-spectrum --d 9 --ell 0");
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["eigenvalues"] == json::array({1.0}));
  auto s = run("kappa-spectrum --d 7 --ell 2");
  REQUIRE(s.code == 0);
  CHECK(json::parse(s.out)["eigenvalues"].empty());
  auto t = run("kappa-spectrum --d 9 --ell 1");
  CHECK(json::parse(t.out)["eigenvalues"] == json::array({0.0}));
}

TEST_CASE("scan writes the indicator grid and a roots footer")
{
  auto csv = scratch() / "scan.csv";
  auto r = run("scan --d 9 --ell 0 --re 0:4 --im -2:2 --grid 60x60 --out " + csv.string());
  REQUIRE(r.code == 0);
  auto text = slurp(csv);
  CHECK(text.rfind("re,im,abs_indicator\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 61 * 61);
  auto footer = json_file(csv.string() + ".roots.json");
  REQUIRE(footer["roots"].size() == 2);
  CHECK(footer["roots"][0]["re"].get<double>() == Catch::Approx(1.0).margin(1e-6));
  CHECK(footer["roots"][1]["re"].get<double>() == Catch::Approx(3.0).margin(1e-6));
  CHECK(footer["config"]["params"]["grid"] == json::array({60, 60}));
}

TEST_CASE("resolvent writes the mode")
{
  auto csv = scratch() / "mode.csv";
  auto r = run("resolvent --d 9 --lambda 2.5 --ell 0 --forcing poly:1,0,2 --out " + csv.string());
  REQUIRE(r.code == 0);
  CHECK(slurp(csv).rfind("rho,u,residual\n", 0) == 0);
  auto side = json_file(csv.string() + ".json");
  CHECK(side["max-residual"].get<double>() <= 1e-8);
  CHECK(side["config"]["params"]["forcing"] == "poly:1,0,2");
}

TEST_CASE("witnesses")
{
  auto r = run("witnesses");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["C"].get<double>() < 4e-8);
  CHECK(std::abs(j["constant-term"].get<double>() - 864) < 1);
}

TEST_CASE("dissipativity artifacts are reproducible")
{
  auto a = scratch() / "a.json";
  REQUIRE(run("dissipativity --d 9 --k 3 --corpus 20 --seed 7 --out " + a.string()).code == 0);
  auto first = slurp(a);
  REQUIRE(run("dissipativity --d 9 --k 3 --corpus 20 --seed 7 --out " + a.string()).code == 0);
  CHECK(slurp(a) == first);
  auto j = json_file(a);
  CHECK(j["failures"].empty());
  CHECK(j["config"]["seed"] == 7);
  CHECK(j.contains("max-gap"));
  CHECK(j["ratio-range"].size() == 2);
  REQUIRE(run("dissipativity --d 9 --k 3 --corpus 20 --seed 8 --out " + a.string()).code == 0);
  CHECK(json_file(a)["max-gap"] != j["max-gap"]);
}

TEST_CASE("evolve writes the trajectory columns")
{
  auto csv = scratch() / "traj.csv";
  auto r = run("evolve --family kappa --d 9 --N 128 --T 1.0 --f poly-even:1e-4,-1e-4 --tau-end 1 --out " + csv.string());
  REQUIRE(r.code == 0);
  auto text = slurp(csv);
  CHECK(text.rfind("tau,distance,amp_h,amp_g,sup,min_psi1\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 21);
  auto side = json_file(csv.string() + ".json");
  CHECK(side["diverged"] == false);
  CHECK(side["config"]["params"]["N"] == 128);
}

TEST_CASE("tune the kappa family")
{
  auto r = run("tune --family kappa --d 7 --N 256 --f poly-even:1e-3,-2e-3,1e-3");
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["verdict"] == "pass");
  CHECK(std::abs(j["T*"].get<double>() - 1) < 1e-3);
  CHECK(j["alpha*"] == 0.0);
  CHECK(j["decay-exponent"].get<double>() < 0);
}

TEST_CASE("quick suite and plot helper")
{
  auto rep = scratch() / "quick.json";
  auto r = run("suite --name quick --out " + rep.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.find("overall: pass") != std::string::npos);
  auto j = json_file(rep);
  CHECK(j["checks"].size() == 4);
  for (const auto& c : j["checks"]) {
    CHECK(c["verdict"] == "pass");
    CHECK_FALSE(c["anchor"].get<std::string>().empty());
  }
  CHECK(fs::exists(rep.string() + ".stats.json"));

  auto p = run("plot --kind evolve --csv traj.csv");
  CHECK(p.code == 0);
  CHECK(p.out.find("traj.csv") != std::string::npos);
}
