#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"

using namespace finitegap;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "finitegap");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("finitegap_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

int count_prefix(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line))
    if (line.rfind(prefix, 0) == 0) ++n;
  return n;
}

}  // namespace

TEST_CASE("curve command") {
  const Result r = invoke({"curve"});
  CHECK(r.code == 0);
  CHECK(r.out.find("p3 0.35355339059327373 0") != std::string::npos);
  CHECK(r.out.find("genus 0 2") != std::string::npos);
  CHECK(r.out.find("u 0.25 0.25") != std::string::npos);
  CHECK(invoke({"curve"}).out == r.out);
}

TEST_CASE("verify command") {
  const Result r = invoke({"verify"});
  CHECK(r.code == 0);
  CHECK(r.out.find("overall: PASS") != std::string::npos);
  CHECK(count_prefix(r.out, "FAIL") == 0);
  CHECK(count_prefix(r.out, "PASS") >= 18);

  const Result tight = invoke({"verify", "--tol", "dirac=1e-12"});
  CHECK(tight.code == 1);
  CHECK(tight.out.find("FAIL dirac ") != std::string::npos);
  CHECK(tight.out.find("overall: FAIL") != std::string::npos);

  CHECK(invoke({"verify", "--tol", "nonsense=1"}).code == 2);
  CHECK(invoke({"verify", "--tol", "dirac"}).code == 2);
}

TEST_CASE("verify with a curve spec file") {
  const auto good = temp_file("good.json");
  {
    std::ofstream f(good);
    f << R"({"u": [0.25, 0.25], "glue": [[[0.25, 0.25], [-0.25, 0.25]], [[-0.25, -0.25], [0.25, -0.25]]]})";
  }
  CHECK(invoke({"verify", "--spec", good.string()}).code == 0);

  const auto bad = temp_file("bad.json");
  {
    std::ofstream f(bad);
    f << "{";
  }
  const Result r = invoke({"verify", "--spec", bad.string()});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
  CHECK(invoke({"curve", "--spec", "/nonexistent/spec.json"}).code == 2);
  std::filesystem::remove(good);
  std::filesystem::remove(bad);
}

TEST_CASE("potential command") {
  const auto path = temp_file("potential.csv");
  CHECK(invoke({"potential", "--samples", "8", "--out", path.string()}).code == 0);
  const std::string csv = slurp(path);
  CHECK(csv.rfind("y,U_spectral_re,U_spectral_im,U_closed,abs_err\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
  CHECK(invoke({"potential", "--samples", "8"}).out == csv);
  CHECK(invoke({"potential", "--samples", "0"}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("mesh command") {
  const auto path = temp_file("mesh.obj");
  CHECK(invoke({"mesh", "--nx", "4", "--ny", "4", "--out", path.string()}).code == 0);
  const std::string obj = slurp(path);
  CHECK(count_prefix(obj, "v ") == 16);
  CHECK(count_prefix(obj, "f ") == 32);
  CHECK(invoke({"mesh", "--nx", "4", "--ny", "4"}).out == obj);

  // The reconstruction and the reference agree vertex by vertex.
  const Grid2<Vec3> recon = cli::mesh_vertices(16, 16, false);
  const Grid2<Vec3> ref = cli::mesh_vertices(16, 16, true);
  double worst = 0.0;
  for (std::size_t j = 0; j < 16; ++j)
    for (std::size_t i = 0; i < 16; ++i) worst = std::max(worst, distance(recon(i, j), ref(i, j)));
  CHECK(worst < 1e-5);

  const Grid2<Vec3> coarse = cli::mesh_vertices(4, 4, false);
  CHECK(distance(coarse(1, 2), recon(4, 8)) < 1e-5);

  CHECK(invoke({"mesh", "--nx", "2", "--ny", "4"}).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("psi command") {
  const Result r = invoke({"psi", "--z", "0,0", "--lambda", "0.25,-0.25"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("psi1 0.853553390593", 0) == 0);
  CHECK(invoke({"psi", "--z", "0,0", "--lambda", "0,0"}).code == 2);
  CHECK(invoke({"psi", "--z", "abc", "--lambda", "1,0"}).code == 2);
  CHECK(invoke({"psi", "--z", "0,0"}).code == 2);
}

TEST_CASE("willmore command") {
  const Result r = invoke({"willmore", "--n", "64"});
  CHECK(r.code == 0);
  CHECK(std::stod(r.out) == doctest::Approx(19.739208802178716).epsilon(1e-12));
  const Result g = invoke({"willmore", "--n", "64", "--reconstructed"});
  CHECK(g.code == 0);
  CHECK(std::stod(g.out) == doctest::Approx(19.739208802178716).epsilon(1e-7));
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"willmore", "--n", "x"}).code == 2);
}

TEST_CASE("helpers") {
  CHECK(cli::format_number(0.1) == "0.10000000000000001");
  CHECK(cli::parse_complex("1.5,-2") == Complex{1.5, -2.0});
  CHECK_THROWS_AS(cli::parse_complex("1.5"), cli::InputError);
  CHECK(cli::parse_tolerance("gluing=1e-9") == std::pair<std::string, double>{"gluing", 1e-9});
  CHECK_THROWS_AS(cli::parse_tolerance("gluing=abc"), cli::InputError);
  CHECK(cli::default_tolerances().at("dirac") == 1e-6);
}
