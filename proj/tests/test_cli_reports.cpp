#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "coliseum/config.hpp"
#include "coliseum/errors.hpp"
#include "coliseum/field_engine.hpp"
#include "doctest.h"

using namespace coliseum;
namespace fs = std::filesystem;

namespace {
const char* kExampleToml = R"(
[system]
polys = ["1,0,-2,0,1", "0,0,0,0,0.0625"]
weights = [0.5, 0.5]

[grid]
rect = [-2.8, 2.8, -2.8, 2.8]
width = 64
height = 64

[sampling]
N = 50
n_max = 120
seed = 7

[trap]
auto = true
n_max = 200

[output]
dir = "out"
)";

fs::path temp_dir(const std::string& tag) {
  fs::path d = fs::temp_directory_path() / ("coliseum_test_" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  static const std::string cli = [] {
    std::error_code ec;
    fs::path exe = fs::read_symlink("/proc/self/exe", ec);
    return ec ? std::string("./coliseum") : (exe.parent_path() / "coliseum").string();
  }();
  std::string cmd = cli + " " + args + " >/dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return rc == -1 ? -1 : WEXITSTATUS(rc);
}
}  // namespace

TEST_CASE("toml subset parser") {
  TomlTable t = TomlTable::parse_string(kExampleToml);
  CHECK(t.at("system.polys").as_strings().size() == 2);
  CHECK(t.at("system.weights").as_doubles() == std::vector<double>{0.5, 0.5});
  CHECK(t.at("grid.width").as_int() == 64);
  CHECK(t.at("sampling.seed").as_int() == 7);
  CHECK(t.at("trap.auto").as_bool());
  CHECK(t.at("output.dir").scalar() == "out");

  t.set("sampling.N", "125");
  CHECK(t.at("sampling.N").as_int() == 125);
}

TEST_CASE("load_config validates and hashes") {
  TomlTable t = TomlTable::parse_string(kExampleToml);
  RunConfig cfg = load_config(t);
  CHECK(cfg.poly_texts.size() == 2);
  CHECK(cfg.grid.width == 64);
  CHECK(cfg.samples == 50);
  CHECK(cfg.trap_auto);
  uint64_t h = cfg.hash();
  CHECK(h == load_config(t).hash());
  t.set("sampling.seed", "8");
  CHECK(load_config(t).hash() != h);

  TomlTable missing = TomlTable::parse_string(
      "[system]\npolys = [\"0,0,1\"]\n");
  CHECK_THROWS_WITH_AS(static_cast<void>(load_config(missing)),
                       doctest::Contains("weights"), ConfigError);
}

TEST_CASE("make_system attaches a certified trap") {
  TomlTable t = TomlTable::parse_string(kExampleToml);
  RunConfig cfg = load_config(t);
  GeneratorSystem sys = make_system(cfg);
  CHECK(sys.m() == 2);
  CHECK(sys.has_trap());
  CHECK(sys.in_trap(cplx(0, 0)));
}

TEST_CASE("pgm mask round trip") {
  GridSpec g = {-1.0, 1.0, -1.0, 1.0, 32, 32};
  RegionMask m(g);
  for (size_t i = 0; i < g.size(); ++i) m.bits[i] = (i * 7) % 3 == 0;
  fs::path d = temp_dir("pgm");
  write_pgm_mask((d / "m.pgm").string(), m);
  RegionMask back = read_pgm_mask((d / "m.pgm").string(), g);
  CHECK(back.bits == m.bits);
  write_pgm_mask((d / "m2.pgm").string(), m);
  CHECK(slurp(d / "m.pgm") == slurp(d / "m2.pgm"));
}

TEST_CASE("cli render emits deterministic artifacts") {
  fs::path d = temp_dir("render");
  fs::path conf = d / "c.toml";
  {
    std::ofstream out(conf);
    out << kExampleToml;
  }
  std::string base = "render -c " + conf.string() + " --set output.dir=" + d.string();
  REQUIRE(run_cli(base) == 0);
  CHECK(fs::exists(d / "t_field.pgm"));
  CHECK(fs::exists(d / "julia_mask.pgm"));
  CHECK(fs::exists(d / "render_meta.json"));
  std::string first = slurp(d / "t_field.pgm");
  CHECK(!first.empty());
  REQUIRE(run_cli(base) == 0);
  CHECK(slurp(d / "t_field.pgm") == first);

  std::string meta = slurp(d / "render_meta.json");
  CHECK(meta.find("config") != std::string::npos);
}

TEST_CASE("cli exit codes for bad input") {
  fs::path d = temp_dir("bad");
  fs::path conf = d / "broken.toml";
  {
    std::ofstream out(conf);
    out << "[system]\npolys = [\"0,0,1\"]\n";  // no weights
  }
  CHECK(run_cli("render -c " + conf.string()) == 2);
  CHECK(run_cli("render -c " + (d / "missing.toml").string()) != 0);
}

TEST_CASE("cli staircase sweep") {
  fs::path d = temp_dir("stair");
  REQUIRE(run_cli("staircase --system lebesgue --a 0.5 --grid 64 -o " + d.string()) ==
          0);
  std::string csv = slurp(d / "staircase.csv");
  CHECK(csv.find("x,value") != std::string::npos);
  // identity case: value tracks x
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    double x, v;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf", &x, &v) == 2);
    CHECK(v == doctest::Approx(x).epsilon(1e-9));
  }
}

TEST_CASE("cli one-d verification suite passes quickly") {
  fs::path d = temp_dir("oned");
  CHECK(run_cli("verify --one-d -o " + d.string()) == 0);
  std::string rep = slurp(d / "verify.json");
  CHECK(rep.find("staircase") != std::string::npos);
  CHECK(rep.find("\"all_pass\": true") != std::string::npos);
}

TEST_CASE("cli shuffled-annuli negative control fails loudly") {
  fs::path d = temp_dir("shuffled");
  CHECK(run_cli("verify --shuffled-annuli -o " + d.string()) == 3);
  std::string rep = slurp(d / "verify.json");
  CHECK(rep.find("OrderViolation") != std::string::npos);
}
