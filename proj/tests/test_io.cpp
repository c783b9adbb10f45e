#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "hiweno/commands.hpp"
#include "hiweno/io.hpp"

using namespace hiweno;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("hiweno_unit_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("io") {

TEST_CASE("config parsing") {
  auto c = parse_config(
      "# taylor vortex sweep\n"
      "case = taylor_vortex\n"
      "scheme = pressel   # trailing comment\n"
      "k = 2\n"
      "dt = 1e-4\n"
      "resolutions = 36, 108,324\n"
      "pressel_width = 2k-2\n"
      "project = false\n");
  CHECK(c.case_name == "taylor_vortex");
  CHECK(c.scheme == "pressel");
  CHECK(c.k == 2);
  CHECK(*c.dt == 1e-4);
  CHECK_FALSE(c.cfl.has_value());
  CHECK(c.resolutions == std::vector<int>{36, 108, 324});
  CHECK(c.pressel_width == PresselWidth::Reduced);
  CHECK(c.project == std::optional<bool>(false));
  CHECK(c.scheme_config().scheme == AdvectionScheme::PresselWeno);
}

TEST_CASE("config parsing fails closed") {
  CHECK_THROWS_AS(parse_config("case = straka\ncolour = red\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("case = straka\ncase = straka\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("scheme = hiweno\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("case = straka\ncfl = 0.5\ndt = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("case = straka\nk = three\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("case = straka\nk = 7\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("case = straka\ncfl = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("case = straka\nscheme = central2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("case = straka\njust words\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("case = straka\ndiv_order = 3\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("case = straka\nflux = godunov\n"), ConfigError);
}

TEST_CASE("run options take case defaults unless overridden") {
  RunConfig cfg = parse_config("case = shear_layer\n");
  const auto& c = case_spec("shear_layer");
  auto o = make_run_options(cfg, c, "hiweno");
  CHECK(*o.cfl == 0.2);
  CHECK(o.tend == 14.0);
  CHECK(o.solver.div_order == 6);
  CHECK(o.solver.project);
  RunConfig cfg2 = parse_config("case = vortex_patch\ndt = 0.01\ntend = 1\ndump_interval = 0.25\n");
  auto o2 = make_run_options(cfg2, case_spec("vortex_patch"), "ws4");
  CHECK(*o2.dt == 0.01);
  CHECK_FALSE(o2.cfl.has_value());
  CHECK_FALSE(o2.solver.project);
  CHECK(o2.solver.div_order == 4);
  CHECK(o2.output_times == std::vector<double>{0.0, 0.25, 0.5, 0.75});
}

TEST_CASE("dump round trip is exact") {
  auto dir = scratch("dump");
  const auto& c = case_spec("passive_scalar");
  auto g = case_grid(c, 12, 12, 5);
  auto s = init_case(c, g);
  s.t = 0.1 + 0.2;  // not exactly representable in short decimal form
  s.u(3, 4) = 1.0 / 3.0;
  DumpHeader h;
  h.case_name = c.name;
  h.scheme = "hiweno";
  h.k = 3;
  auto w = vorticity(s, g);
  write_field_dump((dir / "a.dump").string(), h, s, g, nullptr, &w);
  auto d = read_field_dump((dir / "a.dump").string());
  CHECK(d.header.case_name == "passive_scalar");
  CHECK(d.header.nx == 12);
  CHECK(d.header.bc == BoundaryKind::PeriodicBoth);
  CHECK(d.header.time == s.t);
  CHECK(d.header.bounds.xmax == g.bounds().xmax);
  CHECK(d.fields.count("vort") == 1);
  CHECK(d.fields.count("p") == 0);
  auto back = state_from_dump(d, g);
  for (int j = 0; j < 12; ++j)
    for (int i = 0; i < 12; ++i) {
      CHECK(back.u(i, j) == s.u(i, j));
      CHECK(back.v(i, j) == s.v(i, j));
      CHECK((*back.phi)(i, j) == (*s.phi)(i, j));
    }
  // Writing the read-back state again reproduces the file byte for byte.
  write_field_dump((dir / "b.dump").string(), h, back, g, nullptr, &w);
  CHECK(slurp(dir / "a.dump") == slurp(dir / "b.dump"));
  std::string text = slurp(dir / "a.dump");
  CHECK(text.rfind("# format 1\n# case passive_scalar\n", 0) == 0);
}

TEST_CASE("malformed dumps are rejected") {
  auto dir = scratch("bad");
  std::ofstream(dir / "x.dump") << "u 0 0 1 2 3\n";
  CHECK_THROWS(read_field_dump((dir / "x.dump").string()));
  std::ofstream(dir / "y.dump") << "# format 1\n# nx 2\n# ny 2\n# bounds 0 1 0 1\n# bc periodic\nu 5 0 0 0 1\n";
  CHECK_THROWS(read_field_dump((dir / "y.dump").string()));
  CHECK_THROWS(read_field_dump((dir / "missing.dump").string()));
}

TEST_CASE("convergence table layout") {
  std::vector<ConvergenceRow> rows{{16, 1e-2, 2e-2, std::nullopt}, {32, 1.25e-3, 2.5e-3, std::nullopt}};
  auto t = format_convergence_table(rows, "case x");
  std::istringstream in(t);
  std::string l1, l2, l3, l4;
  std::getline(in, l1);
  std::getline(in, l2);
  std::getline(in, l3);
  std::getline(in, l4);
  CHECK(l1 == "# case x");
  CHECK(l2 == "n l1_u l1_v l1_phi eoc_u eoc_v eoc_phi");
  CHECK(l3 == "16 0.01 0.02 - - - -");
  std::istringstream r(l4);
  std::string n, a, b, p, ea, eb, ep;
  r >> n >> a >> b >> p >> ea >> eb >> ep;
  CHECK(n == "32");
  CHECK(p == "-");
  CHECK(std::stod(ea) == doctest::Approx(3.0));
  CHECK(std::stod(eb) == doctest::Approx(3.0));
  CHECK(ep == "-");
}

TEST_CASE("run command writes dumps and the rest state stays zero") {
  auto dir = scratch("run");
  RunConfig cfg = parse_config("case = taylor_vortex\nnx = 12\ntend = 2e-4\ndump_interval = 1e-4\n");
  cfg.out = dir.string();
  std::ostringstream log;
  CHECK(command_run(cfg, log) == kExitOk);
  int count = 0;
  for (const auto& e : fs::directory_iterator(dir)) count += e.path().extension() == ".dump";
  CHECK(count == 3);
  auto d = read_field_dump((dir / dump_name("taylor_vortex", "hiweno", 3, 12, 2e-4)).string());
  CHECK(d.header.time == 2e-4);
  CHECK(d.fields.count("p") == 1);
}

}  // TEST_SUITE
