#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "anisotm/errors.hpp"
#include "anisotm/io.hpp"
#include "config.hpp"
#include "report.hpp"

using namespace anisotm;

namespace {

std::string tmp(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("anisotm_unit_" + name)).string();
}

}  // namespace

TEST_CASE("profile CSV round trip") {
  const RadialProfile U({0.0, 0.25, 1.0}, {1.5, 0.75, 0.0});
  write_profile_csv(U, tmp("p.csv"));
  const RadialProfile V = read_profile_csv(tmp("p.csv"));
  REQUIRE(V.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(V.nodes()[k] == U.nodes()[k]);
    CHECK(V.values()[k] == U.values()[k]);
  }
}

TEST_CASE("field CSV round trip") {
  const Domain d = Domain::disk(Vec2::Zero(), 1.0);
  const SampledField f = SampledField::sample(d, 1.0 / 32, [](double x, double y) { return x - 2 * y; });
  write_field_csv(f, tmp("f.csv"));
  const SampledField g = read_field_csv(tmp("f.csv"), d, 1.0 / 32);
  CHECK(g.values == f.values);
}

TEST_CASE("malformed CSV is rejected") {
  std::ofstream(tmp("bad.csv")) << "t,value\n0,1\nx,2\n";
  CHECK_THROWS_AS(read_profile_csv(tmp("bad.csv")), InputError);
  std::ofstream(tmp("hdr.csv")) << "a,b\n0,1\n";
  CHECK_THROWS_AS(read_profile_csv(tmp("hdr.csv")), InputError);
  CHECK_THROWS_AS(read_profile_csv(tmp("missing.csv")), InputError);
}

TEST_CASE("config keys and sections") {
  app::RunConfig c;
  c.set("sweep.eps", "1e-2,1e-3");
  CHECK(c.eps.size() == 2);
  c.set("R-exponent", "-0.4");
  CHECK(c.R_exponent == -0.4);
  c.set("h", "1/128");
  CHECK(c.h == 1.0 / 128);
  c.set("pole", "0.5,-0.25");
  CHECK(c.pole.y() == -0.25);
  CHECK_THROWS_AS(c.set("bogus", "1"), InputError);
  CHECK_THROWS_AS(c.set("nosection.eps", "1e-2"), InputError);
  CHECK_THROWS_AS(c.set("n", "two"), InputError);
  c.beta = 5.0;
  CHECK_THROWS_AS(c.validate(), InputError);
}

TEST_CASE("config file") {
  std::ofstream(tmp("run.cfg")) << "# comment\ngauge.gauge = pnorm:3\n\nfunctional.beta=0.5\n";
  app::RunConfig c;
  app::load_config_file(c, tmp("run.cfg"));
  CHECK(c.gauge == "pnorm:3");
  CHECK(c.beta == 0.5);
  std::ofstream(tmp("bad.cfg")) << "no equals sign\n";
  CHECK_THROWS_AS(app::load_config_file(c, tmp("bad.cfg")), InputError);
}

TEST_CASE("report checks") {
  using app::Check;
  CHECK(Check{"a", 1.01, 1.0, "x", 2e-2}.pass());
  CHECK_FALSE(Check{"a", 1.03, 1.0, "x", 2e-2}.pass());
  CHECK(Check{"b", 0.999, 1.0, "x", 5e-3, Check::Kind::AtLeast}.pass());
  CHECK_FALSE(Check{"b", 0.99, 1.0, "x", 5e-3, Check::Kind::AtLeast}.pass());
  CHECK(Check{"c", 1e-9, 0.0, "x", 1e-8, Check::Kind::AtMost}.pass());
  app::Report r("constants");
  r.add(Check{"nongating", 2.0, 1.0, "x", 1e-3, Check::Kind::Relative, false});
  CHECK(r.pass());
  r.add(Check{"gating", 2.0, 1.0, "x", 1e-3});
  CHECK_FALSE(r.pass());
  const auto j = r.to_json();
  CHECK(j["command"] == "constants");
  CHECK(j["checks"].size() == 2);
}
