#include <doctest.h>

#include "qtherm/config.hpp"

using namespace qtherm;

namespace {
int error_line(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}
}  // namespace

TEST_SUITE("config") {
  TEST_CASE("full config round trip") {
    const auto c = parse_config(R"(
# size sweep
model = nn_xxx
sizes = 8..10, 12
init = neel
observables = sigma_z, survival
grid = log
t_min = 0.1
t_max = 500
n_points = 300
otoc = yes
seed = 17
workers = 3
out = results
mc_window = 0.04
b_z_system = 0.1
j_prime = 0.5
)");
    CHECK(c.model == ModelFamily::nn_xxx);
    CHECK(c.sizes == std::vector<int>{8, 9, 10, 12});
    CHECK(c.init == InitKind::neel);
    CHECK(c.observables.size() == 2);
    CHECK(c.grid == GridKind::log);
    CHECK(c.t_max == 500.0);
    CHECK(c.n_points == 300);
    CHECK(c.otoc);
    CHECK(c.seed == 17);
    CHECK(c.workers == 3);
    CHECK(c.out_dir == "results");
    CHECK(c.nn_xxx.b_z_system == 0.1);
    CHECK(c.nn_xxx.j_prime == 0.5);
    CHECK(c.nn_xxx.j == 1.0);

    const auto echo = to_json(c);
    CHECK(echo.at("model") == "nn_xxx");
    CHECK(echo.at("sizes").size() == 4);
  }

  TEST_CASE("defaults per model") {
    const auto nn = parse_config("model = nn_xxx\nsizes = 8\n");
    CHECK(nn.nn_xxx.b_z_system == 0.05);
    CHECK(nn.nn_xxx.j_prime == 0.8);
    const auto mf = parse_config("model = mixed_field\nsizes = 8\ninit = bath_ground\n");
    CHECK(mf.mixed.b_z_system == 0.8);
    CHECK(mf.mixed.b_x_bath == 0.3);
    CHECK(mf.mixed.j_x_sb == 0.8);
    CHECK(mf.mixed.attach_site == 5);
    const auto sb = parse_config("model = spin_boson\nsizes = 200\n");
    CHECK(sb.omega_z == 0.6);
    CHECK(sb.gamma == 0.2);
  }

  TEST_CASE("sector resolution") {
    const auto cor = parse_config("model = nn_xxx\nsizes = 9\n");
    CHECK(resolve_sector(cor, 9) == 1);
    const auto neel = parse_config("model = nn_xxx\nsizes = 9\ninit = neel\n");
    CHECK(resolve_sector(neel, 9) == 5);
    CHECK(resolve_sector(neel, 8) == 4);
    const auto full = parse_config("model = nn_xxx\nsizes = 6\nsector = full\n");
    CHECK_FALSE(resolve_sector(full, 6).has_value());
    const auto mf = parse_config("model = mixed_field\nsizes = 8\ninit = bath_ground\n");
    CHECK_FALSE(resolve_sector(mf, 8).has_value());
  }

  TEST_CASE("eigenstate initial state") {
    const auto c = parse_config("model = nn_xxx\nsizes = 6\ninit = eigenstate:4\n");
    CHECK(c.init == InitKind::eigenstate);
    CHECK(c.eigenstate_index == 4);
  }

  TEST_CASE("rejected inputs") {
    CHECK_THROWS_AS(parse_config("model = nn_xxx\nsizes = 8\nbz = 0.1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model = nn_xxx\nsizes = 8\nsizes = 9\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model = nn_xxx\nsizes =\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model = heisenberg\nsizes = 8\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model = nn_xxx\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model = nn_xxx\nsizes = 10..8\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model = nn_xxx\nsizes = 17\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model = nn_xxx\nsizes = 8\nt_max = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model = nn_xxx\nsizes = 8\nt_max = abc\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model = nn_xxx\nsizes = 8\nsector = 3\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model = nn_xxx\nsizes = 8\ninit = bath_ground\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model = spin_boson\nsizes = 80\ninit = neel\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model = mixed_field\nsizes = 8\nsector = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model = mixed_field\nsizes = 4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model = nn_xxx\nsizes = 8\nworkers = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("model = nn_xxx\nsizes = 8\ngarbage line\n"), ConfigError);
  }

  TEST_CASE("errors point at the offending line") {
    CHECK(error_line("model = nn_xxx\nsizes = 8\n\ninit = sideways\n") == 4);
  }
}
