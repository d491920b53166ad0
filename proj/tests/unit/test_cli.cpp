#include <doctest.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qcrit/cli/commands.hpp"
#include "qcrit/cli/csv.hpp"
#include "qcrit/cli/verify.hpp"
#include "qcrit/ladder.hpp"
#include "qcrit/model_io.hpp"

using namespace qcrit;
using namespace qcrit::cli;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(QCRIT_GOLDEN_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("double formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 1e-17, 123456789.0}) {
    const auto s = format_double(v);
    CHECK(parse_double(s) == v);
  }
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(std::isnan(parse_double("nan")));
  CHECK_THROWS_AS(parse_double("1.5x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_double(""), std::invalid_argument);
}

TEST_CASE("csv writer and reader") {
  std::ostringstream out;
  CsvWriter w(out, {"a", "b,c", "d"});
  w << 1.5 << std::string_view("x,y") << std::size_t{7};
  w.end_row();
  w << 2.0;
  CHECK_THROWS_AS(w.end_row(), std::logic_error);
  CHECK(out.str().rfind("a,\"b,c\",d\n1.5,\"x,y\",7\n", 0) == 0);

  std::istringstream in("x,y\n1,2\n3,nan\n");
  const auto t = read_csv(in);
  CHECK(t.rows.size() == 2);
  CHECK(t.numeric("x") == std::vector<double>{1.0, 3.0});
  CHECK(std::isnan(t.numeric("y")[1]));
  CHECK_THROWS_AS(t.column("z"), std::invalid_argument);
}

TEST_CASE("ranges") {
  const Range r{0.0, 2.0, 5};
  CHECK(r.grid() == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});
  CHECK(Range{0.0, 2.0, 2001}.grid().back() == 2.0);
  CHECK_THROWS_AS((Range{1.0, 0.0, 5}.validate("x")), UsageError);
  CHECK_THROWS_AS((Range{0.0, 1.0, 1}.validate("x")), UsageError);
}

TEST_CASE("ladder scan matches the golden file") {
  std::ostringstream out;
  ladder_scan({1.0, 0.25, {0.0, 2.0, 21}}, out);
  CHECK(out.str() == slurp("ladder_small.csv"));
}

TEST_CASE("ising scan matches the golden file") {
  IsingScanConfig cfg;
  cfg.ns = {8, 12};
  cfg.lambda = {0.0, 2.0, 11};
  std::ostringstream out;
  ising_scan(cfg, out);
  CHECK(out.str() == slurp("ising_small.csv"));
}

TEST_CASE("ising scan with finite differences leaves NaN near lambda = 0") {
  IsingScanConfig cfg;
  cfg.ns = {8};
  cfg.lambda = {0.0, 1.0, 5};
  cfg.method = ising::Method::fd;
  std::ostringstream out;
  ising_scan(cfg, out);
  std::istringstream in(out.str());
  const auto t = read_csv(in);
  CHECK(std::isnan(t.numeric("drho22")[0]));
  CHECK(std::isnan(t.numeric("d2E_sde")[0]));
  CHECK_FALSE(std::isnan(t.numeric("drho22")[1]));
}

TEST_CASE("ladder scan columns satisfy the field relation") {
  std::ostringstream out;
  ladder_scan({1.0, 0.3, {0.0, 3.0, 301}}, out);
  std::istringstream in(out.str());
  const auto t = read_csv(in);
  CHECK(t.header == ladder_columns());
  for (double r : t.numeric("relation_residual")) CHECK(r == 0.0);
}

TEST_CASE("verify report is deterministic and matches the golden file") {
  VerifyConfig cfg;
  cfg.trials = 2;
  const auto a = run_verify(cfg);
  const auto b = run_verify(cfg);
  CHECK(a.passed());
  CHECK(a.to_json() == b.to_json());
  CHECK(a.to_json() == slurp("verify_trials2.json"));
  cfg.corrupt_u = true;
  const auto bad = run_verify(cfg);
  CHECK_FALSE(bad.passed());
}

TEST_CASE("measure parsing and report") {
  const auto rho = parse_matrix_entries("0 0 0 0; 0 0.5 -0.5 0; 0 -0.5 0.5 0; 0 0 0 0");
  CHECK(rho(1, 2) == Complex(-0.5));
  const auto j = nlohmann::json::parse(measure_report(rho, true));
  CHECK(std::abs(j["concurrence"].get<double>() - 1.0) < 1e-12);
  CHECK(std::abs(j["negativity"].get<double>() - 1.0) < 1e-12);
  const auto text = measure_report(rho, false);
  CHECK(text.find("concurrence") != std::string::npos);
  CHECK_THROWS(parse_matrix_entries("1 2 3"));
}

TEST_CASE("model files") {
  const auto m = io::parse_model(R"({
    "name": "pair", "sites": 2, "dim": 2,
    "pair": [{"sites": [0, 1], "op": "XX", "coeff": {"const": 0, "linear": 1}},
             {"sites": [0, 1], "op": "YY", "coeff": 1},
             {"sites": [0, 1], "op": "ZZ", "coeff": 1}]
  })");
  CHECK(m.name == "pair");
  CHECK(m.hamiltonian.num_sites() == 2);
  const auto level = ed::ground_level(m.hamiltonian, 1.0);
  CHECK(std::abs(level.energy + 3.0) < 1e-12);
  const auto j = nlohmann::json::parse(io::ground_level_json(m, 1.0, level));
  CHECK(j["degeneracy"] == 1);
  CHECK(j["pairs"].size() == 1);

  CHECK_THROWS_AS(io::parse_model("{"), io::ModelError);
  CHECK_THROWS_AS(io::parse_model(R"({"sites": 2, "dim": 2, "pair": [{"sites": [0, 0], "op": "XX", "coeff": 1}]})"),
                  io::ModelError);
  CHECK_THROWS_AS(io::parse_model(R"({"sites": 2, "dim": 2, "local": [{"site": 5, "op": "Z", "coeff": 1}]})"),
                  io::ModelError);
  CHECK_THROWS_AS(io::parse_model(R"({"sites": 2, "dim": 2, "local": [{"site": 0, "op": "Q", "coeff": 1}]})"),
                  io::ModelError);
}

TEST_CASE("collapse needs several sizes") {
  IsingScanConfig cfg;
  cfg.ns = {8};
  cfg.lambda = {0.5, 1.5, 41};
  std::ostringstream out;
  ising_scan(cfg, out);
  std::istringstream in(out.str());
  const auto t = read_csv(in);
  const auto c22 = curves_from_table(t, "drho22");
  const auto c44 = curves_from_table(t, "drho44");
  CHECK(c22.size() == 1);
  CHECK_THROWS(collapse_curves(c22, c44, 1.0, {}));
}

TEST_CASE("shipped model files") {
  const std::string dir = QCRIT_MODELS_DIR;
  const auto tfim = io::load_model(dir + "/tfim_ring8.json");
  for (double lam : {0.5, 1.3}) {
    const auto level = ed::ground_level(tfim.hamiltonian, lam);
    CHECK(std::abs(level.energy / 8.0 - ising::energy_density(ising::IsingParams(8, lam))) < 1e-10);
  }
  const auto dimer = io::load_model(dir + "/rung_dimer.json");
  CHECK(std::abs(ed::ground_level(dimer.hamiltonian, 0.5).energy + 0.75) < 1e-12);
  CHECK(std::abs(ed::ground_level(dimer.hamiltonian, 1.5).energy + 1.25) < 1e-12);
  const auto ring = io::load_model(dir + "/heisenberg_ring.json");
  CHECK(ring.hamiltonian.num_sites() == 8);
  CHECK_THROWS_AS(io::load_model(dir + "/missing.json"), io::ModelError);
}
