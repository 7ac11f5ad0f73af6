#include "doctest.h"

#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <variant>

#include "convspec/lifting.hpp"
#include "convspec/model_io.hpp"

using namespace convspec;
using nlohmann::json;

namespace {

ModelSpec krawtchouk_model(double p) {
  ModelSpec m;
  m.coupling = CatalogCoupling{"krawtchouk", {{"p", p}}};
  return m;
}

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("family model survives a JSON round trip") {
  ModelSpec m;
  m.omega0 = 1.25;
  m.omega1 = -0.5;
  m.coupling = CatalogCoupling{"hahn", {{"alpha", 1.5}, {"beta", 0.5}}};

  ModelSpec back = model_from_json(model_to_json(m));
  CHECK(back.k0 == 1);
  CHECK(back.k1 == 1);
  CHECK(back.omega0 == 1.25);
  CHECK(back.omega1 == -0.5);
  const auto& cat = std::get<CatalogCoupling>(back.coupling);
  CHECK(cat.family == "hahn");
  CHECK(cat.params.at("alpha") == 1.5);
  CHECK(cat.params.at("beta") == 0.5);
}

TEST_CASE("table model survives a JSON round trip") {
  TableCoupling tab;
  tab.sectors.push_back({2, {0.1, -0.2, 0.3}, {1.5, 0.25}, {0.7, -2.9}});
  tab.sectors.push_back({1, {0.0, 0.0}, {1.0}, {0.0}});
  ModelSpec m;
  m.coupling = tab;

  ModelSpec back = model_from_json(model_to_json(m));
  const auto& t = std::get<TableCoupling>(back.coupling);
  REQUIRE(t.sectors.size() == 2);
  CHECK(t.sectors[0].N == 2);
  CHECK(t.sectors[0].a == std::vector<double>{0.1, -0.2, 0.3});
  CHECK(t.sectors[0].b_mag == std::vector<double>{1.5, 0.25});
  CHECK(t.sectors[0].b_phase == std::vector<double>{0.7, -2.9});
  CHECK(t.sectors[1].N == 1);
}

TEST_CASE("lifted model survives a JSON round trip") {
  ModelSpec inner = krawtchouk_model(0.3);
  inner.omega0 = 2.0;
  ModelSpec lifted = lift_model(inner, 2, 3);

  json j = model_to_json(lifted);
  CHECK(j["coupling"]["type"] == "lifted");
  CHECK(j["coupling"]["inner"]["coupling"]["type"] == "family");

  ModelSpec back = model_from_json(j);
  CHECK(back.k0 == 2);
  CHECK(back.k1 == 3);
  const auto& lift = std::get<LiftedCoupling>(back.coupling);
  REQUIRE(lift.inner);
  const auto& cat = std::get<CatalogCoupling>(lift.inner->coupling);
  CHECK(cat.family == "krawtchouk");
  CHECK(cat.params.at("p") == 0.3);
}

TEST_CASE("model JSON validation names the offending field") {
  json good = model_to_json(krawtchouk_model(0.5));

  json j = good;
  j.erase("k0");
  CHECK_THROWS_WITH_AS(model_from_json(j), doctest::Contains("'k0'"),
                       std::invalid_argument);

  j = good;
  j["k1"] = 1.5;
  CHECK_THROWS_WITH_AS(model_from_json(j), doctest::Contains("integer"),
                       std::invalid_argument);

  j = good;
  j["coupling"]["type"] = "mystery";
  CHECK_THROWS_WITH_AS(model_from_json(j), doctest::Contains("mystery"),
                       std::invalid_argument);

  j = good;
  j["coupling"]["name"] = "not_a_family";
  CHECK_THROWS_AS(model_from_json(j), std::invalid_argument);

  j = good;
  j["coupling"]["params"]["p"] = "0.5";
  CHECK_THROWS_WITH_AS(model_from_json(j), doctest::Contains("'p'"),
                       std::invalid_argument);

  CHECK_THROWS_AS(model_from_json(json::array()), std::invalid_argument);

  // declared lifted multiplicities must agree with the model's own
  json lifted = model_to_json(lift_model(krawtchouk_model(0.5), 2, 3));
  lifted["coupling"]["k0"] = 5;
  CHECK_THROWS_WITH_AS(model_from_json(lifted), doctest::Contains("disagree"),
                       std::invalid_argument);
}

TEST_CASE("state survives a JSON round trip") {
  ModelSpec m = lift_model(krawtchouk_model(0.5), 2, 3);
  SectoredState psi;
  Eigen::VectorXcd v0(3), v1(2);
  v0 << std::complex<double>(0.1, -0.2), 0.5, std::complex<double>(0.0, 0.7);
  v1 << -0.25, std::complex<double>(0.125, 0.375);
  psi.amplitudes[{0, 1, 2, 2, 3}] = v0;
  psi.amplitudes[{1, 0, 1, 2, 3}] = v1;

  SectoredState back = state_from_json(state_to_json(psi), m);
  REQUIRE(back.amplitudes.size() == 2);
  CHECK(back.amplitudes.at({0, 1, 2, 2, 3}) == v0);
  CHECK(back.amplitudes.at({1, 0, 1, 2, 3}) == v1);
}

TEST_CASE("state imaginary parts default to zero") {
  ModelSpec m = krawtchouk_model(0.5);
  json j = json::array(
      {{{"r0", 0}, {"r1", 0}, {"N", 1}, {"re", json::array({0.6, 0.8})}}});
  SectoredState psi = state_from_json(j, m);
  CHECK(psi.amplitudes.at({0, 0, 1, 1, 1})[0] == std::complex<double>(0.6, 0.0));
  CHECK(psi.amplitudes.at({0, 0, 1, 1, 1})[1] == std::complex<double>(0.8, 0.0));
}

TEST_CASE("state JSON validation") {
  ModelSpec m = krawtchouk_model(0.5);

  CHECK_THROWS_WITH_AS(state_from_json(json::array(), m), doctest::Contains("no sectors"),
                       std::invalid_argument);
  CHECK_THROWS_AS(state_from_json(json::object(), m), std::invalid_argument);

  json wrong_len = json::array(
      {{{"r0", 0}, {"r1", 0}, {"N", 2}, {"re", json::array({1.0})}}});
  CHECK_THROWS_WITH_AS(state_from_json(wrong_len, m), doctest::Contains("amplitudes"),
                       std::invalid_argument);

  json dup = json::array(
      {{{"r0", 0}, {"r1", 0}, {"N", 1}, {"re", json::array({1.0, 0.0})}},
       {{"r0", 0}, {"r1", 0}, {"N", 1}, {"re", json::array({0.0, 1.0})}}});
  CHECK_THROWS_WITH_AS(state_from_json(dup, m), doctest::Contains("twice"),
                       std::invalid_argument);

  json bad_r = json::array(
      {{{"r0", 1}, {"r1", 0}, {"N", 1}, {"re", json::array({1.0, 0.0})}}});
  CHECK_THROWS_WITH_AS(state_from_json(bad_r, m), doctest::Contains("0 <= r < k"),
                       std::invalid_argument);

  json no_re = json::array({{{"r0", 0}, {"r1", 0}, {"N", 1}}});
  CHECK_THROWS_WITH_AS(state_from_json(no_re, m), doctest::Contains("'re'"),
                       std::invalid_argument);
}

TEST_CASE("observable mirrors missing adjoint blocks") {
  ModelSpec m = krawtchouk_model(0.5);
  json j = json::array({{{"bra", {{"r0", 0}, {"r1", 0}, {"N", 0}}},
                         {"ket", {{"r0", 0}, {"r1", 0}, {"N", 1}}},
                         {"re", json::array({json::array({1.0, 0.0})})},
                         {"im", json::array({json::array({0.5, -2.0})})}}});
  SectoredObservable x = observable_from_json(j, m);
  REQUIRE(x.blocks.size() == 2);

  SectorIndex bra{0, 0, 0, 1, 1};
  SectorIndex ket{0, 0, 1, 1, 1};
  const Eigen::MatrixXcd& fwd = x.blocks.at({bra, ket});
  const Eigen::MatrixXcd& mirror = x.blocks.at({ket, bra});
  CHECK(fwd(0, 0) == std::complex<double>(1.0, 0.5));
  CHECK(fwd(0, 1) == std::complex<double>(0.0, -2.0));
  CHECK(mirror(0, 0) == std::complex<double>(1.0, -0.5));
  CHECK(mirror(1, 0) == std::complex<double>(0.0, 2.0));

  // a full round trip now lists both blocks explicitly and re-validates
  SectoredObservable back = observable_from_json(observable_to_json(x), m);
  CHECK(back.blocks.size() == 2);
  CHECK(back.blocks.at({bra, ket}) == fwd);
}

TEST_CASE("observable JSON validation") {
  ModelSpec m = krawtchouk_model(0.5);

  CHECK_THROWS_WITH_AS(observable_from_json(json::array(), m),
                       doctest::Contains("no blocks"), std::invalid_argument);

  json no_bra = json::array({{{"ket", {{"r0", 0}, {"r1", 0}, {"N", 0}}},
                              {"re", json::array({json::array({1.0})})}}});
  CHECK_THROWS_WITH_AS(observable_from_json(no_bra, m), doctest::Contains("'bra'"),
                       std::invalid_argument);

  json bad_rows = json::array({{{"bra", {{"r0", 0}, {"r1", 0}, {"N", 1}}},
                                {"ket", {{"r0", 0}, {"r1", 0}, {"N", 1}}},
                                {"re", json::array({json::array({1.0, 0.0})})}}});
  CHECK_THROWS_WITH_AS(observable_from_json(bad_rows, m), doctest::Contains("rows"),
                       std::invalid_argument);

  json bad_cols = json::array({{{"bra", {{"r0", 0}, {"r1", 0}, {"N", 0}}},
                                {"ket", {{"r0", 0}, {"r1", 0}, {"N", 1}}},
                                {"re", json::array({json::array({1.0})})}}});
  CHECK_THROWS_WITH_AS(observable_from_json(bad_cols, m), doctest::Contains("entries"),
                       std::invalid_argument);

  // explicitly listed pair that is not actually adjoint
  json contradiction =
      json::array({{{"bra", {{"r0", 0}, {"r1", 0}, {"N", 0}}},
                    {"ket", {{"r0", 0}, {"r1", 0}, {"N", 1}}},
                    {"re", json::array({json::array({1.0, 0.0})})}},
                   {{"bra", {{"r0", 0}, {"r1", 0}, {"N", 1}}},
                    {"ket", {{"r0", 0}, {"r1", 0}, {"N", 0}}},
                    {"re", json::array({json::array({1.0}), json::array({5.0})})}}});
  CHECK_THROWS_WITH_AS(observable_from_json(contradiction, m),
                       doctest::Contains("adjoint"), std::invalid_argument);

  // a non-Hermitian diagonal block fails even without a partner problem
  json skew = json::array({{{"bra", {{"r0", 0}, {"r1", 0}, {"N", 1}}},
                            {"ket", {{"r0", 0}, {"r1", 0}, {"N", 1}}},
                            {"re", json::array({json::array({0.0, 1.0}),
                                                json::array({2.0, 0.0})})}}});
  CHECK_THROWS_WITH_AS(observable_from_json(skew, m), doctest::Contains("adjoint"),
                       std::invalid_argument);
}

TEST_CASE("model files round trip on disk") {
  std::string path = temp_path("convspec_io_model.json");
  ModelSpec m = lift_model(krawtchouk_model(0.25), 3, 2);
  m.omega0 = 0.125;
  save_model(m, path);
  ModelSpec back = load_model(path);
  CHECK(back.k0 == 3);
  CHECK(back.k1 == 2);
  CHECK(back.omega0 == 0.125);
  CHECK(std::holds_alternative<LiftedCoupling>(back.coupling));
  std::remove(path.c_str());

  CHECK_THROWS_WITH_AS(load_model(temp_path("convspec_io_missing.json")),
                       doctest::Contains("cannot open"), std::invalid_argument);

  std::string garbled = temp_path("convspec_io_garbled.json");
  {
    std::ofstream out(garbled);
    out << "{not json";
  }
  CHECK_THROWS_WITH_AS(load_model(garbled), doctest::Contains("not valid JSON"),
                       std::invalid_argument);
  std::remove(garbled.c_str());
}
