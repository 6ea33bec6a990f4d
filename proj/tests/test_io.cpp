#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "stpjsr/error.hpp"
#include "stpjsr/io.hpp"
#include "support.hpp"

using namespace stpjsr;

namespace {

const std::filesystem::path kFixtures = STPJSR_FIXTURES;

std::string load_error(const std::string& text) {
  try {
    (void)io::parse_system(text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("example fixtures load") {
  const auto e1 = io::load_system(kFixtures / "example1.json");
  REQUIRE(e1.system);
  CHECK(e1.system->matrices() == testing::example1().matrices());
  CHECK_FALSE(e1.dfa);
  CHECK_FALSE(e1.omega);

  const auto e2 = io::load_system(kFixtures / "example2.json");
  CHECK_FALSE(e2.system);
  REQUIRE(e2.dfa);
  CHECK(e2.dfa->num_states() == 4);
  CHECK(e2.dfa->edges().size() == 9);
  CHECK(*e2.dfa == testing::example2());
  CHECK_THROWS_AS((void)e2.matrices(), Error);

  const auto e3 = io::load_system(kFixtures / "example3.json");
  const auto c = e3.constrained();
  CHECK(c.system.matrices() == testing::example1().matrices());
  CHECK(c.dfa == testing::example2());

  const auto mk = io::load_system(kFixtures / "markov_example.json");
  REQUIRE(mk.omega);
  CHECK(mk.omega->rows() == 4);
}

TEST_CASE("load errors name the offending field") {
  const std::string base = R"({"n": 1, "m": 1, "matrices": [[[0.5]]], )";
  const auto bad_edge = R"({"dfa": {"states": 4, "labels": 4, "edges": [[1, 2, 1], [5, 1, 1]]}})";
  CHECK(load_error(bad_edge).find("dfa.edges[1][0]") != std::string::npos);
  CHECK(load_error(R"({"dfa": {"states": 2, "labels": 1, "edges": [[1, 2, 1], [1, 1, 1], [2, 1, 1]]}})")
            .find("duplicate") != std::string::npos);
  CHECK(load_error(R"({"dfa": {"states": 2, "labels": 1, "edges": [[1, 2, 1]]}})").find("no outgoing") !=
        std::string::npos);
  CHECK(load_error(R"({"dfa": {"states": 2, "labels": 1, "edges": [[1, 2]]}})").find("dfa.edges[0]") !=
        std::string::npos);
  CHECK(load_error(R"({"dfa": {"labels": 1, "edges": []}})").find("dfa.states") != std::string::npos);
  CHECK(load_error(R"({"n": 2, "m": 1, "matrices": [[[1, 2], [3]]]})").find("matrices[0][1]") != std::string::npos);
  CHECK(load_error(R"({"n": 2, "m": 1, "matrices": [[[1, 2, 3], [4, 5, 6]]]})").find("matrices[0]") !=
        std::string::npos);
  CHECK(load_error(R"({"n": 1, "m": 2, "matrices": [[[1]]]})").find("matrices") != std::string::npos);
  CHECK(load_error(R"({"n": 1, "m": 1, "matrices": [[["x"]]]})").find("matrices[0][0][0]") != std::string::npos);
  CHECK(load_error(R"({"m": 1, "matrices": [[[1]]]})").find("'n'") != std::string::npos);
  CHECK(load_error(base + R"("omega": [[2]]})").find("omega") != std::string::npos);
  CHECK(load_error(base + R"("omega": [[1, 0], [0, 1]]})").find("omega") != std::string::npos);
  CHECK(load_error(base + R"("dfa": {"states": 1, "labels": 2, "edges": [[1, 1, 1]]}})").find("dfa.labels") !=
        std::string::npos);
  CHECK(load_error("{\n  \"n\": 1,\n  \"m\": 1\n  \"matrices\": []\n}").find("line 4") != std::string::npos);
  CHECK(load_error("[1, 2]").find("expected an object") != std::string::npos);
}

TEST_CASE("systems round trip through JSON") {
  testing::Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const ConstrainedSystem c(rng.system(3, 3), rng.dfa(3, 3));
    const auto back = io::parse_system(io::to_json(c).dump());
    REQUIRE(back.system);
    CHECK(back.system->matrices() == c.system.matrices());
    REQUIRE(back.dfa);
    CHECK(*back.dfa == c.dfa);
  }
}

TEST_CASE("floats are written in shortest round-trip form") {
  CHECK(io::to_json(Matrix{{0.1, -0.35}, {1e-300, 2.0}}).dump() == "[[0.1,-0.35],[1e-300,2.0]]");
}
