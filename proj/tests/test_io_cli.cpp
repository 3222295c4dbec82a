#include "fixtrace/cli.hpp"
#include "fixtrace/io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

using namespace fixtrace;

namespace {

std::string fx(const std::string& name) {
  return std::string(FIXTRACE_FIXTURE_DIR) + "/" + name;
}

JobSpec job(std::string command, std::vector<std::string> inputs,
            std::optional<std::string> basepoint = std::nullopt) {
  JobSpec j;
  j.command = std::move(command);
  j.inputs = std::move(inputs);
  j.basepoint = std::move(basepoint);
  return j;
}

bool same_complex(const SimplicialComplex& a, const SimplicialComplex& b) {
  return a.vertex_labels == b.vertex_labels && a.simplices == b.simplices;
}

}  // namespace

TEST_CASE("complex files round-trip through serialization") {
  for (const char* name :
       {"hexagon.json", "point.json", "hollow_triangle.json",
        "solid_triangle.json", "wedge.json", "octahedron.json", "torus7.json",
        "triangle_star.json", "interval.json"}) {
    SimplicialComplex k = parse_complex(load_json(fx(name)));
    SimplicialComplex again = parse_complex(serialize_complex(k));
    INFO(name);
    CHECK(same_complex(k, again));
  }
}

TEST_CASE("complex parsing errors") {
  SECTION("duplicate vertex inside a simplex names the simplex") {
    json j = json::parse(R"({"vertices": ["a", "b"], "maximal": [["a", "a"]]})");
    try {
      parse_complex(j);
      FAIL("expected an error");
    } catch (const CliError& e) {
      CHECK(e.code == "E_BAD_SIMPLEX");
      CHECK(std::string(e.what()).find("a") != std::string::npos);
    }
  }
  SECTION("unknown vertex label") {
    json j = json::parse(R"({"vertices": ["a"], "maximal": [["a", "zz"]]})");
    try {
      parse_complex(j);
      FAIL("expected an error");
    } catch (const CliError& e) {
      CHECK(e.code == "E_UNKNOWN_VERTEX");
    }
  }
  SECTION("missing keys") {
    CHECK_THROWS_AS(parse_complex(json::object()), CliError);
  }
}

TEST_CASE("map parsing") {
  SimplicialComplex hex = parse_complex(load_json(fx("hexagon.json")));
  SECTION("the flip file is a valid self-map with two fixed vertices") {
    SimplicialMap f = parse_map(load_json(fx("hexagon_flip.json")), hex);
    int fixed = 0;
    for (int v = 0; v < hex.vertex_count(); ++v)
      if (f.vertex_map[v] == v) ++fixed;
    CHECK(fixed == 2);
  }
  SECTION("the rotation file is valid and fixed-point free on vertices") {
    SimplicialMap f = parse_map(load_json(fx("hexagon_rotation.json")), hex);
    for (int v = 0; v < hex.vertex_count(); ++v) CHECK(f.vertex_map[v] != v);
  }
  SECTION("an edge collapsed to non-adjacent vertices is rejected") {
    json j = {{"vertex_map",
               {{"v0", "v0"},
                {"v1", "v3"},
                {"v2", "v2"},
                {"v3", "v3"},
                {"v4", "v4"},
                {"v5", "v5"}}}};
    try {
      parse_map(j, hex);
      FAIL("expected an error");
    } catch (const CliError& e) {
      CHECK(e.code == "E_MAP_NOT_SIMPLICIAL");
      CHECK(std::string(e.what()).find("v0 v1") != std::string::npos);
    }
  }
  SECTION("missing vertex") {
    json j = {{"vertex_map", {{"v0", "v0"}}}};
    CHECK_THROWS_AS(parse_map(j, hex), CliError);
  }
}

TEST_CASE("embedding parsing") {
  SimplicialComplex hex = parse_complex(load_json(fx("hexagon.json")));
  EmbeddingData e = parse_embedding(load_json(fx("hexagon_embedding.json")), hex);
  CHECK(e.dim == 2);
  CHECK(e.retraction == Retraction::Radial);
  CHECK(e.coords[0] == Point{Rat(2), Rat(0)});
  SECTION("bad rational is rejected") {
    json j = load_json(fx("hexagon_embedding.json"));
    j["coordinates"]["v0"][0] = "1.5";
    try {
      parse_embedding(j, hex);
      FAIL("expected an error");
    } catch (const CliError& err) {
      CHECK(err.code == "E_BAD_RATIONAL");
    }
  }
}

TEST_CASE("group and matrix files") {
  FiniteGroupTable c2 = parse_group(load_json(fx("c2.json")));
  CHECK(c2.order() == 2);
  FiniteGroupTable s3 = parse_group(load_json(fx("s3.json")));
  CHECK(s3.order() == 6);
  CHECK(conjugacy_classes(s3).size() == 3);

  SECTION("ring element grammar") {
    RElem x = parse_ring_element("2*t + 1*e", c2);
    CHECK(augmentation(x) == 3);
    CHECK(x.terms.at(1) == 2);
    CHECK(parse_ring_element("0", c2).is_zero());
    CHECK(parse_ring_element("e - t", c2).terms.at(1) == -1);
    CHECK(parse_ring_element("-3*t", c2).terms.at(1) == -3);
    CHECK(parse_ring_element("5", c2).terms.at(0) == 5);
    CHECK_THROWS_AS(parse_ring_element("1*zz", c2), CliError);
    CHECK_THROWS_AS(parse_ring_element("1*e +", c2), CliError);
  }
  SECTION("ring element strings round-trip") {
    for (const char* txt : {"2*t + 1*e", "1*e - 1*t", "-3*t", "0"}) {
      RElem x = parse_ring_element(txt, c2);
      CHECK(parse_ring_element(ring_element_string(x, c2), c2) == x);
    }
  }
  SECTION("matrix file") {
    RMat m = parse_ring_matrix(load_json(fx("c2_diag_tt.json")), c2);
    REQUIRE(m.rows() == 2);
    CHECK(m.at(0, 0).terms.at(1) == 1);
    CHECK(m.at(0, 1).is_zero());
  }
  SECTION("bad group table") {
    json j = {{"elements", {"e", "x"}}, {"table", {{0, 1}, {1, 1}}}};
    try {
      parse_group(j);
      FAIL("expected an error");
    } catch (const CliError& e) {
      CHECK(e.code == "E_BAD_GROUP_TABLE");
    }
  }
}

TEST_CASE("run: lefschetz on the hexagon flip") {
  RunResult r = run(job("lefschetz", {fx("hexagon.json"), fx("hexagon_flip.json")}));
  REQUIRE(r.exit_code == 0);
  CHECK(r.report.at("homological") == 2);
  CHECK(r.report.at("chain") == 2);
  CHECK(r.report.at("agree") == true);
}

TEST_CASE("run: reidemeister on the hexagon flip") {
  RunResult r = run(job("reidemeister",
                        {fx("hexagon.json"), fx("hexagon_flip.json")}, "v0"));
  REQUIRE(r.exit_code == 0);
  CHECK(r.report.at("exact") == true);
  CHECK(r.report.at("tier") == "abelian-exact");
  REQUIRE(r.report.at("classes").size() == 2);
  CHECK(r.report.at("classes")[0].at("coefficient") == 1);
  CHECK(r.report.at("classes")[1].at("coefficient") == 1);
  CHECK(r.report.at("augmentation") == 2);
  CHECK(r.report.at("augmentation_agrees") == true);
}

TEST_CASE("run: nielsen rejects a moved basepoint") {
  RunResult r = run(job("nielsen",
                        {fx("hexagon.json"), fx("hexagon_rotation.json")}, "v0"));
  REQUIRE(r.exit_code != 0);
  REQUIRE(r.report.contains("error"));
  CHECK(r.report.at("error").at("code") == "E_BASEPOINT_NOT_FIXED");
}

TEST_CASE("run: homology command") {
  RunResult r = run(job("homology", {fx("octahedron.json")}));
  REQUIRE(r.exit_code == 0);
  CHECK(r.report.at("betti") == json::array({1, 0, 1}));
  CHECK(r.report.at("euler") == 2);
}

TEST_CASE("run: index and geomcheck commands") {
  SECTION("hexagon flip indices") {
    RunResult r = run(job("index", {fx("hexagon.json"), fx("hexagon_flip.json"),
                                    fx("hexagon_embedding.json")}));
    REQUIRE(r.exit_code == 0);
    CHECK(r.report.at("index_sum") == 2);
    CHECK(r.report.at("lefschetz") == 2);
    CHECK(r.report.at("hopf_agrees") == true);
    REQUIRE(r.report.at("fixed_points").size() == 2);
  }
  SECTION("rotation has an empty index report") {
    RunResult r = run(job("index", {fx("hexagon.json"),
                                    fx("hexagon_rotation.json"),
                                    fx("hexagon_embedding.json")}));
    REQUIRE(r.exit_code == 0);
    CHECK(r.report.at("fixed_points").empty());
    CHECK(r.report.at("index_sum") == 0);
    CHECK(r.report.at("hopf_agrees") == true);
  }
  SECTION("geomcheck agreement on the flip") {
    RunResult r = run(job("geomcheck",
                          {fx("hexagon.json"), fx("hexagon_flip.json"),
                           fx("hexagon_embedding.json")},
                          "v0"));
    REQUIRE(r.exit_code == 0);
    CHECK(r.report.at("agree") == true);
    CHECK(r.report.at("algebraic") == r.report.at("geometric"));
  }
  SECTION("interval flip in ambient dimension 1") {
    RunResult r = run(job("geomcheck",
                          {fx("interval.json"), fx("interval_flip.json"),
                           fx("interval_embedding.json")},
                          "v1"));
    REQUIRE(r.exit_code == 0);
    CHECK(r.report.at("agree") == true);
  }
  SECTION("epsilon override is honored") {
    JobSpec j = job("index", {fx("hexagon.json"), fx("hexagon_flip.json"),
                              fx("hexagon_embedding.json")});
    j.epsilon = "1/8";
    RunResult r = run(j);
    REQUIRE(r.exit_code == 0);
    CHECK(r.report.at("index_sum") == 2);
  }
}

TEST_CASE("run: bicat commands") {
  SECTION("hh0 of Z[S3]") {
    RunResult r = run(job("hh0", {fx("s3.json")}));
    REQUIRE(r.exit_code == 0);
    CHECK(r.report.at("rank") == 3);
    CHECK(r.report.at("twisted") == false);
  }
  SECTION("trace of diag(t, t) over Z[C2]") {
    RunResult r = run(job("trace", {fx("c2.json"), fx("c2_diag_tt.json")}));
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.report.at("trace").size() == 1);
    CHECK(r.report.at("trace")[0].at("class") == "t");
    CHECK(r.report.at("trace")[0].at("coefficient") == 2);
  }
}

TEST_CASE("exit status is nonzero exactly when the report carries an error") {
  std::vector<JobSpec> jobs = {
      job("homology", {fx("hexagon.json")}),
      job("homology", {fx("no_such_file.json")}),
      job("lefschetz", {fx("hexagon.json"), fx("hexagon_flip.json")}),
      job("lefschetz", {fx("hexagon.json")}),
      job("reidemeister", {fx("hexagon.json"), fx("hexagon_flip.json")}, "v0"),
      job("reidemeister", {fx("hexagon.json"), fx("hexagon_flip.json")}),
      job("reidemeister", {fx("hexagon.json"), fx("hexagon_flip.json")}, "zz"),
      job("nielsen", {fx("hexagon.json"), fx("hexagon_rotation.json")}, "v0"),
      job("bogus", {}),
      job("hh0", {fx("s3.json")}),
  };
  for (const JobSpec& j : jobs) {
    RunResult r = run(j);
    INFO(j.command);
    CHECK((r.exit_code != 0) == r.report.contains("error"));
  }
}

TEST_CASE("reports carry no floating point numbers") {
  // every numeric field in every report is emitted as an exact integer
  std::vector<RunResult> results = {
      run(job("homology", {fx("torus7.json")})),
      run(job("lefschetz", {fx("hexagon.json"), fx("hexagon_flip.json")})),
      run(job("reidemeister", {fx("hexagon.json"), fx("hexagon_flip.json")},
              "v0")),
      run(job("index", {fx("hexagon.json"), fx("hexagon_flip.json"),
                        fx("hexagon_embedding.json")})),
      run(job("trace", {fx("c2.json"), fx("c2_diag_tt.json")})),
  };
  std::function<void(const json&)> walk = [&](const json& j) {
    if (j.is_number_float()) FAIL("float found: " + j.dump());
    if (j.is_object())
      for (const auto& [k, v] : j.items()) walk(v);
    if (j.is_array())
      for (const auto& v : j) walk(v);
  };
  for (const RunResult& r : results) {
    REQUIRE(r.exit_code == 0);
    walk(r.report);
  }
}
