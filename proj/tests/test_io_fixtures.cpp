#include <doctest.h>

#include <filesystem>
#include <functional>
#include <set>

#include "facering/fixtures.hpp"
#include "facering/hochster.hpp"
#include "facering/io.hpp"
#include "facering/verify.hpp"

using namespace facering;

namespace {

const std::filesystem::path data_dir = FACERING_DATA;

ErrorCode code_of(const std::function<void()>& action) {
  try {
    action();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::invalid_input;
}

}  // namespace

TEST_CASE("complex JSON round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "facering_io_test";
  std::filesystem::create_directories(dir);
  for (const auto& fixture : fixture_corpus(24, 17, 8)) {
    CAPTURE(fixture.name);
    const auto path = dir / (fixture.name + ".json");
    save_complex(fixture.complex, path);
    CHECK(load_complex(path) == fixture.complex);
    CHECK(complex_from_json(nlohmann::json::parse(complex_to_json(fixture.complex).dump())) == fixture.complex);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("complex JSON layout") {
  CHECK(complex_to_json(SimplicialComplex::points(2)).dump() == R"({"m":2,"facets":[[1],[2]]})");
  CHECK(complex_to_json(SimplicialComplex::empty_face_only(2)).dump() == R"({"m":2,"facets":[[]]})");
  CHECK(complex_from_json(nlohmann::json::parse(R"({"m":2,"facets":[]})")) == SimplicialComplex::empty_face_only(2));
  // non-maximal and repeated facets collapse
  CHECK(complex_from_json(nlohmann::json::parse(R"({"m":3,"facets":[[1],[1,2],[2,1],[3]]})")) ==
        SimplicialComplex::from_facets(3, {{1, 2}, {3}}));
}

TEST_CASE("bundled fixtures load") {
  CHECK(load_complex(data_dir / "pentagon.json") == SimplicialComplex::polygon(5));
  CHECK(load_complex(data_dir / "hexagon.json") == SimplicialComplex::polygon(6));
  CHECK(load_complex(data_dir / "boundary_triangle.json") == SimplicialComplex::simplex_boundary(3));
  CHECK(load_complex(data_dir / "boundary_tetrahedron.json") == SimplicialComplex::simplex_boundary(4));
  CHECK(load_complex(data_dir / "three_points.json") == SimplicialComplex::points(3));
  CHECK(load_complex(data_dir / "empty_face_2.json") == SimplicialComplex::empty_face_only(2));
  CHECK(load_complex(data_dir / "rp2_6.json") == projective_plane6());
}

TEST_CASE("malformed inputs are rejected") {
  CHECK(code_of([] { load_complex(data_dir / "bad_vertex.json"); }) == ErrorCode::vertex_out_of_range);
  CHECK(code_of([] { load_complex(data_dir / "malformed.json"); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { load_complex(data_dir / "missing.json"); }) == ErrorCode::invalid_input);
  for (const char* text : {R"([1,2])", R"({"facets":[[1]]})", R"({"m":"3","facets":[]})", R"({"m":-1,"facets":[]})",
                           R"({"m":2,"facets":[1,2]})", R"({"m":2,"facets":[[1.5]]})", R"({"m":2})"})
    CHECK(code_of([&] { complex_from_json(nlohmann::json::parse(text)); }) == ErrorCode::invalid_input);
  CHECK(code_of([] { complex_from_json(nlohmann::json::parse(R"({"m":2,"facets":[[0]]})")); }) ==
        ErrorCode::vertex_out_of_range);
}

TEST_CASE("arrangement JSON") {
  const auto a = arrangement_from_json(read_json_file(data_dir / "arrangement_with_hyperplane.json"));
  CHECK(a.has_hyperplanes());
  CHECK(code_of([&] { arrangement_to_complex(a); }) == ErrorCode::hyperplane);
  const auto stripped = strip_hyperplanes(a);
  CHECK(stripped.hyperplanes == 1);
  CHECK(arrangement_to_json(stripped.arrangement).dump() == R"({"m":3,"generators":[[1,2],[2,3]]})");
  const auto k = arrangement_to_complex(stripped.arrangement);
  CHECK(k == SimplicialComplex::from_facets(3, {{1, 3}, {2}}));
  CHECK(arrangement_from_json(nlohmann::json::parse(arrangement_to_json(complex_to_arrangement(k)).dump())) ==
        complex_to_arrangement(k));
  CHECK(code_of([] { arrangement_from_json(nlohmann::json::parse(R"({"m":2,"generators":[[]]})")); }) ==
        ErrorCode::invalid_input);
}

TEST_CASE("fixture corpus") {
  const auto corpus = fixture_corpus();
  CHECK(corpus.size() == 51);
  std::set<std::string> names;
  for (const auto& f : corpus) {
    names.insert(f.name);
    CHECK(f.complex.vertex_count() <= 8);
  }
  CHECK(names.size() == corpus.size());
  CHECK(random_complex(7, 0.5, 11) == random_complex(7, 0.5, 11));
  CHECK(to_string(corpus.front().family) == "simplex");
  // the projective plane is a 2-dimensional pseudomanifold with f-vector (6, 15, 10)
  const auto rp2 = projective_plane6();
  std::map<int, int> f;
  for (VertexSet s : rp2.faces()) ++f[s.size()];
  CHECK(f == std::map<int, int>{{0, 1}, {1, 6}, {2, 15}, {3, 10}});
}

TEST_CASE("verify report JSON") {
  const auto report =
      verify_complex(SimplicialComplex::polygon(5), VerifyOptions{{Rationals{}, PrimeField(2)}, 7, 2, {}});
  CHECK(report.ok());
  const auto doc = verify_to_json(report);
  CHECK(doc["ok"] == true);
  CHECK(doc["fields"].size() == 2);
  CHECK(doc["fields"][0]["field"] == "q");
  CHECK(doc["fields"][0]["betti"]["poincare_series"] == "1 + 5t^3 + 5t^4 + t^7");
  CHECK(doc["field_dependent_bidegrees"].empty());
  CHECK(verify_to_text(report).find("q: ok") != std::string::npos);

  const auto rp2 = verify_complex(projective_plane6());
  CHECK(rp2.ok());
  CHECK(rp2.field_dependent_entries == std::vector<std::pair<int, int>>{{3, 6}, {4, 6}});

  VerifyOptions faulty;
  faulty.inject_fault = SignFlip{Multidegree{1, 1, 1}, 2, 0, 0};
  const auto broken = verify_complex(SimplicialComplex::simplex_boundary(3), faulty);
  CHECK_FALSE(broken.ok());
  REQUIRE(broken.fields[0].witness.has_value());
  CHECK(broken.fields[0].witness->i == 1);
  CHECK(broken.fields[0].witness->subset == VertexSet{1, 2, 3});
  CHECK(verify_to_json(broken)["fields"][0]["witness"]["i"] == -1);
}
