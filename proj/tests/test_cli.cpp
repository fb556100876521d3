#include <doctest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>

using nlohmann::json;

namespace {

const std::string cli = FACERING_CLI;
const std::filesystem::path data_dir = FACERING_DATA;
const std::filesystem::path schema_path =
    std::filesystem::path(FACERING_DATA).parent_path().parent_path() / "docs" / "report.schema.json";

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string command = cli + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buffer[4096];
  std::size_t n;
  while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) out.append(buffer, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fixture(const std::string& name) { return (data_dir / name).string(); }

// Validator for the keywords the report schema uses: $ref, oneOf, type,
// required, properties, additionalProperties, items, const, enum, minimum, maximum.
class SchemaValidator {
 public:
  explicit SchemaValidator(json root) : root_(std::move(root)) {}

  bool valid(const json& value) const { return check(root_, value); }

 private:
  const json& resolve(const std::string& ref) const {
    const json& node = root_["$defs"][ref.substr(std::string("#/$defs/").size())];
    return node;
  }

  static bool type_matches(const std::string& type, const json& v) {
    if (type == "object") return v.is_object();
    if (type == "array") return v.is_array();
    if (type == "string") return v.is_string();
    if (type == "integer") return v.is_number_integer();
    if (type == "number") return v.is_number();
    if (type == "boolean") return v.is_boolean();
    return false;
  }

  bool check(const json& schema, const json& v) const {
    if (schema.contains("$ref") && !check(resolve(schema["$ref"]), v)) return false;
    if (schema.contains("type") && !type_matches(schema["type"], v)) return false;
    if (schema.contains("const") && v != schema["const"]) return false;
    if (schema.contains("enum") && std::find(schema["enum"].begin(), schema["enum"].end(), v) == schema["enum"].end())
      return false;
    if (schema.contains("minimum") && v.is_number() && v.get<double>() < schema["minimum"].get<double>()) return false;
    if (schema.contains("maximum") && v.is_number() && v.get<double>() > schema["maximum"].get<double>()) return false;
    if (schema.contains("oneOf")) {
      int matches = 0;
      for (const auto& option : schema["oneOf"]) matches += check(option, v) ? 1 : 0;
      if (matches != 1) return false;
    }
    if (v.is_object()) {
      if (schema.contains("required"))
        for (const auto& key : schema["required"])
          if (!v.contains(key.get<std::string>())) return false;
      for (const auto& [key, item] : v.items()) {
        if (schema.contains("properties") && schema["properties"].contains(key)) {
          if (!check(schema["properties"][key], item)) return false;
        } else if (schema.contains("additionalProperties") && !check(schema["additionalProperties"], item)) {
          return false;
        }
      }
    }
    if (v.is_array() && schema.contains("items"))
      for (const auto& item : v)
        if (!check(schema["items"], item)) return false;
    return true;
  }

  json root_;
};

const SchemaValidator& validator() {
  static const SchemaValidator instance = [] {
    std::ifstream in(schema_path);
    REQUIRE(in.good());
    return SchemaValidator(json::parse(in));
  }();
  return instance;
}

json run_json(const std::string& args, int expected_code = 0) {
  const auto r = run(args + " --format json");
  CHECK(r.code == expected_code);
  const auto doc = json::parse(r.out);
  CHECK(doc["schema"] == 1);
  CHECK(validator().valid(doc));
  return doc;
}

}  // namespace

TEST_CASE("betti command") {
  const auto doc = run_json("betti " + fixture("pentagon.json"));
  CHECK(doc["command"] == "betti");
  CHECK(doc["betti"]["entries"] == json::parse(R"([{"i":0,"j":0,"dim":1},{"i":-1,"j":4,"dim":5},
                                                   {"i":-2,"j":6,"dim":5},{"i":-3,"j":10,"dim":1}])"));
  CHECK(run_json("betti " + fixture("boundary_tetrahedron.json"))["betti"]["entries"] ==
        json::parse(R"([{"i":0,"j":0,"dim":1},{"i":-1,"j":8,"dim":1}])"));
  const auto empty = run_json("betti --multigraded " + fixture("empty_face_2.json"));
  CHECK(empty["betti"]["total_degree_dims"] == json::parse(R"({"0":1,"1":2,"2":1})"));
  CHECK(empty["multigraded"][1]["ghost"] == true);

  const auto text = run("betti " + fixture("pentagon.json"));
  CHECK(text.code == 0);
  CHECK(text.out.find("1 + 5t^3 + 5t^4 + t^7") != std::string::npos);

  const auto bounded = run_json("betti --verify-nonsquarefree 5 " + fixture("boundary_triangle.json"));
  CHECK(bounded["nonsquarefree"]["violations"] == 0);
}

TEST_CASE("input errors exit with 2") {
  CHECK(run("betti " + fixture("bad_vertex.json")).code == 2);
  CHECK(run("betti " + fixture("malformed.json")).code == 2);
  CHECK(run("betti " + fixture("no_such_file.json")).code == 2);
  CHECK(run("betti --field fp:4 " + fixture("pentagon.json")).code == 2);
  CHECK(run("betti --format yaml " + fixture("pentagon.json")).code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("dual " + fixture("../../data/fixtures/pentagon.json")).code == 0);
}

TEST_CASE("verify command") {
  const auto doc = run_json("verify " + fixture("pentagon.json") + " " + fixture("rp2_6.json"));
  CHECK(doc["passed"] == 2);
  CHECK(doc["results"][1]["field_dependent_bidegrees"] == json::parse("[[-3,12],[-4,12]]"));
  const auto faulty = run_json("verify --inject-fault " + fixture("boundary_triangle.json"), 3);
  CHECK(faulty["results"][0]["fields"][0]["witness"]["i"] == -1);
  CHECK(faulty["results"][0]["fields"][0]["witness"]["j"] == 6);
  const auto two = run_json("verify --field fp:2 --field fp:5 " + fixture("hexagon.json"));
  CHECK(two["results"][0]["fields"].size() == 2);
  CHECK(run("verify --corpus").code == 0);
}

TEST_CASE("ring command") {
  const auto doc =
      run_json("ring --monomial 'v1 u2' --monomial 'v1^2 u2' --monomial 'u1' " + fixture("three_points.json"));
  CHECK(doc["classes"].size() == 6);
  // the only nonzero products involve the unit
  for (const auto& p : doc["products"]["nonzero"]) CHECK((p["left"] == 0 || p["right"] == 0));
  CHECK(doc["monomials"][0]["verdict"] == "potentially_nontrivial");
  CHECK(doc["monomials"][1]["verdict"] == "non_squarefree");
  CHECK(doc["monomials"][2]["cocycle"] == false);
  const auto pentagon = run_json("ring --min-degree 3 --max-degree 4 " + fixture("pentagon.json"));
  CHECK(pentagon["products"]["nonzero"].size() == 10);
}

TEST_CASE("pd command") {
  const auto doc = run_json("pd " + fixture("pentagon.json"));
  CHECK(doc["ok"] == true);
  CHECK(doc["flips"]["checked"] == 5);
  CHECK(run("pd " + fixture("rp2_6.json")).code == 2);
  CHECK(run("pd " + fixture("three_points.json")).code == 2);
}

TEST_CASE("lsop command") {
  const auto doc = run_json("lsop --multigraded " + fixture("hexagon.json"));
  CHECK(doc["regular"] == true);
  CHECK(doc["matches_koszul"] == true);
  CHECK(doc["bigraded_matches_koszul"] == true);
  const auto degenerate = run_json("lsop --lambda '1,0,0,0,0;1,0,0,0,0' " + fixture("pentagon.json"));
  CHECK(degenerate["regular"] == false);
  CHECK(degenerate["first_failing_degree"] == 1);
  CHECK(run("lsop --field fp:5 " + fixture("pentagon.json")).code == 2);
  CHECK(run("lsop --lambda '1,2' " + fixture("pentagon.json")).code == 2);
}

TEST_CASE("dual, arr and euler commands") {
  CHECK(run_json("dual " + fixture("boundary_triangle.json"))["dual"] == json::parse(R"({"m":3,"facets":[[]]})"));
  CHECK(run_json("arr " + fixture("three_points.json"))["arrangement"]["generators"] ==
        json::parse("[[1,2],[1,3],[2,3]]"));
  const auto stripped = run_json("arr " + fixture("arrangement_with_hyperplane.json"));
  CHECK(stripped["stripped_hyperplanes"] == 1);
  CHECK(stripped["complex"] == json::parse(R"({"m":3,"facets":[[1,3],[2]]})"));
  const auto euler = run_json("euler " + fixture("rp2_6.json"));
  CHECK(euler["ok"] == true);
  CHECK(euler["cubical_euler"] == 1);
}

TEST_CASE("deterministic output") {
  const auto a = run("random --m 6 --seed 42");
  const auto b = run("random --m 6 --seed 42");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run_json("random --m 6 --seed 42")["complex"]["m"] == 6);
  CHECK(run("random --m 6 --seed 43").out != a.out);
  CHECK(run("random --m 6 --density 1.5").code == 2);

  for (const char* command : {"betti", "ring", "verify"}) {
    const std::string file = fixture("rp2_6.json");
    const auto serial = run(std::string(command) + " --threads 1 --format json " + file);
    const auto parallel = run(std::string(command) + " --threads 4 --format json " + file);
    CHECK(serial.out == parallel.out);
  }
}

TEST_CASE("schema rejects malformed reports") {
  CHECK_FALSE(validator().valid(json::parse(R"({"schema":1,"command":"dual"})")));
  CHECK_FALSE(validator().valid(json::parse(R"({"schema":2,"command":"dual","complex":{"m":1,"facets":[]},
                                               "dual":{"m":1,"facets":[]}})")));
  CHECK(validator().valid(json::parse(R"({"schema":1,"command":"dual","complex":{"m":1,"facets":[[1]]},
                                         "dual":{"m":1,"facets":[[]]}})")));
}
