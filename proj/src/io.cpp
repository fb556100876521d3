#include "facering/io.hpp"

#include <fstream>

namespace facering {

namespace {

int read_vertex_count(const nlohmann::json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::invalid_input, "expected a JSON object");
  if (!doc.contains("m") || !doc["m"].is_number_integer())
    throw Error(ErrorCode::invalid_input, "missing integer field \"m\"");
  const auto m = doc["m"].get<long long>();
  if (m < 0 || m > max_vertices)
    throw Error(ErrorCode::invalid_input, "\"m\" must lie in 0.." + std::to_string(max_vertices));
  return int(m);
}

std::vector<std::vector<int>> read_lists(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array())
    throw Error(ErrorCode::invalid_input, std::string("missing array field \"") + key + "\"");
  std::vector<std::vector<int>> lists;
  for (const auto& entry : doc[key]) {
    if (!entry.is_array())
      throw Error(ErrorCode::invalid_input, std::string("entries of \"") + key + "\" must be arrays");
    std::vector<int> list;
    for (const auto& v : entry) {
      if (!v.is_number_integer()) throw Error(ErrorCode::invalid_input, "vertex labels must be integers");
      const auto x = v.get<long long>();
      if (x < 1 || x > max_vertices)
        throw Error(ErrorCode::vertex_out_of_range, "vertex " + std::to_string(x) + " out of range");
      list.push_back(int(x));
    }
    lists.push_back(std::move(list));
  }
  return lists;
}

nlohmann::ordered_json sets_to_json(const std::vector<VertexSet>& sets) {
  auto out = nlohmann::ordered_json::array();
  for (VertexSet s : sets) out.push_back(vertex_set_to_json(s));
  return out;
}

}  // namespace

SimplicialComplex complex_from_json(const nlohmann::json& doc) {
  const int m = read_vertex_count(doc);
  return SimplicialComplex::from_facet_lists(m, read_lists(doc, "facets"));
}

nlohmann::ordered_json complex_to_json(const SimplicialComplex& k) {
  // {∅} comes out as [[]]; an empty list reads back to the same complex.
  return {{"m", k.vertex_count()}, {"facets", sets_to_json(k.facets())}};
}

Arrangement arrangement_from_json(const nlohmann::json& doc) {
  const int m = read_vertex_count(doc);
  return Arrangement::from_lists(m, read_lists(doc, "generators"));
}

nlohmann::ordered_json arrangement_to_json(const Arrangement& a) {
  return {{"m", a.ambient_dimension()}, {"generators", sets_to_json(a.generators())}};
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_input, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::invalid_input, path.string() + ": " + e.what());
  }
}

SimplicialComplex load_complex(const std::filesystem::path& path) { return complex_from_json(read_json_file(path)); }

void save_complex(const SimplicialComplex& k, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::invalid_input, "cannot write " + path.string());
  out << complex_to_json(k).dump() << "\n";
}

nlohmann::ordered_json vertex_set_to_json(VertexSet s) { return s.to_vector(); }

nlohmann::ordered_json betti_to_json(const BettiTable& table) {
  auto entries = nlohmann::ordered_json::array();
  for (const auto& [key, dim] : table.entries())
    entries.push_back({{"i", -key.first}, {"j", 2 * key.second}, {"dim", dim}});
  auto totals = nlohmann::ordered_json::object();
  const auto dims = total_degree_dims(table);
  for (const auto& [k, dim] : dims) totals[std::to_string(k)] = dim;
  return {{"entries", entries},
          {"total_degree_dims", totals},
          {"poincare_series", format_poincare_series(dims)},
          {"euler_characteristic", euler_characteristic(dims)}};
}

}  // namespace facering
