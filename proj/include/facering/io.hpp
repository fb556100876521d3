#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>

#include "facering/betti.hpp"
#include "facering/simplicial.hpp"

namespace facering {

/// Reads {"m": <int>, "facets": [[...], ...]}; facets need not be maximal.
/// Throws invalid_input (or vertex_out_of_range) on malformed documents.
SimplicialComplex complex_from_json(const nlohmann::json& doc);
nlohmann::ordered_json complex_to_json(const SimplicialComplex& k);

/// {"m": <int>, "generators": [[...], ...]}.
Arrangement arrangement_from_json(const nlohmann::json& doc);
nlohmann::ordered_json arrangement_to_json(const Arrangement& a);

nlohmann::json read_json_file(const std::filesystem::path& path);
SimplicialComplex load_complex(const std::filesystem::path& path);
void save_complex(const SimplicialComplex& k, const std::filesystem::path& path);

nlohmann::ordered_json vertex_set_to_json(VertexSet s);
nlohmann::ordered_json betti_to_json(const BettiTable& table);

}  // namespace facering
