#include "facering/hochster.hpp"

namespace facering {

std::vector<std::pair<int, VertexSet>> ghost_vertex_contributions(const SimplicialComplex& k, const BettiTable& table) {
  VertexSet ghosts;
  for (int v = 1; v <= k.vertex_count(); ++v)
    if (!k.is_face(VertexSet{v})) ghosts.insert(v);
  std::vector<std::pair<int, VertexSet>> out;
  for (const auto& [key, dim] : table.refined())
    if (dim != 0 && key.second.intersects(ghosts)) out.push_back(key);
  return out;
}

}  // namespace facering
