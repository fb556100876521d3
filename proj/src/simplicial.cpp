#include "facering/simplicial.hpp"

#include <algorithm>

namespace facering {

namespace {

void check_vertex_count(int m) {
  if (m < 0 || m > max_vertices)
    throw Error(ErrorCode::invalid_input,
                "vertex count " + std::to_string(m) + " outside 0.." + std::to_string(max_vertices));
}

void check_in_range(int m, VertexSet s) {
  if (!s.is_subset_of(VertexSet::full(m)))
    throw Error(ErrorCode::vertex_out_of_range,
                "set " + s.to_string() + " uses a vertex outside 1.." + std::to_string(m));
}

/// Drops duplicates and every set contained in another; result sorted lexicographically.
std::vector<VertexSet> keep_maximal(std::vector<VertexSet> sets) {
  std::sort(sets.begin(), sets.end(),
            [](VertexSet a, VertexSet b) { return a.size() != b.size() ? a.size() > b.size() : a < b; });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<VertexSet> kept;
  for (VertexSet s : sets) {
    bool covered = std::any_of(kept.begin(), kept.end(), [&](VertexSet k) { return s.is_subset_of(k); });
    if (!covered) kept.push_back(s);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

std::vector<VertexSet> keep_minimal(std::vector<VertexSet> sets) {
  std::sort(sets.begin(), sets.end(),
            [](VertexSet a, VertexSet b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<VertexSet> kept;
  for (VertexSet s : sets) {
    bool covered = std::any_of(kept.begin(), kept.end(), [&](VertexSet k) { return k.is_subset_of(s); });
    if (!covered) kept.push_back(s);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace

SimplicialComplex SimplicialComplex::from_facets(int m, std::vector<VertexSet> facets) {
  check_vertex_count(m);
  for (VertexSet f : facets) check_in_range(m, f);
  if (facets.empty()) facets.push_back(VertexSet{});
  return SimplicialComplex(m, keep_maximal(std::move(facets)));
}

SimplicialComplex SimplicialComplex::from_facet_lists(int m, const std::vector<std::vector<int>>& facets) {
  check_vertex_count(m);
  std::vector<VertexSet> sets;
  sets.reserve(facets.size());
  for (const auto& list : facets) {
    VertexSet s;
    for (int v : list) {
      if (v < 1 || v > m)
        throw Error(ErrorCode::vertex_out_of_range, "vertex " + std::to_string(v) + " outside 1.." + std::to_string(m));
      s.insert(v);
    }
    sets.push_back(s);
  }
  return from_facets(m, std::move(sets));
}

SimplicialComplex SimplicialComplex::simplex(int m) { return from_facets(m, {VertexSet::full(m)}); }

SimplicialComplex SimplicialComplex::simplex_boundary(int m) {
  check_vertex_count(m);
  std::vector<VertexSet> facets;
  for (int v = 1; v <= m; ++v) facets.push_back(VertexSet::full(m) - VertexSet{v});
  return from_facets(m, std::move(facets));
}

SimplicialComplex SimplicialComplex::points(int m) {
  check_vertex_count(m);
  std::vector<VertexSet> facets;
  for (int v = 1; v <= m; ++v) facets.push_back(VertexSet{v});
  return from_facets(m, std::move(facets));
}

SimplicialComplex SimplicialComplex::polygon(int m) {
  if (m < 3) throw Error(ErrorCode::invalid_input, "a polygon needs at least 3 vertices");
  std::vector<VertexSet> facets;
  for (int v = 1; v <= m; ++v) facets.push_back(VertexSet{v, v % m + 1});
  return from_facets(m, std::move(facets));
}

SimplicialComplex SimplicialComplex::empty_face_only(int m) { return from_facets(m, {}); }

int SimplicialComplex::max_face_size() const {
  int best = 0;
  for (VertexSet f : facets_) best = std::max(best, f.size());
  return best;
}

std::vector<VertexSet> SimplicialComplex::faces() const {
  std::vector<VertexSet> all;
  for (VertexSet f : facets_) for_each_subset(f, [&](VertexSet s) { all.push_back(s); });
  std::sort(all.begin(), all.end(),
            [](VertexSet a, VertexSet b) { return a.size() != b.size() ? a.size() < b.size() : a < b; });
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

std::vector<std::uint64_t> SimplicialComplex::f_vector() const {
  std::vector<std::uint64_t> counts(std::size_t(max_face_size()) + 1, 0);
  for (VertexSet f : faces()) ++counts[std::size_t(f.size())];
  return counts;
}

std::string SimplicialComplex::to_string() const {
  std::string s = "K(m=" + std::to_string(m_) + "; ";
  for (std::size_t i = 0; i < facets_.size(); ++i) s += (i ? " " : "") + facets_[i].to_string();
  return s + ")";
}

Arrangement Arrangement::create(int m, std::vector<VertexSet> generators) {
  check_vertex_count(m);
  for (VertexSet g : generators) {
    check_in_range(m, g);
    if (g.empty()) throw Error(ErrorCode::invalid_input, "the empty index set would remove all of C^m");
  }
  return Arrangement(m, keep_minimal(std::move(generators)));
}

Arrangement Arrangement::from_lists(int m, const std::vector<std::vector<int>>& generators) {
  check_vertex_count(m);
  std::vector<VertexSet> sets;
  for (const auto& list : generators) {
    VertexSet s;
    for (int v : list) {
      if (v < 1 || v > m)
        throw Error(ErrorCode::vertex_out_of_range, "index " + std::to_string(v) + " outside 1.." + std::to_string(m));
      s.insert(v);
    }
    sets.push_back(s);
  }
  return create(m, std::move(sets));
}

bool Arrangement::has_hyperplanes() const {
  return std::any_of(generators_.begin(), generators_.end(), [](VertexSet g) { return g.size() == 1; });
}

std::vector<VertexSet> minimal_nonfaces(const SimplicialComplex& k) {
  const int m = k.vertex_count();
  std::vector<VertexSet> found;
  for (VertexSet face : k.faces()) {
    for (int x = 1; x <= m; ++x) {
      if (face.contains(x)) continue;
      VertexSet candidate = face | VertexSet{x};
      if (k.is_face(candidate)) continue;
      bool minimal = true;
      for (int y : face)
        if (!k.is_face(candidate - VertexSet{y})) {
          minimal = false;
          break;
        }
      if (minimal) found.push_back(candidate);
    }
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

Arrangement complex_to_arrangement(const SimplicialComplex& k) {
  for (int v = 1; v <= k.vertex_count(); ++v)
    if (!k.is_face(VertexSet{v}))
      throw Error(ErrorCode::hyperplane, "vertex " + std::to_string(v) +
                                             " is not a face; the arrangement would contain the hyperplane z_" +
                                             std::to_string(v) + " = 0");
  return Arrangement::create(k.vertex_count(), minimal_nonfaces(k));
}

std::vector<VertexSet> maximal_independent_sets(int m, const std::vector<VertexSet>& forbidden) {
  std::vector<VertexSet> family{VertexSet::full(m)};
  for (VertexSet g : forbidden) {
    std::vector<VertexSet> next;
    for (VertexSet s : family) {
      if (!g.is_subset_of(s)) {
        next.push_back(s);
        continue;
      }
      for (int x : g) next.push_back(s - VertexSet{x});
    }
    family = keep_maximal(std::move(next));
  }
  return family;
}

SimplicialComplex arrangement_to_complex(const Arrangement& a) {
  if (a.has_hyperplanes())
    throw Error(ErrorCode::hyperplane, "arrangement contains a coordinate hyperplane; strip it first");
  return SimplicialComplex::from_facets(a.ambient_dimension(),
                                        maximal_independent_sets(a.ambient_dimension(), a.generators()));
}

StrippedArrangement strip_hyperplanes(const Arrangement& a) {
  VertexSet removed;
  for (VertexSet g : a.generators())
    if (g.size() == 1) removed = removed | g;
  const int m = a.ambient_dimension();
  std::vector<int> new_index(std::size_t(m) + 1, 0);
  int next = 0;
  for (int v = 1; v <= m; ++v)
    if (!removed.contains(v)) new_index[std::size_t(v)] = ++next;
  std::vector<VertexSet> kept;
  for (VertexSet g : a.generators()) {
    if (g.size() == 1) continue;
    // Minimality guarantees g avoids every removed coordinate.
    VertexSet h;
    for (int v : g) h.insert(new_index[std::size_t(v)]);
    kept.push_back(h);
  }
  return {Arrangement::create(next, std::move(kept)), removed.size()};
}

SimplicialComplex dual_complex(const SimplicialComplex& k) {
  if (k.is_full_simplex()) throw Error(ErrorCode::full_simplex, "the dual of the full simplex is the void complex");
  const VertexSet all = VertexSet::full(k.vertex_count());
  std::vector<VertexSet> facets;
  for (VertexSet n : minimal_nonfaces(k)) facets.push_back(all - n);
  return SimplicialComplex::from_facets(k.vertex_count(), std::move(facets));
}

SimplicialComplex full_subcomplex(const SimplicialComplex& k, VertexSet subset) {
  if (!subset.is_subset_of(VertexSet::full(k.vertex_count())))
    throw Error(ErrorCode::vertex_out_of_range, "subset " + subset.to_string() + " exceeds the vertex set");
  std::vector<int> new_index(std::size_t(k.vertex_count()) + 1, 0);
  int next = 0;
  for (int v : subset) new_index[std::size_t(v)] = ++next;
  std::vector<VertexSet> facets;
  for (VertexSet f : k.facets()) {
    VertexSet restricted;
    for (int v : f& subset) restricted.insert(new_index[std::size_t(v)]);
    facets.push_back(restricted);
  }
  return SimplicialComplex::from_facets(subset.size(), std::move(facets));
}

std::vector<CubicalCell> cubical_cells(const SimplicialComplex& k) {
  const VertexSet all = VertexSet::full(k.vertex_count());
  std::vector<CubicalCell> cells;
  for (VertexSet face : k.faces())
    for_each_subset(face, [&](VertexSet free) { cells.push_back({free, face - free, all - face}); });
  return cells;
}

long cubical_euler(const SimplicialComplex& k) {
  long chi = 0;
  for (const CubicalCell& c : cubical_cells(k)) chi += c.dimension() % 2 == 0 ? 1 : -1;
  return chi;
}

long moment_angle_euler(const SimplicialComplex& k) {
  constexpr long disk_cells = 1;        // one 2-cell
  constexpr long circle_cells = 1 - 1;  // one 0-cell, one 1-cell
  long chi = 0;
  for (VertexSet face : k.faces()) {
    long term = 1;
    for (int i = 0; i < face.size(); ++i) term *= disk_cells;
    for (int i = face.size(); i < k.vertex_count(); ++i) term *= circle_cells;
    chi += term;
  }
  return chi;
}

}  // namespace facering
