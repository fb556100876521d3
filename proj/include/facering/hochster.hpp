#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "facering/betti.hpp"
#include "facering/field.hpp"
#include "facering/matrix.hpp"
#include "facering/parallel.hpp"
#include "facering/simplicial.hpp"

namespace facering {

/// dims[d] = dim H̃_d over the chosen field, d ≥ -1. Only nonzero degrees are stored.
struct ReducedHomologyProfile {
  std::map<int, std::size_t> dims;

  std::size_t at(int d) const {
    auto it = dims.find(d);
    return it == dims.end() ? 0 : it->second;
  }
  friend bool operator==(const ReducedHomologyProfile&, const ReducedHomologyProfile&) = default;
};

/// Boundary of the augmented chain complex from faces of size s to size s-1,
/// with the alternating sign convention on increasing vertex lists.
template <ExactField F>
SparseMatrix<F> augmented_boundary(const std::vector<VertexSet>& upper, const std::vector<VertexSet>& lower,
                                   const F& field) {
  SparseMatrix<F> d(field, lower.size(), upper.size());
  for (std::size_t c = 0; c < upper.size(); ++c) {
    int position = 0;
    for (int v : upper[c]) {
      const VertexSet facet = upper[c] - VertexSet{v};
      auto it = std::lower_bound(lower.begin(), lower.end(), facet);
      d.add_to(std::size_t(it - lower.begin()), c, position % 2 == 0 ? field.one() : field.neg(field.one()));
      ++position;
    }
  }
  return d;
}

/// Reduced homology of the complex whose face set is exactly `faces`
/// (downward closed, containing ∅).
template <ExactField F>
ReducedHomologyProfile reduced_homology_of_faces(const std::vector<VertexSet>& faces, const F& field) {
  int top = 0;
  for (VertexSet f : faces) top = std::max(top, f.size());
  std::vector<std::vector<VertexSet>> by_size(std::size_t(top) + 1);
  for (VertexSet f : faces) by_size[std::size_t(f.size())].push_back(f);
  for (auto& layer : by_size) std::sort(layer.begin(), layer.end());

  // ranks[s] = rank of the boundary from size-s faces to size-(s-1) faces
  std::vector<std::size_t> ranks(std::size_t(top) + 2, 0);
  for (int s = 1; s <= top; ++s)
    ranks[std::size_t(s)] = rank(augmented_boundary(by_size[std::size_t(s)], by_size[std::size_t(s - 1)], field));

  ReducedHomologyProfile profile;
  for (int s = 0; s <= top; ++s) {
    const std::size_t dim = by_size[std::size_t(s)].size() - ranks[std::size_t(s)] - ranks[std::size_t(s + 1)];
    if (dim != 0) profile.dims[s - 1] = dim;
  }
  return profile;
}

template <ExactField F>
ReducedHomologyProfile reduced_homology(const SimplicialComplex& k, const F& field) {
  return reduced_homology_of_faces(k.faces(), field);
}

/// β^{-i,2j} = Σ_{|I|=j} dim H̃_{|I|-i-1}(K_I), refined by I. The I = ∅ term
/// gives β^{0,0} = 1 through H̃_{-1}({∅}).
template <ExactField F>
BettiTable hochster_betti(const SimplicialComplex& k, const F& field, unsigned threads = 1) {
  const int m = k.vertex_count();
  const std::vector<VertexSet> faces = k.faces();
  const std::uint64_t subsets = m >= 64 ? 0 : std::uint64_t(1) << m;
  std::vector<ReducedHomologyProfile> profiles(subsets);
  parallel_for(subsets, threads, [&](std::size_t bits) {
    const VertexSet subset(bits);
    std::vector<VertexSet> restricted;
    for (VertexSet f : faces)
      if (f.is_subset_of(subset)) restricted.push_back(f);
    profiles[bits] = reduced_homology_of_faces(restricted, field);
  });
  BettiTable table(m);
  for (std::size_t bits = 0; bits < subsets; ++bits) {
    const VertexSet subset(bits);
    for (const auto& [d, dim] : profiles[bits].dims) table.add_refined(subset.size() - d - 1, subset, dim);
  }
  return table;
}

/// Refined entries (i, I) where I contains a ghost vertex. Such I have
/// K_I = K_{I \ ghosts}; they are real contributions, listed for reporting.
std::vector<std::pair<int, VertexSet>> ghost_vertex_contributions(const SimplicialComplex& k, const BettiTable& table);

}  // namespace facering
