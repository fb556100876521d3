#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "facering/vertex_set.hpp"

namespace facering {

/// A simplicial complex on the vertex set {1..m}, stored by its facets.
///
/// The empty face is always present, so the complex {∅} is a valid value
/// (its facet list is [∅]); the void complex is not. Vertices i with {i} not
/// a face ("ghost vertices") are allowed.
class SimplicialComplex {
 public:
  /// Keeps the inclusion-maximal sets of `facets`. Throws vertex_out_of_range
  /// when a set mentions a vertex outside {1..m}.
  static SimplicialComplex from_facets(int m, std::vector<VertexSet> facets);
  static SimplicialComplex from_facet_lists(int m, const std::vector<std::vector<int>>& facets);

  static SimplicialComplex simplex(int m);
  static SimplicialComplex simplex_boundary(int m);
  static SimplicialComplex points(int m);
  /// Boundary of the m-gon, vertices in cyclic order.
  static SimplicialComplex polygon(int m);
  /// The complex {∅} with m ghost vertices.
  static SimplicialComplex empty_face_only(int m);

  int vertex_count() const { return m_; }
  /// Facets, sorted lexicographically.
  const std::vector<VertexSet>& facets() const { return facets_; }

  bool is_face(VertexSet s) const {
    for (VertexSet f : facets_)
      if (s.is_subset_of(f)) return true;
    return false;
  }
  bool is_full_simplex() const { return facets_.size() == 1 && facets_.front() == VertexSet::full(m_); }
  /// Size of the largest face (dimension + 1).
  int max_face_size() const;
  int dimension() const { return max_face_size() - 1; }

  /// Every face, ordered by size and then lexicographically.
  std::vector<VertexSet> faces() const;
  /// Number of faces of each size 0..max_face_size.
  std::vector<std::uint64_t> f_vector() const;

  std::string to_string() const;

  friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

 private:
  SimplicialComplex(int m, std::vector<VertexSet> facets) : m_(m), facets_(std::move(facets)) {}

  int m_ = 0;
  std::vector<VertexSet> facets_;
};

/// A coordinate subspace arrangement in C^m: generator I names the subspace
/// L_I = {z_i = 0, i ∈ I}. Generators are kept inclusion-minimal, which are
/// exactly the index sets of the maximal subspaces.
class Arrangement {
 public:
  /// Throws invalid_input for an empty generator (L_∅ is all of C^m) and
  /// vertex_out_of_range for indices outside {1..m}.
  static Arrangement create(int m, std::vector<VertexSet> generators);
  static Arrangement from_lists(int m, const std::vector<std::vector<int>>& generators);

  int ambient_dimension() const { return m_; }
  const std::vector<VertexSet>& generators() const { return generators_; }
  bool has_hyperplanes() const;

  friend bool operator==(const Arrangement&, const Arrangement&) = default;

 private:
  Arrangement(int m, std::vector<VertexSet> generators) : m_(m), generators_(std::move(generators)) {}

  int m_ = 0;
  std::vector<VertexSet> generators_;
};

/// One cell of the cube I^m: coordinates in `free` range over [0,1], the rest
/// are pinned to 0 or 1.
struct CubicalCell {
  VertexSet free;
  VertexSet fixed_zero;
  VertexSet fixed_one;

  int dimension() const { return free.size(); }
  friend bool operator==(const CubicalCell&, const CubicalCell&) = default;
};

struct StrippedArrangement {
  Arrangement arrangement;
  /// Number of coordinate hyperplanes removed; U(A) = U(A') × (C*)^k.
  int hyperplanes;
};

/// Inclusion-minimal non-faces: the squarefree generators of the face-ring ideal.
std::vector<VertexSet> minimal_nonfaces(const SimplicialComplex& k);

/// Throws hyperplane when some vertex of `k` is a ghost vertex.
Arrangement complex_to_arrangement(const SimplicialComplex& k);
/// Throws hyperplane when some generator is a singleton.
SimplicialComplex arrangement_to_complex(const Arrangement& a);
StrippedArrangement strip_hyperplanes(const Arrangement& a);

/// J is a face of the dual iff {1..m} \ J is not a face of `k`. Throws
/// full_simplex for the full simplex, whose dual would be void.
SimplicialComplex dual_complex(const SimplicialComplex& k);

/// Faces of `k` inside `subset`, re-indexed onto 1..|subset| in increasing order.
SimplicialComplex full_subcomplex(const SimplicialComplex& k, VertexSet subset);

/// Cells (F, Z, O) of the cubical complex C_K: those with F ∪ Z a face of `k`.
std::vector<CubicalCell> cubical_cells(const SimplicialComplex& k);
/// Alternating cell count of C_K.
long cubical_euler(const SimplicialComplex& k);

/// Euler characteristic of the moment-angle complex Z_K from its product cell
/// structure: per coordinate a 2-cell (if in the face) or a 0-cell and a 1-cell.
long moment_angle_euler(const SimplicialComplex& k);

/// Maximal subsets of {1..m} containing none of `forbidden`.
std::vector<VertexSet> maximal_independent_sets(int m, const std::vector<VertexSet>& forbidden);

}  // namespace facering
