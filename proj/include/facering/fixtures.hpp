#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "facering/simplicial.hpp"

namespace facering {

enum class FixtureFamily { simplex, simplex_boundary, points, polygon, projective_plane, empty_face, ghost, random };

std::string to_string(FixtureFamily family);

struct Fixture {
  std::string name;
  FixtureFamily family;
  SimplicialComplex complex;
};

/// Six-vertex triangulation of the real projective plane.
SimplicialComplex projective_plane6();

/// Draws m candidate faces, each containing vertex v independently with
/// probability `density`; vertices that are never drawn become ghosts.
/// Deterministic in (m, density, seed).
SimplicialComplex random_complex(int m, double density, std::uint64_t seed);

/// Simplices, simplex boundaries, points, m-gons for m = 4..8, the projective
/// plane, {∅} complexes, a ghost-vertex complex, and `random_count` random
/// complexes with 3 ≤ m ≤ max_random_m.
std::vector<Fixture> fixture_corpus(int random_count = 24, std::uint64_t seed = 1, int max_random_m = 8);

}  // namespace facering
