#include "facering/fixtures.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace facering {

std::string to_string(FixtureFamily family) {
  switch (family) {
    case FixtureFamily::simplex:
      return "simplex";
    case FixtureFamily::simplex_boundary:
      return "simplex_boundary";
    case FixtureFamily::points:
      return "points";
    case FixtureFamily::polygon:
      return "polygon";
    case FixtureFamily::projective_plane:
      return "projective_plane";
    case FixtureFamily::empty_face:
      return "empty_face";
    case FixtureFamily::ghost:
      return "ghost";
    case FixtureFamily::random:
      return "random";
  }
  return "unknown";
}

SimplicialComplex projective_plane6() {
  return SimplicialComplex::from_facet_lists(
      6,
      {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6}, {2, 3, 5}, {2, 4, 5}, {2, 4, 6}, {3, 4, 6}, {3, 5, 6}});
}

SimplicialComplex random_complex(int m, double density, std::uint64_t seed) {
  if (m < 0 || m > max_vertices) throw Error(ErrorCode::invalid_input, "random complex needs 0 ≤ m ≤ 64");
  if (!(density >= 0.0 && density <= 1.0)) throw Error(ErrorCode::invalid_input, "density must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  // Compare raw 64-bit draws against a threshold so the output does not
  // depend on the standard library's distribution implementations.
  const long double scaled = std::ldexp(static_cast<long double>(density), 64);
  const std::uint64_t threshold =
      scaled >= std::ldexp(1.0L, 64) ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(scaled);
  std::vector<VertexSet> candidates;
  for (int f = 0; f < m; ++f) {
    VertexSet s;
    for (int v = 1; v <= m; ++v)
      if (rng() < threshold) s.insert(v);
    candidates.push_back(s);
  }
  return SimplicialComplex::from_facets(m, std::move(candidates));
}

std::vector<Fixture> fixture_corpus(int random_count, std::uint64_t seed, int max_random_m) {
  std::vector<Fixture> out;
  auto add = [&](std::string name, FixtureFamily family, SimplicialComplex k) {
    out.push_back({std::move(name), family, std::move(k)});
  };
  for (int m = 1; m <= 5; ++m)
    add("simplex-" + std::to_string(m), FixtureFamily::simplex, SimplicialComplex::simplex(m));
  for (int m = 2; m <= 7; ++m)
    add("boundary-" + std::to_string(m), FixtureFamily::simplex_boundary, SimplicialComplex::simplex_boundary(m));
  for (int m = 2; m <= 6; ++m) add("points-" + std::to_string(m), FixtureFamily::points, SimplicialComplex::points(m));
  for (int m = 4; m <= 8; ++m)
    add("polygon-" + std::to_string(m), FixtureFamily::polygon, SimplicialComplex::polygon(m));
  add("rp2-6", FixtureFamily::projective_plane, projective_plane6());
  for (int m = 1; m <= 3; ++m)
    add("empty-face-" + std::to_string(m), FixtureFamily::empty_face, SimplicialComplex::empty_face_only(m));
  add("pentagon-plus-ghost", FixtureFamily::ghost,
      SimplicialComplex::from_facet_lists(6, {{1, 2}, {2, 3}, {3, 4}, {4, 5}, {1, 5}}));
  add("edge-plus-two-ghosts", FixtureFamily::ghost, SimplicialComplex::from_facet_lists(4, {{2, 3}}));
  const int span = std::max(1, max_random_m - 2);
  for (int r = 0; r < random_count; ++r) {
    const int m = 3 + r % span;
    const double density = 0.3 + 0.1 * (r % 5);
    add("random-" + std::to_string(r), FixtureFamily::random, random_complex(m, density, seed + std::uint64_t(r)));
  }
  return out;
}

}  // namespace facering
