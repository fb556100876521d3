#include <doctest.h>

#include "facering/fixtures.hpp"
#include "facering/koszul.hpp"
#include "random_cochains.hpp"

using namespace facering;

namespace {

const Rationals q;

Cochain<Rationals> mono(const std::string& text, int m) {
  return Cochain<Rationals>::monomial(q, KoszulMonomial::parse(text, m));
}

// Monomials of degree d with face support, counted by enumerating every
// exponent vector with entries ≤ d.
long brute_monomial_count(const SimplicialComplex& k, int d) {
  const int m = k.vertex_count();
  std::vector<int> e(std::size_t(m), 0);
  long count = 0;
  while (true) {
    int sum = 0;
    VertexSet s;
    for (int t = 0; t < m; ++t) {
      sum += e[std::size_t(t)];
      if (e[std::size_t(t)] > 0) s.insert(t + 1);
    }
    if (sum == d && k.is_face(s)) ++count;
    int t = 0;
    while (t < m && e[std::size_t(t)] == d) e[std::size_t(t++)] = 0;
    if (t == m) break;
    ++e[std::size_t(t)];
  }
  return count;
}

}  // namespace

TEST_CASE("monomial parsing and degrees") {
  const auto x = KoszulMonomial::parse("v1^2 v3 u2 u4", 4);
  CHECK(x.alpha == Multidegree{2, 0, 1, 0});
  CHECK(x.sigma == VertexSet{2, 4});
  CHECK(x.homological_degree() == 2);
  CHECK(x.internal_degree() == 10);
  CHECK(x.total_degree() == 8);
  CHECK(x.multidegree() == Multidegree{2, 1, 1, 1});
  CHECK(x.to_string() == "v1^2 v3 u2 u4");
  CHECK(KoszulMonomial::parse("1", 3).to_string() == "1");
  CHECK_THROWS_AS(KoszulMonomial::parse("u2 u1", 3), Error);
  CHECK_THROWS_AS(KoszulMonomial::parse("u1 u1", 3), Error);
  CHECK_THROWS_AS(KoszulMonomial::parse("v4", 3), Error);
  CHECK_THROWS_AS(KoszulMonomial::parse("w1", 3), Error);
}

TEST_CASE("cochains stay homogeneous") {
  Cochain<Rationals> c(q, 3);
  c.add_term(KoszulMonomial::parse("v1 u2", 3), 1);
  c.add_term(KoszulMonomial::parse("v2 u1", 3), -1);
  CHECK(c.terms().size() == 2);
  CHECK_THROWS_AS(c.add_term(KoszulMonomial::parse("v1 u3", 3), 1), Error);
  CHECK_THROWS_AS(c.add_term(KoszulMonomial::parse("u1 u2", 3), 1), Error);
  c.add_term(KoszulMonomial::parse("v1 u2", 3), -1);
  CHECK(c.terms().size() == 1);
  CHECK((c - c).is_zero());
  try {
    Cochain<PrimeField> a(PrimeField(2), 2);
    a += Cochain<PrimeField>(PrimeField(3), 2);
    FAIL("expected a field mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::field_mismatch);
  }
}

TEST_CASE("differential examples") {
  const auto simplex = SimplicialComplex::simplex(2);
  const auto two_points = SimplicialComplex::points(2);
  CHECK(koszul_differential(mono("u1", 2), simplex) == mono("v1", 2));
  CHECK(koszul_differential(mono("v1 u2", 2), two_points).is_zero());
  const auto d = koszul_differential(mono("u1 u2", 2), simplex);
  CHECK(d == mono("v1 u2", 2) - mono("v2 u1", 2));
  try {
    koszul_differential(mono("v1 v2", 2), two_points);
    FAIL("non-face support must be rejected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::malformed_cochain);
  }
}

TEST_CASE("strand examples") {
  const auto zero = strand_complex(SimplicialComplex::polygon(5), Multidegree(5, 0), q);
  CHECK(zero.bases.size() == 1);
  CHECK(zero.bases[0].size() == 1);
  CHECK(zero.cohomology_dims() == std::vector<std::size_t>{1});

  const auto two = strand_complex(SimplicialComplex::points(2), Multidegree{1, 1}, q);
  REQUIRE(two.bases.size() == 3);
  CHECK(two.bases[0].empty());
  CHECK(two.bases[1].size() == 2);
  CHECK(two.bases[2].size() == 1);
  CHECK(two.cohomology_dims() == std::vector<std::size_t>{0, 1, 0});

  const auto tri = strand_complex(SimplicialComplex::simplex_boundary(3), Multidegree{1, 1, 1}, q);
  CHECK(tri.cohomology_dims() == std::vector<std::size_t>{0, 1, 0, 0});
  // v1 v2 u3 is a cocycle outside the coboundaries
  const auto z = mono("v1 v2 u3", 3);
  CHECK(koszul_differential(z, SimplicialComplex::simplex_boundary(3)).is_zero());
  const auto coords = tri.coordinates(z, 1);
  CHECK_FALSE(solve_in_span(tri.differentials[2], std::span<const mpq_class>(coords)).has_value());
}

TEST_CASE("Betti table examples") {
  for (int m = 1; m <= 5; ++m) {
    const auto t = betti_table(SimplicialComplex::simplex(m), q);
    CHECK(t.entries() == std::map<std::pair<int, int>, std::size_t>{{{0, 0}, 1}});
  }
  for (int m = 2; m <= 6; ++m) {
    const auto t = betti_table(SimplicialComplex::simplex_boundary(m), q);
    CHECK(t.entries() == std::map<std::pair<int, int>, std::size_t>{{{0, 0}, 1}, {{1, m}, 1}});
    CHECK(total_degree_dims(t) == std::map<int, std::size_t>{{0, 1}, {2 * m - 1, 1}});
  }
  const auto points = total_degree_dims(betti_table(SimplicialComplex::points(3), q));
  CHECK(points == std::map<int, std::size_t>{{0, 1}, {3, 3}, {4, 2}});
}

TEST_CASE("total degree formulas for points and polygons") {
  auto binom = [](long n, long k) -> long {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (long t = 1; t <= k; ++t) r = r * (n - k + t) / t;
    return r;
  };
  for (int m = 3; m <= 7; ++m) {
    std::map<int, std::size_t> expected{{0, 1}};
    for (int k = 2; k <= m; ++k) {
      const long d = m * binom(m - 1, k - 1) - binom(m, k);
      if (d != 0) expected[k + 1] = std::size_t(d);
    }
    CHECK(total_degree_dims(betti_table(SimplicialComplex::points(m), q)) == expected);
  }
  for (int m = 4; m <= 8; ++m) {
    std::map<int, std::size_t> expected{{0, 1}, {m + 2, 1}};
    for (int k = 3; k <= m - 1; ++k) {
      const long d = (m - 2) * binom(m - 2, k - 2) - binom(m - 2, k - 1) - binom(m - 2, k - 3);
      if (d != 0) expected[k] = std::size_t(d);
    }
    CHECK(total_degree_dims(
              betti_table(SimplicialComplex::polygon(m), q, KoszulOptions{std::nullopt, 2, std::nullopt})) == expected);
  }
}

TEST_CASE("table formatting") {
  const auto t = betti_table(SimplicialComplex::polygon(5), q);
  CHECK(format_poincare_series(total_degree_dims(t)) == "1 + 5t^3 + 5t^4 + t^7");
  CHECK(format_betti_table(t).find("-3") != std::string::npos);
  CHECK(euler_characteristic(total_degree_dims(t)) == 0);
}

TEST_CASE("d^2 = 0 and multidegree preservation on random cochains") {
  std::mt19937_64 rng(5);
  for (const auto& fixture : fixture_corpus(16, 3, 8)) {
    const auto& k = fixture.complex;
    for (int trial = 0; trial < 60; ++trial) {
      auto c = testing::random_cochain(k, q, rng);
      if (!c) continue;
      const auto dc = koszul_differential(*c, k);
      for (const auto& [m, coeff] : dc.terms()) {
        CHECK(m.multidegree() == *c->multidegree());
        CHECK(m.homological_degree() == *c->homological_degree() - 1);
        CHECK(m.internal_degree() == c->terms().begin()->first.internal_degree());
      }
      CHECK(koszul_differential(dc, k).is_zero());
      auto cp = testing::random_cochain(k, PrimeField(2), rng);
      if (cp) CHECK(koszul_differential(koszul_differential(*cp, k), k).is_zero());
    }
  }
}

TEST_CASE("strand matrices compose to zero") {
  for (const auto& fixture : fixture_corpus(10, 11, 7)) {
    const auto& k = fixture.complex;
    const int m = k.vertex_count();
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << m); bits += 3) {
      const auto s = strand_complex(k, indicator(m, VertexSet(bits)), PrimeField(3));
      for (std::size_t i = 2; i < s.differentials.size(); ++i)
        for (std::size_t c = 0; c < s.differentials[i].cols(); ++c) {
          const auto image = s.differentials[i - 1].apply(s.differentials[i].column(c));
          CHECK(std::all_of(image.begin(), image.end(), [](std::uint32_t x) { return x == 0; }));
        }
    }
  }
}

TEST_CASE("Betti table structural invariants") {
  for (const auto& fixture : fixture_corpus(20, 4, 8)) {
    const auto& k = fixture.complex;
    const auto t = betti_table(k, q);
    CHECK(t.at(0, 0) == 1);
    std::map<std::pair<int, int>, std::size_t> summed;
    for (const auto& [key, dim] : t.refined()) summed[{key.first, key.second.size()}] += dim;
    CHECK(summed == t.entries());
    for (const auto& [key, dim] : t.entries()) {
      CHECK(key.first <= key.second);
      CHECK(key.first <= k.vertex_count());
      if (key.first == 0) CHECK(key.second == 0);
    }
  }
}

TEST_CASE("non-squarefree strands are acyclic") {
  for (const auto& fixture : fixture_corpus(12, 5, 6)) {
    const auto& k = fixture.complex;
    if (k.vertex_count() > 6) continue;
    CHECK(nonsquarefree_violations(k, q, k.vertex_count() + 2, 2).empty());
    CHECK(nonsquarefree_violations(k, PrimeField(2), k.vertex_count() + 1).empty());
  }
  // all-multidegree mode therefore reproduces the squarefree table
  const auto k = SimplicialComplex::polygon(5);
  CHECK(betti_table(k, q, KoszulOptions{7, 2, std::nullopt}) == betti_table(k, q));
}

TEST_CASE("non-squarefree enumeration prunes non-face heavy sets") {
  const auto k = SimplicialComplex::points(2);
  const auto degrees = nonsquarefree_multidegrees(k, 3);
  // (2,0), (3,0), (0,2), (0,3), (2,1), (1,2); (2,2) exceeds the bound
  CHECK(degrees.size() == 6);
  for (const auto& a : degrees) CHECK_FALSE(is_squarefree(a));
}

TEST_CASE("face ring Hilbert series") {
  CHECK(face_ring_hilbert(SimplicialComplex::empty_face_only(3), 4) == std::vector<mpz_class>{1, 0, 0, 0, 0});
  CHECK(face_ring_hilbert(SimplicialComplex::simplex(2), 3) == std::vector<mpz_class>{1, 2, 3, 4});
  const auto pentagon = face_ring_hilbert(SimplicialComplex::polygon(5), 2);
  CHECK(pentagon[1] == 5);
  CHECK(pentagon[2] == 10);
  CHECK_THROWS_AS(face_ring_hilbert(SimplicialComplex::polygon(5), -1), Error);
  for (const auto& fixture : fixture_corpus(8, 6, 6)) {
    const auto h = face_ring_hilbert(fixture.complex, 4);
    for (int d = 0; d <= 4; ++d) {
      CHECK(h[std::size_t(d)] == brute_monomial_count(fixture.complex, d));
      CHECK(face_ring_monomials(fixture.complex, d).size() == h[std::size_t(d)].get_ui());
    }
  }
}

TEST_CASE("fault injection changes the table") {
  const auto k = SimplicialComplex::simplex_boundary(3);
  const auto clean = betti_table(k, q);
  const auto faulty = betti_table(k, q, KoszulOptions{std::nullopt, 1, SignFlip{Multidegree{1, 1, 1}, 2, 0, 0}});
  CHECK_FALSE(clean == faulty);
}

TEST_CASE("threaded and serial tables agree") {
  const auto k = projective_plane6();
  CHECK(betti_table(k, q, KoszulOptions{std::nullopt, 4, std::nullopt}) == betti_table(k, q));
}
