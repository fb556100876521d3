#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <thread>

#include "facering/cohomology_ring.hpp"
#include "facering/fixtures.hpp"
#include "facering/hochster.hpp"
#include "facering/koszul.hpp"
#include "random_cochains.hpp"

using namespace facering;

namespace {

using DegreeDims = std::map<int, std::size_t>;
using Entries = std::map<std::pair<int, int>, std::size_t>;

const Rationals q;
const unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));

long binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

DegreeDims points_dims(int m) {
  DegreeDims d{{0, 1}};
  for (int k = 2; k <= m; ++k) {
    const long dim = m * binom(m - 1, k - 1) - binom(m, k);
    if (dim != 0) d[k + 1] = std::size_t(dim);
  }
  return d;
}

DegreeDims polygon_dims(int m) {
  DegreeDims d{{0, 1}, {m + 2, 1}};
  for (int k = 3; k <= m - 1; ++k) {
    const long dim = (m - 2) * binom(m - 2, k - 2) - binom(m - 2, k - 1) - binom(m - 2, k - 3);
    if (dim != 0) d[k] = std::size_t(dim);
  }
  return d;
}

template <class Vec>
bool all_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const auto& x) { return x == 0; });
}

Cochain<Rationals> mono(const std::string& text, int m) {
  return Cochain<Rationals>::monomial(q, KoszulMonomial::parse(text, m));
}

struct Criterion {
  int number;
  std::string name;
  double limit_seconds;
  std::function<std::string()> body;  // empty string on success, else the failure detail
};

bool run_criterion(const Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  std::string failure;
  try {
    failure = c.body();
  } catch (const std::exception& e) {
    failure = std::string("exception: ") + e.what();
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (failure.empty() && elapsed > c.limit_seconds) failure = "time limit exceeded";
  const bool pass = failure.empty();
  std::printf("%s criterion %d %s (%.2f s, limit %.0f s)%s%s\n", pass ? "PASS" : "FAIL", c.number, c.name.c_str(),
              elapsed, c.limit_seconds, pass ? "" : ": ", failure.c_str());
  std::fflush(stdout);
  return pass;
}

std::string sphere_family() {
  for (int m = 2; m <= 7; ++m) {
    const auto t = betti_table(SimplicialComplex::simplex_boundary(m), q);
    if (t.entries() != Entries{{{0, 0}, 1}, {{1, m}, 1}}) return "table of boundary m=" + std::to_string(m);
    if (total_degree_dims(t) != DegreeDims{{0, 1}, {2 * m - 1, 1}}) return "total degrees m=" + std::to_string(m);
  }
  return {};
}

std::string disjoint_points() {
  for (int m = 3; m <= 7; ++m) {
    const auto k = SimplicialComplex::points(m);
    if (total_degree_dims(betti_table(k, q, KoszulOptions{std::nullopt, workers, std::nullopt})) != points_dims(m))
      return "dims m=" + std::to_string(m);
    if (m == 3 && points_dims(3) != DegreeDims{{0, 1}, {3, 3}, {4, 2}}) return "m=3 values";
    const auto basis = CohomologyBasis<Rationals>::compute(k, q, workers);
    if (!structure_constants(basis, 1, 2 * m, workers).empty()) return "nonzero product m=" + std::to_string(m);
  }
  return {};
}

std::string polygons() {
  for (int m = 4; m <= 8; ++m) {
    const auto dims = total_degree_dims(
        betti_table(SimplicialComplex::polygon(m), q, KoszulOptions{std::nullopt, workers, std::nullopt}));
    if (dims != polygon_dims(m)) return "dims m=" + std::to_string(m);
    for (int d : {1, 2, m, m + 1})
      if (dims.count(d)) return "nonvanishing degree " + std::to_string(d) + " m=" + std::to_string(m);
    if (!dims.count(0) || !dims.count(m + 2)) return "missing H^0 or top class m=" + std::to_string(m);
  }
  const auto k = SimplicialComplex::polygon(5);
  const auto basis = CohomologyBasis<Rationals>::compute(k, q);
  auto wrap = [](int t) { return (t - 1) % 5 + 1; };
  auto v = [](int t) { return "v" + std::to_string(t); };
  auto u = [](int t) { return "u" + std::to_string(t); };
  for (int i = 1; i <= 5; ++i) {
    const auto x = multiply(mono(v(i), 5), mono(u(wrap(i + 2)), 5), k);
    int partners = 0;
    for (int j = 1; j <= 5; ++j) {
      const auto y = multiply(mono(v(j), 5), multiply(mono(u(wrap(j + 2)), 5), mono(u(wrap(j + 3)), 5), k), k);
      const bool nonzero = !all_zero(basis.reduce(multiply(x, y, k)));
      const bool covers = VertexSet{i, wrap(i + 2), j, wrap(j + 2), wrap(j + 3)} == VertexSet::full(5);
      if (nonzero != covers) return "pairing (" + std::to_string(i) + "," + std::to_string(j) + ")";
      partners += nonzero ? 1 : 0;
    }
    if (partners != 1) return "partner count for i=" + std::to_string(i);
  }
  return {};
}

std::string oracle_equivalence() {
  std::vector<SimplicialComplex> complexes;
  for (const auto& f : fixture_corpus()) complexes.push_back(f.complex);
  for (int r = 0; r < 200; ++r)
    complexes.push_back(random_complex(2 + r % 7, 0.2 + 0.1 * (r % 7), 1000 + std::uint64_t(r)));
  for (std::size_t n = 0; n < complexes.size(); ++n) {
    const auto& k = complexes[n];
    const KoszulOptions options{std::nullopt, workers, std::nullopt};
    if (betti_table(k, q, options) != hochster_betti(k, q, workers)) return "q mismatch on " + k.to_string();
    if (betti_table(k, PrimeField(2), options) != hochster_betti(k, PrimeField(2), workers))
      return "fp:2 mismatch on " + k.to_string();
    if (betti_table(k, PrimeField(3), options) != hochster_betti(k, PrimeField(3), workers))
      return "fp:3 mismatch on " + k.to_string();
  }
  return {};
}

std::string nonsquarefree_vanishing() {
  for (const auto& f : fixture_corpus()) {
    const auto& k = f.complex;
    if (k.vertex_count() > 6) continue;
    if (!nonsquarefree_violations(k, q, k.vertex_count() + 2, workers).empty()) return "violation on " + f.name;
  }
  return {};
}

std::string euler_consistency() {
  for (const auto& f : fixture_corpus()) {
    const auto& k = f.complex;
    const long chi = euler_characteristic(total_degree_dims(betti_table(k, q)));
    if (chi != (k.is_full_simplex() ? 1 : 0)) return "cohomology euler on " + f.name;
    if (cubical_euler(k) != 1) return "cubical euler on " + f.name;
  }
  return {};
}

std::string poincare() {
  std::vector<SimplicialComplex> spheres;
  for (int m = 2; m <= 6; ++m) spheres.push_back(SimplicialComplex::simplex_boundary(m));
  for (int m = 4; m <= 8; ++m) spheres.push_back(SimplicialComplex::polygon(m));
  for (const auto& k : spheres) {
    const auto report = poincare_check(k, q, workers);
    if (!report.table_symmetric) return "asymmetric table on " + k.to_string();
    if (!report.pairings_nondegenerate()) return "degenerate pairing on " + k.to_string();
    if (!report.flips_hold()) return "flip relation on " + k.to_string();
    if (!report.ok()) return "top monomials on " + k.to_string();
  }
  return {};
}

std::string lsop_reduction_dims() {
  for (int m = 4; m <= 6; ++m) {
    const auto [candidate, report] = lsop_search(SimplicialComplex::polygon(m), q, 2024, 10, false, workers);
    if (!report.regular) return "no regular candidate m=" + std::to_string(m);
    if (report.total_degree_dims != polygon_dims(m)) return "reduced dims m=" + std::to_string(m);
  }
  return {};
}

std::string characteristic_dependence() {
  const auto k = projective_plane6();
  const auto koszul_q = betti_table(k, q);
  const auto koszul_2 = betti_table(k, PrimeField(2));
  if (koszul_q != hochster_betti(k, q)) return "pipelines disagree over q";
  if (koszul_2 != hochster_betti(k, PrimeField(2))) return "pipelines disagree over fp:2";
  if (koszul_q == koszul_2) return "tables coincide";
  return {};
}

template <ExactField F>
std::string cochain_checks(const SimplicialComplex& k, const F& field, std::mt19937_64& rng) {
  const auto x = testing::random_nonzero_cochain(k, field, rng);
  const auto y = testing::random_nonzero_cochain(k, field, rng);
  if (!koszul_differential(koszul_differential(x, k), k).is_zero()) return "d^2 on " + k.to_string();
  const int ux = *x.homological_degree();
  const auto lhs = koszul_differential(multiply(x, y, k), k);
  const auto rhs = multiply(koszul_differential(x, k), y, k) +
                   multiply(x, koszul_differential(y, k), k).scaled(ux % 2 == 0 ? field.one() : field.neg(field.one()));
  if (!(lhs == rhs)) return "Leibniz on " + k.to_string();
  return {};
}

std::string differential_properties() {
  std::map<FixtureFamily, std::vector<SimplicialComplex>> families;
  for (const auto& f : fixture_corpus()) families[f.family].push_back(f.complex);
  std::mt19937_64 rng(31337);
  for (const auto& [family, members] : families) {
    for (int trial = 0; trial < 1000; ++trial) {
      const auto& k = members[std::size_t(trial) % members.size()];
      const auto failure = trial % 3 == 2 ? cochain_checks(k, PrimeField(2), rng) : cochain_checks(k, q, rng);
      if (!failure.empty()) return to_string(family) + ": " + failure;
    }
  }
  return {};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "sphere family", 1, sphere_family},
      {2, "disjoint points", 5, disjoint_points},
      {3, "polygons", 10, polygons},
      {4, "oracle equivalence", 120, oracle_equivalence},
      {5, "non-squarefree vanishing", 60, nonsquarefree_vanishing},
      {6, "Euler consistency", 10, euler_consistency},
      {7, "Poincare duality", 30, poincare},
      {8, "lsop reduction", 30, lsop_reduction_dims},
      {9, "characteristic dependence", 10, characteristic_dependence},
      {10, "d^2 = 0 and Leibniz", 30, differential_properties},
  };
  int failed = 0;
  for (const auto& c : criteria)
    if (!run_criterion(c)) ++failed;
  std::printf("%zu/%zu criteria passed\n", criteria.size() - std::size_t(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
