#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "facering/hochster.hpp"
#include "facering/koszul.hpp"

namespace facering {

/// Number of pairs (s, t), s ∈ sigma, t ∈ tau, with s > t: the parity of the
/// shuffle that sorts u_sigma u_tau.
inline int shuffle_inversions(VertexSet sigma, VertexSet tau) {
  int count = 0;
  for (int t : tau) count += std::popcount(sigma.bits() >> t);
  return count;
}

/// Product in k(K) ⊗ Λ[u]: (v^a u_s)(v^b u_t) = ±v^{a+b} u_{s∪t}, zero when
/// s ∩ t ≠ ∅ or supp(a+b) is not a face.
template <ExactField F>
Cochain<F> multiply(const Cochain<F>& x, const Cochain<F>& y, const SimplicialComplex& k) {
  require_same_field(x.field(), y.field());
  if (x.vertex_count() != y.vertex_count() || x.vertex_count() != k.vertex_count())
    throw Error(ErrorCode::dimension_mismatch, "multiply: vertex counts differ");
  const F& field = x.field();
  Cochain<F> out(field, x.vertex_count());
  for (const auto& [a, ca] : x.terms()) {
    for (const auto& [b, cb] : y.terms()) {
      if (a.sigma.intersects(b.sigma)) continue;
      KoszulMonomial prod{a.alpha, a.sigma | b.sigma};
      for (std::size_t t = 0; t < prod.alpha.size(); ++t) prod.alpha[t] += b.alpha[t];
      if (!k.is_face(prod.v_support())) continue;
      auto c = field.mul(ca, cb);
      out.add_term(prod, shuffle_inversions(a.sigma, b.sigma) % 2 == 0 ? c : field.neg(c));
    }
  }
  return out;
}

/// Cocycle representatives for a basis of H[k(K) ⊗ Λ[u], d], one strand at a
/// time over the 2^m squarefree multidegrees, plus what is needed to write
/// any cocycle in that basis.
///
/// Classes are ordered by total degree, then homological degree, then vertex
/// subset. Within a strand, representatives are the first kernel vectors (in
/// free-column order) that are independent modulo coboundaries.
template <ExactField F>
class CohomologyBasis {
 public:
  using Scalar = typename F::value_type;

  struct Class {
    int i;
    int j;
    VertexSet subset;
    Cochain<F> representative;

    int total_degree() const { return 2 * j - i; }
  };

  static CohomologyBasis compute(const SimplicialComplex& k, const F& field, unsigned threads = 1) {
    CohomologyBasis basis(k, field);
    const int m = k.vertex_count();
    const std::uint64_t subsets = m >= 64 ? 0 : std::uint64_t(1) << m;
    std::vector<std::optional<Strand>> built(subsets);
    parallel_for(subsets, threads, [&](std::size_t bits) { built[bits] = build_strand(k, field, VertexSet(bits)); });

    struct Pending {
      int total, i;
      VertexSet subset;
      std::size_t local;
    };
    std::vector<Pending> order;
    for (std::size_t bits = 0; bits < subsets; ++bits) {
      if (!built[bits]) continue;
      const Strand& s = *built[bits];
      for (std::size_t i = 0; i < s.levels.size(); ++i)
        for (std::size_t r = 0; r < s.levels[i].representatives.size(); ++r)
          order.push_back({2 * VertexSet(bits).size() - int(i), int(i), VertexSet(bits), r});
    }
    std::sort(order.begin(), order.end(), [](const Pending& a, const Pending& b) {
      if (a.total != b.total) return a.total < b.total;
      if (a.i != b.i) return a.i < b.i;
      if (a.subset != b.subset) return a.subset < b.subset;
      return a.local < b.local;
    });
    for (const Pending& p : order) {
      Level& level = built[p.subset.bits()]->levels[std::size_t(p.i)];
      level.class_ids.resize(level.representatives.size());
      level.class_ids[p.local] = basis.classes_.size();
      basis.classes_.push_back({p.i, p.subset.size(), p.subset, level.representatives[p.local]});
    }
    for (std::size_t bits = 0; bits < subsets; ++bits)
      if (built[bits]) basis.strands_.emplace(VertexSet(bits), std::move(*built[bits]));
    return basis;
  }

  const SimplicialComplex& complex() const { return complex_; }
  const F& field() const { return field_; }
  const std::vector<Class>& classes() const { return classes_; }
  std::size_t size() const { return classes_.size(); }

  std::vector<std::size_t> indices_in_total_degree(int degree) const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < classes_.size(); ++c)
      if (classes_[c].total_degree() == degree) out.push_back(c);
    return out;
  }

  /// Coordinates of the class of cocycle `z`: z - Σ c_b b is a coboundary.
  /// Throws not_a_cocycle when d(z) ≠ 0.
  std::vector<Scalar> reduce(const Cochain<F>& z) const {
    require_same_field(field_, z.field());
    std::vector<Scalar> coords(classes_.size(), field_.zero());
    if (z.is_zero()) return coords;
    if (!koszul_differential(z, complex_).is_zero())
      throw Error(ErrorCode::not_a_cocycle, "cannot reduce a non-cocycle: " + z.to_string());
    const Multidegree a = *z.multidegree();
    const int i = *z.homological_degree();
    if (!is_squarefree(a)) {
      require_vanishing_strand(a, i);
      return coords;
    }
    auto it = strands_.find(support(a));
    if (it == strands_.end()) return coords;
    const Strand& strand = it->second;
    const Level& level = strand.levels[std::size_t(i)];
    if (level.representatives.empty()) return coords;
    const auto solution = level.solver->solve(strand.complex.coordinates(z, i));
    if (!solution)
      throw Error(ErrorCode::verification_failed, "cocycle " + z.to_string() + " escapes cocycles + coboundaries");
    for (std::size_t r = 0; r < level.class_ids.size(); ++r)
      coords[level.class_ids[r]] = (*solution)[level.boundary_rank + r];
    return coords;
  }

 private:
  struct Level {
    std::vector<Cochain<F>> representatives;
    std::size_t boundary_rank = 0;
    std::vector<std::size_t> class_ids;
    /// Columns: independent coboundaries, then representatives.
    std::optional<ColumnSpaceSolver<F>> solver;
  };
  struct Strand {
    StrandComplex<F> complex;
    std::vector<Level> levels;
  };

  CohomologyBasis(SimplicialComplex k, F field) : complex_(std::move(k)), field_(std::move(field)) {}

  static std::optional<Strand> build_strand(const SimplicialComplex& k, const F& field, VertexSet subset) {
    Strand s{strand_complex(k, indicator(k.vertex_count(), subset), field), {}};
    const auto dims = s.complex.cohomology_dims();
    if (std::all_of(dims.begin(), dims.end(), [](std::size_t d) { return d == 0; })) return std::nullopt;
    s.levels.resize(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (dims[i] == 0) continue;
      const std::size_t n = s.complex.bases[i].size();
      std::vector<std::vector<Scalar>> columns;
      RowReducer<F> span(field, n);
      if (i + 1 < s.complex.differentials.size()) {
        const auto& next = s.complex.differentials[i + 1];
        for (std::size_t c = 0; c < next.cols(); ++c) {
          auto col = next.column(c);
          if (span.add_dense(col, field)) columns.push_back(std::move(col));
        }
      }
      Level& level = s.levels[i];
      level.boundary_rank = columns.size();
      for (auto& z : kernel_basis(s.complex.differentials[i])) {
        if (!span.add_dense(z, field)) continue;
        level.representatives.push_back(s.complex.cochain(int(i), z));
        columns.push_back(std::move(z));
      }
      if (level.representatives.size() != dims[i])
        throw Error(ErrorCode::verification_failed, "representative count disagrees with strand cohomology");
      level.solver.emplace(matrix_from_columns(field, n, columns));
    }
    return s;
  }

  void require_vanishing_strand(const Multidegree& a, int i) const {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->dims.find(a);
    if (it == cache_->dims.end()) it = cache_->dims.emplace(a, strand_cohomology_dims(complex_, a, field_)).first;
    if (it->second[std::size_t(i)] != 0)
      throw Error(ErrorCode::verification_failed, "nonzero cohomology in non-squarefree strand " + to_string(a));
  }

  SimplicialComplex complex_;
  F field_;
  std::vector<Class> classes_;
  std::map<VertexSet, Strand> strands_;
  struct NonsquarefreeCache {
    std::mutex mutex;
    std::map<Multidegree, std::vector<std::size_t>> dims;
  };
  std::shared_ptr<NonsquarefreeCache> cache_ = std::make_shared<NonsquarefreeCache>();
};

template <ExactField F>
std::vector<typename F::value_type> reduce_to_basis(const Cochain<F>& z, const CohomologyBasis<F>& basis) {
  return basis.reduce(z);
}

template <ExactField F>
using StructureConstants = std::map<std::pair<std::size_t, std::size_t>, std::vector<typename F::value_type>>;

/// [x_a][x_b] in basis coordinates, for all classes with total degree in
/// [lo, hi]. Pairs whose product class is zero are omitted.
template <ExactField F>
StructureConstants<F> structure_constants(const CohomologyBasis<F>& basis, int lo, int hi, unsigned threads = 1) {
  std::vector<std::size_t> chosen;
  for (std::size_t c = 0; c < basis.size(); ++c) {
    const int deg = basis.classes()[c].total_degree();
    if (deg >= lo && deg <= hi) chosen.push_back(c);
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (auto a : chosen)
    for (auto b : chosen) pairs.emplace_back(a, b);
  std::vector<std::optional<std::vector<typename F::value_type>>> products(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t n) {
    const auto& x = basis.classes()[pairs[n].first].representative;
    const auto& y = basis.classes()[pairs[n].second].representative;
    const auto xy = multiply(x, y, basis.complex());
    if (xy.is_zero()) return;
    auto coords = basis.reduce(xy);
    const auto& field = basis.field();
    if (std::any_of(coords.begin(), coords.end(), [&](const auto& c) { return !field.is_zero(c); }))
      products[n] = std::move(coords);
  });
  StructureConstants<F> out;
  for (std::size_t n = 0; n < pairs.size(); ++n)
    if (products[n]) out.emplace(pairs[n], std::move(*products[n]));
  return out;
}

template <ExactField F>
StructureConstants<F> structure_constants(const SimplicialComplex& k, const F& field, int lo, int hi,
                                          unsigned threads = 1) {
  return structure_constants(CohomologyBasis<F>::compute(k, field, threads), lo, hi, threads);
}

enum class MonomialVerdict { potentially_nontrivial, non_squarefree, non_face_support, overlapping_supports };

std::string to_string(MonomialVerdict verdict);

/// A monomial can only represent a nonzero class when it is squarefree in v,
/// its v-support is a face, and the v- and u-supports are disjoint.
MonomialVerdict monomial_class_filter(const SimplicialComplex& k, const KoszulMonomial& mono);

// --- Poincaré duality ------------------------------------------------------

struct PairingCheck {
  int degree;
  int dual_degree;
  std::size_t rows;
  std::size_t cols;
  std::size_t rank;
  bool nondegenerate() const { return rows == cols && rank == rows; }
};

struct FlipCheck {
  VertexSet facet;
  VertexSet neighbour;
  bool equal;
};

struct PoincareReport {
  int m = 0;
  int n = 0;
  bool table_symmetric = false;
  std::vector<std::pair<int, int>> asymmetric_entries;
  std::size_t top_dimension = 0;
  std::vector<PairingCheck> pairings;
  std::vector<FlipCheck> flips;
  /// Every facet monomial v_F u_{[m]\F} is ± one and the same nonzero multiple of the top class.
  bool top_monomials_agree = false;

  bool pairings_nondegenerate() const {
    return top_dimension == 1 &&
           std::all_of(pairings.begin(), pairings.end(), [](const PairingCheck& p) { return p.nondegenerate(); });
  }
  bool flips_hold() const {
    return std::all_of(flips.begin(), flips.end(), [](const FlipCheck& f) { return f.equal; });
  }
  bool ok() const { return table_symmetric && pairings_nondegenerate() && flips_hold() && top_monomials_agree; }
};

/// Throws not_a_homology_sphere unless H̃(K) over `field` is that of S^{n-1},
/// n = max face size.
template <ExactField F>
void require_homology_sphere(const SimplicialComplex& k, const F& field) {
  const auto profile = reduced_homology(k, field);
  const int n = k.max_face_size();
  if (profile.dims != std::map<int, std::size_t>{{n - 1, 1}})
    throw Error(ErrorCode::not_a_homology_sphere,
                k.to_string() + " does not have the " + field.name() + "-homology of S^" + std::to_string(n - 1));
}

template <ExactField F>
PoincareReport poincare_check(const SimplicialComplex& k, const F& field, unsigned threads = 1) {
  require_homology_sphere(k, field);
  const int m = k.vertex_count();
  const int n = k.max_face_size();
  const auto basis = CohomologyBasis<F>::compute(k, field, threads);
  PoincareReport report;
  report.m = m;
  report.n = n;

  BettiTable table(m);
  for (const auto& c : basis.classes()) table.add(c.i, c.j, 1);
  report.table_symmetric = true;
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= m; ++j)
      if (table.at(i, j) != table.at(m - n - i, m - j) || (table.at(i, j) != 0 && (m - n - i < 0 || m - j < 0))) {
        report.table_symmetric = false;
        report.asymmetric_entries.emplace_back(i, j);
      }

  const int top = m + n;
  const auto top_ids = basis.indices_in_total_degree(top);
  report.top_dimension = top_ids.size();
  if (top_ids.size() != 1) return report;
  const std::size_t top_id = top_ids.front();
  const VertexSet all = VertexSet::full(m);

  for (int degree = 0; degree <= top; ++degree) {
    const auto rows = basis.indices_in_total_degree(degree);
    const auto cols = basis.indices_in_total_degree(top - degree);
    if (rows.empty() && cols.empty()) continue;
    SparseMatrix<F> pairing(field, rows.size(), cols.size());
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c) {
        const auto& x = basis.classes()[rows[r]];
        const auto& y = basis.classes()[cols[c]];
        // Products land in strand x.subset + y.subset; only the full strand carries the top class.
        if (x.subset.intersects(y.subset) || (x.subset | y.subset) != all) continue;
        cells.emplace_back(r, c);
      }
    std::vector<typename F::value_type> values(cells.size());
    parallel_for(cells.size(), threads, [&](std::size_t e) {
      const auto& x = basis.classes()[rows[cells[e].first]].representative;
      const auto& y = basis.classes()[cols[cells[e].second]].representative;
      values[e] = basis.reduce(multiply(x, y, k))[top_id];
    });
    for (std::size_t e = 0; e < cells.size(); ++e) pairing.add_to(cells[e].first, cells[e].second, values[e]);
    report.pairings.push_back({degree, top - degree, rows.size(), cols.size(), rank(pairing)});
  }

  auto monomial = [&](VertexSet vs) {
    KoszulMonomial mono = KoszulMonomial::unit(m);
    for (int v : vs) mono.alpha[std::size_t(v - 1)] = 1;
    return Cochain<F>::monomial(field, mono);
  };
  auto exterior = [&](VertexSet us) {
    KoszulMonomial mono = KoszulMonomial::unit(m);
    mono.sigma = us;
    return Cochain<F>::monomial(field, mono);
  };

  std::vector<VertexSet> top_facets;
  for (VertexSet f : k.facets())
    if (f.size() == n) top_facets.push_back(f);

  std::optional<typename F::value_type> reference;
  report.top_monomials_agree = true;
  for (VertexSet f : top_facets) {
    const auto c = basis.reduce(multiply(monomial(f), exterior(all - f), k))[top_id];
    if (field.is_zero(c)) {
      report.top_monomials_agree = false;
      continue;
    }
    if (!reference) reference = c;
    if (!(c == *reference) && !(c == field.neg(*reference))) report.top_monomials_agree = false;
  }

  for (VertexSet f1 : top_facets) {
    for (VertexSet f2 : top_facets) {
      if (!(f1 < f2) || (f1 & f2).size() != n - 1) continue;
      const VertexSet shared = f1 & f2;
      const VertexSet a = f1 - shared;
      const VertexSet b = f2 - shared;
      const VertexSet rest = all - f1 - b;
      // v_{F1} u_b u_rest  versus  v_{shared ∪ b} u_a u_rest, u's multiplied in the order written
      const auto lhs = multiply(monomial(f1), multiply(exterior(b), exterior(rest), k), k);
      const auto rhs = multiply(monomial(shared | b), multiply(exterior(a), exterior(rest), k), k);
      report.flips.push_back({f1, f2, basis.reduce(lhs) == basis.reduce(rhs)});
    }
  }
  return report;
}

// --- Regular-sequence reduction ---------------------------------------------

/// n linear forms λ_i = Σ_t λ_it v_t, one row per form.
template <ExactField F>
struct LsopCandidate {
  using Scalar = typename F::value_type;

  F field;
  int m = 0;
  std::vector<std::vector<Scalar>> rows;

  int length() const { return int(rows.size()); }

  bool rows_independent() const {
    RowReducer<F> reducer(field, std::size_t(m));
    for (const auto& row : rows)
      if (!reducer.add_dense(row, field)) return false;
    return true;
  }

  /// Integer entries drawn uniformly from [-max_abs, max_abs].
  static LsopCandidate random(const F& field, int n, int m, std::uint64_t seed, int max_abs = 5) {
    std::mt19937_64 rng(seed);
    LsopCandidate c{field, m, {}};
    for (int i = 0; i < n; ++i) {
      std::vector<Scalar> row;
      for (int t = 0; t < m; ++t) row.push_back(field.from_int(long(rng() % std::uint64_t(2 * max_abs + 1)) - max_abs));
      c.rows.push_back(std::move(row));
    }
    return c;
  }
};

struct LsopReport {
  bool regular = false;
  std::optional<int> first_failing_degree;
  /// dim (k(K)/J)_d and the Hilbert-series prediction, d = 0..n+1.
  std::vector<std::size_t> quotient_dims;
  std::vector<long> expected_dims;
  /// Cohomology of k(K)/J ⊗ Λ[u_1..u_{m-n}], keyed like BettiTable: (i, j) with internal degree 2j.
  std::map<std::pair<int, int>, std::size_t> bigraded;
  std::map<int, std::size_t> total_degree_dims;
  std::map<int, std::size_t> koszul_total_degree_dims;
  bool matches_koszul = false;
  std::optional<bool> bigraded_matches_koszul;
};

namespace detail {

/// Normal-form arithmetic in one graded piece of k(K)/J.
template <ExactField F>
struct QuotientPiece {
  std::vector<Multidegree> monomials;  // basis of k(K)_d
  Rref<F> relations;                   // row space = J_d
  std::vector<std::size_t> standard;   // indices of monomials forming a basis of the quotient

  std::size_t index_of(const Multidegree& a) const {
    return std::size_t(std::lower_bound(monomials.begin(), monomials.end(), a) - monomials.begin());
  }
};

/// (Σ_t form_t v_t) * v^alpha in k(K)_{d+1}, as a dense vector over `target.monomials`.
template <ExactField F>
std::vector<typename F::value_type> multiply_linear_form(const SimplicialComplex& k, const F& field,
                                                         const std::vector<typename F::value_type>& form,
                                                         const Multidegree& alpha, const QuotientPiece<F>& target) {
  std::vector<typename F::value_type> v(target.monomials.size(), field.zero());
  for (std::size_t t = 0; t < form.size(); ++t) {
    if (field.is_zero(form[t])) continue;
    Multidegree next = alpha;
    next[t] += 1;
    if (!k.is_face(support(next))) continue;
    const std::size_t idx = target.index_of(next);
    v[idx] = field.add(v[idx], form[t]);
  }
  return v;
}

}  // namespace detail

/// Checks that `lsop` is a regular sequence via the Hilbert series of the
/// quotient, then computes the cohomology of the finite complex
/// k(K)/J ⊗ Λ[u_1..u_{m-n}] and compares it with the Koszul Betti table.
///
/// The exterior generators map to linear forms completing λ_1..λ_n to a basis
/// of the degree-one forms; the λ_i themselves are zero in k(K)/J.
template <ExactField F>
LsopReport lsop_reduction(const SimplicialComplex& k, const LsopCandidate<F>& lsop, bool compare_bigraded = false,
                          unsigned threads = 1) {
  const int m = k.vertex_count();
  const int n = lsop.length();
  const F& field = lsop.field;
  if (lsop.m != m) throw Error(ErrorCode::dimension_mismatch, "l.s.o.p. rows must have one entry per vertex");
  for (const auto& row : lsop.rows)
    if (int(row.size()) != m) throw Error(ErrorCode::dimension_mismatch, "l.s.o.p. row has the wrong length");
  if (n != k.max_face_size())
    throw Error(ErrorCode::invalid_input, "l.s.o.p. length " + std::to_string(n) +
                                              " differs from the maximal face size " +
                                              std::to_string(k.max_face_size()));

  LsopReport report;
  const auto hilbert = face_ring_hilbert(k, n + 1);
  for (int d = 0; d <= n + 1; ++d) {
    // coefficient of t^d in H(t) (1 - t)^n
    mpz_class c = 0;
    for (int s = 0; s <= std::min(d, n); ++s) {
      mpz_class binom;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(s));
      c += (s % 2 == 0 ? binom : mpz_class(-binom)) * hilbert[std::size_t(d - s)];
    }
    report.expected_dims.push_back(c.get_si());
  }

  std::vector<detail::QuotientPiece<F>> pieces;
  for (int d = 0; d <= n + 1; ++d) {
    auto monomials = face_ring_monomials(k, d);
    RowReducer<F> reducer(field, monomials.size());
    if (d > 0) {
      const detail::QuotientPiece<F> target{monomials, Rref<F>{field, monomials.size(), {}, {}, {}}, {}};
      for (const auto& mu : pieces.back().monomials)
        for (const auto& form : lsop.rows)
          reducer.add_dense(detail::multiply_linear_form(k, field, form, mu, target), field);
    }
    detail::QuotientPiece<F> piece{std::move(monomials), std::move(reducer).finish(), {}};
    std::vector<bool> is_pivot(piece.monomials.size(), false);
    for (auto p : piece.relations.pivots) is_pivot[p] = true;
    for (std::size_t c = 0; c < piece.monomials.size(); ++c)
      if (!is_pivot[c]) piece.standard.push_back(c);
    report.quotient_dims.push_back(piece.standard.size());
    if (!report.first_failing_degree && long(piece.standard.size()) != report.expected_dims[std::size_t(d)])
      report.first_failing_degree = d;
    pieces.push_back(std::move(piece));
  }
  report.regular = !report.first_failing_degree;
  if (!report.regular) return report;

  // Complete the λ's to a basis of linear forms with coordinate forms.
  std::vector<std::vector<typename F::value_type>> complement;
  {
    RowReducer<F> reducer(field, std::size_t(m));
    for (const auto& row : lsop.rows) reducer.add_dense(row, field);
    for (int t = 0; t < m; ++t) {
      std::vector<typename F::value_type> unit(std::size_t(m), field.zero());
      unit[std::size_t(t)] = field.one();
      if (reducer.add_dense(unit, field)) complement.push_back(std::move(unit));
    }
  }
  const int e = int(complement.size());

  // mult[s][d]: matrix of multiplication by complement[s] from quotient degree d to d+1
  std::vector<std::vector<SparseMatrix<F>>> mult(static_cast<std::size_t>(e));
  for (int s = 0; s < e; ++s) {
    for (int d = 0; d <= n; ++d) {
      const auto& from = pieces[std::size_t(d)];
      const auto& to = pieces[std::size_t(d + 1)];
      SparseMatrix<F> mat(field, to.standard.size(), from.standard.size());
      std::vector<std::size_t> position(to.monomials.size(), 0);
      for (std::size_t r = 0; r < to.standard.size(); ++r) position[to.standard[r]] = r;
      for (std::size_t c = 0; c < from.standard.size(); ++c) {
        const auto image =
            detail::multiply_linear_form(k, field, complement[std::size_t(s)], from.monomials[from.standard[c]], to);
        const auto reduced = to.relations.normal_form(image);
        for (std::size_t r = 0; r < to.standard.size(); ++r)
          if (!field.is_zero(reduced[to.standard[r]])) mat.add_to(r, c, reduced[to.standard[r]]);
      }
      mult[std::size_t(s)].push_back(std::move(mat));
    }
  }

  // C_{i,w} = A_{w-i} ⊗ Λ^i; basis ordered by exterior subset, then standard monomial.
  auto piece_dim = [&](int d) -> std::size_t { return d < 0 || d > n ? 0 : pieces[std::size_t(d)].standard.size(); };
  std::vector<std::vector<VertexSet>> subsets_by_size(std::size_t(e) + 1);
  for_each_subset(VertexSet::full(e), [&](VertexSet s) { subsets_by_size[std::size_t(s.size())].push_back(s); });
  for (auto& layer : subsets_by_size) std::sort(layer.begin(), layer.end());

  auto chain_dim = [&](int i, int w) -> std::size_t {
    if (i < 0 || i > e) return 0;
    return subsets_by_size[std::size_t(i)].size() * piece_dim(w - i);
  };
  auto differential = [&](int i, int w) {
    // from C_{i,w} to C_{i-1,w}
    SparseMatrix<F> d(field, chain_dim(i - 1, w), chain_dim(i, w));
    const std::size_t from_piece = piece_dim(w - i);
    const std::size_t to_piece = piece_dim(w - i + 1);
    if (from_piece == 0 || to_piece == 0) return d;
    const auto& lower = subsets_by_size[std::size_t(i - 1)];
    for (std::size_t si = 0; si < subsets_by_size[std::size_t(i)].size(); ++si) {
      const VertexSet s = subsets_by_size[std::size_t(i)][si];
      int position = 0;
      for (int gen : s) {
        const std::size_t target =
            std::size_t(std::lower_bound(lower.begin(), lower.end(), s - VertexSet{gen}) - lower.begin());
        const auto& mat = mult[std::size_t(gen - 1)][std::size_t(w - i)];
        for (std::size_t r = 0; r < mat.rows(); ++r)
          for (const auto& [c, val] : mat.row(r))
            d.add_to(target * to_piece + r, si * from_piece + c, position % 2 == 0 ? val : field.neg(val));
        ++position;
      }
    }
    return d;
  };

  for (int w = 0; w <= n + e; ++w) {
    std::vector<std::size_t> ranks(std::size_t(e) + 2, 0);
    for (int i = 1; i <= e; ++i) ranks[std::size_t(i)] = rank(differential(i, w));
    for (int i = 0; i <= e; ++i) {
      const std::size_t dim = chain_dim(i, w) - ranks[std::size_t(i)] - ranks[std::size_t(i + 1)];
      if (dim == 0) continue;
      report.bigraded[{i, w}] = dim;
      report.total_degree_dims[2 * w - i] += dim;
    }
  }

  const BettiTable koszul = betti_table(k, field, KoszulOptions{std::nullopt, threads, std::nullopt});
  report.koszul_total_degree_dims = total_degree_dims(koszul);
  report.matches_koszul = report.koszul_total_degree_dims == report.total_degree_dims;
  if (compare_bigraded) report.bigraded_matches_koszul = koszul.entries() == report.bigraded;
  return report;
}

/// Tries up to `attempts` random candidates (seeds seed, seed+1, ...) and
/// returns the first regular one with its report, or the last failure.
template <ExactField F>
std::pair<LsopCandidate<F>, LsopReport> lsop_search(const SimplicialComplex& k, const F& field, std::uint64_t seed,
                                                    int attempts = 5, bool compare_bigraded = false,
                                                    unsigned threads = 1) {
  std::optional<std::pair<LsopCandidate<F>, LsopReport>> last;
  for (int t = 0; t < attempts; ++t) {
    auto candidate = LsopCandidate<F>::random(field, k.max_face_size(), k.vertex_count(), seed + std::uint64_t(t));
    auto report = lsop_reduction(k, candidate, compare_bigraded, threads);
    const bool regular = report.regular;
    last.emplace(std::move(candidate), std::move(report));
    if (regular) break;
  }
  if (!last) throw Error(ErrorCode::invalid_input, "lsop_search needs at least one attempt");
  return std::move(*last);
}

}  // namespace facering
