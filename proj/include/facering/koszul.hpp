#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "facering/betti.hpp"
#include "facering/field.hpp"
#include "facering/matrix.hpp"
#include "facering/parallel.hpp"
#include "facering/simplicial.hpp"

namespace facering {

/// Z^m-degree: exponent of each vertex.
using Multidegree = std::vector<int>;

Multidegree indicator(int m, VertexSet s);
VertexSet support(const Multidegree& a);
int total(const Multidegree& a);
bool is_squarefree(const Multidegree& a);
std::string to_string(const Multidegree& a);

/// Basis element v^alpha u_sigma of k(K) ⊗ Λ[u_1..u_m].
///
/// bideg v_i = (0,2), bideg u_i = (-1,2); we store the homological degree
/// i = |sigma| as a nonnegative number and report -i on output.
struct KoszulMonomial {
  Multidegree alpha;
  VertexSet sigma;

  static KoszulMonomial unit(int m) { return {Multidegree(std::size_t(m), 0), {}}; }
  /// Reads products such as "v1^2 v3 u2 u4" or "1".
  static KoszulMonomial parse(std::string_view text, int m);

  int vertex_count() const { return int(alpha.size()); }
  VertexSet v_support() const { return support(alpha); }
  int v_degree() const { return total(alpha); }
  int homological_degree() const { return sigma.size(); }
  int internal_degree() const { return 2 * (v_degree() + sigma.size()); }
  int total_degree() const { return internal_degree() - homological_degree(); }
  Multidegree multidegree() const;

  std::string to_string() const;

  friend bool operator==(const KoszulMonomial&, const KoszulMonomial&) = default;
  /// Orders by sigma (as increasing vertex lists), then alpha lexicographically.
  friend bool operator<(const KoszulMonomial& a, const KoszulMonomial& b) {
    if (a.sigma != b.sigma) return a.sigma < b.sigma;
    return a.alpha < b.alpha;
  }
};

/// A field-linear combination of Koszul monomials, homogeneous in
/// multidegree and in homological degree. Zero coefficients are never stored.
template <ExactField F>
class Cochain {
 public:
  using Scalar = typename F::value_type;
  using Terms = std::map<KoszulMonomial, Scalar>;

  Cochain(F field, int m) : field_(std::move(field)), m_(m) {}

  static Cochain monomial(F field, KoszulMonomial mono) {
    Cochain c(field, mono.vertex_count());
    c.add_term(mono, field.one());
    return c;
  }

  const F& field() const { return field_; }
  int vertex_count() const { return m_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::optional<Multidegree> multidegree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.multidegree();
  }
  std::optional<int> homological_degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first.homological_degree();
  }

  Scalar coeff(const KoszulMonomial& mono) const {
    auto it = terms_.find(mono);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  /// Adds coeff * mono. Throws malformed_cochain if `mono` breaks homogeneity.
  void add_term(const KoszulMonomial& mono, const Scalar& coeff) {
    field_.validate(coeff);
    if (mono.vertex_count() != m_)
      throw Error(ErrorCode::malformed_cochain, "monomial " + mono.to_string() + " has the wrong number of variables");
    for (int e : mono.alpha)
      if (e < 0) throw Error(ErrorCode::malformed_cochain, "negative exponent in " + mono.to_string());
    if (field_.is_zero(coeff)) return;
    if (!terms_.empty()) {
      const KoszulMonomial& first = terms_.begin()->first;
      if (first.homological_degree() != mono.homological_degree() || first.multidegree() != mono.multidegree())
        throw Error(ErrorCode::malformed_cochain,
                    "inhomogeneous cochain: " + mono.to_string() + " next to " + first.to_string());
    }
    auto [it, inserted] = terms_.try_emplace(mono, coeff);
    if (!inserted) {
      it->second = field_.add(it->second, coeff);
      if (field_.is_zero(it->second)) terms_.erase(it);
    }
  }

  Cochain& operator+=(const Cochain& other) {
    require_same_field(field_, other.field_);
    for (const auto& [mono, c] : other.terms_) add_term(mono, c);
    return *this;
  }
  Cochain& operator-=(const Cochain& other) {
    require_same_field(field_, other.field_);
    for (const auto& [mono, c] : other.terms_) add_term(mono, field_.neg(c));
    return *this;
  }
  Cochain scaled(const Scalar& s) const {
    Cochain out(field_, m_);
    for (const auto& [mono, c] : terms_) out.add_term(mono, field_.mul(s, c));
    return out;
  }

  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.field_ == b.field_ && a.m_ == b.m_ && a.terms_ == b.terms_;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [mono, c] : terms_) {
      if (!first) s += " + ";
      first = false;
      if (!(c == field_.one())) s += "(" + field_.to_string(c) + ")*";
      s += mono.to_string();
    }
    return s;
  }

 private:
  F field_;
  int m_;
  Terms terms_;
};

/// The derivation with d(u_i) = v_i and d(v_i) = 0:
///   d(v^alpha u_{j1<...<jk}) = Σ_t (-1)^{t-1} v^{alpha + e_{jt}} u_{sigma \ jt},
/// dropping terms whose v-support is not a face. Throws malformed_cochain for
/// input terms that are already zero in k(K).
template <ExactField F>
Cochain<F> koszul_differential(const Cochain<F>& c, const SimplicialComplex& k) {
  if (c.vertex_count() != k.vertex_count())
    throw Error(ErrorCode::malformed_cochain, "cochain and complex have different vertex counts");
  const F& field = c.field();
  Cochain<F> out(field, c.vertex_count());
  for (const auto& [mono, coeff] : c.terms()) {
    if (!k.is_face(mono.v_support()))
      throw Error(ErrorCode::malformed_cochain, "term " + mono.to_string() + " has non-face support");
    int position = 0;
    for (int j : mono.sigma) {
      KoszulMonomial image = mono;
      image.alpha[std::size_t(j - 1)] += 1;
      image.sigma.erase(j);
      if (k.is_face(image.v_support())) out.add_term(image, position % 2 == 0 ? coeff : field.neg(coeff));
      ++position;
    }
  }
  return out;
}

/// The Koszul complex restricted to one multidegree a. `bases[i]` lists the
/// monomials with |sigma| = i in increasing order; `differentials[i]` is the
/// matrix of d from bases[i] (columns) to bases[i-1] (rows).
template <ExactField F>
struct StrandComplex {
  using Scalar = typename F::value_type;

  F field;
  Multidegree degree;
  std::vector<std::vector<KoszulMonomial>> bases;
  std::vector<SparseMatrix<F>> differentials;

  int top_degree() const { return int(bases.size()) - 1; }

  /// Position of `mono` in bases[|sigma|], if present.
  std::optional<std::size_t> index_of(const KoszulMonomial& mono) const {
    const int i = mono.homological_degree();
    if (i > top_degree()) return std::nullopt;
    const auto& basis = bases[std::size_t(i)];
    auto it = std::lower_bound(basis.begin(), basis.end(), mono);
    if (it == basis.end() || !(*it == mono)) return std::nullopt;
    return std::size_t(it - basis.begin());
  }

  /// Coordinates of a cochain living in this strand at degree i.
  std::vector<Scalar> coordinates(const Cochain<F>& c, int i) const {
    std::vector<Scalar> v(bases[std::size_t(i)].size(), field.zero());
    for (const auto& [mono, coeff] : c.terms()) {
      auto idx = mono.homological_degree() == i ? index_of(mono) : std::nullopt;
      if (!idx) throw Error(ErrorCode::malformed_cochain, "term " + mono.to_string() + " lies outside the strand");
      v[*idx] = coeff;
    }
    return v;
  }

  Cochain<F> cochain(int i, std::span<const Scalar> coords) const {
    Cochain<F> c(field, int(degree.size()));
    const auto& basis = bases[std::size_t(i)];
    for (std::size_t r = 0; r < basis.size(); ++r) c.add_term(basis[r], coords[r]);
    return c;
  }

  /// dim H^i = |bases[i]| - rank d_i - rank d_{i+1}.
  std::vector<std::size_t> cohomology_dims() const {
    std::vector<std::size_t> ranks(bases.size() + 1, 0);
    for (std::size_t i = 1; i < differentials.size(); ++i) ranks[i] = rank(differentials[i]);
    std::vector<std::size_t> dims(bases.size());
    for (std::size_t i = 0; i < bases.size(); ++i) dims[i] = bases[i].size() - ranks[i] - ranks[i + 1];
    return dims;
  }
};

/// Monomials of multidegree `a` with |sigma| = i whose v-support is a face.
std::vector<KoszulMonomial> strand_basis(const SimplicialComplex& k, const Multidegree& a, int i);

template <ExactField F>
StrandComplex<F> strand_complex(const SimplicialComplex& k, const Multidegree& a, const F& field) {
  if (int(a.size()) != k.vertex_count())
    throw Error(ErrorCode::dimension_mismatch, "multidegree length differs from the vertex count");
  for (int e : a)
    if (e < 0) throw Error(ErrorCode::invalid_input, "negative multidegree " + to_string(a));
  StrandComplex<F> s{field, a, {}, {}};
  const int top = support(a).size();
  for (int i = 0; i <= top; ++i) s.bases.push_back(strand_basis(k, a, i));
  s.differentials.emplace_back(field, 0, s.bases[0].size());
  for (int i = 1; i <= top; ++i) {
    SparseMatrix<F> d(field, s.bases[std::size_t(i - 1)].size(), s.bases[std::size_t(i)].size());
    const auto& cols = s.bases[std::size_t(i)];
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const Cochain<F> image = koszul_differential(Cochain<F>::monomial(field, cols[c]), k);
      for (const auto& [mono, coeff] : image.terms()) d.add_to(*s.index_of(mono), c, coeff);
    }
    s.differentials.push_back(std::move(d));
  }
  return s;
}

/// Test hook: negates one differential entry in one strand before ranks are taken.
struct SignFlip {
  Multidegree degree;
  int homological_degree = 1;
  std::size_t row = 0;
  std::size_t col = 0;
};

struct KoszulOptions {
  /// When set, every multidegree of total degree ≤ bound contributes, not
  /// only the 2^m squarefree ones.
  std::optional<int> all_multidegrees_up_to;
  unsigned threads = 1;
  std::optional<SignFlip> inject_fault;
};

template <ExactField F>
std::vector<std::size_t> strand_cohomology_dims(const SimplicialComplex& k, const Multidegree& a, const F& field,
                                                const std::optional<SignFlip>& fault = std::nullopt) {
  StrandComplex<F> s = strand_complex(k, a, field);
  if (fault && fault->degree == a && fault->homological_degree >= 1 && fault->homological_degree <= s.top_degree()) {
    auto& d = s.differentials[std::size_t(fault->homological_degree)];
    if (fault->row < d.rows() && fault->col < d.cols())
      d.set(fault->row, fault->col, field.neg(d.coeff(fault->row, fault->col)));
  }
  return s.cohomology_dims();
}

/// Every multidegree with total degree ≤ bound and some exponent ≥ 2 whose
/// strand can be nonempty (the vertices with exponent ≥ 2 must span a face).
std::vector<Multidegree> nonsquarefree_multidegrees(const SimplicialComplex& k, int bound);

/// Tor_{k[v]}(k(K), k) as a Betti table, summed strand by strand.
template <ExactField F>
BettiTable betti_table(const SimplicialComplex& k, const F& field, const KoszulOptions& options = {}) {
  const int m = k.vertex_count();
  BettiTable table(m);
  const std::uint64_t subsets = m >= 64 ? 0 : std::uint64_t(1) << m;
  std::vector<std::vector<std::size_t>> squarefree(subsets);
  parallel_for(subsets, options.threads, [&](std::size_t bits) {
    squarefree[bits] = strand_cohomology_dims(k, indicator(m, VertexSet(bits)), field, options.inject_fault);
  });
  for (std::size_t bits = 0; bits < subsets; ++bits)
    for (std::size_t i = 0; i < squarefree[bits].size(); ++i)
      table.add_refined(int(i), VertexSet(bits), squarefree[bits][i]);

  if (options.all_multidegrees_up_to) {
    const auto degrees = nonsquarefree_multidegrees(k, *options.all_multidegrees_up_to);
    std::vector<std::vector<std::size_t>> dims(degrees.size());
    parallel_for(degrees.size(), options.threads,
                 [&](std::size_t n) { dims[n] = strand_cohomology_dims(k, degrees[n], field, options.inject_fault); });
    for (std::size_t n = 0; n < degrees.size(); ++n)
      for (std::size_t i = 0; i < dims[n].size(); ++i) table.add(int(i), total(degrees[n]), dims[n][i]);
  }
  return table;
}

struct StrandViolation {
  Multidegree degree;
  int homological_degree;
  std::size_t dim;
};

/// Non-squarefree strands of total degree ≤ bound with nonzero cohomology.
/// Empty whenever the cohomology is concentrated in squarefree degrees.
template <ExactField F>
std::vector<StrandViolation> nonsquarefree_violations(const SimplicialComplex& k, const F& field, int bound,
                                                      unsigned threads = 1) {
  const auto degrees = nonsquarefree_multidegrees(k, bound);
  std::vector<std::vector<std::size_t>> dims(degrees.size());
  parallel_for(degrees.size(), threads, [&](std::size_t n) { dims[n] = strand_cohomology_dims(k, degrees[n], field); });
  std::vector<StrandViolation> out;
  for (std::size_t n = 0; n < degrees.size(); ++n)
    for (std::size_t i = 0; i < dims[n].size(); ++i)
      if (dims[n][i] != 0) out.push_back({degrees[n], int(i), dims[n][i]});
  return out;
}

/// Coefficients c_0..c_bound of the Hilbert series of k(K) in t^2:
/// c_d = number of monomials of degree d with face support.
std::vector<mpz_class> face_ring_hilbert(const SimplicialComplex& k, int bound);

/// Monomials v^alpha of degree d with face support, in increasing lex order of alpha.
std::vector<Multidegree> face_ring_monomials(const SimplicialComplex& k, int d);

}  // namespace facering
