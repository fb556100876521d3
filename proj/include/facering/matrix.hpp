#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "facering/field.hpp"

namespace facering {

/// Sorted (column, value) pairs with no explicit zeros.
template <class T>
using SparseRow = std::vector<std::pair<std::size_t, T>>;

/// Row-major sparse matrix over an exact field. Holds at most one entry per
/// (row, col) and never stores zeros.
template <ExactField F>
class SparseMatrix {
 public:
  using Scalar = typename F::value_type;
  using Row = SparseRow<Scalar>;

  SparseMatrix(F field, std::size_t rows, std::size_t cols) : field_(std::move(field)), cols_(cols), rows_(rows) {}

  static SparseMatrix identity(F field, std::size_t n) {
    SparseMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.rows_[i].emplace_back(i, field.one());
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const Row& row(std::size_t r) const { return rows_.at(r); }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

  Scalar coeff(std::size_t r, std::size_t c) const {
    check_index(r, c);
    const Row& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t col) { return e.first < col; });
    return it != row.end() && it->first == c ? it->second : field_.zero();
  }

  /// Adds `value` to entry (r, c). Entries that cancel are erased.
  void add_to(std::size_t r, std::size_t c, const Scalar& value) {
    check_index(r, c);
    field_.validate(value);
    if (field_.is_zero(value)) return;
    Row& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t col) { return e.first < col; });
    if (it != row.end() && it->first == c) {
      it->second = field_.add(it->second, value);
      if (field_.is_zero(it->second)) row.erase(it);
    } else {
      row.insert(it, {c, value});
    }
  }

  void set(std::size_t r, std::size_t c, const Scalar& value) { add_to(r, c, field_.sub(value, coeff(r, c))); }

  SparseMatrix transpose() const {
    SparseMatrix t(field_, cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r)
      for (const auto& [c, v] : rows_[r]) t.rows_[c].emplace_back(r, v);
    return t;
  }

  /// [this | right]; both sides must share a field and a row count.
  SparseMatrix hstack(const SparseMatrix& right) const {
    require_same_field(field_, right.field_);
    if (rows() != right.rows()) throw Error(ErrorCode::dimension_mismatch, "hstack: row counts differ");
    SparseMatrix out(field_, rows(), cols_ + right.cols_);
    for (std::size_t r = 0; r < rows(); ++r) {
      out.rows_[r] = rows_[r];
      for (const auto& [c, v] : right.rows_[r]) out.rows_[r].emplace_back(c + cols_, v);
    }
    return out;
  }

  std::vector<Scalar> apply(std::span<const Scalar> x) const {
    if (x.size() != cols_) throw Error(ErrorCode::dimension_mismatch, "apply: vector length differs from column count");
    std::vector<Scalar> y(rows(), field_.zero());
    for (std::size_t r = 0; r < rows(); ++r)
      for (const auto& [c, v] : rows_[r]) y[r] = field_.add(y[r], field_.mul(v, x[c]));
    return y;
  }

  std::vector<Scalar> column(std::size_t c) const {
    std::vector<Scalar> out(rows(), field_.zero());
    for (std::size_t r = 0; r < rows(); ++r) out[r] = coeff(r, c);
    return out;
  }

  bool operator==(const SparseMatrix& other) const {
    return field_ == other.field_ && cols_ == other.cols_ && rows_ == other.rows_;
  }

 private:
  void check_index(std::size_t r, std::size_t c) const {
    if (r >= rows() || c >= cols_) throw Error(ErrorCode::dimension_mismatch, "matrix index out of range");
  }

  F field_;
  std::size_t cols_;
  std::vector<Row> rows_;
};

/// Reduced row echelon form. `rows[k]` has a leading one in column
/// `pivots[k]` and zeros in every other pivot column; pivots increase.
template <ExactField F>
struct Rref {
  using Scalar = typename F::value_type;

  F field;
  std::size_t cols = 0;
  std::vector<SparseRow<Scalar>> rows;
  std::vector<std::size_t> pivots;
  /// Input rows that raised the rank when scanned top to bottom.
  std::vector<std::size_t> independent_rows;

  std::size_t rank() const { return pivots.size(); }

  /// Remainder of `v` modulo the row space, supported off the pivot columns.
  std::vector<Scalar> normal_form(std::span<const Scalar> v) const {
    if (v.size() != cols) throw Error(ErrorCode::dimension_mismatch, "normal_form: length mismatch");
    std::vector<Scalar> out(v.begin(), v.end());
    for (std::size_t k = 0; k < rows.size(); ++k) {
      Scalar factor = v[pivots[k]];
      if (field.is_zero(factor)) continue;
      for (const auto& [c, x] : rows[k]) out[c] = field.sub(out[c], field.mul(factor, x));
    }
    return out;
  }

  /// One vector per free column f: e_f minus the pivot-column solution.
  std::vector<std::vector<Scalar>> kernel_basis() const {
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
      if (is_pivot[f]) continue;
      std::vector<Scalar> x(cols, field.zero());
      x[f] = field.one();
      for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto& row = rows[k];
        auto it =
            std::lower_bound(row.begin(), row.end(), f, [](const auto& e, std::size_t col) { return e.first < col; });
        if (it != row.end() && it->first == f) x[pivots[k]] = field.neg(it->second);
      }
      basis.push_back(std::move(x));
    }
    return basis;
  }
};

namespace detail {

struct Integers {
  using value_type = mpz_class;
  bool is_zero(const mpz_class& a) const { return sgn(a) == 0; }
  mpz_class add(const mpz_class& a, const mpz_class& b) const { return a + b; }
  mpz_class mul(const mpz_class& a, const mpz_class& b) const { return a * b; }
};

/// a*x + b*y on sorted sparse rows.
template <class Ring>
SparseRow<typename Ring::value_type> combine(const Ring& ring, const typename Ring::value_type& a,
                                             const SparseRow<typename Ring::value_type>& x,
                                             const typename Ring::value_type& b,
                                             const SparseRow<typename Ring::value_type>& y) {
  SparseRow<typename Ring::value_type> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      auto v = ring.mul(a, x[i].second);
      if (!ring.is_zero(v)) out.emplace_back(x[i].first, std::move(v));
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      auto v = ring.mul(b, y[j].second);
      if (!ring.is_zero(v)) out.emplace_back(y[j].first, std::move(v));
      ++j;
    } else {
      auto v = ring.add(ring.mul(a, x[i].second), ring.mul(b, y[j].second));
      if (!ring.is_zero(v)) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

inline void make_primitive(SparseRow<mpz_class>& row) {
  if (row.empty()) return;
  mpz_class g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (sgn(row.front().second) < 0) g = -g;
  if (g != 1)
    for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

/// Incremental Gauss-Jordan over a field. Rows are scanned in input order and
/// each new pivot is the first surviving nonzero column of its row.
template <ExactField F>
class FieldEliminator {
 public:
  using Scalar = typename F::value_type;
  using Row = SparseRow<Scalar>;

  FieldEliminator(F field, std::size_t cols) : field_(std::move(field)), cols_(cols) {}

  bool add_row(Row cur) {
    std::size_t pos = 0;
    while (pos < cur.size()) {
      auto it = basis_.find(cur[pos].first);
      if (it == basis_.end()) {
        ++pos;
        continue;
      }
      cur = combine(field_, field_.one(), cur, field_.neg(cur[pos].second), it->second);
    }
    ++scanned_;
    if (cur.empty()) return false;
    const std::size_t lead = cur.front().first;
    const Scalar scale = field_.inv(cur.front().second);
    for (auto& e : cur) e.second = field_.mul(e.second, scale);
    for (auto& [col, row] : basis_) {
      auto hit =
          std::lower_bound(row.begin(), row.end(), lead, [](const auto& e, std::size_t c) { return e.first < c; });
      if (hit != row.end() && hit->first == lead)
        row = combine(field_, field_.one(), row, field_.neg(hit->second), cur);
    }
    basis_.emplace(lead, std::move(cur));
    independent_.push_back(scanned_ - 1);
    return true;
  }

  Rref<F> finish() && {
    Rref<F> out{field_, cols_, {}, {}, std::move(independent_)};
    for (auto& [col, row] : basis_) {
      out.pivots.push_back(col);
      out.rows.push_back(std::move(row));
    }
    return out;
  }

 private:
  F field_;
  std::size_t cols_;
  std::map<std::size_t, Row> basis_;
  std::vector<std::size_t> independent_;
  std::size_t scanned_ = 0;
};

/// Same pivoting as FieldEliminator, but rows are kept as primitive integer
/// vectors and combined fraction-free; division happens once, at the end.
class FractionFreeEliminator {
 public:
  using Row = SparseRow<mpz_class>;

  explicit FractionFreeEliminator(std::size_t cols) : cols_(cols) {}

  bool add_row(const SparseRow<mpq_class>& input) {
    Row cur = to_integer_row(input);
    const Integers z;
    std::size_t pos = 0;
    while (pos < cur.size()) {
      auto it = basis_.find(cur[pos].first);
      if (it == basis_.end()) {
        ++pos;
        continue;
      }
      mpz_class b = -cur[pos].second;
      cur = combine(z, it->second.front().second, cur, b, it->second);
      make_primitive(cur);
    }
    ++scanned_;
    if (cur.empty()) return false;
    make_primitive(cur);
    const std::size_t lead = cur.front().first;
    for (auto& [col, row] : basis_) {
      auto hit =
          std::lower_bound(row.begin(), row.end(), lead, [](const auto& e, std::size_t c) { return e.first < c; });
      if (hit == row.end() || hit->first != lead) continue;
      mpz_class b = -hit->second;
      row = combine(z, cur.front().second, row, b, cur);
      make_primitive(row);
    }
    basis_.emplace(lead, std::move(cur));
    independent_.push_back(scanned_ - 1);
    return true;
  }

  Rref<Rationals> finish() && {
    Rref<Rationals> out{Rationals{}, cols_, {}, {}, std::move(independent_)};
    for (auto& [col, row] : basis_) {
      out.pivots.push_back(col);
      SparseRow<mpq_class> q;
      q.reserve(row.size());
      const mpz_class lead = row.front().second;
      for (auto& [c, v] : row) {
        mpq_class x(v, lead);
        x.canonicalize();
        q.emplace_back(c, std::move(x));
      }
      out.rows.push_back(std::move(q));
    }
    return out;
  }

 private:
  static Row to_integer_row(const SparseRow<mpq_class>& input) {
    mpz_class denom = 1;
    for (const auto& [c, v] : input) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), v.get_den_mpz_t());
    Row out;
    out.reserve(input.size());
    for (const auto& [c, v] : input) out.emplace_back(c, v.get_num() * (denom / v.get_den()));
    make_primitive(out);
    return out;
  }

  std::size_t cols_;
  std::map<std::size_t, Row> basis_;
  std::vector<std::size_t> independent_;
  std::size_t scanned_ = 0;
};

}  // namespace detail

/// Incrementally row-reduces a stream of rows of fixed width.
template <ExactField F>
class RowReducer {
 public:
  using Scalar = typename F::value_type;

  RowReducer(F field, std::size_t cols) : impl_(make(field, cols)) {}

  /// Returns true when `row` is independent of the rows added so far.
  bool add_row(SparseRow<Scalar> row) { return impl_.add_row(std::move(row)); }

  /// Dense convenience overload.
  bool add_dense(std::span<const Scalar> v, const F& field) {
    SparseRow<Scalar> row;
    for (std::size_t c = 0; c < v.size(); ++c)
      if (!field.is_zero(v[c])) row.emplace_back(c, v[c]);
    return add_row(std::move(row));
  }

  Rref<F> finish() && { return std::move(impl_).finish(); }

 private:
  using Impl = std::conditional_t<is_rationals_v<F>, detail::FractionFreeEliminator, detail::FieldEliminator<F>>;
  static Impl make(const F& field, std::size_t cols) {
    if constexpr (is_rationals_v<F>) {
      return Impl(cols);
    } else {
      return Impl(field, cols);
    }
  }
  Impl impl_;
};

template <ExactField F>
Rref<F> row_reduce(const SparseMatrix<F>& m) {
  RowReducer<F> reducer(m.field(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) reducer.add_row(m.row(r));
  return std::move(reducer).finish();
}

template <ExactField F>
std::size_t rank(const SparseMatrix<F>& m) {
  return row_reduce(m).rank();
}

/// Basis of {x : Mx = 0}; cols(M) - rank(M) vectors, one per free column.
template <ExactField F>
std::vector<std::vector<typename F::value_type>> kernel_basis(const SparseMatrix<F>& m) {
  return row_reduce(m).kernel_basis();
}

/// Solves Mx = b repeatedly for a fixed M. Row-reduces [M | I] once, so each
/// query is a sparse matrix-vector product.
template <ExactField F>
class ColumnSpaceSolver {
 public:
  using Scalar = typename F::value_type;

  explicit ColumnSpaceSolver(const SparseMatrix<F>& m)
      : field_(m.field()),
        rows_(m.rows()),
        cols_(m.cols()),
        rref_(row_reduce(m.hstack(SparseMatrix<F>::identity(m.field(), m.rows())))) {}

  std::size_t rank() const {
    return std::size_t(
        std::count_if(rref_.pivots.begin(), rref_.pivots.end(), [&](std::size_t p) { return p < cols_; }));
  }

  /// x with Mx = b (free variables zero), or nullopt when b is not in the column span.
  std::optional<std::vector<Scalar>> solve(std::span<const Scalar> b) const {
    if (b.size() != rows_) throw Error(ErrorCode::dimension_mismatch, "solve: right-hand side has wrong length");
    for (const auto& v : b) field_.validate(v);
    std::vector<Scalar> x(cols_, field_.zero());
    for (std::size_t k = 0; k < rref_.rows.size(); ++k) {
      Scalar y = field_.zero();
      const auto& row = rref_.rows[k];
      auto it =
          std::lower_bound(row.begin(), row.end(), cols_, [](const auto& e, std::size_t c) { return e.first < c; });
      for (; it != row.end(); ++it) y = field_.add(y, field_.mul(it->second, b[it->first - cols_]));
      if (rref_.pivots[k] < cols_) {
        x[rref_.pivots[k]] = y;
      } else if (!field_.is_zero(y)) {
        return std::nullopt;
      }
    }
    return x;
  }

 private:
  F field_;
  std::size_t rows_;
  std::size_t cols_;
  Rref<F> rref_;
};

template <ExactField F>
std::optional<std::vector<typename F::value_type>> solve_in_span(const SparseMatrix<F>& m,
                                                                 std::span<const typename F::value_type> b) {
  return ColumnSpaceSolver<F>(m).solve(b);
}

/// Builds a matrix whose columns are the given dense vectors.
template <ExactField F>
SparseMatrix<F> matrix_from_columns(const F& field, std::size_t rows,
                                    const std::vector<std::vector<typename F::value_type>>& columns) {
  SparseMatrix<F> m(field, rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != rows) throw Error(ErrorCode::dimension_mismatch, "column has wrong length");
    for (std::size_t r = 0; r < rows; ++r)
      if (!field.is_zero(columns[c][r])) m.add_to(r, c, columns[c][r]);
  }
  return m;
}

}  // namespace facering
