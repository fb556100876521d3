#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>

#include "facering/vertex_set.hpp"

namespace facering {

/// Bigraded Betti numbers β^{-i,2j}, stored under the key (i, j) with i ≥ 0.
/// The optional refinement records the contribution of each squarefree
/// multidegree, i.e. each vertex subset I with |I| = j.
class BettiTable {
 public:
  explicit BettiTable(int m = 0) : m_(m) {}

  int vertex_count() const { return m_; }

  void add(int i, int j, std::size_t dim);
  /// Adds to the refined entry (i, subset) and to the coarse entry (i, |subset|).
  void add_refined(int i, VertexSet subset, std::size_t dim);

  std::size_t at(int i, int j) const;
  std::size_t refined_at(int i, VertexSet subset) const;

  /// Nonzero entries only.
  const std::map<std::pair<int, int>, std::size_t>& entries() const { return entries_; }
  const std::map<std::pair<int, VertexSet>, std::size_t>& refined() const { return refined_; }

  friend bool operator==(const BettiTable&, const BettiTable&) = default;

 private:
  int m_;
  std::map<std::pair<int, int>, std::size_t> entries_;
  std::map<std::pair<int, VertexSet>, std::size_t> refined_;
};

/// dim H^k(U(K)) = Σ_{2j - i = k} β^{-i,2j}.
std::map<int, std::size_t> total_degree_dims(const BettiTable& table);

/// Alternating sum Σ_k (-1)^k dims[k].
long euler_characteristic(const std::map<int, std::size_t>& dims);

/// "1 + 5t^3 + 5t^4 + t^7".
std::string format_poincare_series(const std::map<int, std::size_t>& dims);

/// Rows -i, columns 2j, as in the bigraded Tor display.
std::string format_betti_table(const BettiTable& table);

}  // namespace facering
