#include "facering/betti.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>
#include <vector>

namespace facering {

void BettiTable::add(int i, int j, std::size_t dim) {
  if (dim == 0) return;
  entries_[{i, j}] += dim;
}

void BettiTable::add_refined(int i, VertexSet subset, std::size_t dim) {
  if (dim == 0) return;
  refined_[{i, subset}] += dim;
  entries_[{i, subset.size()}] += dim;
}

std::size_t BettiTable::at(int i, int j) const {
  auto it = entries_.find({i, j});
  return it == entries_.end() ? 0 : it->second;
}

std::size_t BettiTable::refined_at(int i, VertexSet subset) const {
  auto it = refined_.find({i, subset});
  return it == refined_.end() ? 0 : it->second;
}

std::map<int, std::size_t> total_degree_dims(const BettiTable& table) {
  std::map<int, std::size_t> dims;
  for (const auto& [key, dim] : table.entries()) dims[2 * key.second - key.first] += dim;
  return dims;
}

long euler_characteristic(const std::map<int, std::size_t>& dims) {
  long chi = 0;
  for (const auto& [k, d] : dims) chi += (k % 2 == 0 ? 1 : -1) * long(d);
  return chi;
}

std::string format_poincare_series(const std::map<int, std::size_t>& dims) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, d] : dims) {
    if (d == 0) continue;
    if (!first) out << " + ";
    first = false;
    if (k == 0) {
      out << d;
      continue;
    }
    if (d != 1) out << d;
    out << "t";
    if (k != 1) out << "^" << k;
  }
  if (first) out << "0";
  return out.str();
}

std::string format_betti_table(const BettiTable& table) {
  std::set<int> rows, cols;
  for (const auto& [key, dim] : table.entries()) {
    rows.insert(key.first);
    cols.insert(key.second);
  }
  std::ostringstream out;
  constexpr int width = 6;
  out << std::setw(width) << "-i\\2j";
  for (int j : cols) out << std::setw(width) << 2 * j;
  out << '\n';
  for (int i : rows) {
    out << std::setw(width) << -i;
    for (int j : cols) {
      std::size_t d = table.at(i, j);
      if (d == 0)
        out << std::setw(width) << ".";
      else
        out << std::setw(width) << d;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace facering
