#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "facering/error.hpp"

namespace facering {

inline constexpr int max_vertices = 64;

/// A subset of {1, ..., 64}; vertex v is bit v-1.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint64_t bits) : bits_(bits) {}
  VertexSet(std::initializer_list<int> vertices) {
    for (int v : vertices) insert(v);
  }

  static VertexSet from_vector(const std::vector<int>& vertices) {
    VertexSet s;
    for (int v : vertices) s.insert(v);
    return s;
  }

  /// {1, ..., m}.
  static constexpr VertexSet full(int m) {
    return VertexSet(m >= 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << m) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(int v) const { return v >= 1 && v <= 64 && (bits_ >> (v - 1)) & 1; }
  constexpr bool is_subset_of(VertexSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(VertexSet other) const { return (bits_ & other.bits_) != 0; }

  void insert(int v) {
    if (v < 1 || v > max_vertices)
      throw Error(ErrorCode::vertex_out_of_range, "vertex " + std::to_string(v) + " out of range");
    bits_ |= std::uint64_t(1) << (v - 1);
  }
  void erase(int v) {
    if (v >= 1 && v <= 64) bits_ &= ~(std::uint64_t(1) << (v - 1));
  }

  /// Largest vertex, or 0 for the empty set.
  constexpr int max() const { return bits_ == 0 ? 0 : 64 - std::countl_zero(bits_); }
  constexpr int min() const { return bits_ == 0 ? 0 : std::countr_zero(bits_) + 1; }

  friend constexpr VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits_ | b.bits_); }
  friend constexpr VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & b.bits_); }
  friend constexpr VertexSet operator-(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(VertexSet, VertexSet) = default;

  /// Lexicographic order on the increasing vertex lists: {1,2} < {1,3} < {2}.
  friend constexpr std::strong_ordering operator<=>(VertexSet a, VertexSet b) {
    std::uint64_t x = a.bits_, y = b.bits_;
    while (x != 0 && y != 0) {
      int vx = std::countr_zero(x), vy = std::countr_zero(y);
      if (vx != vy) return vx < vy ? std::strong_ordering::less : std::strong_ordering::greater;
      x &= x - 1;
      y &= y - 1;
    }
    if (x == y) return std::strong_ordering::equal;
    return x == 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }

  class iterator {
   public:
    using value_type = int;
    using difference_type = std::ptrdiff_t;
    constexpr iterator() = default;
    constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
    constexpr int operator*() const { return std::countr_zero(rest_) + 1; }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    constexpr bool operator==(const iterator&) const = default;

   private:
    std::uint64_t rest_ = 0;
  };
  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<int> to_vector() const { return {begin(), end()}; }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int v : *this) {
      if (!first) s += ",";
      s += std::to_string(v);
      first = false;
    }
    return s + "}";
  }

 private:
  std::uint64_t bits_ = 0;
};

/// Calls `fn` on every subset of `s` (including the empty set and `s` itself),
/// in increasing order of bit pattern.
template <class Fn>
void for_each_subset(VertexSet s, Fn&& fn) {
  const std::uint64_t mask = s.bits();
  std::uint64_t sub = 0;
  while (true) {
    fn(VertexSet(sub));
    if (sub == mask) break;
    sub = (sub - mask) & mask;
  }
}

}  // namespace facering
