#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "facering/error.hpp"

namespace facering {

/// Field policy for exact arithmetic over the rationals. Values are GMP
/// rationals kept in canonical form (lowest terms, positive denominator).
struct Rationals {
  using value_type = mpq_class;

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type from_int(long v) const { return value_type(v); }

  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const;

  /// Throws field_mismatch unless `a` is in canonical form.
  void validate(const value_type& a) const;

  std::uint64_t characteristic() const { return 0; }
  std::string name() const { return "q"; }
  std::string to_string(const value_type& a) const { return a.get_str(); }

  bool operator==(const Rationals&) const = default;
};

/// Field policy for the prime field F_p, p < 2^31. Residues live in [0, p).
class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint64_t p);

  std::uint32_t modulus() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long v) const;

  bool is_zero(value_type a) const { return a == 0; }
  value_type add(value_type a, value_type b) const {
    std::uint64_t s = std::uint64_t(a) + b;
    return value_type(s >= p_ ? s - p_ : s);
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : value_type(std::uint64_t(a) + p_ - b); }
  value_type mul(value_type a, value_type b) const { return value_type(std::uint64_t(a) * b % p_); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const;

  /// Throws field_mismatch unless `a` is a residue of this field.
  void validate(value_type a) const;

  std::uint64_t characteristic() const { return p_; }
  std::string name() const { return "fp:" + std::to_string(p_); }
  std::string to_string(value_type a) const { return std::to_string(a); }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

template <class F>
concept ExactField = std::equality_comparable<F> && requires(const F& f, const typename F::value_type& a, long n) {
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.from_int(n) } -> std::same_as<typename F::value_type>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.add(a, a) } -> std::same_as<typename F::value_type>;
  { f.sub(a, a) } -> std::same_as<typename F::value_type>;
  { f.mul(a, a) } -> std::same_as<typename F::value_type>;
  { f.neg(a) } -> std::same_as<typename F::value_type>;
  { f.inv(a) } -> std::same_as<typename F::value_type>;
  { f.characteristic() } -> std::same_as<std::uint64_t>;
  { f.name() } -> std::same_as<std::string>;
};

template <class F>
inline constexpr bool is_rationals_v = std::same_as<F, Rationals>;

/// Runtime field descriptor, as selected on the command line.
using AnyField = std::variant<Rationals, PrimeField>;

/// Parses "q" or "fp:<p>". Throws invalid_field for anything else or a non-prime p.
AnyField parse_field(std::string_view text);
std::string field_name(const AnyField& field);

bool is_prime(std::uint64_t n);

/// Throws field_mismatch when two containers disagree on their field.
template <ExactField F>
void require_same_field(const F& a, const F& b) {
  if (!(a == b)) throw Error(ErrorCode::field_mismatch, "field mismatch: " + a.name() + " vs " + b.name());
}

}  // namespace facering
