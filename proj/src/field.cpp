#include "facering/field.hpp"

#include <charconv>

namespace facering {

Rationals::value_type Rationals::inv(const value_type& a) const {
  if (is_zero(a)) throw Error(ErrorCode::invalid_input, "division by zero in Q");
  return value_type(1) / a;
}

void Rationals::validate(const value_type& a) const {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  if (sgn(a.get_den()) <= 0 || g != 1)
    throw Error(ErrorCode::field_mismatch, "rational " + a.get_str() + " is not in lowest terms");
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(std::uint64_t p) {
  if (p >= (std::uint64_t(1) << 31) || !is_prime(p))
    throw Error(ErrorCode::invalid_field, "modulus " + std::to_string(p) + " is not a prime below 2^31");
  p_ = std::uint32_t(p);
}

PrimeField::value_type PrimeField::from_int(long v) const {
  long r = v % long(p_);
  if (r < 0) r += long(p_);
  return value_type(r);
}

PrimeField::value_type PrimeField::inv(value_type a) const {
  if (a == 0) throw Error(ErrorCode::invalid_input, "division by zero in " + name());
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = a, e = p_ - 2;
  while (e) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return value_type(result);
}

void PrimeField::validate(value_type a) const {
  if (a >= p_) throw Error(ErrorCode::field_mismatch, "residue " + std::to_string(a) + " does not belong to " + name());
}

AnyField parse_field(std::string_view text) {
  if (text == "q" || text == "Q") return Rationals{};
  if (text.starts_with("fp:")) {
    auto digits = text.substr(3);
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), p);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty()) return PrimeField(p);
  }
  throw Error(ErrorCode::invalid_field, "unrecognized field '" + std::string(text) + "' (expected q or fp:<prime>)");
}

std::string field_name(const AnyField& field) {
  return std::visit([](const auto& f) { return f.name(); }, field);
}

}  // namespace facering
