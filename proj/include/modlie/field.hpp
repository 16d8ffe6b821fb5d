#pragma once

// Exact scalar arithmetic: the prime field GF(p) and the rationals (char-0 mode).
//
// Both field types expose the same member interface so that every container in
// the library is a template over `Field`. Values are plain `Field::value_type`
// objects; all operations go through the field context, which carries p.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "modlie/error.hpp"

namespace modlie {

namespace detail {

using u128 = unsigned __int128;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// C(a, b) mod p via Lucas' theorem: product of digit binomials in base p.
/// Returns 0 when b > a.
inline std::uint64_t lucas_binom(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  if (!is_prime(p)) fail(ErrorCode::BadChar, "lucas_binom: p = " + std::to_string(p) + " is not prime");
  if (b > a) return 0;
  std::uint64_t result = 1;
  while (a > 0 || b > 0) {
    const std::uint64_t ad = a % p;
    const std::uint64_t bd = b % p;
    if (bd > ad) return 0;
    // small digit binomial: C(ad, bd) mod p with ad < p
    std::uint64_t num = 1, den = 1;
    for (std::uint64_t i = 0; i < bd; ++i) {
      num = detail::mulmod(num, (ad - i) % p, p);
      den = detail::mulmod(den, (i + 1) % p, p);
    }
    result = detail::mulmod(result, detail::mulmod(num, detail::powmod(den, p - 2, p), p), p);
    a /= p;
    b /= p;
  }
  return result;
}

/// GF(p) with canonical residues in [0, p).
class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (1ULL << 62) || !is_prime(p)) {
      fail(ErrorCode::BadChar, "p must be prime and below 2^62, got " + std::to_string(p));
    }
  }

  std::uint64_t characteristic() const noexcept { return p_; }
  bool is_rational() const noexcept { return false; }

  value_type zero() const noexcept { return 0; }
  value_type one() const noexcept { return 1; }

  value_type from_int(std::int64_t x) const noexcept {
    const auto m = static_cast<__int128>(p_);
    __int128 r = static_cast<__int128>(x) % m;
    if (r < 0) r += m;
    return static_cast<value_type>(r);
  }
  value_type from_uint(std::uint64_t x) const noexcept { return x % p_; }

  value_type add(value_type a, value_type b) const noexcept {
    const value_type s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const noexcept { return a >= b ? a - b : a + (p_ - b); }
  value_type neg(value_type a) const noexcept { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const noexcept { return detail::mulmod(a, b, p_); }
  /// a + b*c
  value_type fma(value_type a, value_type b, value_type c) const noexcept { return add(a, mul(b, c)); }

  value_type inv(value_type a) const {
    if (a == 0) fail(ErrorCode::ZeroInverse, "inverse of 0 in GF(" + std::to_string(p_) + ")");
    return detail::powmod(a, p_ - 2, p_);
  }
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }

  bool is_zero(value_type a) const noexcept { return a == 0; }
  bool is_one(value_type a) const noexcept { return a == 1; }
  bool equal(value_type a, value_type b) const noexcept { return a == b; }
  bool less(value_type a, value_type b) const noexcept { return a < b; }

  value_type binom(std::uint64_t a, std::uint64_t b) const { return lucas_binom(a, b, p_); }

  /// Integer representative of smallest absolute value.
  std::optional<std::int64_t> to_integer(value_type a) const noexcept {
    if (a <= p_ / 2) return static_cast<std::int64_t>(a);
    return -static_cast<std::int64_t>(p_ - a);
  }

  std::string to_string(value_type a) const { return std::to_string(a); }

  value_type parse(std::string_view text) const {
    const auto slash = text.find('/');
    if (slash != std::string_view::npos) {
      return div(parse(text.substr(0, slash)), parse(text.substr(slash + 1)));
    }
    try {
      std::size_t used = 0;
      const std::string s(text);
      const long long v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return from_int(v);
    } catch (const std::exception&) {
      fail(ErrorCode::InvalidInput, "cannot parse scalar '" + std::string(text) + "'");
    }
  }

  template <class Rng>
  value_type random(Rng& rng) const {
    std::uniform_int_distribution<std::uint64_t> dist(0, p_ - 1);
    return dist(rng);
  }

  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }

 private:
  std::uint64_t p_;
};

/// The rationals; reduced fractions with positive denominator.
class RationalField {
 public:
  using value_type = mpq_class;

  std::uint64_t characteristic() const noexcept { return 0; }
  bool is_rational() const noexcept { return true; }

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type from_int(std::int64_t x) const { return value_type(static_cast<long>(x)); }
  value_type from_uint(std::uint64_t x) const { return value_type(static_cast<unsigned long>(x)); }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type fma(const value_type& a, const value_type& b, const value_type& c) const { return a + b * c; }

  value_type inv(const value_type& a) const {
    if (sgn(a) == 0) fail(ErrorCode::ZeroInverse, "inverse of 0 in Q");
    return 1 / a;
  }
  value_type div(const value_type& a, const value_type& b) const { return a * inv(b); }

  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_one(const value_type& a) const { return a == 1; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }
  bool less(const value_type& a, const value_type& b) const { return a < b; }

  value_type binom(std::uint64_t a, std::uint64_t b) const {
    if (b > a) return zero();
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), a, b);
    return value_type(r);
  }

  std::optional<std::int64_t> to_integer(const value_type& a) const {
    if (a.get_den() != 1 || !a.get_num().fits_slong_p()) return std::nullopt;
    return a.get_num().get_si();
  }

  /// Always "num/den".
  std::string to_string(const value_type& a) const { return a.get_num().get_str() + "/" + a.get_den().get_str(); }

  value_type parse(std::string_view text) const {
    value_type v;
    if (v.set_str(std::string(text), 10) != 0) {
      fail(ErrorCode::InvalidInput, "cannot parse rational '" + std::string(text) + "'");
    }
    if (v.get_den() == 0) fail(ErrorCode::InvalidInput, "zero denominator in '" + std::string(text) + "'");
    v.canonicalize();
    return v;
  }

  template <class Rng>
  value_type random(Rng& rng) const {
    std::uniform_int_distribution<long> dist(-9, 9);
    return value_type(dist(rng));
  }

  std::string name() const { return "Q"; }
};

/// ff_inv on a field context.
template <class Field>
typename Field::value_type ff_inv(const Field& field, const typename Field::value_type& a) {
  return field.inv(a);
}

}  // namespace modlie
