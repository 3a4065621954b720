#pragma once

// p-adic valuation and norm on the integers and the rationals.

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "padic/errors.hpp"

namespace padic {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  __extension__ using u128 = unsigned __int128;
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

} // namespace detail

/// Deterministic Miller-Rabin for 64-bit inputs. The first twelve prime bases
/// are sufficient for every n < 3.3e24.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  constexpr std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto b : bases) {
    if (n % b == 0) return n == b;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto b : bases) {
    std::uint64_t x = detail::powmod(b, d, n);
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

/// A prime number, checked at construction.
class Prime {
public:
  explicit Prime(std::uint64_t p) : value_(p) {
    if (!is_prime(p)) throw NotPrime("p must be prime (got " + std::to_string(p) + ")");
  }

  std::uint64_t value() const noexcept { return value_; }
  mpz_class mpz() const { return mpz_class(static_cast<unsigned long>(value_)); }

  /// p^k for k >= 0.
  mpz_class pow(long k) const {
    if (k < 0) throw std::invalid_argument("negative exponent in Prime::pow");
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(value_), static_cast<unsigned long>(k));
    return r;
  }

  friend bool operator==(const Prime&, const Prime&) = default;

private:
  std::uint64_t value_;
};

inline std::ostream& operator<<(std::ostream& os, const Prime& p) { return os << p.value(); }

/// Extended valuation: a finite exponent, +infinity for an exact zero, or a
/// lower bound for a zero known only to some absolute precision.
class ExtVal {
public:
  enum class Tag { Finite, ExactZero, ZeroAtLeast };

  static ExtVal finite(long v) { return ExtVal(Tag::Finite, v); }
  static ExtVal exact_zero() { return ExtVal(Tag::ExactZero, 0); }
  static ExtVal zero_at_least(long a) { return ExtVal(Tag::ZeroAtLeast, a); }

  Tag tag() const noexcept { return tag_; }
  bool is_finite() const noexcept { return tag_ == Tag::Finite; }
  bool is_exact_zero() const noexcept { return tag_ == Tag::ExactZero; }
  bool is_zero_at_least() const noexcept { return tag_ == Tag::ZeroAtLeast; }

  /// The valuation (Finite) or the precision floor (ZeroAtLeast).
  long value() const {
    if (tag_ == Tag::ExactZero) throw std::logic_error("ExactZero carries no value");
    return value_;
  }

  /// min(value, cap), treating ExactZero as +infinity and ZeroAtLeast(A) as
  /// its known floor.
  long capped(long cap) const {
    if (tag_ == Tag::ExactZero) return cap;
    return value_ < cap ? value_ : cap;
  }

  friend bool operator==(const ExtVal&, const ExtVal&) = default;

  /// Ordering of exponents: ExactZero is above every Finite value.
  /// ZeroAtLeast is not ordered against anything but itself.
  friend std::partial_ordering operator<=>(const ExtVal& a, const ExtVal& b) {
    if (a.tag_ == Tag::ZeroAtLeast || b.tag_ == Tag::ZeroAtLeast) {
      if (a == b) return std::partial_ordering::equivalent;
      return std::partial_ordering::unordered;
    }
    if (a.tag_ == Tag::ExactZero)
      return b.tag_ == Tag::ExactZero ? std::partial_ordering::equivalent
                                      : std::partial_ordering::greater;
    if (b.tag_ == Tag::ExactZero) return std::partial_ordering::less;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const {
    switch (tag_) {
    case Tag::Finite: return std::to_string(value_);
    case Tag::ExactZero: return "inf";
    case Tag::ZeroAtLeast: return ">=" + std::to_string(value_);
    }
    return {};
  }

private:
  ExtVal(Tag tag, long v) : tag_(tag), value_(v) {}
  Tag tag_;
  long value_;
};

inline std::ostream& operator<<(std::ostream& os, const ExtVal& v) { return os << v.to_string(); }

/// Largest k with p^k | z, or 0 when z == 0.
inline long padic_val_int(const Prime& p, const mpz_class& z) {
  if (z == 0) return 0;
  mpz_class rest = abs(z);
  // mpz_remove strips every factor of p by repeated exact division.
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), p.mpz().get_mpz_t()));
}

/// Returns q reduced to lowest terms with a positive denominator.
inline mpq_class normalized(mpq_class q) {
  q.canonicalize();
  return q;
}

/// nu_p(num) - nu_p(den) of the reduced fraction; 0 when q == 0.
inline long padic_val_rat(const Prime& p, const mpq_class& q) {
  const mpq_class r = normalized(q);
  if (r == 0) return 0;
  return padic_val_int(p, r.get_num()) - padic_val_int(p, r.get_den());
}

/// The p-adic norm as an exact rational: 0 for q == 0, else p^-v.
inline mpq_class padic_norm_rat(const Prime& p, const mpq_class& q) {
  if (normalized(q) == 0) return 0;
  const long v = padic_val_rat(p, q);
  mpq_class r;
  if (v <= 0) {
    r = mpq_class(p.pow(-v));
  } else {
    r = mpq_class(mpz_class(1), p.pow(v));
  }
  r.canonicalize();
  return r;
}

inline ExtVal ext_val_rat(const Prime& p, const mpq_class& q) {
  if (normalized(q) == 0) return ExtVal::exact_zero();
  return ExtVal::finite(padic_val_rat(p, q));
}

/// Parses `a`, `-a` or `a/b` (b > 0) into a reduced rational.
inline mpq_class parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s += c;
  auto digits = [&](std::size_t from) {
    std::size_t j = from;
    while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
    return j;
  };
  std::size_t i = 0;
  const bool negative = !s.empty() && s[0] == '-';
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
  const std::size_t end = digits(i);
  if (end == i) throw ParseError("expected a rational, got '" + std::string(text) + "'");
  mpz_class num(s.substr(i, end - i), 10);
  if (negative) num = -num;
  mpz_class den = 1;
  if (end < s.size()) {
    if (s[end] != '/') throw ParseError("expected a rational, got '" + std::string(text) + "'");
    const std::size_t den_end = digits(end + 1);
    if (den_end == end + 1 || den_end != s.size())
      throw ParseError("expected a rational, got '" + std::string(text) + "'");
    den = mpz_class(s.substr(end + 1, den_end - end - 1), 10);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const mpq_class& q) { return normalized(q).get_str(); }

inline ExtVal ext_val_int(const Prime& p, const mpz_class& z) {
  if (z == 0) return ExtVal::exact_zero();
  return ExtVal::finite(padic_val_int(p, z));
}

} // namespace padic
