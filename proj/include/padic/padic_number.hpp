#pragma once

// Capped-relative-precision elements of Q_p.
//
// A nonzero element is stored as p^v * u with p not dividing u and u known
// modulo p^N (relative precision N, absolute precision v + N). Cancellation in
// addition produces an inexact zero known only modulo p^A.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "padic/errors.hpp"
#include "padic/valuation.hpp"

namespace padic {

inline constexpr long kDefaultPrecision = 32;

namespace detail {

/// Least nonnegative residue of a modulo m (m > 0).
inline mpz_class mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

/// Inverse of a modulo m; a must be a unit.
inline mpz_class inverse_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::domain_error("value is not invertible modulo the given modulus");
  return mod(r, m);
}

/// The residue of a p-integral rational q modulo p^k.
inline mpz_class rational_mod(const Prime& p, const mpq_class& q, long k) {
  const mpq_class r = normalized(q);
  if (padic_val_int(p, r.get_den()) != 0)
    throw NotAnInteger("rational is not a p-adic integer");
  const mpz_class m = p.pow(k);
  return mod(r.get_num() * inverse_mod(r.get_den(), m), m);
}

/// Splits z != 0 as p^w * rest with p not dividing rest; returns w.
inline long split_power(const Prime& p, mpz_class& z) {
  return static_cast<long>(mpz_remove(z.get_mpz_t(), z.get_mpz_t(), p.mpz().get_mpz_t()));
}

inline void require_same_prime(const Prime& a, const Prime& b) {
  if (a != b) throw PrimeMismatch("operands belong to different primes");
}

} // namespace detail

/// Base-p digits of a nonzero element, lowest digit first.
struct DigitExpansion {
  Prime p;
  long start;
  std::vector<unsigned long> digits;

  friend bool operator==(const DigitExpansion&, const DigitExpansion&) = default;
};

class PadicNumber {
public:
  enum class Form { ExactZero, ZeroAtLeast, Unit };

  static PadicNumber exact_zero(const Prime& p) { return PadicNumber(p, Form::ExactZero, 0, 0, 0); }

  static PadicNumber zero_at_least(const Prime& p, long absolute_precision) {
    return PadicNumber(p, Form::ZeroAtLeast, absolute_precision, 0, 0);
  }

  /// p^v * unit, with unit reduced modulo p^N. Throws if p divides unit.
  static PadicNumber unit(const Prime& p, long v, const mpz_class& unit, long relative_precision) {
    if (relative_precision < 1) throw std::invalid_argument("relative precision must be >= 1");
    mpz_class u = detail::mod(unit, p.pow(relative_precision));
    if (u == 0 || detail::mod(u, p.mpz()) == 0)
      throw std::invalid_argument("unit part must not be divisible by p");
    return PadicNumber(p, Form::Unit, v, std::move(u), relative_precision);
  }

  /// Embeds a rational at relative precision N.
  static PadicNumber from_rational(const Prime& p, const mpq_class& q, long relative_precision = kDefaultPrecision) {
    if (relative_precision < 1) throw std::invalid_argument("relative precision must be >= 1");
    const mpq_class r = normalized(q);
    if (r == 0) return exact_zero(p);
    mpz_class num = r.get_num();
    mpz_class den = r.get_den();
    const long v = detail::split_power(p, num) - detail::split_power(p, den);
    const mpz_class m = p.pow(relative_precision);
    const mpz_class u = detail::mod(num * detail::inverse_mod(den, m), m);
    return PadicNumber(p, Form::Unit, v, u, relative_precision);
  }

  static PadicNumber from_integer(const Prime& p, const mpz_class& z, long relative_precision = kDefaultPrecision) {
    return from_rational(p, mpq_class(z), relative_precision);
  }

  const Prime& prime() const noexcept { return p_; }
  Form form() const noexcept { return form_; }
  bool is_exact_zero() const noexcept { return form_ == Form::ExactZero; }
  bool is_zero_at_least() const noexcept { return form_ == Form::ZeroAtLeast; }
  bool is_unit_form() const noexcept { return form_ == Form::Unit; }

  /// Valuation; Unit form only.
  long valuation() const {
    require_unit_form();
    return v_;
  }
  const mpz_class& unit_part() const {
    require_unit_form();
    return u_;
  }
  long relative_precision() const {
    require_unit_form();
    return n_;
  }

  /// v + N for Unit form, A for ZeroAtLeast(A). ExactZero has no finite bound.
  long absolute_precision() const {
    switch (form_) {
    case Form::Unit: return v_ + n_;
    case Form::ZeroAtLeast: return v_;
    case Form::ExactZero: break;
    }
    throw std::logic_error("exact zero has unbounded absolute precision");
  }

  bool has_finite_precision() const noexcept { return form_ != Form::ExactZero; }

  /// Finite(v), ExactZero, or ZeroAtLeast(A); the norm is p^-v.
  ExtVal norm() const {
    switch (form_) {
    case Form::Unit: return ExtVal::finite(v_);
    case Form::ZeroAtLeast: return ExtVal::zero_at_least(v_);
    case Form::ExactZero: break;
    }
    return ExtVal::exact_zero();
  }

  /// True iff the norm is certainly at most 1.
  bool is_integer() const noexcept {
    switch (form_) {
    case Form::Unit: return v_ >= 0;
    case Form::ZeroAtLeast: return v_ >= 0;
    case Form::ExactZero: break;
    }
    return true;
  }

  DigitExpansion digits() const {
    if (form_ != Form::Unit) throw ZeroHasNoExpansion();
    DigitExpansion out{p_, v_, {}};
    out.digits.reserve(static_cast<std::size_t>(n_));
    mpz_class rest = u_;
    const mpz_class base = p_.mpz();
    for (long i = 0; i < n_; ++i) {
      mpz_class d;
      mpz_fdiv_qr(rest.get_mpz_t(), d.get_mpz_t(), rest.get_mpz_t(), base.get_mpz_t());
      out.digits.push_back(d.get_ui());
    }
    return out;
  }

  /// The residue r in [0, p^k) with x = r (mod p^k).
  mpz_class reduce_mod(long k) const {
    if (k < 1) throw std::invalid_argument("reduce_mod needs k >= 1");
    if (!is_integer()) throw NotAnInteger("value has negative valuation");
    if (form_ == Form::ExactZero) return 0;
    if (absolute_precision() < k)
      throw InsufficientPrecision("value known to p^" + std::to_string(absolute_precision()) +
                                  ", requested p^" + std::to_string(k));
    if (form_ == Form::ZeroAtLeast) return 0;
    return detail::mod(u_ * p_.pow(v_), p_.pow(k));
  }

  /// A copy with absolute precision lowered to at most A.
  PadicNumber truncated(long absolute) const {
    if (form_ == Form::ZeroAtLeast) return zero_at_least(p_, std::min(v_, absolute));
    if (form_ == Form::ExactZero) return zero_at_least(p_, absolute);
    if (absolute <= v_) return zero_at_least(p_, absolute);
    if (absolute >= v_ + n_) return *this;
    const long n = absolute - v_;
    return PadicNumber(p_, Form::Unit, v_, detail::mod(u_, p_.pow(n)), n);
  }

  PadicNumber operator-() const {
    if (form_ != Form::Unit) return *this;
    return PadicNumber(p_, Form::Unit, v_, p_.pow(n_) - u_, n_);
  }

  friend PadicNumber operator+(const PadicNumber& x, const PadicNumber& y) {
    detail::require_same_prime(x.p_, y.p_);
    if (x.is_exact_zero()) return y;
    if (y.is_exact_zero()) return x;
    const long a = std::min(x.absolute_precision(), y.absolute_precision());
    if (x.is_zero_at_least()) return y.truncated(a);
    if (y.is_zero_at_least()) return x.truncated(a);

    const Prime& p = x.p_;
    const long vmin = std::min(x.v_, y.v_);
    const mpz_class m = p.pow(a - vmin);
    mpz_class s = detail::mod(x.u_ * p.pow(x.v_ - vmin) + y.u_ * p.pow(y.v_ - vmin), m);
    if (s == 0) return zero_at_least(p, a);
    const long w = detail::split_power(p, s);
    const long v = vmin + w;
    return PadicNumber(p, Form::Unit, v, std::move(s), a - v);
  }

  friend PadicNumber operator-(const PadicNumber& x, const PadicNumber& y) { return x + (-y); }

  friend PadicNumber operator*(const PadicNumber& x, const PadicNumber& y) {
    detail::require_same_prime(x.p_, y.p_);
    if (x.is_exact_zero() || y.is_exact_zero()) return exact_zero(x.p_);
    if (x.is_zero_at_least() || y.is_zero_at_least()) {
      // The floor of an inexact zero shifts by the other factor's valuation
      // (or floor).
      return zero_at_least(x.p_, x.v_ + y.v_);
    }
    const long n = std::min(x.n_, y.n_);
    return PadicNumber(x.p_, Form::Unit, x.v_ + y.v_, detail::mod(x.u_ * y.u_, x.p_.pow(n)), n);
  }

  PadicNumber inverse() const {
    if (form_ == Form::ExactZero) throw DivisionByZero();
    if (form_ == Form::ZeroAtLeast) throw IndeterminateValuation();
    return PadicNumber(p_, Form::Unit, -v_, detail::inverse_mod(u_, p_.pow(n_)), n_);
  }

  friend PadicNumber operator/(const PadicNumber& x, const PadicNumber& y) {
    detail::require_same_prime(x.p_, y.p_);
    return x * y.inverse();
  }

  PadicNumber& operator+=(const PadicNumber& o) { return *this = *this + o; }
  PadicNumber& operator-=(const PadicNumber& o) { return *this = *this - o; }
  PadicNumber& operator*=(const PadicNumber& o) { return *this = *this * o; }

  /// x^k for k >= 0.
  PadicNumber pow(unsigned long k) const {
    PadicNumber result = from_integer(p_, 1, form_ == Form::Unit ? n_ : kDefaultPrecision);
    PadicNumber base = *this;
    while (k != 0) {
      if (k & 1) result *= base;
      k >>= 1;
      if (k != 0) base *= base;
    }
    return result;
  }

  /// Structural equality: same prime, form and stored data.
  friend bool operator==(const PadicNumber& a, const PadicNumber& b) {
    return a.p_ == b.p_ && a.form_ == b.form_ && a.v_ == b.v_ && a.n_ == b.n_ && a.u_ == b.u_;
  }

  /// Line-oriented record: `p=5 form=unit v=0 unit=2 N=1`,
  /// `p=5 form=zero_at_least A=7` or `p=5 form=exact_zero`.
  std::string to_record() const {
    std::ostringstream os;
    os << "p=" << p_.value() << " form=";
    switch (form_) {
    case Form::ExactZero: os << "exact_zero"; break;
    case Form::ZeroAtLeast: os << "zero_at_least A=" << v_; break;
    case Form::Unit: os << "unit v=" << v_ << " unit=" << u_.get_str() << " N=" << n_; break;
    }
    return os.str();
  }

  static PadicNumber parse_record(std::string_view line);

private:
  PadicNumber(const Prime& p, Form form, long v, mpz_class u, long n)
      : p_(p), form_(form), v_(v), u_(std::move(u)), n_(n) {}

  void require_unit_form() const {
    if (form_ != Form::Unit) throw std::logic_error("value is not in unit form");
  }

  Prime p_;
  Form form_;
  long v_;     // valuation (Unit) or precision floor (ZeroAtLeast)
  mpz_class u_;
  long n_;
};

inline PadicNumber PadicNumber::parse_record(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::string token;
  std::string p_str, form, v_str, unit_str, n_str, a_str;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw ParseError("malformed record field '" + token + "'");
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    if (key == "p") p_str = value;
    else if (key == "form") form = value;
    else if (key == "v") v_str = value;
    else if (key == "unit") unit_str = value;
    else if (key == "N") n_str = value;
    else if (key == "A") a_str = value;
    else throw ParseError("unknown record field '" + key + "'");
  }
  auto to_long = [](const std::string& s, const char* what) {
    if (s.empty()) throw ParseError(std::string("record is missing ") + what);
    try {
      std::size_t used = 0;
      const long value = std::stol(s, &used);
      if (used != s.size()) throw ParseError(std::string("bad integer for ") + what);
      return value;
    } catch (const std::logic_error&) {
      throw ParseError(std::string("bad integer for ") + what);
    }
  };
  const long p_val = to_long(p_str, "p");
  if (p_val < 2) throw NotPrime("p must be prime");
  const Prime p(static_cast<std::uint64_t>(p_val));
  if (form == "exact_zero") return exact_zero(p);
  if (form == "zero_at_least") return zero_at_least(p, to_long(a_str, "A"));
  if (form == "unit") {
    mpz_class u;
    if (unit_str.empty() || u.set_str(unit_str, 10) != 0) throw ParseError("bad unit field");
    return unit(p, to_long(v_str, "v"), u, to_long(n_str, "N"));
  }
  throw ParseError("unknown form '" + form + "'");
}

inline PadicNumber from_rational(const Prime& p, const mpq_class& q, long relative_precision = kDefaultPrecision) {
  return PadicNumber::from_rational(p, q, relative_precision);
}

inline PadicNumber inv(const PadicNumber& x) { return x.inverse(); }

/// Sums digit * p^(start + i) back into an element with the same precision.
inline PadicNumber from_digits(const DigitExpansion& d) {
  if (d.digits.empty() || d.digits.front() == 0 || d.digits.front() >= d.p.value())
    throw std::invalid_argument("digit expansion must be nonempty with a nonzero lowest digit");
  mpz_class u = 0;
  for (auto it = d.digits.rbegin(); it != d.digits.rend(); ++it) {
    if (*it >= d.p.value()) throw std::invalid_argument("digit out of range");
    u = u * d.p.mpz() + *it;
  }
  return PadicNumber::unit(d.p, d.start, u, static_cast<long>(d.digits.size()));
}

/// Digits most-significant-left, e.g. `...313132`, with ` × p^k` appended when
/// the lowest digit sits at k != 0. Primes above 10 separate digits by commas.
inline std::string format_digits(const DigitExpansion& d) {
  std::string out = "...";
  const bool wide = d.p.value() > 10;
  for (auto it = d.digits.rbegin(); it != d.digits.rend(); ++it) {
    if (wide && it != d.digits.rbegin()) out += ',';
    out += std::to_string(*it);
  }
  if (d.start != 0) out += " \u00d7 " + std::to_string(d.p.value()) + "^" + std::to_string(d.start);
  return out;
}

/// True iff x and y agree modulo p^k. Both must be known to absolute
/// precision at least k.
inline bool eq_to_precision(const PadicNumber& x, const PadicNumber& y, long k) {
  detail::require_same_prime(x.prime(), y.prime());
  for (const auto* z : {&x, &y}) {
    if (z->has_finite_precision() && z->absolute_precision() < k)
      throw InsufficientPrecision("operand not known to p^" + std::to_string(k));
  }
  const PadicNumber d = x - y;
  if (d.is_exact_zero() || d.is_zero_at_least()) return true;
  return d.valuation() >= k;
}

} // namespace padic
