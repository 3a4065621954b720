#pragma once

// Dense univariate polynomials over Z_p with exact rational coefficients.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "padic/errors.hpp"
#include "padic/padic_number.hpp"
#include "padic/valuation.hpp"

namespace padic {

class PadicPoly {
public:
  explicit PadicPoly(const Prime& p) : p_(p) {}

  /// coeffs[i] is the coefficient of x^i. Every coefficient must be p-integral.
  PadicPoly(const Prime& p, std::vector<mpq_class> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) {
      c.canonicalize();
      if (c != 0 && padic_val_rat(p_, c) < 0)
        throw NotAnInteger("coefficient " + c.get_str() + " is not a " +
                           std::to_string(p_.value()) + "-adic integer");
    }
    trim();
  }

  static PadicPoly monomial(const Prime& p, const mpq_class& c, std::size_t degree) {
    std::vector<mpq_class> coeffs(degree + 1, 0);
    coeffs[degree] = c;
    return PadicPoly(p, std::move(coeffs));
  }

  const Prime& prime() const noexcept { return p_; }
  const std::vector<mpq_class>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }

  mpq_class coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : mpq_class(0); }

  friend bool operator==(const PadicPoly& a, const PadicPoly& b) {
    return a.p_ == b.p_ && a.coeffs_ == b.coeffs_;
  }

  friend PadicPoly operator+(const PadicPoly& f, const PadicPoly& g) {
    detail::require_same_prime(f.p_, g.p_);
    std::vector<mpq_class> c(std::max(f.coeffs_.size(), g.coeffs_.size()), 0);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.coeff(i) + g.coeff(i);
    return PadicPoly(f.p_, std::move(c));
  }

  PadicPoly operator-() const {
    std::vector<mpq_class> c = coeffs_;
    for (auto& x : c) x = -x;
    return PadicPoly(p_, std::move(c));
  }

  friend PadicPoly operator-(const PadicPoly& f, const PadicPoly& g) { return f + (-g); }

  friend PadicPoly operator*(const PadicPoly& f, const PadicPoly& g) {
    detail::require_same_prime(f.p_, g.p_);
    if (f.is_zero() || g.is_zero()) return PadicPoly(f.p_);
    std::vector<mpq_class> c(f.coeffs_.size() + g.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < f.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < g.coeffs_.size(); ++j) c[i + j] += f.coeffs_[i] * g.coeffs_[j];
    return PadicPoly(f.p_, std::move(c));
  }

  /// Coefficients reduced modulo p^k.
  std::vector<mpz_class> coeffs_mod(long k) const {
    std::vector<mpz_class> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(detail::rational_mod(p_, c, k));
    return out;
  }

  /// `x^2 - 6` style rendering, highest degree first.
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      const mpq_class& c = coeffs_[i];
      if (c == 0) continue;
      const bool negative = c < 0;
      const mpq_class mag = abs(c);
      if (out.empty()) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      if (i == 0) {
        out += mag.get_str();
        continue;
      }
      if (mag != 1) out += mag.get_str() + "*";
      out += "x";
      if (i > 1) out += "^" + std::to_string(i);
    }
    return out;
  }

private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  Prime p_;
  std::vector<mpq_class> coeffs_;
};

/// Formal derivative.
inline PadicPoly derivative(const PadicPoly& f) {
  const auto& c = f.coeffs();
  if (c.size() <= 1) return PadicPoly(f.prime());
  std::vector<mpq_class> d(c.size() - 1);
  for (std::size_t i = 0; i + 1 < c.size(); ++i) d[i] = c[i + 1] * static_cast<unsigned long>(i + 1);
  return PadicPoly(f.prime(), std::move(d));
}

/// Exact evaluation at a rational point (Horner).
inline mpq_class eval_exact(const PadicPoly& f, const mpq_class& a) {
  mpq_class acc = 0;
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) acc = acc * a + *it;
  acc.canonicalize();
  return acc;
}

namespace detail {

/// Coefficient embedding precision: the absolute precision of the inputs,
/// so results of integral evaluation are known to at least that power of p.
inline long working_precision(const PadicNumber& x) {
  return x.has_finite_precision() ? std::max(1L, x.absolute_precision()) : kDefaultPrecision;
}

inline long working_precision(const PadicNumber& x, const PadicNumber& y) {
  if (!x.has_finite_precision()) return working_precision(y);
  if (!y.has_finite_precision()) return working_precision(x);
  return std::min(working_precision(x), working_precision(y));
}

inline void require_integer(const PadicNumber& x) {
  if (!x.is_integer()) throw NotAnInteger("evaluation point is not a p-adic integer");
}

} // namespace detail

/// Horner evaluation at a p-adic integer. Coefficients are embedded at the
/// absolute precision of x.
inline PadicNumber eval(const PadicPoly& f, const PadicNumber& x) {
  detail::require_same_prime(f.prime(), x.prime());
  detail::require_integer(x);
  const long n = detail::working_precision(x);
  PadicNumber acc = PadicNumber::exact_zero(f.prime());
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it)
    acc = acc * x + from_rational(f.prime(), *it, n);
  return acc;
}

/// Returns k with f(x + y) = f(x) + f'(x) y + k y^2.
///
/// Built monomial by monomial from (x + y)^n = x^n + n x^(n-1) y + k_n y^2,
/// where k_n = sum_{j=2..n} C(n, j) x^(n-j) y^(j-2).
inline PadicNumber taylor_remainder(const PadicPoly& f, const PadicNumber& x, const PadicNumber& y) {
  detail::require_same_prime(f.prime(), x.prime());
  detail::require_same_prime(x.prime(), y.prime());
  detail::require_integer(x);
  detail::require_integer(y);
  const Prime& p = f.prime();
  const long n_prec = detail::working_precision(x, y);
  const std::size_t deg = f.coeffs().size();

  std::vector<PadicNumber> xp{from_rational(p, 1, n_prec)};
  std::vector<PadicNumber> yp{from_rational(p, 1, n_prec)};
  for (std::size_t i = 1; i < deg; ++i) {
    xp.push_back(xp.back() * x);
    yp.push_back(yp.back() * y);
  }

  PadicNumber k = PadicNumber::exact_zero(p);
  for (std::size_t n = 2; n < deg; ++n) {
    if (f.coeffs()[n] == 0) continue;
    PadicNumber kn = PadicNumber::exact_zero(p);
    mpz_class binom;
    for (std::size_t j = 2; j <= n; ++j) {
      mpz_bin_uiui(binom.get_mpz_t(), n, j);
      kn += from_rational(p, mpq_class(binom), n_prec) * xp[n - j] * yp[j - 2];
    }
    k += from_rational(p, f.coeffs()[n], n_prec) * kn;
  }
  return k;
}

/// Returns z with f(x) - f(y) = z (x - y), via
/// x^n - y^n = (x - y) sum_{i<n} x^i y^(n-1-i). No division; valid for x == y.
inline PadicNumber divided_difference(const PadicPoly& f, const PadicNumber& x, const PadicNumber& y) {
  detail::require_same_prime(f.prime(), x.prime());
  detail::require_same_prime(x.prime(), y.prime());
  detail::require_integer(x);
  detail::require_integer(y);
  const Prime& p = f.prime();
  const long n_prec = detail::working_precision(x, y);
  const std::size_t deg = f.coeffs().size();

  std::vector<PadicNumber> xp{from_rational(p, 1, n_prec)};
  std::vector<PadicNumber> yp{from_rational(p, 1, n_prec)};
  for (std::size_t i = 1; i < deg; ++i) {
    xp.push_back(xp.back() * x);
    yp.push_back(yp.back() * y);
  }

  PadicNumber z = PadicNumber::exact_zero(p);
  for (std::size_t n = 1; n < deg; ++n) {
    if (f.coeffs()[n] == 0) continue;
    PadicNumber s = PadicNumber::exact_zero(p);
    for (std::size_t i = 0; i < n; ++i) s += xp[i] * yp[n - 1 - i];
    z += from_rational(p, f.coeffs()[n], n_prec) * s;
  }
  return z;
}

/// Parses sums of `c`, `c*x^k`, `c*x`, `x^k`, `x` with integer or `a/b`
/// coefficients. Whitespace is ignored; like terms are combined.
inline PadicPoly parse_polynomial(const Prime& p, std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty polynomial");

  std::vector<mpq_class> coeffs;
  auto add_term = [&](std::size_t degree, const mpq_class& c) {
    if (coeffs.size() <= degree) coeffs.resize(degree + 1, 0);
    coeffs[degree] += c;
  };
  auto fail = [&](const std::string& why) -> ParseError {
    return ParseError("cannot parse polynomial '" + std::string(text) + "': " + why);
  };
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };

  std::size_t i = 0;
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw fail("expected '+' or '-' at position " + std::to_string(i));
    }
    first = false;
    if (i >= s.size()) throw fail("dangling sign");

    mpq_class coeff = 1;
    bool has_coeff = false;
    if (is_digit(s[i])) {
      std::size_t j = i;
      while (j < s.size() && is_digit(s[j])) ++j;
      if (j < s.size() && s[j] == '/') {
        ++j;
        const std::size_t den_start = j;
        while (j < s.size() && is_digit(s[j])) ++j;
        if (j == den_start) throw fail("missing denominator");
      }
      coeff = parse_rational(s.substr(i, j - i));
      has_coeff = true;
      i = j;
    }

    std::size_t degree = 0;
    bool has_x = false;
    if (has_coeff && i < s.size() && s[i] == '*') {
      ++i;
      if (i >= s.size() || (s[i] != 'x' && s[i] != 'X')) throw fail("expected 'x' after '*'");
    }
    if (i < s.size() && (s[i] == 'x' || s[i] == 'X')) {
      if (has_coeff && s[i - 1] != '*') throw fail("write coefficients as c*x");
      has_x = true;
      degree = 1;
      ++i;
      if (i < s.size() && s[i] == '^') {
        ++i;
        const std::size_t start = i;
        while (i < s.size() && is_digit(s[i])) ++i;
        if (i == start) throw fail("missing exponent");
        degree = std::stoul(s.substr(start, i - start));
      }
    }
    if (!has_coeff && !has_x) throw fail("expected a term at position " + std::to_string(i));
    add_term(degree, coeff * sign);
  }
  return PadicPoly(p, std::move(coeffs));
}

} // namespace padic
