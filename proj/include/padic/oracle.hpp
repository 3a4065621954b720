#pragma once

// Brute-force ground truth over Z/p^k Z. Nothing here calls into the Hensel
// solver; root enumeration is a plain scan.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "padic/errors.hpp"
#include "padic/padic_number.hpp"
#include "padic/polynomial.hpp"
#include "padic/valuation.hpp"

namespace padic {

inline constexpr std::uint64_t kOracleDomainLimit = 10'000'000;

struct OracleFilter {
  std::uint64_t center;
  long radius_exponent;  // keep r with v(r - center) > radius_exponent
};

struct OracleReport {
  Prime p;
  long k;
  std::vector<std::uint64_t> coeffs;  // f reduced mod p^k, index = degree
  std::vector<std::uint64_t> roots;   // ascending
  std::optional<OracleFilter> filter;
  std::vector<std::uint64_t> filtered;
};

namespace detail {

inline std::uint64_t checked_domain(const Prime& p, long k) {
  if (k < 1) throw std::invalid_argument("oracle needs k >= 1");
  std::uint64_t size = 1;
  for (long i = 0; i < k; ++i) {
    if (size > kOracleDomainLimit / p.value())
      throw DomainTooLarge("p^k exceeds the oracle limit of 10^7");
    size *= p.value();
  }
  return size;
}

/// v(r - c) for residues modulo m = p^k, capped at k.
inline long small_distance(std::uint64_t p, std::uint64_t r, std::uint64_t c, std::uint64_t m, long k) {
  std::uint64_t d = (r + m - c % m) % m;
  if (d == 0) return k;
  long v = 0;
  while (d % p == 0) {
    d /= p;
    ++v;
  }
  return v;
}

} // namespace detail

/// Every r in [0, p^k) with f(r) = 0 mod p^k, optionally filtered to the ball
/// v(r - center) > radius_exponent.
inline OracleReport enumerate_roots(const PadicPoly& f, const Prime& p, long k,
                                    std::optional<OracleFilter> filter = std::nullopt) {
  detail::require_same_prime(f.prime(), p);
  const std::uint64_t m = detail::checked_domain(p, k);
  OracleReport report{p, k, {}, {}, filter, {}};
  for (const auto& c : f.coeffs_mod(k)) report.coeffs.push_back(c.get_ui());

  // m <= 10^7, so every product below fits in 64 bits.
  for (std::uint64_t x = 0; x < m; ++x) {
    std::uint64_t acc = 0;
    for (auto it = report.coeffs.rbegin(); it != report.coeffs.rend(); ++it) acc = (acc * x + *it) % m;
    if (acc == 0) report.roots.push_back(x);
  }
  if (filter) {
    for (auto r : report.roots)
      if (detail::small_distance(p.value(), r, filter->center, m, k) > filter->radius_exponent)
        report.filtered.push_back(r);
  }
  return report;
}

struct CrosscheckReport {
  long trials = 0;
  long comparisons = 0;
  long skipped = 0;
  std::vector<std::string> mismatches;
};

/// Compares p-adic ring operations on embedded rationals against exact
/// rational arithmetic reduced mod p^k.
inline CrosscheckReport crosscheck_arith(const Prime& p, long k, long trials, std::uint64_t seed = 1) {
  if (k < 1) throw std::invalid_argument("crosscheck needs k >= 1");
  CrosscheckReport report;
  const long precision = k + 4;
  std::mt19937_64 rng(seed);

  auto random_integral = [&]() {
    std::uniform_int_distribution<long> num_dist(-1'000'000, 1'000'000);
    std::uniform_int_distribution<long> den_dist(1, 10'000);
    std::uniform_int_distribution<int> shift_dist(0, 3);
    mpz_class num = num_dist(rng);
    num *= p.pow(shift_dist(rng));
    mpz_class den;
    do {
      den = den_dist(rng);
    } while (den % p.mpz() == 0);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  };

  auto compare = [&](const std::string& label, const PadicNumber& got, const mpq_class& exact) {
    if (!got.is_integer()) {
      ++report.skipped;
      return;
    }
    ++report.comparisons;
    const mpz_class expected = detail::rational_mod(p, exact, k);
    const mpz_class actual = got.reduce_mod(k);
    if (expected != actual)
      report.mismatches.push_back(label + ": expected " + expected.get_str() + ", got " + actual.get_str());
  };

  auto check_pair = [&](const mpq_class& q, const mpq_class& r) {
    ++report.trials;
    const PadicNumber x = from_rational(p, q, precision);
    const PadicNumber y = from_rational(p, r, precision);
    const std::string tag = "(" + q.get_str() + ", " + r.get_str() + ")";
    compare("add " + tag, x + y, q + r);
    compare("sub " + tag, x - y, q - r);
    compare("mul " + tag, x * y, q * r);
    if (r != 0 && padic_val_rat(p, q) >= padic_val_rat(p, r))
      compare("div " + tag, x / y, q / r);
    else
      ++report.skipped;
    compare("cancel " + tag, x + (-x), mpq_class(0));
  };

  // Fixed seeds from the base-5 digit pictures: 1/3 * 3 = 1, -1 + 1 = 0,
  // 1/3 + (-1) = -2/3. They are p-integral for every p other than 3.
  if (p.value() != 3) {
    check_pair(mpq_class(1, 3), mpq_class(3));
    check_pair(mpq_class(-1), mpq_class(1));
    check_pair(mpq_class(1, 3), mpq_class(-1));
  }
  while (report.trials < trials) check_pair(random_integral(), random_integral());
  return report;
}

} // namespace padic
