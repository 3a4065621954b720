// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <iostream>
#include <string>
#include <vector>

#include "padic/padic.hpp"
#include "test_support.hpp"

using namespace padic;
using padic::testing::Generator;
using padic::testing::int_poly;
using padic::testing::trial_division_val;

namespace {

const std::vector<std::uint64_t> kPrimes{2, 3, 5, 7, 13};

/// Counts checks and keeps the first failure message.
struct Outcome {
  long checks = 0;
  long failures = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  bool passed() const { return failures == 0 && checks > 0; }
};

std::string digits_of(const PadicNumber& x) { return format_digits(x.digits()); }

Outcome digit_pictures() {
  Outcome o;
  const Prime p(5);
  for (long N : {6, 10, 32}) {
    const DigitExpansion d = from_rational(p, -1, N).digits();
    bool all_fours = d.start == 0 && static_cast<long>(d.digits.size()) == N;
    for (auto digit : d.digits) all_fours = all_fours && digit == 4;
    o.expect(all_fours, "-1 digits at N=" + std::to_string(N));
  }
  const PadicNumber third = from_rational(p, mpq_class(1, 3), 6);
  o.expect(digits_of(third) == "...313132", "1/3 digits: " + digits_of(third));
  const PadicNumber one = third * from_rational(p, 3, 6);
  o.expect(one.is_unit_form() && one.valuation() == 0 && one.unit_part() == 1, "1/3 * 3 = 1");
  o.expect(digits_of(one) == "...000001", "1/3 * 3 digits: " + digits_of(one));
  const PadicNumber sum = third + from_rational(p, -1, 6);
  o.expect(digits_of(sum) == "...313131", "1/3 + (-1) digits: " + digits_of(sum));
  const PadicNumber zero = from_rational(p, -1, 6) + from_rational(p, 1, 6);
  o.expect(zero.is_zero_at_least() && zero.absolute_precision() == 6, "...444444 + 1 = 0");
  return o;
}

Outcome valuation_lemmas() {
  Outcome o;
  for (auto pv : kPrimes) {
    const Prime p(pv);
    Generator gen(1000 + pv);
    for (int i = 0; i < 2000; ++i) {
      const mpq_class q = gen.nonzero_rational(p);
      const mpq_class r = gen.nonzero_rational(p);
      o.expect(padic_val_rat(p, q * r) == padic_val_rat(p, q) + padic_val_rat(p, r),
               "multiplicativity p=" + std::to_string(pv) + " q=" + q.get_str() + " r=" + r.get_str());
      const mpq_class s = q + r;
      if (s == 0) continue;
      o.expect(std::min(padic_val_rat(p, q), padic_val_rat(p, r)) <= padic_val_rat(p, s),
               "min <= val(q+r) p=" + std::to_string(pv) + " q=" + q.get_str() + " r=" + r.get_str());
    }
    // machine-integer oracle for the numerator and denominator split
    for (int i = 0; i < 200; ++i) {
      const std::int64_t a = gen.integer(1, 1'000'000'000);
      const std::int64_t b = gen.integer(1, 1'000'000'000);
      o.expect(padic_val_rat(p, mpq_class(mpz_class(static_cast<long>(a)), mpz_class(static_cast<long>(b)))) ==
                   trial_division_val(static_cast<std::int64_t>(pv), a) -
                       trial_division_val(static_cast<std::int64_t>(pv), b),
               "trial division");
    }
  }
  return o;
}

Outcome nonarchimedean_equality() {
  Outcome o;
  long unequal = 0;
  for (auto pv : kPrimes) {
    const Prime p(pv);
    Generator gen(2000 + pv);
    for (int i = 0; i < 2000; ++i) {
      const mpq_class q = gen.nonzero_rational(p);
      const mpq_class r = gen.nonzero_rational(p);
      const mpq_class nq = padic_norm_rat(p, q);
      const mpq_class nr = padic_norm_rat(p, r);
      const mpq_class ns = padic_norm_rat(p, q + r);
      o.expect(ns <= std::max(nq, nr), "ultrametric");
      if (nq == nr) continue;
      ++unequal;
      o.expect(ns == std::max(nq, nr), "equality case p=" + std::to_string(pv) + " q=" + q.get_str() +
                                           " r=" + r.get_str());
      const ExtVal sum_val = (from_rational(p, q) + from_rational(p, r)).norm();
      o.expect(sum_val == ExtVal::finite(std::min(padic_val_rat(p, q), padic_val_rat(p, r))),
               "equality case in capped arithmetic");
    }
  }
  o.expect(unequal > 1000, "too few pairs with distinct norms");
  return o;
}

Outcome subring_closure() {
  Outcome o;
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t pv = kPrimes[static_cast<std::size_t>(i) % kPrimes.size()];
    const Prime p(pv);
    Generator gen(3000 + static_cast<std::uint64_t>(i));
    const mpq_class q = gen.integral_rational(p, true);
    const mpq_class r = gen.integral_rational(p, true);
    const PadicNumber x = from_rational(p, q);
    const PadicNumber y = from_rational(p, r);
    o.expect(x.is_integer() && y.is_integer(), "embedding of integral rational");
    o.expect((x + y).is_integer(), "sum p=" + std::to_string(pv) + " " + q.get_str() + ", " + r.get_str());
    o.expect((x * y).is_integer(), "product p=" + std::to_string(pv) + " " + q.get_str() + ", " + r.get_str());
    o.expect(padic_val_rat(p, q + r) >= 0 || q + r == 0, "exact sum");
    o.expect(padic_val_rat(p, q * r) >= 0 || q * r == 0, "exact product");
  }
  return o;
}

Outcome hensel_sqrt6() {
  Outcome o;
  const Prime p(5);
  const PadicPoly f = parse_polynomial(p, "x^2 - 6");
  const HenselCertificate c = lift(f, 1, p, 4);
  o.expect(c.root == 516, "root " + c.root.get_str());
  const long floor[] = {1, 2, 4};
  o.expect(c.trace.size() >= 3, "trace length");
  for (std::size_t n = 0; n < std::min<std::size_t>(3, c.trace.size()); ++n)
    o.expect(c.trace[n].val_f > ExtVal::finite(floor[n] - 1), "val_f at step " + std::to_string(n));
  const long dist = padic_val_int(p, c.root - 1);
  o.expect(dist == 1, "v(root - a)");
  o.expect(c.hypothesis.m.is_finite() && c.hypothesis.m.value() - c.hypothesis.e == 1, "m - e");
  o.expect(c.checks_passed, "checks_passed");
  const OracleReport r = enumerate_roots(f, p, 4);
  o.expect(r.roots == std::vector<std::uint64_t>{109, 516}, "oracle roots mod 625");
  o.expect(testing::brute_roots({-6, 0, 1}, 625) == r.roots, "independent scan");
  return o;
}

/// Every weak-hypothesis instance: monic f of degree 2 or 3 with lower
/// coefficients in [0, p).
void for_each_weak_instance(const std::function<void(const Prime&, const std::vector<std::int64_t>&,
                                                     const std::vector<std::int64_t>&)>& visit) {
  for (std::uint64_t pv : {3, 5, 7}) {
    const Prime p(pv);
    const auto P = static_cast<std::int64_t>(pv);
    for (int deg = 2; deg <= 3; ++deg) {
      std::vector<std::int64_t> c(static_cast<std::size_t>(deg) + 1, 0);
      c.back() = 1;
      long total = 1;
      for (int i = 0; i < deg; ++i) total *= P;
      for (long idx = 0; idx < total; ++idx) {
        long rest = idx;
        for (int i = 0; i < deg; ++i) {
          c[static_cast<std::size_t>(i)] = rest % P;
          rest /= P;
        }
        std::vector<std::int64_t> dc;
        for (std::size_t i = 1; i < c.size(); ++i) dc.push_back(c[i] * static_cast<std::int64_t>(i));
        std::vector<std::int64_t> seeds;
        for (std::int64_t a = 0; a < P; ++a)
          if (testing::eval_mod(c, static_cast<std::uint64_t>(a), pv) == 0 &&
              testing::eval_mod(dc, static_cast<std::uint64_t>(a), pv) != 0)
            seeds.push_back(a);
        if (!seeds.empty()) visit(p, c, seeds);
      }
    }
  }
}

Outcome oracle_sweep(std::vector<std::size_t>& trace_lengths) {
  Outcome o;
  const long K = 5;
  for_each_weak_instance([&](const Prime& p, const std::vector<std::int64_t>& c,
                             const std::vector<std::int64_t>& seeds) {
    const PadicPoly f = int_poly(p, c);
    const OracleReport report = enumerate_roots(f, p, K);
    for (auto a : seeds) {
      const std::string tag = "p=" + std::to_string(p.value()) + " f=" + f.to_string() + " a=" + std::to_string(a);
      const HenselCertificate cert = lift(f, a, p, K);
      trace_lengths.push_back(cert.trace.size());
      std::vector<std::uint64_t> near;
      for (auto r : report.roots)
        if (r % p.value() == static_cast<std::uint64_t>(a)) near.push_back(r);
      o.expect(near.size() == 1, tag + ": oracle roots above a");
      o.expect(near.size() == 1 && cert.root == near.front(), tag + ": root " + cert.root.get_str());
      o.expect(cert.checks_passed, tag + ": checks");
      for (auto r : report.roots) o.expect(unique_in_neighborhood(f, cert, r), tag + ": uniqueness for " + std::to_string(r));
    }
  });
  return o;
}

Outcome self_verification() {
  Outcome o;
  Generator gen(7000);
  const std::vector<std::uint64_t> primes{2, 3, 5, 7, 11, 13};
  int lifted = 0;
  while (lifted < 100) {
    const Prime p(primes[static_cast<std::size_t>(gen.integer(0, 5))]);
    std::vector<mpq_class> c;
    const long deg = gen.integer(2, 5);
    for (long i = 0; i <= deg; ++i) c.push_back(gen.integral_rational(p, true));
    if (c.back() == 0) c.back() = 1;
    const PadicPoly f(p, c);
    const mpq_class a = gen.integral_rational(p, true);
    const long K = gen.integer(2, 24);
    std::optional<HenselCertificate> found;
    try {
      const Hypothesis h = check_hypothesis(f, a, p);
      if (h.degenerate() || h.e >= K) continue;
      found = lift(f, a, p, K);
    } catch (const Error&) {
      continue;
    }
    const HenselCertificate& cert = *found;
    ++lifted;
    const std::string tag = "p=" + std::to_string(p.value()) + " f=" + f.to_string() + " a=" + a.get_str() +
                            " K=" + std::to_string(K);
    o.expect(static_cast<bool>(verify_certificate(cert)), tag + ": untampered certificate rejected");

    HenselCertificate moved = cert;
    moved.root = detail::mod(moved.root + p.pow(K - 1), p.pow(K));
    o.expect(!verify_certificate(moved), tag + ": root perturbation accepted");

    for (std::size_t n = 0; n < cert.trace.size(); ++n) {
      HenselCertificate lowered = cert;
      const ExtVal v = lowered.trace[n].val_f;
      lowered.trace[n].val_f = v.is_finite() ? ExtVal::finite(v.value() - 1) : ExtVal::finite(K + cert.hypothesis.e);
      o.expect(!verify_certificate(lowered), tag + ": val_f decrement at step " + std::to_string(n) + " accepted");
    }

    HenselCertificate mutated = cert;
    mutated.hypothesis.e += 1;
    o.expect(!verify_certificate(mutated), tag + ": e mutation accepted");
  }
  return o;
}

Outcome polynomial_identities() {
  Outcome o;
  const long N = 12;
  Generator gen(8000);
  for (int i = 0; i < 1000; ++i) {
    const Prime p(kPrimes[static_cast<std::size_t>(i) % kPrimes.size()]);
    std::vector<mpq_class> c;
    const long deg = gen.integer(0, 6);
    for (long j = 0; j <= deg; ++j) c.push_back(gen.integral_rational(p, true));
    const PadicPoly f(p, c);
    const mpq_class xq = gen.integral_rational(p, true);
    const mpq_class yq = gen.integral_rational(p, true);
    const PadicNumber x = from_rational(p, xq, N);
    const PadicNumber y = from_rational(p, yq, N);
    const std::string tag = "p=" + std::to_string(p.value()) + " f=" + f.to_string();

    // f(x + y) = f(x) + f'(x) y + k y^2
    const PadicNumber k = taylor_remainder(f, x, y);
    const PadicNumber rhs1 = eval(f, x) + eval(derivative(f), x) * y + k * y * y;
    o.expect(eval(f, x + y).reduce_mod(N) == rhs1.reduce_mod(N), tag + ": taylor");
    o.expect(detail::rational_mod(p, eval_exact(f, xq + yq), N) == rhs1.reduce_mod(N), tag + ": taylor exact");

    // f(x) - f(y) = z (x - y)
    const PadicNumber z = divided_difference(f, x, y);
    const PadicNumber rhs2 = z * (x - y);
    o.expect((eval(f, x) - eval(f, y)).reduce_mod(N) == rhs2.reduce_mod(N), tag + ": divided difference");
    o.expect(detail::rational_mod(p, eval_exact(f, xq) - eval_exact(f, yq), N) == rhs2.reduce_mod(N),
             tag + ": divided difference exact");
  }
  return o;
}

Outcome tower_compatibility() {
  Outcome o;
  const Prime p(5);
  const PadicPoly f = parse_polynomial(p, "x^2 - 6");
  const HenselCertificate c8 = lift(f, 1, p, 8);
  const HenselCertificate c4 = lift(f, 1, p, 4);
  o.expect(detail::mod(c8.root, p.pow(4)) == c4.root, "K=8 root mod 5^4 is " + c8.root.get_str());
  o.expect(c8.checks_passed && c4.checks_passed, "checks");
  return o;
}

Outcome convergence_speed(const std::vector<std::size_t>& lengths) {
  Outcome o;
  const long K = 5;
  const std::size_t bound = static_cast<std::size_t>(detail::ceil_log2(K) + 2);
  for (auto len : lengths) o.expect(len <= bound, "trace length " + std::to_string(len) + " > " + std::to_string(bound));
  return o;
}

} // namespace

int main() {
  int failed = 0;
  auto report = [&](int id, const char* name, const std::function<Outcome()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& ex) {
      o.expect(false, std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s (%ld checks, %.2fs)", o.passed() ? "PASS" : "FAIL", id, name, o.checks, secs);
    if (!o.passed()) std::printf(" [%ld failures; first: %s]", o.failures, o.first.c_str());
    std::printf("\n");
    if (!o.passed()) ++failed;
  };

  std::vector<std::size_t> sweep_lengths;
  report(1, "digit expansions of -1, 1/3 and their sum", digit_pictures);
  report(2, "valuation multiplicativity and min <= val(q+r)", valuation_lemmas);
  report(3, "nonarchimedean norm with equality case", nonarchimedean_equality);
  report(4, "Z_p closed under sum and product", subring_closure);
  report(5, "lift of x^2 - 6 at 1 mod 5^4", hensel_sqrt6);
  report(6, "oracle equivalence sweep over p in {3,5,7}", [&] { return oracle_sweep(sweep_lengths); });
  report(7, "certificate self-verification and tamper detection", self_verification);
  report(8, "Taylor and divided-difference identities", polynomial_identities);
  report(9, "tower compatibility K=8 to K=4", tower_compatibility);
  report(10, "trace length <= ceil(log2 K) + 2", [&] { return convergence_speed(sweep_lengths); });
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
