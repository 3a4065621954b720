#pragma once

// Certified Hensel lifting.
//
// Given f in Z_p[X] and a seed a with |f(a)| < |f'(a)|^2, the Newton sequence
// a_{n+1} = a_n - f(a_n)/f'(a_n) converges to the unique root z of f with
// |z - a| < |f'(a)|. Everything is tracked in exponent form:
//   e = v(f'(a)), m = v(f(a)), t = m - 2e >= 1 (so T = p^-t),
//   ih(n):  v(f'(a_n)) = e  and  v(f(a_n)) >= 2e + t 2^n,
//   dist:   v(a_k - a_n) >= e + t 2^n  for n <= k.
// Iterates are integers modulo p^(K+e); the certificate stores them modulo
// p^K. A residue modulo p^K only pins v(f(.)) below K + e, so per-step checks
// compare exponents capped at that horizon.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include "json.hpp"

#include "padic/errors.hpp"
#include "padic/padic_number.hpp"
#include "padic/polynomial.hpp"
#include "padic/valuation.hpp"

namespace padic {

class HypothesisFailed : public Error {
public:
  HypothesisFailed(ExtVal m, long e)
      : Error("Hensel hypothesis fails: v(f(a)) = " + m.to_string() + ", v(f'(a)) = " + std::to_string(e) +
              ", need v(f(a)) > 2 v(f'(a))"),
        m_(m), e_(e) {}
  ExtVal m() const { return m_; }
  long e() const { return e_; }

private:
  ExtVal m_;
  long e_;
};

class DerivativeVanishes : public Error {
public:
  DerivativeVanishes() : Error("f'(a) = 0; the Newton step is undefined") {}
};

class PrecisionExhausted : public Error {
public:
  using Error::Error;
};

/// Raised when a Newton iterate violates the induction hypothesis. This can
/// only happen through a bug in the solver.
class InternalBoundViolation : public Error {
public:
  using Error::Error;
};

inline constexpr std::size_t kMaxLiftSteps = 64;

struct Hypothesis {
  long e = 0;                            // v(f'(a))
  ExtVal m = ExtVal::exact_zero();       // v(f(a)); ExactZero when f(a) = 0
  std::optional<long> t;                 // m - 2e, absent when degenerate

  bool degenerate() const { return m.is_exact_zero(); }
  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;
};

struct LiftStep {
  std::size_t n = 0;
  mpz_class a_n;                         // residue mod p^K
  ExtVal val_f = ExtVal::exact_zero();   // v(f(a_n)) at the residue's representative
  long val_fp = 0;                       // v(f'(a_n))

  friend bool operator==(const LiftStep&, const LiftStep&) = default;
};

struct HenselCertificate {
  Prime p;
  PadicPoly f;
  mpq_class a;
  long K = 0;
  Hypothesis hypothesis;
  std::vector<LiftStep> trace;
  mpz_class root;
  std::optional<long> dist_exponent;     // v(root - a) = m - e; absent when degenerate
  long uniqueness_radius_exponent = 0;   // e
  bool degenerate = false;
  bool checks_passed = false;

  friend bool operator==(const HenselCertificate&, const HenselCertificate&) = default;
};

struct VerificationReport {
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
  explicit operator bool() const { return passed(); }
};

namespace detail {

inline ExtVal val_at(const PadicPoly& f, const mpq_class& x) { return ext_val_rat(f.prime(), eval_exact(f, x)); }

inline ExtVal val_at(const PadicPoly& f, const mpz_class& x) { return val_at(f, mpq_class(x)); }

/// v(a - b) for residues modulo p^K, capped at K.
inline long residue_distance(const Prime& p, const mpz_class& a, const mpz_class& b, long K) {
  const mpz_class d = mod(a - b, p.pow(K));
  if (d == 0) return K;
  return std::min(padic_val_int(p, d), K);
}

/// e + t 2^n (or 2e + t 2^n), saturating at cap.
inline long doubling_bound(long base, long t, std::size_t n, long cap) {
  long term = t;
  for (std::size_t i = 0; i < n && term < cap; ++i) term *= 2;
  return std::min(base + term, cap);
}

inline long ceil_log2(long x) {
  long r = 0;
  long v = 1;
  while (v < x) {
    v *= 2;
    ++r;
  }
  return r;
}

} // namespace detail

/// Exact valuations of f(a) and f'(a). Throws HypothesisFailed when
/// v(f(a)) <= 2 v(f'(a)) and DerivativeVanishes when f'(a) = 0.
inline Hypothesis check_hypothesis(const PadicPoly& f, const mpq_class& a, const Prime& p) {
  detail::require_same_prime(f.prime(), p);
  if (f.degree() < 1) throw std::invalid_argument("polynomial must be nonconstant");
  if (normalized(a) != 0 && padic_val_rat(p, a) < 0) throw NotAnInteger("seed is not a p-adic integer");

  const ExtVal fp = detail::val_at(derivative(f), a);
  if (fp.is_exact_zero()) throw DerivativeVanishes();
  const ExtVal fa = detail::val_at(f, a);
  Hypothesis h;
  h.e = fp.value();
  h.m = fa;
  if (fa.is_exact_zero()) return h;
  if (fa.value() <= 2 * h.e) throw HypothesisFailed(fa, h.e);
  h.t = fa.value() - 2 * h.e;
  return h;
}

/// One Newton step modulo p^K:
///   a_{n+1} = a_n - (f(a_n)/p^e) * (f'(a_n)/p^e)^-1  (mod p^K).
/// Requires v(f(a_n)) >= e + 1 and v(f'(a_n)) = e.
inline mpz_class newton_step(const PadicPoly& f, const mpz_class& a_n, const Hypothesis& hyp, long K) {
  const Prime& p = f.prime();
  if (K - hyp.e <= 0)
    throw PrecisionExhausted("target precision p^" + std::to_string(K) + " does not exceed v(f'(a)) = " +
                             std::to_string(hyp.e));
  const mpz_class modulus = p.pow(K);
  const mpq_class fa = eval_exact(f, mpq_class(a_n));
  if (fa == 0) return detail::mod(a_n, modulus);
  const mpq_class fpa = eval_exact(derivative(f), mpq_class(a_n));
  if (fpa == 0 || padic_val_rat(p, fpa) != hyp.e)
    throw std::invalid_argument("newton_step: v(f'(a_n)) differs from e");
  if (padic_val_rat(p, fa) < hyp.e + 1) throw std::invalid_argument("newton_step: v(f(a_n)) <= e");

  const mpq_class scale(p.pow(hyp.e));
  const mpz_class numer = detail::rational_mod(p, fa / scale, K);
  const mpz_class unit = detail::rational_mod(p, fpa / scale, K);
  const mpz_class correction = detail::mod(numer * detail::inverse_mod(unit, modulus), modulus);
  return detail::mod(a_n - correction, modulus);
}

inline VerificationReport verify_certificate(const HenselCertificate& c);

/// Lifts the seed a to the root of f modulo p^K it determines, recording the
/// full Newton trace.
inline HenselCertificate lift(const PadicPoly& f, const mpq_class& a, const Prime& p, long K) {
  if (K < 1) throw std::invalid_argument("target precision K must be >= 1");
  const Hypothesis hyp = check_hypothesis(f, a, p);
  if (K <= hyp.e)
    throw PrecisionExhausted("target precision p^" + std::to_string(K) + " does not exceed v(f'(a)) = " +
                             std::to_string(hyp.e));

  HenselCertificate cert{p, f, normalized(a), K, hyp, {}, 0, std::nullopt, hyp.e, hyp.degenerate(), false};
  const mpz_class modulus = p.pow(K);
  const mpz_class seed = detail::rational_mod(p, a, K);

  if (hyp.degenerate()) {
    cert.root = seed;
    cert.checks_passed = verify_certificate(cert).passed();
    return cert;
  }

  const long e = hyp.e;
  const long t = *hyp.t;
  const long horizon = K + e;  // v(f(.)) is pinned by a residue mod p^K only below this
  const long working = K + e;
  const PadicPoly fp = derivative(f);

  mpz_class current = detail::rational_mod(p, a, working);
  for (std::size_t n = 0;; ++n) {
    if (n >= kMaxLiftSteps) throw InternalBoundViolation("Newton iteration did not converge within the step cap");
    LiftStep step;
    step.n = n;
    step.a_n = detail::mod(current, modulus);
    step.val_f = detail::val_at(f, step.a_n);
    const ExtVal fp_val = detail::val_at(fp, step.a_n);
    if (!fp_val.is_finite() || fp_val.value() != e)
      throw InternalBoundViolation("v(f'(a_" + std::to_string(n) + ")) drifted from e");
    step.val_fp = e;
    if (step.val_f.capped(horizon) < detail::doubling_bound(2 * e, t, n, horizon))
      throw InternalBoundViolation("iterate a_" + std::to_string(n) + " violates the induction bound");
    const bool done = step.val_f.capped(horizon) >= horizon;
    cert.trace.push_back(step);
    if (done) break;
    current = newton_step(f, current, hyp, working);
  }

  cert.root = cert.trace.back().a_n;
  cert.dist_exponent = hyp.m.value() - e;
  cert.checks_passed = verify_certificate(cert).passed();
  return cert;
}

/// Re-derives every claim of a certificate from f, a and the recorded
/// residues.
inline VerificationReport verify_certificate(const HenselCertificate& c) {
  VerificationReport r;
  auto fail = [&](std::string msg) { r.failures.push_back(std::move(msg)); };
  const Prime& p = c.p;
  if (c.f.prime() != p) {
    fail("polynomial prime differs from certificate prime");
    return r;
  }
  if (c.f.degree() < 1) {
    fail("polynomial is constant");
    return r;
  }
  if (c.K < 1) {
    fail("K < 1");
    return r;
  }
  if (normalized(c.a) != 0 && padic_val_rat(p, c.a) < 0) {
    fail("seed is not a p-adic integer");
    return r;
  }

  const long K = c.K;
  const mpz_class modulus = p.pow(K);
  const PadicPoly fp = derivative(c.f);

  // hypothesis, recomputed exactly
  const ExtVal fp_a = detail::val_at(fp, c.a);
  const ExtVal f_a = detail::val_at(c.f, c.a);
  if (!fp_a.is_finite()) {
    fail("f'(a) = 0");
    return r;
  }
  const long e = fp_a.value();
  if (c.hypothesis.e != e) fail("hypothesis e mismatch: recorded " + std::to_string(c.hypothesis.e) +
                                ", actual " + std::to_string(e));
  if (c.hypothesis.m != f_a) fail("hypothesis m mismatch: recorded " + c.hypothesis.m.to_string() +
                                  ", actual " + f_a.to_string());
  const bool degenerate = f_a.is_exact_zero();
  if (c.degenerate != degenerate) fail("degenerate flag mismatch");
  if (!degenerate) {
    if (f_a.value() <= 2 * e) fail("hypothesis v(f(a)) > 2 v(f'(a)) does not hold");
    if (!c.hypothesis.t || *c.hypothesis.t != f_a.value() - 2 * e) fail("hypothesis t mismatch");
  } else if (c.hypothesis.t) {
    fail("degenerate certificate carries t");
  }
  if (c.uniqueness_radius_exponent != e) fail("uniqueness radius exponent differs from e");
  if (K <= e) {
    fail("K does not exceed e");
    return r;
  }
  if (c.root < 0 || c.root >= modulus) fail("root is not a canonical residue mod p^K");

  const mpz_class seed = detail::rational_mod(p, c.a, K);

  // root properties
  if (detail::val_at(c.f, c.root).capped(K) < K) fail("f(root) is not 0 mod p^K");
  const ExtVal fp_root = detail::val_at(fp, c.root);
  if (!fp_root.is_finite() || fp_root.value() != e) fail("v(f'(root)) differs from e");
  if (detail::residue_distance(p, c.root, seed, K) < std::min(e + 1, K)) fail("root is not congruent to a mod p^(e+1)");

  if (degenerate) {
    if (!c.trace.empty()) fail("degenerate certificate has a trace");
    if (c.root != seed) fail("degenerate root differs from the seed");
    if (c.dist_exponent) fail("degenerate certificate carries a distance exponent");
    return r;
  }

  const long m = f_a.value();
  const long t = m - 2 * e;
  const long horizon = K + e;

  if (!c.dist_exponent || *c.dist_exponent != m - e) fail("distance exponent differs from m - e");
  const long dist = detail::residue_distance(p, c.root, seed, K);
  if (m - e < K) {
    if (dist != m - e) fail("v(root - a) = " + std::to_string(dist) + ", expected " + std::to_string(m - e));
  } else if (dist < K) {
    fail("root differs from a mod p^K although m - e >= K");
  }

  if (c.trace.empty()) {
    fail("trace is empty");
    return r;
  }
  const std::size_t max_len = static_cast<std::size_t>(detail::ceil_log2(std::max(1L, (K - e + t - 1) / t)) + 1);
  if (c.trace.size() > max_len)
    fail("trace length " + std::to_string(c.trace.size()) + " exceeds quadratic bound " + std::to_string(max_len));
  if (c.trace.front().a_n != seed) fail("trace does not start at the seed");
  if (c.trace.back().a_n != c.root) fail("root differs from the last iterate");

  for (std::size_t i = 0; i < c.trace.size(); ++i) {
    const LiftStep& s = c.trace[i];
    const std::string tag = "step " + std::to_string(i) + ": ";
    if (s.n != i) fail(tag + "index out of order");
    if (s.a_n < 0 || s.a_n >= modulus) fail(tag + "iterate is not a canonical residue");
    const ExtVal vf = detail::val_at(c.f, s.a_n);
    if (vf != s.val_f) fail(tag + "recorded v(f(a_n)) " + s.val_f.to_string() + " but actual " + vf.to_string());
    const ExtVal vfp = detail::val_at(fp, s.a_n);
    if (s.val_fp != e || !vfp.is_finite() || vfp.value() != e) fail(tag + "v(f'(a_n)) differs from e");
    const long capped = s.val_f.is_zero_at_least() ? -1 : s.val_f.capped(horizon);
    if (capped < detail::doubling_bound(2 * e, t, i, horizon)) fail(tag + "induction bound v(f(a_n)) >= 2e + t 2^n fails");
    const bool last = i + 1 == c.trace.size();
    if (last && capped < horizon) fail(tag + "stopped before the correction reached p^K");
    if (!last && capped >= horizon) fail(tag + "iteration continued past convergence");
    if (i > 0) {
      const long prev = c.trace[i - 1].val_f.capped(horizon);
      if (capped - 2 * e < std::min(2 * (prev - 2 * e), horizon - 2 * e)) fail(tag + "exponent failed to double");
    }
    for (std::size_t k = i; k < c.trace.size(); ++k) {
      if (detail::residue_distance(p, c.trace[k].a_n, s.a_n, K) < detail::doubling_bound(e, t, i, K))
        fail(tag + "distance bound to step " + std::to_string(k) + " fails");
    }
  }
  return r;
}

/// For a root z2 of f mod p^K: if z2 lies in the open ball v(z2 - a) > e it
/// must agree with the certified root. Agreement is checked mod p^(K-e), the
/// precision to which a root mod p^K determines a simple root with
/// v(f'(z)) = e.
inline bool unique_in_neighborhood(const PadicPoly& f, const HenselCertificate& c, const mpz_class& z2) {
  const Prime& p = c.p;
  const long K = c.K;
  const long e = c.uniqueness_radius_exponent;
  if (detail::val_at(f, detail::mod(z2, p.pow(K))).capped(K) < K)
    throw std::invalid_argument("unique_in_neighborhood: z2 is not a root mod p^K");
  const mpz_class seed = detail::rational_mod(p, c.a, K);
  if (detail::residue_distance(p, z2, seed, K) <= e) return true;
  return detail::residue_distance(p, z2, c.root, K) >= K - e;
}

// JSON form of a certificate. Field order is fixed:
// p, f, a, K, e, m, t, trace, root, dist_exponent, uniqueness_radius_exponent,
// degenerate, checks_passed. Big integers and rationals are decimal strings;
// an infinite valuation is null.

namespace detail {

inline nlohmann::ordered_json ext_to_json(const ExtVal& v) {
  if (v.is_exact_zero()) return nullptr;
  if (v.is_finite()) return v.value();
  throw std::logic_error("inexact zero cannot appear in a certificate");
}

inline ExtVal ext_from_json(const nlohmann::ordered_json& j) {
  if (j.is_null()) return ExtVal::exact_zero();
  return ExtVal::finite(j.get<long>());
}

inline mpz_class mpz_from_json(const nlohmann::ordered_json& j) {
  mpz_class z;
  if (!j.is_string() || z.set_str(j.get<std::string>(), 10) != 0) throw ParseError("expected a decimal integer string");
  return z;
}

} // namespace detail

inline nlohmann::ordered_json to_json(const HenselCertificate& c) {
  nlohmann::ordered_json j;
  j["p"] = c.p.value();
  auto coeffs = nlohmann::ordered_json::array();
  for (const auto& q : c.f.coeffs()) coeffs.push_back(to_string(q));
  j["f"] = coeffs;
  j["a"] = to_string(c.a);
  j["K"] = c.K;
  j["e"] = c.hypothesis.e;
  j["m"] = detail::ext_to_json(c.hypothesis.m);
  j["t"] = c.hypothesis.t ? nlohmann::ordered_json(*c.hypothesis.t) : nlohmann::ordered_json(nullptr);
  auto trace = nlohmann::ordered_json::array();
  for (const auto& s : c.trace) {
    nlohmann::ordered_json step;
    step["n"] = s.n;
    step["a_n"] = s.a_n.get_str();
    step["val_f"] = detail::ext_to_json(s.val_f);
    step["val_fp"] = s.val_fp;
    trace.push_back(step);
  }
  j["trace"] = trace;
  j["root"] = c.root.get_str();
  j["dist_exponent"] = c.dist_exponent ? nlohmann::ordered_json(*c.dist_exponent) : nlohmann::ordered_json(nullptr);
  j["uniqueness_radius_exponent"] = c.uniqueness_radius_exponent;
  j["degenerate"] = c.degenerate;
  j["checks_passed"] = c.checks_passed;
  return j;
}

inline HenselCertificate certificate_from_json(const nlohmann::ordered_json& j) {
  try {
    const Prime p(j.at("p").get<std::uint64_t>());
    std::vector<mpq_class> coeffs;
    for (const auto& q : j.at("f")) coeffs.push_back(parse_rational(q.get<std::string>()));
    HenselCertificate c{p, PadicPoly(p, std::move(coeffs)), parse_rational(j.at("a").get<std::string>()),
                        j.at("K").get<long>(), {}, {}, 0, std::nullopt, 0, false, false};
    c.hypothesis.e = j.at("e").get<long>();
    c.hypothesis.m = detail::ext_from_json(j.at("m"));
    if (!j.at("t").is_null()) c.hypothesis.t = j.at("t").get<long>();
    for (const auto& s : j.at("trace")) {
      c.trace.push_back(LiftStep{s.at("n").get<std::size_t>(), detail::mpz_from_json(s.at("a_n")),
                                 detail::ext_from_json(s.at("val_f")), s.at("val_fp").get<long>()});
    }
    c.root = detail::mpz_from_json(j.at("root"));
    if (!j.at("dist_exponent").is_null()) c.dist_exponent = j.at("dist_exponent").get<long>();
    c.uniqueness_radius_exponent = j.at("uniqueness_radius_exponent").get<long>();
    c.degenerate = j.at("degenerate").get<bool>();
    c.checks_passed = j.at("checks_passed").get<bool>();
    return c;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed certificate: ") + ex.what());
  }
}

} // namespace padic
