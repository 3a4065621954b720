#pragma once

// Command-line front end. `run` is the whole program; tools/padic.cpp only
// forwards argv to it.

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>
#include "CLI11.hpp"
#include "json.hpp"

#include "padic/errors.hpp"
#include "padic/hensel.hpp"
#include "padic/oracle.hpp"
#include "padic/padic_number.hpp"
#include "padic/polynomial.hpp"
#include "padic/valuation.hpp"

namespace padic::cli {

enum ExitCode : int {
  kOk = 0,
  kParse = 2,
  kNotPrime = 3,
  kZeroExpansion = 4,
  kHypothesis = 5,
  kInternal = 6,
  kDomainTooLarge = 7,
};

struct CliConfig {
  std::uint64_t p = 0;
  long precision = kDefaultPrecision;  // -N, relative
  long target = 8;                     // -K, absolute
  bool json = false;
  std::string poly;
  std::string value;                   // positional rational
  std::string seed;
  long oracle_k = 1;
  std::optional<std::string> center;
  long radius = 0;
  long trials = 1000;
  std::uint64_t rng_seed = 1;
};

/// Decimal rendering of q with at most `digits` fractional digits; a
/// trailing "..." marks truncation.
inline std::string decimal_string(const mpq_class& q, int digits = 20) {
  mpq_class r = normalized(q);
  std::string out;
  if (r < 0) {
    out += "-";
    r = -r;
  }
  mpz_class whole, rem;
  mpz_fdiv_qr(whole.get_mpz_t(), rem.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  out += whole.get_str();
  if (rem == 0) return out;
  out += ".";
  for (int i = 0; i < digits && rem != 0; ++i) {
    rem *= 10;
    mpz_class d;
    mpz_fdiv_qr(d.get_mpz_t(), rem.get_mpz_t(), rem.get_mpz_t(), r.get_den().get_mpz_t());
    out += d.get_str();
  }
  if (rem != 0) out += "...";
  return out;
}

namespace detail {

using json = nlohmann::ordered_json;

inline void emit(std::ostream& out, const json& j) { out << j.dump() << "\n"; }

inline int cmd_val(const CliConfig& cfg, std::ostream& out) {
  const Prime p(cfg.p);
  const mpq_class q = parse_rational(cfg.value);
  const long v = padic_val_rat(p, q);
  if (cfg.json) {
    json j;
    j["p"] = cfg.p;
    j["q"] = to_string(q);
    j["valuation"] = v;
    emit(out, j);
  } else {
    out << v << "\n";
  }
  return kOk;
}

inline int cmd_norm(const CliConfig& cfg, std::ostream& out) {
  const Prime p(cfg.p);
  const mpq_class q = parse_rational(cfg.value);
  const mpq_class n = padic_norm_rat(p, q);
  const bool zero = q == 0;
  const long exponent = zero ? 0 : -padic_val_rat(p, q);
  if (cfg.json) {
    json j;
    j["p"] = cfg.p;
    j["q"] = to_string(q);
    j["norm"] = to_string(n);
    j["exponent"] = zero ? json(nullptr) : json(exponent);
    j["decimal"] = decimal_string(n);
    emit(out, j);
  } else if (zero) {
    out << "0\n";
  } else {
    out << to_string(n) << " = " << cfg.p << "^(" << exponent << ") = " << decimal_string(n) << "\n";
  }
  return kOk;
}

inline int cmd_digits(const CliConfig& cfg, std::ostream& out) {
  const Prime p(cfg.p);
  const mpq_class q = parse_rational(cfg.value);
  const DigitExpansion d = from_rational(p, q, cfg.precision).digits();
  if (cfg.json) {
    json j;
    j["p"] = cfg.p;
    j["q"] = to_string(q);
    j["N"] = cfg.precision;
    j["start"] = d.start;
    j["digits"] = d.digits;
    j["text"] = format_digits(d);
    emit(out, j);
  } else {
    out << format_digits(d) << "\n";
  }
  return kOk;
}

inline int cmd_eval(const CliConfig& cfg, std::ostream& out) {
  const Prime p(cfg.p);
  const PadicPoly f = parse_polynomial(p, cfg.poly);
  const mpq_class x = parse_rational(cfg.value);
  const PadicNumber value = eval(f, from_rational(p, x, cfg.precision));
  std::optional<DigitExpansion> d;
  if (value.is_unit_form()) d = value.digits();
  if (cfg.json) {
    json j;
    j["p"] = cfg.p;
    j["poly"] = f.to_string();
    j["x"] = to_string(x);
    j["record"] = value.to_record();
    j["norm"] = value.norm().is_finite() ? json(value.norm().value()) : json(nullptr);
    j["digits"] = d ? json(d->digits) : json(nullptr);
    emit(out, j);
  } else {
    out << value.to_record() << "\n";
    if (d) out << format_digits(*d) << "\n";
  }
  return kOk;
}

inline void print_certificate(std::ostream& out, const HenselCertificate& c) {
  auto ext = [](const ExtVal& v) { return v.is_exact_zero() ? std::string("inf") : v.to_string(); };
  out << "p = " << c.p.value() << "\n";
  out << "f = " << c.f.to_string() << "\n";
  out << "a = " << to_string(c.a) << "\n";
  out << "K = " << c.K << "\n";
  out << "e = " << c.hypothesis.e << "\n";
  out << "m = " << ext(c.hypothesis.m) << "\n";
  out << "t = " << (c.hypothesis.t ? std::to_string(*c.hypothesis.t) : std::string("none")) << "\n";
  out << "trace:\n";
  for (const auto& s : c.trace)
    out << "  n=" << s.n << " a_n=" << s.a_n.get_str() << " val_f=" << ext(s.val_f) << " val_fp=" << s.val_fp
        << "\n";
  out << "root = " << c.root.get_str() << "\n";
  out << "dist_exponent = " << (c.dist_exponent ? std::to_string(*c.dist_exponent) : std::string("none")) << "\n";
  out << "uniqueness_radius_exponent = " << c.uniqueness_radius_exponent << "\n";
  out << "degenerate = " << (c.degenerate ? "true" : "false") << "\n";
  out << "checks_passed = " << (c.checks_passed ? "true" : "false") << "\n";
}

inline int cmd_lift(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const Prime p(cfg.p);
  const PadicPoly f = parse_polynomial(p, cfg.poly);
  const mpq_class a = parse_rational(cfg.seed);
  HenselCertificate cert = [&] {
    try {
      return lift(f, a, p, cfg.target);
    } catch (const HypothesisFailed& ex) {
      err << "hypothesis failed: f(" << to_string(a) << ") = " << to_string(eval_exact(f, a)) << " (m=" << ex.m()
          << "), f'(" << to_string(a) << ") = " << to_string(eval_exact(derivative(f), a)) << " (e=" << ex.e()
          << "), need m > 2e\n";
      throw;
    }
  }();
  if (cfg.json) {
    emit(out, to_json(cert));
  } else {
    print_certificate(out, cert);
  }
  if (!cert.checks_passed) {
    for (const auto& msg : verify_certificate(cert).failures) err << "check failed: " << msg << "\n";
    return kInternal;
  }
  return kOk;
}

inline int cmd_oracle(const CliConfig& cfg, std::ostream& out) {
  const Prime p(cfg.p);
  const PadicPoly f = parse_polynomial(p, cfg.poly);
  std::optional<OracleFilter> filter;
  if (cfg.center) {
    const mpz_class c = padic::detail::rational_mod(p, parse_rational(*cfg.center), cfg.oracle_k);
    filter = OracleFilter{c.get_ui(), cfg.radius};
  }
  const OracleReport r = enumerate_roots(f, p, cfg.oracle_k, filter);
  if (cfg.json) {
    json j;
    j["p"] = cfg.p;
    j["k"] = r.k;
    j["f"] = r.coeffs;
    j["roots"] = r.roots;
    if (r.filter) {
      j["filter"] = {{"center", r.filter->center}, {"radius_exponent", r.filter->radius_exponent}};
      j["filtered"] = r.filtered;
    }
    emit(out, j);
  } else {
    auto line = [&](const std::vector<std::uint64_t>& xs) {
      for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? " " : "") << xs[i];
      out << "\n";
    };
    line(r.roots);
    if (r.filter) line(r.filtered);
  }
  return kOk;
}

inline int cmd_crosscheck(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const Prime p(cfg.p);
  const CrosscheckReport r = crosscheck_arith(p, cfg.oracle_k, cfg.trials, cfg.rng_seed);
  if (cfg.json) {
    json j;
    j["p"] = cfg.p;
    j["k"] = cfg.oracle_k;
    j["trials"] = r.trials;
    j["comparisons"] = r.comparisons;
    j["skipped"] = r.skipped;
    j["mismatches"] = r.mismatches;
    emit(out, j);
  } else {
    out << "trials=" << r.trials << " comparisons=" << r.comparisons << " skipped=" << r.skipped
        << " mismatches=" << r.mismatches.size() << "\n";
  }
  for (const auto& m : r.mismatches) err << "mismatch: " << m << "\n";
  return r.mismatches.empty() ? kOk : kInternal;
}

} // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Exact p-adic arithmetic, Hensel lifting and brute-force root oracle", "padic"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("-p", cfg.p, "prime")->required();
  app.add_option("-N", cfg.precision, "relative precision in digits")->check(CLI::PositiveNumber);
  app.add_option("-K", cfg.target, "absolute target precision for lift")->check(CLI::PositiveNumber);
  app.add_flag("--json", cfg.json, "emit JSON");

  auto* val = app.add_subcommand("val", "p-adic valuation of a rational");
  val->add_option("q", cfg.value, "rational a or a/b")->required();
  auto* norm = app.add_subcommand("norm", "p-adic norm of a rational");
  norm->add_option("q", cfg.value, "rational a or a/b")->required();
  auto* digits = app.add_subcommand("digits", "base-p digit expansion");
  digits->add_option("q", cfg.value, "rational a or a/b")->required();
  auto* ev = app.add_subcommand("eval", "evaluate a polynomial at a p-adic integer");
  ev->add_option("--poly", cfg.poly, "polynomial, e.g. \"x^2 - 6\"")->required();
  ev->add_option("x", cfg.value, "rational evaluation point")->required();
  auto* lf = app.add_subcommand("lift", "Hensel-lift a seed to a certified root mod p^K");
  lf->add_option("--poly", cfg.poly, "polynomial, e.g. \"x^2 - 6\"")->required();
  lf->add_option("--seed", cfg.seed, "rational seed a")->required();
  auto* orc = app.add_subcommand("oracle", "enumerate roots mod p^k by exhaustive scan");
  orc->add_option("--poly", cfg.poly, "polynomial")->required();
  orc->add_option("-k", cfg.oracle_k, "exponent k")->required()->check(CLI::PositiveNumber);
  orc->add_option("--center", cfg.center, "filter center a");
  orc->add_option("--radius", cfg.radius, "keep roots with v(r - a) > radius");
  auto* cc = app.add_subcommand("crosscheck", "compare p-adic ring operations with rational arithmetic");
  cc->add_option("-k", cfg.oracle_k, "exponent k")->required()->check(CLI::PositiveNumber);
  cc->add_option("--trials", cfg.trials, "number of random pairs");
  cc->add_option("--seed", cfg.rng_seed, "random seed");

  std::vector<const char*> argv{"padic"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& ex) {
    err << ex.what() << "\n";
    return kParse;
  }

  try {
    if (*val) return detail::cmd_val(cfg, out);
    if (*norm) return detail::cmd_norm(cfg, out);
    if (*digits) return detail::cmd_digits(cfg, out);
    if (*ev) return detail::cmd_eval(cfg, out);
    if (*lf) return detail::cmd_lift(cfg, out, err);
    if (*orc) return detail::cmd_oracle(cfg, out);
    if (*cc) return detail::cmd_crosscheck(cfg, out, err);
  } catch (const NotPrime&) {
    err << "p must be prime\n";
    return kNotPrime;
  } catch (const ZeroHasNoExpansion& ex) {
    err << ex.what() << "\n";
    return kZeroExpansion;
  } catch (const HypothesisFailed&) {
    return kHypothesis;
  } catch (const DerivativeVanishes& ex) {
    err << ex.what() << "\n";
    return kHypothesis;
  } catch (const PrecisionExhausted& ex) {
    err << ex.what() << "\n";
    return kHypothesis;
  } catch (const InternalBoundViolation& ex) {
    err << "internal error: " << ex.what() << "\n";
    return kInternal;
  } catch (const DomainTooLarge& ex) {
    err << ex.what() << "\n";
    return kDomainTooLarge;
  } catch (const NotAnInteger& ex) {
    err << ex.what() << "\n";
    return *lf ? kHypothesis : kParse;
  } catch (const Error& ex) {
    err << ex.what() << "\n";
    return kParse;
  } catch (const std::invalid_argument& ex) {
    err << ex.what() << "\n";
    return kParse;
  }
  return kParse;
}

} // namespace padic::cli
