#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace cmwork {

// Exact rationals are GMP-backed; this header adds the small amount of glue
// the rest of the library needs (parsing, canonical printing, a few
// combinatorial helpers).  mpq_class keeps values canonical (reduced, with
// positive denominator) as long as they are produced by arithmetic; the
// helpers below canonicalize explicitly where raw num/den pairs enter.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

// Parses "p", "-p", or "p/q" (q > 0 after canonicalization).
std::optional<Rational> rat_parse(const std::string& s);

// Canonical text: "p" when the denominator is 1, else "p/q".
std::string rat_str(const Rational& r);

inline int rat_sign(const Rational& r) { return sgn(r); }

// Denominator of |r| in lowest terms, as an unsigned long (support criteria
// only need small denominators; throws if it does not fit).
unsigned long rat_denominator_ulong(const Rational& r);

bool rat_is_integer(const Rational& r);

// Generalized binomial coefficient C(alpha, j) for rational alpha.
Rational rat_binom(const Rational& alpha, unsigned j);

BigInt factorial(unsigned n);

// sqrt of a nonnegative rational if it is itself rational.
std::optional<Rational> rat_sqrt(const Rational& r);

}  // namespace cmwork
