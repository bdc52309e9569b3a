#pragma once

// Exact rational arithmetic. Everything in this library is exact; there is
// no floating point anywhere. We use GMP's C++ bindings.

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace lieconf {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Int factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial of negative");
  Int f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return f;
}

// binom(n, k) for integer n (possibly negative), k >= 0:
// n(n-1)...(n-k+1)/k!
inline Rat binom(long n, long k) {
  if (k < 0) return 0;
  Rat num = 1;
  for (long i = 0; i < k; ++i) num *= rat(n - i);
  return num / Rat(factorial(k));
}

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline long to_long(const Rat& r) {
  if (!is_integer(r)) throw std::runtime_error("to_long on non-integer " + r.get_str());
  if (!r.get_num().fits_slong_p()) throw std::runtime_error("to_long overflow");
  return r.get_num().get_si();
}

// Render as "a/b" (or "a" when the denominator is 1).
inline std::string rat_str(const Rat& r) { return r.get_str(); }

// floor of a rational
inline Int rat_floor(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

// representative of r mod 1 in [0,1)
inline Rat mod1(const Rat& r) {
  Rat m = r - Rat(rat_floor(r));
  return m;
}

}  // namespace lieconf
