// Exact rational arithmetic used by every certified comparison.
// Thin layer over GMP; no floating point anywhere on a certified path.
#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace cgr {

using Int = mpz_class;
using Rat = mpq_class;

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Int rat_floor(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

inline Int rat_ceil(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

// Floor/ceil for values known to fit in a machine word (vertex counts do).
inline long rat_floor_l(const Rat& r) { return rat_floor(r).get_si(); }
inline long rat_ceil_l(const Rat& r) { return rat_ceil(r).get_si(); }

inline Rat rat_pow(const Rat& base, unsigned long e) {
  Rat r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

inline Int int_pow(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Int binom2(const Int& n) { return n * (n - 1) / 2; }

// Accepts "p/q", plain integers, and decimal literals ("0.25" -> 1/4).
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw input_error("empty rational literal");
  auto bad = [&] { throw input_error("bad rational literal: '" + s + "'"); };
  std::string t = s;
  auto slash = t.find('/');
  try {
    if (slash != std::string::npos) {
      Int num(t.substr(0, slash)), den(t.substr(slash + 1));
      if (den == 0) throw input_error("zero denominator in '" + s + "'");
      Rat r(num, den);
      r.canonicalize();
      return r;
    }
    auto dot = t.find('.');
    if (dot == std::string::npos) return Rat(Int(t));
    std::string digits = t.substr(0, dot) + t.substr(dot + 1);
    bool neg = !digits.empty() && digits[0] == '-';
    Int num(digits);
    Int den = int_pow(Int(10), t.size() - dot - 1);
    Rat r(num, den);
    r.canonicalize();
    (void)neg;
    return r;
  } catch (const std::invalid_argument&) {
    bad();
  }
  return Rat(0);  // unreachable
}

inline std::string rat_str(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// lhs >= eps^d * mult with d = a/b rational, all operands nonnegative.
// Equivalent to lhs^b >= eps^a * mult^b, which is an exact comparison.
inline bool ge_pow(const Rat& lhs, const Rat& eps, const Rat& d, const Rat& mult) {
  if (lhs < 0) throw input_error("ge_pow: negative lhs");
  if (eps < 0 || mult < 0 || d <= 0) throw input_error("ge_pow: bad operands");
  unsigned long a = d.get_num().get_ui();
  unsigned long b = d.get_den().get_ui();
  return rat_pow(lhs, b) >= rat_pow(eps, a) * rat_pow(mult, b);
}

}  // namespace cgr
