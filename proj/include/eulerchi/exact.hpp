#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace eulerchi {

// Arbitrary-precision integer and reduced fraction. Every quantity that ends
// up in a verdict goes through one of these two types.
using ExactInt = mpz_class;
using ExactRational = mpq_class;

ExactInt parse_int(std::string_view text);
ExactRational parse_rational(std::string_view text);

inline std::string to_string(const ExactInt& x) { return x.get_str(); }
std::string to_string(const ExactRational& x);

ExactRational make_rational(const ExactInt& num, const ExactInt& den);

// Integer part of a rational that must be integral; throws std::domain_error
// otherwise.
ExactInt require_integer(const ExactRational& x, std::string_view what);

ExactInt pow(const ExactInt& base, unsigned long exp);
ExactInt pow_si(long base, unsigned long exp);

// floor(sqrt(x)) for x >= 0.
ExactInt isqrt(const ExactInt& x);
ExactInt floor_of(const ExactRational& x);
ExactInt ceil_of(const ExactRational& x);

inline int sign(const ExactInt& x) { return sgn(x); }
inline int sign(const ExactRational& x) { return sgn(x); }

bool fits_long(const ExactInt& x);
long to_long(const ExactInt& x);

}  // namespace eulerchi
