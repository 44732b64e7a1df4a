#include "eulerchi/exact.hpp"

#include <stdexcept>

namespace eulerchi {

namespace {

bool looks_like_integer(std::string_view text) {
  if (text.empty()) return false;
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) return false;
  for (; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') return false;
  }
  return true;
}

}  // namespace

ExactInt parse_int(std::string_view text) {
  if (!looks_like_integer(text)) {
    throw std::invalid_argument("not a decimal integer: '" + std::string(text) + "'");
  }
  std::string s(text[0] == '+' ? text.substr(1) : text);
  return ExactInt(s, 10);
}

ExactRational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return ExactRational(parse_int(text));
  ExactInt num = parse_int(text.substr(0, slash));
  ExactInt den = parse_int(text.substr(slash + 1));
  return make_rational(num, den);
}

std::string to_string(const ExactRational& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

ExactRational make_rational(const ExactInt& num, const ExactInt& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  ExactRational q(num, den);
  q.canonicalize();
  return q;
}

ExactInt require_integer(const ExactRational& x, std::string_view what) {
  if (x.get_den() != 1) {
    throw std::domain_error(std::string(what) + " is not integral: " + to_string(x));
  }
  return x.get_num();
}

ExactInt pow(const ExactInt& base, unsigned long exp) {
  ExactInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

ExactInt pow_si(long base, unsigned long exp) {
  ExactInt out;
  if (base >= 0) {
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), exp);
  } else {
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(-base), exp);
    if (exp % 2 == 1) out = -out;
  }
  return out;
}

ExactInt isqrt(const ExactInt& x) {
  if (x < 0) throw std::domain_error("isqrt of a negative number");
  ExactInt out;
  mpz_sqrt(out.get_mpz_t(), x.get_mpz_t());
  return out;
}

ExactInt floor_of(const ExactRational& x) {
  ExactInt out;
  mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

ExactInt ceil_of(const ExactRational& x) {
  ExactInt out;
  mpz_cdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return out;
}

bool fits_long(const ExactInt& x) { return x.fits_slong_p(); }

long to_long(const ExactInt& x) {
  if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in long: " + x.get_str());
  return x.get_si();
}

}  // namespace eulerchi
