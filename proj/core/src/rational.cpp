#include "qpcalc/rational.hpp"

#include <cctype>
#include "qpcalc/errors.hpp"

namespace qpcalc {

namespace {

bool valid_integer(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class to_mpz(std::string_view s) {
  if (s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!valid_integer(text)) throw DomainError("malformed rational '" + std::string(text) + "'");
    return Rational(mpq_class(to_mpz(text)));
  }
  auto num = text.substr(0, slash);
  auto den = text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den[0] == '-' || den[0] == '+') {
    throw DomainError("malformed rational '" + std::string(text) + "'");
  }
  mpz_class d = to_mpz(den);
  if (d == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  return Rational(mpq_class(to_mpz(num), d));
}

std::string Rational::str() const { return value_.get_str(10); }

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw DomainError("division by zero rational");
  value_ /= o.value_;
  return *this;
}

}  // namespace qpcalc
